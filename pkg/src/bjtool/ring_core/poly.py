"""Dense univariate polynomials over a coefficient field."""
from __future__ import annotations

from fractions import Fraction

from ..errors import ZeroPolynomial


def _strip(coeffs: list, is_zero) -> tuple:
    while coeffs and is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Immutable polynomial with coefficients in ascending degree order."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=(), coerce: bool = True):
        self.field = field
        if coerce:
            coeffs = [field(c) for c in coeffs]
        else:
            coeffs = list(coeffs)
        self.coeffs = _strip(coeffs, field.is_zero)

    # construction helpers
    @classmethod
    def zero(cls, field) -> Poly:
        return cls(field, (), coerce=False)

    @classmethod
    def one(cls, field) -> Poly:
        return cls(field, (field.one,), coerce=False)

    @classmethod
    def const(cls, field, c) -> Poly:
        return cls(field, (field(c),), coerce=False)

    @classmethod
    def x(cls, field) -> Poly:
        return cls(field, (field.zero, field.one), coerce=False)

    @classmethod
    def monomial(cls, field, c, k: int) -> Poly:
        return cls(field, [field.zero] * k + [field(c)], coerce=False)

    def _new(self, coeffs) -> Poly:
        return Poly(self.field, coeffs, coerce=False)

    # basic properties
    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.field.is_one(self.coeffs[0])

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.field.is_one(self.coeffs[-1])

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def const_term(self):
        return self.coeff(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other
        return Poly.const(self.field, other)

    # ring operations
    def __add__(self, other) -> Poly:
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.field.add
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        neg = self.field.neg
        return self._new([neg(c) for c in self.coeffs])

    def __sub__(self, other) -> Poly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> Poly:
        return self._lift(other) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return self.scale(self.field(other))
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        F = self.field
        if F.kind == "fp" or F.kind == "q":
            out = [0] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            if F.kind == "fp":
                p = F.p
                out = [c % p for c in out]
            else:
                out = [Fraction(c) for c in out]
            return self._new(out)
        mul, add = F.mul, F.add
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not F.is_zero(x):
                for j, y in enumerate(b):
                    out[i + j] = add(out[i + j], mul(x, y))
        return self._new(out)

    def __rmul__(self, other) -> Poly:
        return self * other

    def scale(self, c) -> Poly:
        mul = self.field.mul
        return self._new([mul(c, x) for x in self.coeffs])

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k: int) -> Poly:
        """Multiply by x^k."""
        if not self.coeffs or k == 0:
            return self
        return self._new([self.field.zero] * k + list(self.coeffs))

    def divmod(self, other) -> tuple[Poly, Poly]:
        other = self._lift(other)
        if other.is_zero():
            raise ZeroPolynomial("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        db = other.deg
        if len(r) - 1 < db:
            return Poly.zero(F), self
        inv_lc = F.inv(other.lc)
        b = other.coeffs
        q = [F.zero] * (len(r) - db)
        if F.kind == "fp":
            p = F.p
            for k in range(len(r) - 1, db - 1, -1):
                c = r[k] % p
                if c:
                    c = c * inv_lc % p
                    q[k - db] = c
                    for j in range(db + 1):
                        r[k - db + j] -= c * b[j]
            return self._new([c % p for c in q]), self._new([c % p for c in r[:db]])
        sub, mul = F.sub, F.mul
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if not F.is_zero(c):
                c = mul(c, inv_lc)
                q[k - db] = c
                for j in range(db + 1):
                    r[k - db + j] = sub(r[k - db + j], mul(c, b[j]))
        return self._new(q), self._new(r[:db])

    __divmod__ = divmod

    def __floordiv__(self, other) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other) -> Poly:
        return self.divmod(other)[1]

    def exact_div(self, other) -> Poly:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: Poly) -> bool:
        """True when self divides other."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    # normalisation
    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lc))

    def split_unit(self) -> tuple:
        """Return (leading coefficient, monic part)."""
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no unit part")
        return self.lc, self.monic()

    def derivative(self) -> Poly:
        F = self.field
        return self._new([F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def eval(self, a):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, a), c)
        return acc

    def compose(self, g: Poly) -> Poly:
        acc = Poly.zero(self.field)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def __call__(self, a):
        if isinstance(a, Poly):
            return self.compose(a)
        return self.eval(a)

    def taylor_shift(self, a) -> Poly:
        """f(x + a)."""
        return self.compose(Poly(self.field, (a, self.field.one), coerce=False))

    def reverse(self, d: int) -> Poly:
        """x^d f(1/x) for d >= deg f."""
        if d < self.deg:
            raise ValueError("reverse degree below polynomial degree")
        coeffs = list(self.coeffs) + [self.field.zero] * (d + 1 - len(self.coeffs))
        return self._new(coeffs[::-1])

    def map_field(self, field, fn=None) -> Poly:
        fn = fn or field
        return Poly(field, [fn(c) for c in self.coeffs], coerce=False)

    def gcd(self, other: Poly) -> Poly:
        a, b = self, self._lift(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: Poly) -> tuple[Poly, Poly, Poly]:
        """Return (g, u, v) with g = u*self + v*other and g monic (or zero)."""
        F = self.field
        r0, r1 = self, self._lift(other)
        s0, s1 = Poly.one(F), Poly.zero(F)
        t0, t1 = Poly.zero(F), Poly.one(F)
        while not r1.is_zero():
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero():
            return r0, s0, t0
        c = F.inv(r0.lc)
        return r0.scale(c), s0.scale(c), t0.scale(c)

    def lcm(self, other: Poly) -> Poly:
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        return (self * other).exact_div(self.gcd(other)).monic()

    def valuation(self, prime: Poly) -> int:
        """Multiplicity of the irreducible `prime` in self."""
        if self.is_zero():
            raise ZeroPolynomial("valuation of zero")
        v, f = 0, self
        while True:
            q, r = f.divmod(prime)
            if not r.is_zero():
                return v
            v, f = v + 1, q

    def sort_key(self) -> tuple:
        return (self.deg, tuple(_coeff_key(c) for c in self.coeffs))

    # display / serialisation
    def to_json(self) -> list:
        return [self.field.to_json(c) for c in self.coeffs]

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        F = self.field
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if F.is_zero(c):
                continue
            cs = F.fmt(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if F.kind == "fq" and "+" in cs:
                cs = f"({cs})"
            if k == 0:
                body = cs
            else:
                mon = var if k == 1 else f"{var}^{k}"
                body = mon if cs == "1" else f"{cs}*{mon}"
            terms.append(("-" if neg else "+", body))
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r} over {self.field!r})"


def _coeff_key(c):
    return c


def poly_from_roots(field, roots) -> Poly:
    out = Poly.one(field)
    for r in roots:
        out = out * Poly(field, (field.neg(r), field.one), coerce=False)
    return out


def prod(polys, field) -> Poly:
    out = Poly.one(field)
    for f in polys:
        out = out * f
    return out
