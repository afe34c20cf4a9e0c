"""Coefficient fields: F_p, Q and small extensions F_p[theta]/(mu).

Elements are plain Python values (int for F_p, Fraction for Q, tuple of
ints for extensions) and every operation goes through the field object, so
polynomial code can stay field agnostic.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction

from sympy import isprime
from sympy.ntheory import nthroot_mod, sqrt_mod

from ..errors import FieldError, Unsupported


def _parse_rational(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise FieldError(f"boolean is not a field element: {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"cannot parse rational {v!r}") from exc
    raise FieldError(f"cannot interpret {v!r} as a rational number")


class PrimeField:
    kind = "fp"
    degree = 1

    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise FieldError(f"modulus {p!r} is not a prime")
        self.p = p
        self.char = p
        self.order = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __call__(self, v):
        if isinstance(v, int) and not isinstance(v, bool):
            return v % self.p
        q = _parse_rational(v)
        if q.denominator % self.p == 0:
            raise FieldError(f"denominator of {v!r} vanishes mod {self.p}")
        return q.numerator * pow(q.denominator, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e: int):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == 1

    def from_int(self, k: int):
        return k % self.p

    def random(self, rng: random.Random):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def is_square(self, a) -> bool:
        return a == 0 or self.p == 2 or pow(a, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, a):
        if a == 0:
            return 0
        r = sqrt_mod(a, self.p)
        return None if r is None else min(r, self.p - r)

    def nth_root(self, a, k: int):
        if a == 0:
            return 0
        roots = nthroot_mod(a, k, self.p, all_roots=True)
        return min(roots) if roots else None

    def to_json(self, a):
        return a

    def fmt(self, a) -> str:
        return str(a)

    def descriptor(self) -> dict:
        return {"type": "fp", "p": self.p}


class RationalField:
    kind = "q"
    degree = 1
    char = 0
    order = None
    p = None

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def __call__(self, v):
        return _parse_rational(v)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return Fraction(a) / b

    def pow(self, a, e: int):
        return Fraction(a) ** e

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == 1

    def from_int(self, k: int):
        return Fraction(k)

    def random(self, rng: random.Random, height: int = 9):
        num = rng.randint(-height, height)
        den = rng.randint(1, 3)
        return Fraction(num, den)

    def elements(self):
        raise Unsupported("the rationals are not enumerable here")

    def nth_root(self, a, k: int):
        a = Fraction(a)
        if a == 0:
            return Fraction(0)
        sign = 1
        if a < 0:
            if k % 2 == 0:
                return None
            sign, a = -1, -a
        rn = _int_root(a.numerator, k)
        rd = _int_root(a.denominator, k)
        if rn is None or rd is None:
            return None
        return Fraction(sign * rn, rd)

    def is_square(self, a) -> bool:
        return self.nth_root(a, 2) is not None

    def sqrt(self, a):
        return self.nth_root(a, 2)

    def to_json(self, a):
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def fmt(self, a) -> str:
        return self.to_json(a)

    def descriptor(self) -> dict:
        return {"type": "q"}


def _int_root(n: int, k: int):
    r = round(n ** (1.0 / k)) if n < 2**1000 else None
    if r is None:
        lo, hi = 0, 1 << (n.bit_length() // k + 1)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid**k < n:
                lo = mid + 1
            else:
                hi = mid
        r = lo
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None


class ExtensionField:
    """F_p[theta]/(mu) with mu monic irreducible of degree m; elements are
    length-m tuples of residues (coefficient of theta^i at index i)."""

    kind = "fq"

    def __init__(self, p: int, modulus):
        self.base = PrimeField(p)
        self.p = p
        mod = [c % p for c in modulus]
        while mod and mod[-1] == 0:
            mod.pop()
        if len(mod) < 2 or mod[-1] != 1:
            raise FieldError("extension modulus must be monic of degree >= 1")
        self.modulus = tuple(mod)
        self.degree = len(mod) - 1
        self.char = p
        self.order = p**self.degree
        m = self.degree
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)
        self.gen = (0, 1) + (0,) * (m - 2) if m > 1 else (-mod[0] % p,)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("fq", self.modulus))

    def __call__(self, v):
        if isinstance(v, tuple):
            if len(v) != self.degree:
                raise FieldError("extension element has wrong length")
            return tuple(c % self.p for c in v)
        if isinstance(v, (list,)):
            return self(tuple(v) + (0,) * (self.degree - len(v)))
        return self.from_int(self.base(v))

    def from_int(self, k: int):
        return (k % self.p,) + (0,) * (self.degree - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, m, mod = self.p, self.degree, self.modulus
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(m):
                    prod[k - m + j] -= c * mod[j]
        return tuple(c % p for c in prod[:m])

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return not any(a)

    def is_one(self, a) -> bool:
        return a == self.one

    def random(self, rng: random.Random):
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def elements(self):
        import itertools

        for digits in itertools.product(range(self.p), repeat=self.degree):
            yield tuple(reversed(digits))

    def is_square(self, a) -> bool:
        if self.is_zero(a) or self.p == 2:
            return True
        return self.is_one(self.pow(a, (self.order - 1) // 2))

    def sqrt(self, a):
        return self.nth_root(a, 2)

    def nth_root(self, a, k: int):
        if self.is_zero(a):
            return self.zero
        q1 = self.order - 1
        g = math.gcd(k, q1)
        if g == 1:
            return self.pow(a, pow(k, -1, q1))
        if not self.is_one(self.pow(a, q1 // g)):
            return None
        if self.order > 200000:
            raise Unsupported("root extraction in a large extension field")
        for x in self.elements():
            if self.pow(x, k) == a:
                return x
        return None

    def to_json(self, a):
        return list(a)

    def fmt(self, a) -> str:
        terms = []
        for i, c in enumerate(a):
            if c:
                if i == 0:
                    terms.append(str(c))
                else:
                    mon = "t" if i == 1 else f"t^{i}"
                    terms.append(mon if c == 1 else f"{c}*{mon}")
        return " + ".join(reversed(terms)) or "0"

    def descriptor(self) -> dict:
        return {"type": "fq", "p": self.p, "modulus": list(self.modulus)}


def field_from_descriptor(desc: dict):
    kind = desc.get("type")
    if kind == "fp":
        return PrimeField(desc.get("p"))
    if kind == "q":
        return RationalField()
    if kind == "fq":
        return ExtensionField(desc["p"], desc["modulus"])
    raise FieldError(f"unknown field type {kind!r}")


def check_bj_characteristic(field, n: int) -> None:
    """Refuse fields whose characteristic divides n(n-1)."""
    if field.char and (n * (n - 1)) % field.char == 0:
        raise FieldError(f"characteristic {field.char} divides n(n-1) = {n * (n - 1)}")


QQ = RationalField()
