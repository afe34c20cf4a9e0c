"""Factorization of univariate polynomials.

Finite fields use the classical pipeline: square-free decomposition,
distinct-degree splitting, then randomized equal-degree splitting driven by
an explicit seed.  Rational polynomials are handed to sympy.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..errors import UnsupportedFactorization, ZeroPolynomial
from .poly import Poly


@dataclass(frozen=True)
class FactoredPoly:
    field: object
    unit: object
    factors: tuple  # ((monic irreducible Poly, exponent), ...) sorted

    @classmethod
    def build(cls, field, unit, factors) -> FactoredPoly:
        merged: dict = {}
        for f, e in factors:
            if e <= 0 or f.deg < 1:
                continue
            merged[f] = merged.get(f, 0) + e
        items = sorted(merged.items(), key=lambda fe: fe[0].sort_key())
        return cls(field, unit, tuple(items))

    @classmethod
    def unit_only(cls, field, unit=None) -> FactoredPoly:
        return cls(field, field.one if unit is None else unit, ())

    def expand(self) -> Poly:
        out = Poly(self.field, (self.unit,), coerce=False)
        for f, e in self.factors:
            out = out * f**e
        return out

    def monic_part(self) -> Poly:
        out = Poly.one(self.field)
        for f, e in self.factors:
            out = out * f**e
        return out

    def primes(self) -> list:
        return [f for f, _ in self.factors]

    def exponent(self, prime: Poly) -> int:
        for f, e in self.factors:
            if f == prime:
                return e
        return 0

    def is_unit(self) -> bool:
        return not self.factors

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def degree(self) -> int:
        return sum(f.deg * e for f, e in self.factors)

    def times(self, other: FactoredPoly) -> FactoredPoly:
        return FactoredPoly.build(
            self.field, self.field.mul(self.unit, other.unit), list(self.factors) + list(other.factors)
        )

    def power(self, k: int) -> FactoredPoly:
        return FactoredPoly.build(
            self.field, self.field.pow(self.unit, k), [(f, e * k) for f, e in self.factors]
        )

    def to_json(self) -> dict:
        return {
            "unit": self.field.to_json(self.unit),
            "factors": [[f.to_json(), e] for f, e in self.factors],
            "text": self.format(),
        }

    def format(self) -> str:
        parts = []
        if not self.field.is_one(self.unit) or not self.factors:
            parts.append(self.field.fmt(self.unit))
        for f, e in self.factors:
            body = f.format() if len(f.coeffs) == 2 and f.field.is_zero(f.coeffs[0]) else f"({f.format()})"
            parts.append(body if e == 1 else f"{body}^{e}")
        return "*".join(parts)


def _pth_root(f: Poly) -> Poly:
    """g with g^p = f, for f whose derivative vanishes (char p)."""
    F = f.field
    p = F.char
    coeffs = f.coeffs[::p]
    if F.kind == "fq":
        e = F.order // p
        coeffs = [F.pow(c, e) for c in coeffs]
    return Poly(F, coeffs, coerce=False)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Monic square-free parts: f = lc * prod(g_i^i); returns [(g, i)] with g != 1."""
    if f.is_zero():
        raise ZeroPolynomial("square-free decomposition of zero")
    f = f.monic()
    if f.deg < 1:
        return []
    F = f.field
    out: list[tuple[Poly, int]] = []
    df = f.derivative()
    if df.is_zero():
        return [(g, e * F.char) for g, e in squarefree_decomposition(_pth_root(f))]
    c = f.gcd(df)
    w = f.exact_div(c)
    i = 1
    while not w.is_one():
        y = w.gcd(c)
        fac = w.exact_div(y)
        if not fac.is_one():
            out.append((fac.monic(), i))
        i += 1
        w = y
        c = c.exact_div(y)
    if not c.is_one():
        if F.char == 0:
            raise ArithmeticError("square-free decomposition did not terminate")
        out.extend((g, e * F.char) for g, e in squarefree_decomposition(_pth_root(c)))
    merged: dict = {}
    for g, e in out:
        merged[g] = merged.get(g, 0) + e
    return sorted(merged.items(), key=lambda ge: (ge[1], ge[0].sort_key()))


def squarefree_part_split(f: Poly) -> tuple[object, Poly, Poly]:
    """Write f = unit * sq^2 * odd with sq, odd monic and odd square-free."""
    unit = f.lc
    sq = Poly.one(f.field)
    odd = Poly.one(f.field)
    for g, e in squarefree_decomposition(f):
        sq = sq * g ** (e // 2)
        if e % 2:
            odd = odd * g
    return unit, sq, odd


def powmod(base: Poly, e: int, mod: Poly) -> Poly:
    result = Poly.one(base.field)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        e >>= 1
        if e:
            base = (base * base) % mod
    return result


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """f monic square-free over a finite field -> [(product of degree-d factors, d)]."""
    F = f.field
    q = F.order
    x = Poly.x(F)
    out = []
    h = x % f if f.deg > 0 else x
    d = 0
    while f.deg >= 2 * (d + 1):
        d += 1
        h = powmod(h, q, f)
        g = f.gcd(h - x)
        if not g.is_one():
            out.append((g, d))
            f = f.exact_div(g)
            h = h % f if f.deg > 0 else h
    if f.deg > 0:
        out.append((f.monic(), f.deg))
    return out


def _trace_map(a: Poly, g: Poly, k: int) -> Poly:
    """a + a^2 + a^4 + ... + a^(2^(k-1)) mod g, for characteristic 2."""
    acc = a % g
    t = acc
    for _ in range(k - 1):
        t = (t * t) % g
        acc = acc + t
    return acc


def equal_degree(g: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split monic square-free g whose irreducible factors all have degree d."""
    if g.deg == d:
        return [g]
    F = g.field
    q = F.order
    while True:
        a = Poly(F, [F.random(rng) for _ in range(g.deg)], coerce=False)
        if a.deg < 1:
            continue
        if q % 2:
            b = powmod(a, (q**d - 1) // 2, g) - 1
        else:
            b = _trace_map(a, g, d * F.degree)
        h = g.gcd(b)
        if 0 < h.deg < g.deg:
            return equal_degree(h, d, rng) + equal_degree(g.exact_div(h), d, rng)


def _factor_finite(f: Poly, rng: random.Random) -> list[tuple[Poly, int]]:
    out = []
    for g, e in squarefree_decomposition(f):
        for part, d in distinct_degree(g):
            for irr in equal_degree(part, d, rng):
                out.append((irr.monic(), e))
    return out


def _factor_rational(f: Poly) -> list[tuple[Poly, int]]:
    import sympy

    x = sympy.Symbol("x")
    expr = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)], x, domain="QQ")
    _, facs = expr.factor_list()
    out = []
    for g, e in facs:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(g.all_coeffs())]
        out.append((Poly(f.field, coeffs, coerce=False).monic(), e))
    if not out and f.deg > 0:
        raise UnsupportedFactorization(f"no factorization returned for {f}")
    return out


def factor_poly(f: Poly, seed: int = 0) -> FactoredPoly:
    """Unit times sorted monic irreducible factors, exactly reproducing f."""
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    F = f.field
    unit = f.lc
    if f.deg < 1:
        return FactoredPoly(F, unit, ())
    if F.kind == "q":
        facs = _factor_rational(f)
    else:
        facs = _factor_finite(f, random.Random(seed))
    result = FactoredPoly.build(F, unit, facs)
    if result.expand() != f:
        raise ArithmeticError(f"factorization does not reproduce {f}")
    return result


def is_irreducible(f: Poly) -> bool:
    if f.deg < 1:
        return False
    if f.deg == 1:
        return True
    F = f.field
    if F.kind == "q":
        fac = factor_poly(f)
        return len(fac.factors) == 1 and fac.factors[0][1] == 1
    g = f.monic()
    if not g.gcd(g.derivative()).is_one():
        return False
    parts = distinct_degree(g)
    return len(parts) == 1 and parts[0][1] == g.deg


def roots(f: Poly, seed: int = 0) -> list:
    """Distinct roots of f in its coefficient field, sorted."""
    if f.field.kind == "q":
        return sorted(-g.coeffs[0] for g, _ in factor_poly(f).factors if g.deg == 1)
    F = f.field
    g = f.monic()
    g = g.gcd(powmod(Poly.x(F), F.order, g) - Poly.x(F)) if g.deg > 0 else g
    if g.deg < 1:
        return []
    lin = equal_degree(g, 1, random.Random(seed))
    return sorted((F.neg(h.coeffs[0]) for h in lin), key=lambda c: c)
