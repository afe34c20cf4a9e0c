"""Sound irreducibility certificates for monic polynomials in k[x][z].

A monic factorization over k[x] survives every specialization x -> a, so an
irreducible specialization of full z-degree certifies irreducibility.  A
reducibility verdict is only returned with an explicit factor.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dfield

from .factor import factor_poly, is_irreducible
from .fields import ExtensionField
from .poly import Poly


@dataclass
class IrreducibilityResult:
    status: str  # "irreducible" | "reducible" | "unverified"
    witness: object = None
    factor: list | None = None
    warnings: list = dfield(default_factory=list)

    def to_json(self) -> dict:
        out = {"status": self.status, "warnings": list(self.warnings)}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        if self.factor is not None:
            out["factor"] = [c.to_json() for c in self.factor]
        return out


def _specialize(coeffs: list[Poly], a, field) -> Poly:
    return Poly(field, [c.eval(a) for c in coeffs], coerce=False)


def _sample_points(F, samples: int):
    if F.kind == "q":
        yield 0
        for k in itertools.count(1):
            yield k
            yield -k
    else:
        yield from itertools.islice(F.elements(), samples)


def _linear_factor(coeffs: list[Poly], max_divisors: int = 4096):
    """Look for z - r(x) dividing f by testing divisors of the constant term."""
    F = coeffs[0].field
    c0 = coeffs[0]
    n = len(coeffs) - 1
    if c0.is_zero():
        return [Poly.zero(F), Poly.one(F)]
    bound = min((coeffs[i].deg // (n - i) for i in range(n) if not coeffs[i].is_zero()), default=0)
    fac = factor_poly(c0)
    ranges = [range(min(e, bound // max(p.deg, 1)) + 1) for p, e in fac.factors]
    count = 0
    units = list(F.elements()) if F.kind != "q" else None
    for exps in itertools.product(*ranges):
        cand = Poly.one(F)
        for (p, _), k in zip(fac.factors, exps):
            cand = cand * p**k
        if cand.deg > bound:
            continue
        scalars = [u for u in units if not F.is_zero(u)] if units is not None else _rational_units(fac.unit)
        for u in scalars:
            count += 1
            if count > max_divisors:
                return None
            r = cand.scale(u)
            val = Poly.zero(F)
            for c in reversed(coeffs):
                val = val * r + c
            if val.is_zero():
                return [-r, Poly.one(F)]
    return None


def _rational_units(unit):
    from fractions import Fraction

    unit = Fraction(unit)
    out = []
    for num in _divisors(abs(unit.numerator)):
        for den in _divisors(unit.denominator):
            out.extend([Fraction(num, den), Fraction(-num, den)])
    return out


def _divisors(m: int):
    return [d for d in range(1, m + 1) if m % d == 0] if m < 10**4 else [1, m]


def irreducibility_check(coeffs: list[Poly], samples: int = 32, seed: int = 0) -> IrreducibilityResult:
    """coeffs: ascending z-coefficients in k[x], the last one equal to 1."""
    if not coeffs or not coeffs[-1].is_one():
        raise ValueError("polynomial must be monic in z")
    F = coeffs[-1].field
    n = len(coeffs) - 1
    if n <= 1:
        return IrreducibilityResult("irreducible", witness="degree <= 1")
    factor = _linear_factor(coeffs)
    if factor is not None:
        return IrreducibilityResult("reducible", factor=factor)
    tried = 0
    for a in _sample_points(F, samples):
        if tried >= samples:
            break
        tried += 1
        g = _specialize(coeffs, F(a) if F.kind == "q" else a, F)
        if g.deg == n and is_irreducible(g):
            return IrreducibilityResult("irreducible", witness=f"x={F.fmt(F(a) if F.kind == 'q' else a)}")
    if F.kind == "fp":
        rng = random.Random(seed)
        for m in (2, 3):
            E = _small_extension(F.p, m, rng)
            for _ in range(samples):
                a = E.random(rng)
                lifted = [c.map_field(E, E.from_int) for c in coeffs]
                g = _specialize(lifted, a, E)
                if g.deg == n and is_irreducible(g):
                    return IrreducibilityResult("irreducible", witness=f"x={E.fmt(a)} in {E!r}")
    return IrreducibilityResult(
        "unverified", warnings=["no irreducible specialization found; irreducibility not certified"]
    )


def _small_extension(p: int, m: int, rng: random.Random) -> ExtensionField:
    from .fields import PrimeField

    P = PrimeField(p)
    while True:
        mod = [rng.randrange(p) for _ in range(m)] + [1]
        if is_irreducible(Poly(P, mod)):
            return ExtensionField(p, mod)
