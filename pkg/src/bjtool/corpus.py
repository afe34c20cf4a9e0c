"""Seeded random instance generators shared by the test suite and selftest."""
from __future__ import annotations

import random

from .bj_data import BJInput, make_minimal
from .errors import AssumptionViolation
from .ring_core import PrimeField, Poly, is_irreducible


def random_poly(F, deg: int, rng: random.Random, monic: bool = False) -> Poly:
    coeffs = [F.random(rng) for _ in range(deg)] + [F.one if monic else F.random(rng)]
    return Poly(F, coeffs, coerce=False)


def random_irreducible(F, deg: int, rng: random.Random) -> Poly:
    while True:
        f = random_poly(F, deg, rng, monic=True)
        if is_irreducible(f):
            return f


def _nonzero_unit(F, rng):
    while True:
        u = F.random(rng)
        if not F.is_zero(u):
            return u


def random_bj_pair(F, n: int, rng: random.Random, max_deg: int = 8):
    """(s, t) with deg <= max_deg; about half the draws plant shared primes so
    that every Newton-polygon type shows up."""
    if rng.random() < 0.4:
        s = random_poly(F, rng.randint(0, max_deg), rng)
        t = random_poly(F, rng.randint(0, max_deg), rng)
        return s, t
    s = Poly.const(F, _nonzero_unit(F, rng))
    t = Poly.const(F, _nonzero_unit(F, rng))
    for _ in range(rng.randint(1, 3)):
        p = random_irreducible(F, rng.choice([1, 1, 1, 2]), rng)
        sv, tv = rng.randint(0, n - 1), rng.randint(0, n)
        if s.deg + sv * p.deg > max_deg or t.deg + tv * p.deg > max_deg:
            continue
        s, t = s * p**sv, t * p**tv
    if rng.random() < 0.5:
        ds, dt = max_deg - s.deg, max_deg - t.deg
        s = s * random_poly(F, rng.randint(0, max(ds // 2, 0)), rng, monic=True)
        t = t * random_poly(F, rng.randint(0, max(dt // 2, 0)), rng, monic=True)
    return s, t


def random_minimal_inputs(count: int, seed: int = 0, primes=(7, 11, 13), degrees=(3, 4, 5), max_deg: int = 8,
                          projective: bool = False) -> list[BJInput]:
    """Minimal inputs with nonzero s, t and nonvanishing discriminant."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = rng.choice(primes)
        n = rng.choice(degrees)
        if (n * (n - 1)) % p == 0:
            continue
        F = PrimeField(p)
        s, t = random_bj_pair(F, n, rng, max_deg)
        if s.is_zero() or t.is_zero():
            continue
        try:
            inp, _, _ = make_minimal(n, s, t, "projective" if projective else "affine")
        except AssumptionViolation:
            continue
        if _disc_nonzero(inp):
            out.append(inp)
    return out


def _disc_nonzero(inp: BJInput) -> bool:
    from .bj_data import discriminant

    return not discriminant(inp.n, inp.s, inp.t).is_zero()


def random_cyclic_cubic(F, rng: random.Random, max_deg: int = 3):
    """(l1, l2) squarefree and coprime, not both trivial."""
    while True:
        l1 = _random_squarefree(F, rng.randint(0, max_deg), rng)
        l2 = _random_squarefree(F, rng.randint(0, max_deg), rng)
        if l1.deg + l2.deg == 0 or not l1.gcd(l2).is_one():
            continue
        return l1, l2


def _random_squarefree(F, deg: int, rng: random.Random) -> Poly:
    while True:
        f = random_poly(F, deg, rng, monic=True)
        if f.deg < 1 or f.gcd(f.derivative()).is_one():
            return f
