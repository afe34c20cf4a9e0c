"""Newton polygons and rational Newton-Puiseux expansion over F_q[[U]].

A place P of k[x] is moved to U = 0 by x = theta + U over F_q = F_p[theta]/(P).
The recursion follows the classical scheme: for each edge of slope -h/e and
each factor psi of its residual polynomial, a simple factor closes a branch
with ramification e and residue degree deg(psi); a repeated (linear) factor
mu triggers U = mu^b V^e, z = V^h (mu^a + z1) with a e - b h = 1 and the
expansion continues in z1.  Nonlinear repeated factors are first made linear
by passing to F_q[y]/(psi)."""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from math import comb, gcd

import numpy as np

from ..errors import InternalCheckFailure, PrecisionExhausted, WildRamification
from .gf import GF, extension_by


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple  # ((j, valuation), ...)
    segments: tuple  # ((slope as Fraction, horizontal length), ...), slopes increasing

    def ramified_segments(self) -> tuple:
        return tuple(seg for seg in self.segments if seg[0] != 0 and seg[0].denominator > 1)

    def to_json(self) -> dict:
        return {
            "points": [list(pt) for pt in self.points],
            "segments": [{"slope": str(sl), "length": ln} for sl, ln in self.segments],
        }


def lower_hull(points) -> list:
    """Lower convex hull of points sorted by abscissa (duplicates removed)."""
    pts = sorted(points)
    hull: list = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_polygon(n: int, s_val, t_val) -> NewtonPolygon:
    """Newton polygon of z^n + s z + t from v(s), v(t) (None for a zero coefficient)."""
    pts = [(n, 0)]
    if s_val is not None:
        pts.append((1, s_val))
    if t_val is not None:
        pts.append((0, t_val))
    hull = lower_hull(pts)
    segs = []
    for (j1, v1), (j2, v2) in zip(hull, hull[1:]):
        segs.append((Fraction(v2 - v1, j2 - j1), j2 - j1))
    return NewtonPolygon(tuple(sorted(pts)), tuple(segs))


@dataclass
class PuiseuxBranch:
    e: int
    f: int
    field: GF | None = None
    u_coeff: object = None  # u = u_coeff * V^e
    series: object = None  # z as a V-power series, shape (N, m)
    precision: int = 0  # number of valid V-terms in series
    theta: object = None  # image of the place's root in the branch field
    check_valuation: int | None = None  # v_V(f(branch)) lower bound
    at_infinity: bool = False
    twist: int = 0  # alpha = z / U^twist at infinity

    def to_json(self) -> dict:
        out = {"e": self.e, "f": self.f}
        if self.series is not None:
            out["precision"] = self.precision
            out["series_terms"] = [self.field.fmt(c) for c in self.series[: min(8, len(self.series))]]
        return out


@dataclass
class _State:
    K: GF
    E: int = 1
    Fdeg: int = 1
    u_coeff: object = None
    zpre: object = None  # V-polynomial
    z_coeff: object = None
    H: int = 0
    theta: object = None


@dataclass
class _Ctx:
    want_series: bool
    precision: int
    rng: random.Random
    branches: list = dfield(default_factory=list)


def _coeff_at(K: GF, A, k: int):
    return A[k] if 0 <= k < A.shape[0] else K.zero()


def _spread(K: GF, A, e: int, c):
    """A(c * V^e) for a V-polynomial A."""
    if A.shape[0] == 0:
        return A
    out = K.upoly_zero((A.shape[0] - 1) * e + 1)
    cur = K.one()
    for k in range(A.shape[0]):
        if A[k].any():
            out[k * e] = K.mul(A[k], cur)
        cur = K.mul(cur, c)
    return out


def _shift(K: GF, A, k: int):
    if k == 0 or A.shape[0] == 0:
        return A
    if k > 0:
        return np.concatenate([K.upoly_zero(k), A])
    if A[:-k].any():
        raise InternalCheckFailure("negative shift would drop nonzero terms")
    return A[-k:]


def _bezout(e: int, h: int):
    """(a, b) with a e - b h = 1."""
    if h == 0:
        return 1, 0
    a = pow(e, -1, h) if h > 1 else 0
    return a, (a * e - 1) // h


def _substitute(K: GF, G, mu, e: int, h: int, L: int):
    a, b = _bezout(e, h)
    mub = K.pow(mu, b)
    mua = K.pow(mu, a)
    d = len(G) - 1
    spread = [K.utrim(_spread(K, Gj, e, mub)) for Gj in G]
    out = []
    mua_pow = [K.one()]
    for _ in range(d):
        mua_pow.append(K.mul(mua_pow[-1], mua))
    for k in range(d + 1):
        acc = K.upoly_zero(0)
        for j in range(k, d + 1):
            if spread[j].shape[0] == 0:
                continue
            c = K.smul(comb(j, k), mua_pow[j - k])
            if not c.any():
                continue
            term = _shift(K, K.uscale(c, spread[j]), h * j)
            acc = K.uadd(acc, term)
        out.append(K.utrim(_shift(K, K.utrim(acc), -L)))
    return out, a, b, mub


def _advance_state(st: _State, mu, e: int, h: int, a: int, b: int) -> _State:
    K = st.K
    mub = K.pow(mu, b)
    u_coeff = K.mul(st.u_coeff, K.pow(mub, st.E))
    zpre = _spread(K, st.zpre, e, mub) if st.zpre.shape[0] else st.zpre
    H_new = e * st.H + h
    head = K.mul(st.z_coeff, K.mul(K.pow(mub, st.H), K.pow(mu, a)))
    mono = K.upoly_zero(H_new + 1)
    mono[H_new] = head
    zpre = K.utrim(K.uadd(zpre, mono))
    z_coeff = K.mul(st.z_coeff, K.pow(mub, st.H))
    return _State(K, st.E * e, st.Fdeg, u_coeff, zpre, z_coeff, H_new, st.theta)


def _base_change(st: _State, G, psi):
    """Move the state and polynomial into F_q[y]/(psi); returns (state, G, root)."""
    K = st.K
    Kn, emb, root = extension_by(K, psi)

    def up(A):
        return A @ emb % K.p if A.shape[0] else Kn.upoly_zero(0)

    def up1(a):
        return a @ emb % K.p

    G2 = [up(Gj) for Gj in G]
    st2 = _State(Kn, st.E, st.Fdeg * (len(psi) - 1), up1(st.u_coeff), up(st.zpre), up1(st.z_coeff), st.H,
                 up1(st.theta))
    return st2, G2, root


def _residual(K: GF, G, j1: int, v1: int, e: int, h: int, g: int):
    return [_coeff_at(K, G[j1 + k * e], v1 - k * h) for k in range(g + 1)]


def _edges(K: GF, G, r: int):
    pts = []
    for j in range(r + 1):
        v = K.uval(G[j])
        if v is not None:
            pts.append((j, v))
    hull = lower_hull(pts)
    out = []
    for (j1, v1), (j2, v2) in zip(hull, hull[1:]):
        if v1 == v2:
            continue
        dj, dv = j2 - j1, v1 - v2
        g = gcd(dj, dv)
        out.append((j1, v1, dj // g, dv // g, g))
    return out


def _handle_factor(ctx: _Ctx, st: _State, G, psi, mult: int, j1: int, v1: int, e: int, h: int):
    K = st.K
    p = K.p
    if e % p == 0:
        raise WildRamification(f"ramification index {e} divisible by the characteristic")
    dpsi = len(psi) - 1
    if mult == 1 and not ctx.want_series:
        ctx.branches.append(PuiseuxBranch(st.E * e, st.Fdeg * dpsi))
        return
    if dpsi > 1:
        st, G, mu = _base_change(st, G, psi)
        K = st.K
    else:
        mu = K.neg(K.mul(psi[0], K.inv(psi[1])))
    L = e * v1 + h * j1
    G1, a, b, _ = _substitute(K, G, mu, e, h, L)
    st1 = _advance_state(st, mu, e, h, a, b)
    # the new polynomial has exactly `mult` roots of positive valuation
    if K.uval(G1[mult]) != 0 or any(K.uval(G1[k]) == 0 for k in range(mult)):
        raise InternalCheckFailure("unexpected Newton polygon after substitution")
    if mult == 1:
        ctx.branches.append(_hensel_branch(ctx, st1, G1))
    else:
        _expand(ctx, st1, G1, mult)


def _factor_and_handle(ctx: _Ctx, st: _State, G, phi, j1: int, v1: int, e: int, h: int):
    K = st.K
    for part, k, mult in K.factor(phi, ctx.rng, split=False):
        if mult == 1 and not ctx.want_series:
            # simple factors of degree k close one branch each; no need to split
            if e % K.p == 0:
                raise WildRamification(f"ramification index {e} divisible by the characteristic")
            ctx.branches += [PuiseuxBranch(st.E * e, st.Fdeg * k) for _ in range((len(part) - 1) // k)]
            continue
        for irr in K.equal_degree(part, k, ctx.rng):
            _handle_factor(ctx, st, G, irr, mult, j1, v1, e, h)


def _expand(ctx: _Ctx, st: _State, G, r: int):
    K = st.K
    for j1, v1, e, h, g in _edges(K, G, r):
        phi = _residual(K, G, j1, v1, e, h, g)
        _factor_and_handle(ctx, st, G, phi, j1, v1, e, h)


def _expand_top(ctx: _Ctx, st: _State, G):
    """Top level: roots of positive valuation, then unit roots via z = mu + z1."""
    K = st.K
    d = len(G) - 1
    j0 = next(j for j in range(d + 1) if K.uval(G[j]) == 0)
    if j0 > 0:
        _expand(ctx, st, G, j0)
    if j0 < d:
        phi = [_coeff_at(K, G[j], 0) for j in range(j0, d + 1)]
        _factor_and_handle(ctx, st, G, phi, j0, 0, 1, 0)


def _hensel_branch(ctx: _Ctx, st: _State, G) -> PuiseuxBranch:
    """Simple root of positive valuation of G; builds the branch series."""
    K = st.K
    if not ctx.want_series:
        return PuiseuxBranch(st.E, st.Fdeg)
    N = ctx.precision * st.E
    z = K.upoly_zero(1)
    prec = 1
    d = len(G) - 1
    while prec < N:
        prec = min(2 * prec, N)
        val = _horner(K, G, z, prec)
        dG = [K.smul(j, Gj) if Gj.shape[0] else Gj for j, Gj in enumerate(G)][1:]
        der = _horner(K, dG, z, prec)
        if der.shape[0] == 0 or not der[0].any():
            raise PrecisionExhausted("derivative vanishes at the simple root")
        corr = K.umul(val, K.uinv(der, prec), trunc=prec)
        z = _pad_rows(K, z, prec)
        z = (z - _pad_rows(K, corr, prec)) % K.p
    series = K.uadd(st.zpre, _shift(K, K.uscale(st.z_coeff, z), st.H))
    precision = N + st.H
    series = _pad_rows(K, series, precision)[:precision]
    return PuiseuxBranch(st.E, st.Fdeg, K, st.u_coeff, series, precision, st.theta)


def _pad_rows(K: GF, A, L: int):
    if A.shape[0] >= L:
        return A[:L]
    return np.concatenate([A, K.upoly_zero(L - A.shape[0])])


def _horner(K: GF, G, z, prec: int):
    acc = K.upoly_zero(0)
    for Gj in reversed(G):
        acc = K.umul(acc, z, trunc=prec) if acc.shape[0] and z.shape[0] else K.upoly_zero(0)
        acc = K.uadd(acc, Gj[:prec])
    return K.utrim(acc[:prec])


def place_field(place_coeffs, p: int) -> GF:
    """Residue field F_p[theta]/(P) for a monic irreducible P (integer coefficients)."""
    return GF(p, place_coeffs)


def expand_at(coeffs_z, place_coeffs, p: int, want_series: bool = False, precision: int = 16,
              seed: int = 0) -> list[PuiseuxBranch]:
    """All branches of sum_j c_j(x) z^j (monic in z) over the place P(x) = 0.

    coeffs_z: ascending z-coefficients, each an ascending list of ints mod p.
    place_coeffs: ascending coefficients of P, or None for the point at U = 0
    of coefficients that are already local (used for infinity)."""
    K = GF(p, place_coeffs if place_coeffs is not None else [0, 1])
    theta = K.theta()
    G = [K.utaylor(c, theta) for c in coeffs_z]
    if len(G[-1]) != 1 or not np.array_equal(G[-1][0], K.one()):
        raise ValueError("polynomial must be monic in z")
    st = _State(K, 1, 1, K.one(), K.upoly_zero(0), K.one(), 0, theta)
    ctx = _Ctx(want_series, precision, random.Random(seed))
    _expand_top(ctx, st, G)
    d = len(coeffs_z) - 1
    total = sum(b.e * b.f for b in ctx.branches)
    if total != d:
        raise InternalCheckFailure(f"branch data sums to {total}, expected {d}")
    return ctx.branches
