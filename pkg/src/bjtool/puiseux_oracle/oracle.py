"""Ramification data computed from branch expansions alone.

Nothing here reads the (a, b, c) decomposition: places come from factoring
the polynomial discriminant, and every profile is the list of Puiseux
branches found over that place."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import nextprime

from ..bj_data import INF, BJInput, discriminant
from ..divisors import place_key, place_name
from ..errors import InternalCheckFailure, PlaceNotRelevant, PrecisionExhausted, Unsupported
from ..ring_core import Poly, PrimeField, factor_poly
from .puiseux import PuiseuxBranch, _shift, expand_at

MAX_RETRIES = 3


@dataclass(frozen=True)
class OracleProfile:
    place: object
    branches: tuple  # ((e, f), ...) sorted decreasingly

    def indices(self) -> list[int]:
        """Geometric ramification indices: a branch (e, f) splits into f points of index e."""
        return sorted((e for e, f in self.branches for _ in range(f)), reverse=True)

    def different_exponent(self) -> int:
        return sum((e - 1) * f for e, f in self.branches)

    def is_unramified(self) -> bool:
        return all(e == 1 for e, _ in self.branches)

    def to_json(self) -> dict:
        return {
            "place": place_name(self.place),
            "branches": [{"e": e, "f": f} for e, f in self.branches],
            "different_exponent": self.different_exponent(),
        }


def _ints(f: Poly) -> list[int]:
    return [int(c) for c in f.coeffs]


def _padded(coeffs: list[int], lead_zeros: int) -> list[int]:
    return [0] * lead_zeros + coeffs


def local_coefficients(inp: BJInput, place) -> tuple[list, list | None]:
    """z-coefficients and the place polynomial handed to the expansion engine.

    At infinity the chart is u = 1/x with z_inf = u^d z, so the polynomial
    becomes z^n + u^((n-1)d) s(1/u) z + u^(nd) t(1/u)."""
    n = inp.n
    if place == INF:
        if not inp.projective:
            raise PlaceNotRelevant("infinity is only a place in projective mode")
        s_inf, t_inf = inp.inf_vals()
        s_co = _padded(_ints(inp.s)[::-1], s_inf)
        t_co = _padded(_ints(inp.t)[::-1], t_inf)
        place_coeffs = None
    else:
        s_co, t_co = _ints(inp.s), _ints(inp.t)
        place_coeffs = _ints(place)
    coeffs = [t_co, s_co] + [[] for _ in range(n - 2)] + [[1]]
    return coeffs, place_coeffs


def _infinity_discriminant_valuation(inp: BJInput) -> int:
    n, d = inp.n, inp.twist
    F = inp.field
    u = Poly.x(F)
    s_inf = inp.s.reverse(inp.s.deg) * u ** ((n - 1) * d - inp.s.deg)
    t_inf = inp.t.reverse(inp.t.deg) * u ** (n * d - inp.t.deg)
    return discriminant(n, s_inf, t_inf).valuation(u)


def default_precision(n: int, disc_valuation: int) -> int:
    return 4 * n * (1 + disc_valuation)


def _require_prime_field(inp: BJInput) -> int:
    p = inp.field.p
    if not p or inp.field.kind != "fp":
        raise Unsupported("branch expansions need a prime field; reduce rational inputs first")
    return p


def _residual_valuation(branch: PuiseuxBranch, coeffs) -> int | None:
    """V-adic valuation of f(series) within the branch precision (None if zero there)."""
    K = branch.field
    prec = branch.precision
    x_series = _x_series(branch, prec)
    acc = K.upoly_zero(0)
    for c in reversed(coeffs):
        acc = K.umul(acc, branch.series, trunc=prec) if acc.shape[0] else acc
        acc = K.uadd(acc, _eval_local(K, c, x_series, prec))
    acc = K.utrim(acc[:prec])
    return K.uval(acc)


def _x_series(branch: PuiseuxBranch, prec: int):
    """The local parameter as a V-series: theta + u_coeff V^e (or u_coeff V^e at infinity)."""
    K = branch.field
    out = K.upoly_zero(min(branch.e, prec - 1) + 1)
    if not branch.at_infinity:
        out[0] = branch.theta
    if branch.e < prec:
        out[branch.e] = branch.u_coeff
    return out


def _eval_local(K, coeffs, x_series, prec: int):
    acc = K.upoly_zero(0)
    for c in reversed(coeffs):
        acc = K.umul(acc, x_series, trunc=prec) if acc.shape[0] else acc
        acc = K.uadd(acc, K.upoly_from_fp([c]))
    return K.utrim(acc[:prec])


def puiseux_branches(inp: BJInput, place, precision: int | None = None, seed: int = 0) -> list[PuiseuxBranch]:
    """Branches with series over one place, verified against f at working precision."""
    p = _require_prime_field(inp)
    coeffs, place_coeffs = local_coefficients(inp, place)
    if precision is None:
        if place == INF:
            v = _infinity_discriminant_valuation(inp)
        else:
            v = discriminant(inp.n, inp.s, inp.t).valuation(place)
        precision = default_precision(inp.n, v)
    last = None
    for _ in range(MAX_RETRIES + 1):
        try:
            branches = expand_at(coeffs, place_coeffs, p, want_series=True, precision=precision, seed=seed)
            for br in branches:
                br.at_infinity = place == INF
                br.twist = inp.twist or 0
                val = _residual_valuation(br, coeffs)
                if val is not None:
                    raise PrecisionExhausted(f"branch residual has valuation {val} < {br.precision}")
                br.check_valuation = br.precision
            return branches
        except PrecisionExhausted as exc:
            last = exc
            precision *= 2
    raise PrecisionExhausted(f"no stable expansion after {MAX_RETRIES} retries: {last}")


def branch_valuation(elem, branch: PuiseuxBranch) -> Fraction:
    """Normalized valuation of an element of k(x)[alpha] on a branch (x-units)."""
    K = branch.field
    prec = branch.precision
    x_series = _x_series(branch, prec)
    n = len(elem.num)
    if branch.at_infinity:
        # x = 1/U and alpha = z_inf / U^d; clear U-denominators by U^M
        d = branch.twist
        degs = [c.deg + i * d for i, c in enumerate(elem.num) if not c.is_zero()]
        M = max(degs, default=0)
        acc = K.upoly_zero(0)
        zpow = K.upoly_zero(1)
        zpow[0] = K.one()
        for i in range(n):
            c = elem.num[i]
            if not c.is_zero():
                rev = _ints(c)[::-1]
                term = _eval_local(K, rev, x_series, prec)
                term = K.umul(term, zpow, trunc=prec)
                k = M - c.deg - i * d
                term = K.uscale(K.pow(branch.u_coeff, k), term)
                acc = K.uadd(acc, _shift(K, term, k * branch.e)[:prec])
            zpow = K.umul(zpow, branch.series, trunc=prec)
        num_val = _val_or_raise(K, acc[:prec])
        den_val = _val_or_raise(K, _eval_local(K, _ints(elem.den)[::-1], x_series, prec))
        total = (num_val - M * branch.e) - (den_val - elem.den.deg * branch.e)
        return Fraction(total, branch.e)
    acc = K.upoly_zero(0)
    for c in reversed(elem.num):
        acc = K.umul(acc, branch.series, trunc=prec) if acc.shape[0] else acc
        acc = K.uadd(acc, _eval_local(K, _ints(c), x_series, prec))
    num_val = _val_or_raise(K, acc[:prec])
    den_val = _val_or_raise(K, _eval_local(K, _ints(elem.den), x_series, prec))
    return Fraction(num_val - den_val, branch.e)


def _val_or_raise(K, A) -> int:
    v = K.uval(K.utrim(A))
    if v is None:
        raise PrecisionExhausted("value vanishes to the working precision")
    return v


def element_valuation(elem, inp: BJInput, place, seed: int = 0) -> list[Fraction]:
    """Valuations of elem on every branch over place, doubling precision when needed."""
    precision = None
    for _ in range(MAX_RETRIES + 1):
        branches = puiseux_branches(inp, place, precision, seed)
        try:
            return [branch_valuation(elem, br) for br in branches]
        except PrecisionExhausted:
            precision = 2 * max(br.precision // br.e for br in branches)
    raise PrecisionExhausted("element valuation not resolved after retries")


def profile_at(inp: BJInput, place, seed: int = 0) -> OracleProfile:
    p = _require_prime_field(inp)
    coeffs, place_coeffs = local_coefficients(inp, place)
    branches = expand_at(coeffs, place_coeffs, p, want_series=False, seed=seed)
    pairs = sorted(((b.e, b.f) for b in branches), reverse=True)
    return OracleProfile(place, tuple(pairs))


def ramification_oracle(inp: BJInput, seed: int = 0) -> dict:
    """Place -> OracleProfile for every place dividing delta (and infinity when
    it divides the discriminant of the chart there).  Empty when delta is a unit."""
    if inp.field.kind == "q":
        return _rational_oracle(inp, seed)
    delta = discriminant(inp.n, inp.s, inp.t)
    if delta.is_zero():
        raise InternalCheckFailure("delta vanishes")
    out = {}
    for place in sorted(factor_poly(delta, seed).primes(), key=place_key):
        out[place] = profile_at(inp, place, seed)
    if inp.projective and _infinity_discriminant_valuation(inp) > 0:
        out[INF] = profile_at(inp, INF, seed)
    return out


# rational inputs: reduction modulo good primes


def _reduce_poly(f: Poly, F) -> Poly:
    p = F.p
    return Poly(F, [c.numerator * pow(c.denominator, -1, p) % p for c in f.coeffs], coerce=False)


def _good_prime(p: int, inp: BJInput, delta: Poly, places: list) -> bool:
    n = inp.n
    if (n * (n - 1)) % p == 0:
        return False
    polys = [inp.s, inp.t, delta] + places
    for f in polys:
        if any(c.denominator % p == 0 for c in f.coeffs) or f.lc.numerator % p == 0:
            return False
    F = PrimeField(p)
    rad = Poly.one(F)
    for P in places:
        rad = rad * _reduce_poly(P, F)
    return rad.gcd(rad.derivative()).is_one()


def good_primes(inp: BJInput, count: int = 3, start: int = 10) -> list[int]:
    delta = discriminant(inp.n, inp.s, inp.t)
    places = factor_poly(delta).primes()
    out, p = [], start
    while len(out) < count:
        p = nextprime(p)
        if _good_prime(p, inp, delta, places):
            out.append(p)
    return out


def reduce_input(inp: BJInput, p: int) -> BJInput:
    F = PrimeField(p)
    return BJInput(inp.n, _reduce_poly(inp.s, F), _reduce_poly(inp.t, F), F, inp.mode, inp.twist)


def _rational_oracle(inp: BJInput, seed: int) -> dict:
    """Geometric profiles over Q, required to agree modulo three good primes."""
    delta = discriminant(inp.n, inp.s, inp.t)
    places = sorted(factor_poly(delta, seed).primes(), key=place_key)
    per_prime = []
    for p in good_primes(inp):
        red = reduce_input(inp, p)
        F = red.field
        result = {}
        for P in places:
            seen = set()
            for Q in factor_poly(_reduce_poly(P, F), seed).primes():
                seen.add(tuple(profile_at(red, Q, seed).indices()))
            if len(seen) != 1:
                raise InternalCheckFailure(f"conjugate places of {P.format()} disagree modulo {p}")
            result[P] = seen.pop()
        if inp.projective and _infinity_discriminant_valuation(inp) > 0:
            result[INF] = tuple(profile_at(red, INF, seed).indices())
        per_prime.append(result)
    if any(r != per_prime[0] for r in per_prime[1:]):
        raise InternalCheckFailure("oracle profiles differ between reductions")
    return {place: OracleProfile(place, tuple((e, 1) for e in idx)) for place, idx in per_prime[0].items()}
