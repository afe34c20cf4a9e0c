"""Closed-form branch locus, local splitting profiles and ramification divisor
of a minimal B-J extension, read off from the (a, b, c) decomposition."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .bj_data import INF, BJDecomposition
from .divisors import Divisor, place_key, place_name
from .errors import PlaceNotRelevant
from .ring_core import FactoredPoly, Poly, factor_poly


@dataclass(frozen=True)
class RamProfile:
    place: object
    branches: tuple  # ((e, count), ...) with e decreasing
    slot: str = "none"  # which factor of D carries the place: a<k>, b<k>, c1, c0, none

    @classmethod
    def of(cls, place, pairs, slot="none") -> RamProfile:
        merged: dict = {}
        for e, k in pairs:
            if k:
                merged[e] = merged.get(e, 0) + k
        return cls(place, tuple(sorted(merged.items(), reverse=True)), slot)

    def indices(self) -> list[int]:
        """Multiset of ramification indices, sorted decreasingly."""
        return [e for e, k in self.branches for _ in range(k)]

    def different_exponent(self) -> int:
        return sum((e - 1) * k for e, k in self.branches)

    def is_unramified(self) -> bool:
        return all(e == 1 for e, _ in self.branches)

    def to_json(self) -> dict:
        return {
            "place": place_name(self.place),
            "slot": self.slot,
            "branches": [{"e": e, "count": k} for e, k in self.branches],
        }


@dataclass(frozen=True)
class RamDivisor:
    entries: tuple  # ((place, ((branch id, coefficient), ...)), ...)

    def pushforward(self) -> Divisor:
        """Downstairs divisor sum of (e - 1) over branches (residue degree 1)."""
        return Divisor.from_dict({p: sum(c for _, c in br) for p, br in self.entries})

    def is_zero(self) -> bool:
        return not self.entries

    def to_json(self) -> dict:
        return {
            "entries": [
                {"place": place_name(p), "branches": [{"id": b, "coefficient": c} for b, c in br]}
                for p, br in self.entries
            ]
        }


def profile_for_slot(n: int, slot: str, place=None) -> RamProfile:
    if slot.startswith("a"):
        k = int(slot[1:])
        g = gcd(n, k)
        return RamProfile.of(place, [(n // g, g)], slot)
    if slot.startswith("b"):
        k = int(slot[1:])
        g = gcd(n - 1, k)
        return RamProfile.of(place, [((n - 1) // g, g), (1, 1)], slot)
    if slot == "c1":
        return RamProfile.of(place, [(2, 1), (1, n - 2)], slot)
    return RamProfile.of(place, [(1, n)], slot)


def place_slot(dec: BJDecomposition, place) -> str:
    n = dec.n
    if place == INF:
        if dec.infinity is None:
            raise PlaceNotRelevant("infinity is only a place in projective mode")
        for k in range(1, n):
            if dec.inf_a.get(k):
                return f"a{k}"
        for k in range(1, n - 1):
            if dec.inf_b.get(k):
                return f"b{k}"
        if dec.inf_c1:
            return "c1"
        return "c0" if dec.inf_c0 else "none"
    for k in range(1, n):
        part = dec.a_parts.get(k)
        if part is not None and part.exponent(place):
            return f"a{k}"
    for k in range(1, n - 1):
        part = dec.b_parts.get(k)
        if part is not None and part.exponent(place):
            return f"b{k}"
    if dec.c1.deg > 0 and dec.c1.valuation(place) > 0:
        return "c1"
    if dec.c0.deg > 0 and dec.c0.valuation(place) > 0:
        return "c0"
    return "none"


def local_profile(dec: BJDecomposition, place, strict: bool = False) -> RamProfile:
    """Splitting pattern over one place; places outside the support of
    delta get n unramified branches (or PlaceNotRelevant when strict)."""
    slot = place_slot(dec, place)
    if slot == "none" and strict:
        raise PlaceNotRelevant(f"{place_name(place)} does not divide the discriminant")
    return profile_for_slot(dec.n, slot, place)


def relevant_places(dec: BJDecomposition, seed: int = 0) -> list:
    """All places dividing delta (plus infinity when it is ramified or in c)."""
    places = set()
    for k, part in list(dec.a_parts.items()) + list(dec.b_parts.items()):
        if k >= 1:
            places.update(part.primes())
    for f in (dec.c0, dec.c1):
        if f.deg > 0:
            places.update(factor_poly(f, seed).primes())
    out = sorted(places, key=place_key)
    if dec.infinity is not None and place_slot(dec, INF) != "none":
        out.append(INF)
    return out


def closure_discriminant(dec: BJDecomposition) -> Poly:
    """Monic D = c1 * prod a_k^(n - gcd(n,k)) * prod b_k^(n-1-gcd(n-1,k))."""
    n = dec.n
    D = dec.c1
    for k in range(1, n):
        D = D * dec.a_monic(k) ** (n - gcd(n, k))
    for k in range(1, n - 1):
        D = D * dec.b_monic(k) ** (n - 1 - gcd(n - 1, k))
    return D


def closure_discriminant_factored(dec: BJDecomposition, seed: int = 0) -> FactoredPoly:
    n, F = dec.n, dec.field
    facs = []
    for k in range(1, n):
        part = dec.a_parts.get(k)
        if part is not None:
            facs += [(p, (n - gcd(n, k)) * e) for p, e in part.factors]
    for k in range(1, n - 1):
        part = dec.b_parts.get(k)
        if part is not None:
            facs += [(p, (n - 1 - gcd(n - 1, k)) * e) for p, e in part.factors]
    if dec.c1.deg > 0:
        facs += list(factor_poly(dec.c1, seed).factors)
    return FactoredPoly.build(F, F.one, facs)


def discriminant_divisor(dec: BJDecomposition, seed: int = 0) -> Divisor:
    """div(D), including the point at infinity in projective mode."""
    div = Divisor.of_factored(closure_discriminant_factored(dec, seed))
    if dec.infinity is not None:
        div = div + Divisor.point(INF, profile_for_slot(dec.n, place_slot(dec, INF)).different_exponent())
    return div


def ramification_divisor(dec: BJDecomposition, seed: int = 0) -> RamDivisor:
    entries = []
    for place in relevant_places(dec, seed):
        prof = local_profile(dec, place)
        branches = []
        for e, k in prof.branches:
            for idx in range(1, k + 1):
                if e > 1:
                    branches.append((f"e{e}_{idx}", e - 1))
        if branches:
            entries.append((place, tuple(branches)))
    return RamDivisor(tuple(entries))
