"""Divisors on A^1 or P^1: finite integer combinations of monic irreducible
polynomials and, in projective mode, the point at infinity."""
from __future__ import annotations

from dataclasses import dataclass

from .bj_data import INF
from .ring_core import FactoredPoly, Poly, factor_poly


def place_degree(place) -> int:
    return 1 if place == INF else place.deg


def place_key(place):
    return (1, ()) if place == INF else (0, place.sort_key())


def place_name(place) -> str:
    return "inf" if place == INF else place.format()


@dataclass(frozen=True)
class Divisor:
    entries: tuple  # ((place, coefficient), ...) sorted, coefficients nonzero

    @classmethod
    def from_dict(cls, d: dict) -> Divisor:
        items = sorted(((p, c) for p, c in d.items() if c), key=lambda pc: place_key(pc[0]))
        return cls(tuple(items))

    @classmethod
    def zero(cls) -> Divisor:
        return cls(())

    @classmethod
    def of_factored(cls, fp: FactoredPoly, k: int = 1) -> Divisor:
        return cls.from_dict({p: e * k for p, e in fp.factors})

    @classmethod
    def of_poly(cls, f: Poly, seed: int = 0) -> Divisor:
        return cls.of_factored(factor_poly(f, seed))

    @classmethod
    def point(cls, place, k: int = 1) -> Divisor:
        return cls.from_dict({place: k})

    def as_dict(self) -> dict:
        return dict(self.entries)

    def __getitem__(self, place) -> int:
        for p, c in self.entries:
            if p == place:
                return c
        return 0

    def __add__(self, other: Divisor) -> Divisor:
        d = self.as_dict()
        for p, c in other.entries:
            d[p] = d.get(p, 0) + c
        return Divisor.from_dict(d)

    def __neg__(self) -> Divisor:
        return Divisor(tuple((p, -c) for p, c in self.entries))

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def __mul__(self, k: int) -> Divisor:
        return Divisor.from_dict({p: c * k for p, c in self.entries})

    __rmul__ = __mul__

    def degree(self) -> int:
        return sum(c * place_degree(p) for p, c in self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def affine_part(self) -> Divisor:
        return Divisor(tuple((p, c) for p, c in self.entries if p != INF))

    def reduced(self) -> Divisor:
        return Divisor(tuple((p, 1) for p, c in self.entries if c))

    def support(self) -> list:
        return [p for p, _ in self.entries]

    def to_json(self) -> dict:
        return {
            "entries": [[place_name(p), c] for p, c in self.entries],
            "degree": self.degree(),
            "text": self.format(),
        }

    def format(self) -> str:
        if not self.entries:
            return "0"
        parts = []
        for p, c in self.entries:
            term = f"[{place_name(p)}]"
            parts.append(term if c == 1 else f"{c}{term}")
        return " + ".join(parts).replace("+ -", "- ")
