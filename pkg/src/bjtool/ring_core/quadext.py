"""Arithmetic in k[x][y]/(y^2 - d)."""
from __future__ import annotations

from dataclasses import dataclass

from .poly import Poly


@dataclass(frozen=True)
class QuadExtElem:
    u0: Poly
    u1: Poly
    d: Poly

    @classmethod
    def of(cls, u0, d: Poly, u1=None) -> QuadExtElem:
        F = d.field
        u0 = u0 if isinstance(u0, Poly) else Poly.const(F, u0)
        u1 = Poly.zero(F) if u1 is None else (u1 if isinstance(u1, Poly) else Poly.const(F, u1))
        return cls(u0, u1, d)

    @classmethod
    def y(cls, d: Poly) -> QuadExtElem:
        return cls(Poly.zero(d.field), Poly.one(d.field), d)

    def _lift(self, other) -> QuadExtElem:
        if isinstance(other, QuadExtElem):
            if other.d != self.d:
                raise ValueError("quadratic extensions with different moduli")
            return other
        return QuadExtElem.of(other, self.d)

    def __add__(self, other):
        o = self._lift(other)
        return QuadExtElem(self.u0 + o.u0, self.u1 + o.u1, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtElem(-self.u0, -self.u1, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuadExtElem(
            self.u0 * o.u0 + self.d * self.u1 * o.u1,
            self.u0 * o.u1 + self.u1 * o.u0,
            self.d,
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = QuadExtElem.of(1, self.d)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def is_zero(self) -> bool:
        return self.u0.is_zero() and self.u1.is_zero()

    def conjugate(self) -> QuadExtElem:
        return QuadExtElem(self.u0, -self.u1, self.d)

    def norm(self) -> Poly:
        return self.u0 * self.u0 - self.d * self.u1 * self.u1

    def to_json(self) -> dict:
        return {"u0": self.u0.to_json(), "u1": self.u1.to_json(), "text": self.format()}

    def format(self) -> str:
        if self.u1.is_zero():
            return self.u0.format()
        tail = f"({self.u1.format()})*y"
        return tail if self.u0.is_zero() else f"{self.u0.format()} + {tail}"


def quad_conjugate_norm(e: QuadExtElem) -> tuple[QuadExtElem, Poly]:
    return e.conjugate(), e.norm()
