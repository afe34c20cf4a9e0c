"""Matrices over k[x]: kernels via column reduction, determinants,
characteristic polynomials."""
from __future__ import annotations

from dataclasses import dataclass

from .poly import Poly


@dataclass(frozen=True)
class PolyMatrix:
    field: object
    entries: tuple  # tuple of row tuples of Poly

    @classmethod
    def from_rows(cls, field, rows) -> PolyMatrix:
        rows = [tuple(e if isinstance(e, Poly) else Poly.const(field, e) for e in row) for row in rows]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("matrix rows have different lengths")
        return cls(field, tuple(rows))

    @classmethod
    def zero(cls, field, rows: int, cols: int) -> PolyMatrix:
        z = Poly.zero(field)
        return cls(field, tuple((z,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def apply(self, v) -> list[Poly]:
        z = Poly.zero(self.field)
        out = []
        for row in self.entries:
            acc = z
            for a, b in zip(row, v):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return out

    def to_json(self) -> list:
        return [[e.to_json() for e in row] for row in self.entries]


def _column_reduce(H: list[list[Poly]], U: list[list[Poly]] | None, monic_pivots: bool, reduce_left: bool):
    """In-place column reduction of H (list of rows), mirrored on U.

    Pivot choice is the lowest-degree nonzero entry, ties broken by column
    index.  Returns the list of (row, column) pivot positions."""
    r = len(H)
    c = len(H[0]) if H else 0
    pivots = []
    piv = 0

    def colop(dst, src, q):
        for row in H:
            if not row[src].is_zero():
                row[dst] = row[dst] - q * row[src]
        if U is not None:
            for row in U:
                if not row[src].is_zero():
                    row[dst] = row[dst] - q * row[src]

    def swap(a, b):
        if a == b:
            return
        for row in H:
            row[a], row[b] = row[b], row[a]
        if U is not None:
            for row in U:
                row[a], row[b] = row[b], row[a]

    def scale(j, s):
        for row in H:
            row[j] = row[j].scale(s)
        if U is not None:
            for row in U:
                row[j] = row[j].scale(s)

    for i in range(r):
        if piv >= c:
            break
        found = False
        while True:
            cand = [j for j in range(piv, c) if not H[i][j].is_zero()]
            if not cand:
                break
            found = True
            jmin = min(cand, key=lambda j: (H[i][j].deg, j))
            swap(piv, jmin)
            clean = True
            for j in range(piv + 1, c):
                if not H[i][j].is_zero():
                    q = H[i][j] // H[i][piv]
                    colop(j, piv, q)
                    if not H[i][j].is_zero():
                        clean = False
            if clean:
                break
        if not found:
            continue
        if monic_pivots:
            F = H[i][piv].field
            scale(piv, F.inv(H[i][piv].lc))
        if reduce_left:
            for j in range(piv):
                if not H[i][j].is_zero():
                    q = H[i][j] // H[i][piv]
                    if not q.is_zero():
                        colop(j, piv, q)
        pivots.append((i, piv))
        piv += 1
    return pivots


def hermite_columns(vectors: list[list[Poly]]) -> list[list[Poly]]:
    """Canonical column Hermite form of a set of linearly independent vectors.

    Vectors are given as columns (each a list of coordinates); the result has
    monic pivots, pivot rows strictly increasing, and entries left of each
    pivot reduced modulo it."""
    if not vectors:
        return []
    n = len(vectors[0])
    H = [[vec[i] for vec in vectors] for i in range(n)]
    pivots = _column_reduce(H, None, monic_pivots=True, reduce_left=True)
    k = len(pivots)
    return [[H[i][j] for i in range(n)] for j in range(k)]


def kernel_basis(M: PolyMatrix) -> list[list[Poly]]:
    """Free basis of {v : M v = 0} over k[x], in canonical Hermite form."""
    F = M.field
    c = M.cols
    H = [list(row) for row in M.entries]
    U = [[Poly.one(F) if i == j else Poly.zero(F) for j in range(c)] for i in range(c)]
    pivots = _column_reduce(H, U, monic_pivots=False, reduce_left=False)
    rank = len(pivots)
    kernel = [[U[i][j] for i in range(c)] for j in range(rank, c)]
    for v in kernel:
        if any(not e.is_zero() for e in M.apply(v)):
            raise ArithmeticError("kernel vector not annihilated")
    return hermite_columns(kernel)


def det_bareiss(A: list[list], zero, one):
    """Fraction-free determinant over an integral domain with exact division."""
    n = len(A)
    if n == 0:
        return one
    M = [list(row) for row in A]
    sign = 1
    prev = one
    for k in range(n - 1):
        if _is_zero(M[k][k]):
            swap = next((i for i in range(k + 1, n) if not _is_zero(M[i][k])), None)
            if swap is None:
                return zero
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = _exact(num, prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def _is_zero(a) -> bool:
    return a.is_zero() if isinstance(a, Poly) else a == 0


def _exact(num, den):
    if isinstance(num, Poly):
        if den.is_one():
            return num
        return num.exact_div(den)
    return num / den


def charpoly_berkowitz(A: list[list], zero, one) -> list:
    """Coefficients of det(lambda I - A), highest degree first (division free)."""
    n = len(A)
    if n == 0:
        return [one]
    vect = [one, zero - A[0][0]]
    for k in range(1, n):
        R = [A[k][j] for j in range(k)]
        C = [A[i][k] for i in range(k)]
        sub = [row[:k] for row in A[:k]]
        Q = [one, zero - A[k][k]]
        v = C
        for _ in range(k):
            Q.append(zero - _dot(R, v, zero))
            v = [_dot(row, v, zero) for row in sub]
        new = []
        for i in range(k + 2):
            acc = zero
            for j in range(min(i, k) + 1):
                if i - j < len(Q) and j < len(vect):
                    acc = acc + Q[i - j] * vect[j]
            new.append(acc)
        vect = new
    return vect


def _dot(a, b, zero):
    acc = zero
    for x, y in zip(a, b):
        acc = acc + x * y
    return acc
