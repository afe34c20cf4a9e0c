"""Integral closure of k[x][alpha] for a minimal B-J polynomial.

The trace-free part is the syzygy module {(sum v_i beta_i)/c0 : c0 | f_k v_k +
g_k v_{k+1}}.  Over the PID k[x] that module is free, so it is solved here
with an explicit kernel basis and put into a triangular canonical form.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dfield
from math import gcd

from .bj_data import BJDecomposition, BJInput
from .errors import InternalDiscMismatch, NotSquarefree
from .ring_core import Poly, PolyMatrix, charpoly_berkowitz, det_bareiss, hermite_columns, kernel_basis


@dataclass(frozen=True)
class IntegralElement:
    num: tuple  # n coordinates over 1, alpha, ..., alpha^(n-1)
    den: Poly

    @classmethod
    def make(cls, num, den: Poly) -> IntegralElement:
        """Normalize so that gcd(num, den) = 1 and den is monic."""
        F = den.field
        g = den
        for c in num:
            if g.is_one():
                break
            if not c.is_zero():
                g = g.gcd(c)
        num = [c.exact_div(g) for c in num]
        den = den.exact_div(g)
        inv = F.inv(den.lc)
        return cls(tuple(c.scale(inv) for c in num), den.scale(inv))

    @classmethod
    def of_power(cls, F, n: int, k: int) -> IntegralElement:
        num = [Poly.one(F) if i == k else Poly.zero(F) for i in range(n)]
        return cls(tuple(num), Poly.one(F))

    @property
    def n(self) -> int:
        return len(self.num)

    def alpha_degree(self) -> int:
        return max((i for i, c in enumerate(self.num) if not c.is_zero()), default=-1)

    def format(self, var: str = "a") -> str:
        terms = []
        for i in range(self.n - 1, -1, -1):
            c = self.num[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                terms.append(c.format())
            elif c.is_one():
                terms.append(mono)
            elif c.is_const():
                terms.append(f"{c.format()}*{mono}")
            else:
                terms.append(f"({c.format()})*{mono}")
        body = " + ".join(terms) if terms else "0"
        if self.den.is_one():
            return body
        if len(terms) > 1:
            body = f"({body})"
        den = self.den.format()
        return f"{body}/{den}" if self.den.deg == 1 and len(self.den.coeffs) == 2 and self.den.coeffs[0] == 0 else f"{body}/({den})"

    def to_json(self) -> dict:
        return {"num": [c.to_json() for c in self.num], "den": self.den.to_json(), "text": self.format()}


@dataclass
class IntegralBasis:
    elements: list
    poly: list  # ascending z-coefficients of the defining monic polynomial
    lattice: list = dfield(default_factory=list)  # solved v-vectors, for reporting

    @property
    def n(self) -> int:
        return len(self.poly) - 1

    @property
    def field(self):
        return self.poly[0].field

    def to_json(self) -> dict:
        return {
            "elements": [e.to_json() for e in self.elements],
            "text": [e.format() for e in self.elements],
        }


@dataclass(frozen=True)
class SyzygyPresentation:
    M: PolyMatrix
    f_list: tuple
    g_list: tuple
    c0: Poly

    def to_json(self) -> dict:
        return {
            "matrix": self.M.to_json(),
            "f": [f.to_json() for f in self.f_list],
            "g": [g.to_json() for g in self.g_list],
            "c0": self.c0.to_json(),
        }


def floor_gcd_identity(n: int, k: int) -> bool:
    """2 * sum_{i=1}^{n} floor(k i / n) == (n+1) k - n + gcd(n, k)."""
    return 2 * sum(k * i // n for i in range(1, n + 1)) == (n + 1) * k - n + gcd(n, k)


def weights(dec: BJDecomposition):
    """(h_1..h_{n-1}, f_1..f_{n-2}, g_1..g_{n-2}) as lists indexed from 0."""
    n, F = dec.n, dec.field
    a = [dec.a_poly(k) for k in range(n)]
    b = [dec.b_poly(k) for k in range(n - 1)]
    h = []
    for i in range(1, n):
        hi = Poly.one(F)
        for k in range(1, n):
            hi = hi * a[k] ** (k * i // n)
        for k in range(1, n - 1):
            hi = hi * b[k] ** ((n - 1 - k) * i // (n - 1))
        h.append(hi)
    f, g = [], []
    for i in range(1, n - 1):
        fi = a[0].scale(F.from_int(n - 1))
        for k in range(1, n):
            fi = fi * a[k] ** ((i + 1) * k // n - i * k // n)
        gi = b[0].scale(F.from_int(n))
        for k in range(1, n - 1):
            gi = gi * b[k] ** (1 + (n - 1 - k) * i // (n - 1) - (n - 1 - k) * (i + 1) // (n - 1))
        f.append(fi)
        g.append(gi)
    return h, f, g


def power_sums(poly: list, count: int) -> list:
    """Newton power sums P_0..P_{count-1} of the roots of a monic polynomial."""
    F = poly[0].field
    n = len(poly) - 1
    c = {n - i: poly[i] for i in range(n)}  # coefficient of z^(n-i) is c[i]
    P = [Poly.const(F, F.from_int(n))]
    for k in range(1, count):
        acc = Poly.zero(F)
        for i in range(1, min(k, n) + 1):
            ci = c.get(i)
            if ci is None or ci.is_zero():
                continue
            if i == k:
                acc = acc + ci.scale(F.from_int(k))
            else:
                acc = acc + ci * P[k - i]
        P.append(-acc)
    return P


def trace_powers(inp: BJInput) -> list:
    """Tr(alpha^i) for i = 0..n-1."""
    return power_sums(inp.z_coeffs(), inp.n)


def companion(poly: list) -> list:
    """Matrix of multiplication by alpha on the power basis (column convention)."""
    F = poly[0].field
    n = len(poly) - 1
    z, one = Poly.zero(F), Poly.one(F)
    C = [[z] * n for _ in range(n)]
    for j in range(n - 1):
        C[j + 1][j] = one
    for i in range(n):
        C[i][n - 1] = -poly[i]
    return C


def _matmul(A, B, zero):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = zero
            for k in range(m):
                if not A[i][k].is_zero() and not B[k][j].is_zero():
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def multiplication_matrix(num, poly: list) -> list:
    F = poly[0].field
    n = len(poly) - 1
    z = Poly.zero(F)
    C = companion(poly)
    power = [[Poly.one(F) if i == j else z for j in range(n)] for i in range(n)]
    out = [[z] * n for _ in range(n)]
    for k in range(n):
        if not num[k].is_zero():
            out = [[out[i][j] + num[k] * power[i][j] for j in range(n)] for i in range(n)]
        if k < n - 1:
            power = _matmul(C, power, z)
    return out


def syzygy_matrix(dec: BJDecomposition) -> SyzygyPresentation:
    n, F = dec.n, dec.field
    _, f, g = weights(dec)
    z = Poly.zero(F)
    rows = []
    for k in range(n - 2):
        row = [z] * (2 * n - 3)
        row[k] = f[k]
        row[k + 1] = g[k]
        row[k + n - 1] = dec.c0
        rows.append(row)
    return SyzygyPresentation(PolyMatrix.from_rows(F, rows), tuple(f), tuple(g), dec.c0)


def beta_elements(dec: BJDecomposition) -> list:
    """beta_1..beta_{n-1} as IntegralElements."""
    n, F = dec.n, dec.field
    h, _, _ = weights(dec)
    z = Poly.zero(F)
    out = []
    for i in range(1, n):
        num = [z] * n
        num[i] = Poly.one(F)
        if i == n - 1:
            num[0] = dec.input.s.scale(F.div(F.from_int(n - 1), F.from_int(n)))
        out.append(IntegralElement.make(num, h[i - 1]))
    return out


def _combine(vs, betas, c0: Poly) -> IntegralElement:
    """(sum v_i beta_i) / c0."""
    F = c0.field
    n = len(betas) + 1
    den = Poly.one(F)
    for v, b in zip(vs, betas):
        if not v.is_zero():
            den = den.lcm(b.den)
    num = [Poly.zero(F)] * n
    for v, b in zip(vs, betas):
        if v.is_zero():
            continue
        scale = v * den.exact_div(b.den)
        num = [acc + scale * c for acc, c in zip(num, b.num)]
    return IntegralElement.make(num, den * c0)


def _triangular(vectors: list) -> list:
    """Canonical form with the pivot in the last coordinate first."""
    rev = [list(reversed(v)) for v in vectors]
    return [list(reversed(v)) for v in hermite_columns(rev)]


def _sort_key(e: IntegralElement):
    return (e.den.deg, e.alpha_degree())


def integral_basis(dec: BJDecomposition) -> IntegralBasis:
    """{1} together with n-1 generators of the trace-free part."""
    n, F = dec.n, dec.field
    syz = syzygy_matrix(dec)
    kern = kernel_basis(syz.M)
    lattice = _triangular([v[: n - 1] for v in kern])
    if len(lattice) != n - 1:
        raise InternalDiscMismatch("syzygy lattice does not have full rank")
    betas = beta_elements(dec)
    gens = [_combine(v, betas, dec.c0) for v in lattice]
    elements = [IntegralElement.of_power(F, n, 0)] + sorted(gens, key=_sort_key)
    return IntegralBasis(elements, dec.input.z_coeffs(), lattice)


def cyclic_basis(n: int, ells: list, u) -> IntegralBasis:
    """Basis alpha^k / prod l_j^floor(jk/n) for alpha^n = -u * prod l_j^j."""
    F = ells[0].field
    for j, ell in enumerate(ells[: n - 1]):
        if ell.deg > 0 and not ell.gcd(ell.derivative()).is_one():
            raise NotSquarefree(f"l_{j + 1} is not squarefree")
        for other in ells[j + 1 : n - 1]:
            if not ell.gcd(other).is_one():
                raise NotSquarefree("l_j are not pairwise coprime")
    rhs = Poly.const(F, u)
    for j, ell in enumerate(ells, start=1):
        rhs = rhs * ell**j
    poly = [rhs] + [Poly.zero(F)] * (n - 1) + [Poly.one(F)]
    elements = []
    for k in range(n):
        den = Poly.one(F)
        for j, ell in enumerate(ells, start=1):
            den = den * ell.monic() ** (j * k // n)
        num = [Poly.one(F) if i == k else Poly.zero(F) for i in range(n)]
        elements.append(IntegralElement.make(num, den))
    return IntegralBasis(elements, poly)


def canonical_form(elements: list) -> list:
    """Canonical triangular basis (alpha^k + lower terms)/d_k of the module."""
    F = elements[0].den.field
    common = Poly.one(F)
    for e in elements:
        common = common.lcm(e.den)
    vecs = [[c * common.exact_div(e.den) for c in e.num] for e in elements]
    tri = _triangular(vecs)
    out = [IntegralElement.make(v, common) for v in tri]
    return sorted(out, key=lambda e: e.alpha_degree())


def same_module(b1: list, b2: list) -> bool:
    return canonical_form(b1) == canonical_form(b2)


def contains(elements: list, target: IntegralElement) -> bool:
    """Membership of target in the k[x]-span of a basis of full rank."""
    canon = canonical_form(elements)
    F = target.den.field
    common = target.den
    for e in canon:
        common = common.lcm(e.den)
    v = [c * common.exact_div(target.den) for c in target.num]
    for e in reversed(canon):
        k = e.alpha_degree()
        scaled = [c * common.exact_div(e.den) for c in e.num]
        lead = scaled[k]
        q, r = divmod(v[k], lead)
        if not r.is_zero():
            return False
        v = [a - q * b for a, b in zip(v, scaled)]
    return all(c.is_zero() for c in v)


def coordinate_det(elements: list):
    """det of the change of basis from the power basis, as (num, den)."""
    F = elements[0].den.field
    rows = [list(e.num) for e in elements]
    num = det_bareiss(rows, Poly.zero(F), Poly.one(F))
    den = Poly.one(F)
    for e in elements:
        den = den * e.den
    return num, den


def trace_form(elements: list, poly: list):
    """Gram matrix numerators Tr(num_i num_j) and the product of denominators."""
    n = len(poly) - 1
    F = poly[0].field
    P = power_sums(poly, 2 * n - 1)
    z = Poly.zero(F)
    G = []
    for ei in elements:
        row = []
        for ej in elements:
            acc = z
            for a, ca in enumerate(ei.num):
                if ca.is_zero():
                    continue
                for b, cb in enumerate(ej.num):
                    if not cb.is_zero() and not P[a + b].is_zero():
                        acc = acc + ca * cb * P[a + b]
            row.append(acc)
        G.append(row)
    return G


def poly_discriminant(poly: list) -> Poly:
    """Discriminant of the monic polynomial as the determinant of its trace form."""
    F = poly[0].field
    n = len(poly) - 1
    P = power_sums(poly, 2 * n - 1)
    G = [[P[i + j] for j in range(n)] for i in range(n)]
    return det_bareiss(G, Poly.zero(F), Poly.one(F))


def element_charpoly(e: IntegralElement, poly: list) -> list:
    """Numerators c_k of the characteristic polynomial of num, highest first."""
    F = poly[0].field
    M = multiplication_matrix(e.num, poly)
    return charpoly_berkowitz(M, Poly.zero(F), Poly.one(F))


def is_integral(e: IntegralElement, poly: list) -> bool:
    cp = element_charpoly(e, poly)
    return all(k == 0 or (e.den**k).divides(c) for k, c in enumerate(cp))


def verify_closure(basis: IntegralBasis, expected_disc: Poly | None = None, delta: Poly | None = None) -> dict:
    """Integrality, trace-form discriminant and det^2 * delta checks.

    Failures are collected in report["failures"]; nothing is raised."""
    poly = basis.poly
    F = basis.field
    failures = []
    non_integral = [i for i, e in enumerate(basis.elements) if not is_integral(e, poly)]
    if non_integral:
        failures.append({"check": "integrality", "elements": non_integral})
    G = trace_form(basis.elements, poly)
    gram_num = det_bareiss(G, Poly.zero(F), Poly.one(F))
    den2 = Poly.one(F)
    for e in basis.elements:
        den2 = den2 * e.den * e.den
    gram, rem = divmod(gram_num, den2)
    if not rem.is_zero():
        failures.append({"check": "gram_polynomial", "detail": "trace-form determinant is not in k[x]"})
    det_num, det_den = coordinate_det(basis.elements)
    if delta is None:
        delta = poly_discriminant(poly)
    if gram_num * det_den * det_den != den2 * det_num * det_num * poly_discriminant(poly):
        failures.append({"check": "gram_vs_det", "detail": "trace form does not match det^2 * disc"})
    ok_det = rem.is_zero() and (det_num * det_num * delta).monic() == (det_den * det_den * gram).monic()
    report = {
        "integral": not non_integral,
        "gram_det": gram.to_json() if rem.is_zero() else None,
        "gram_text": gram.format() if rem.is_zero() else None,
        "det": {"num": det_num.to_json(), "den": det_den.to_json(), "text": f"({det_num.format()})/({det_den.format()})"},
    }
    if expected_disc is not None:
        disc_ok = rem.is_zero() and not gram.is_zero() and gram.monic() == expected_disc.monic()
        det_ok = (det_num * det_num * delta).monic() == (det_den * det_den * expected_disc).monic()
        report["disc_matches_D"] = disc_ok
        report["det2_delta_matches_D"] = det_ok
        if not disc_ok:
            failures.append({"check": "disc_equals_D"})
        if not det_ok:
            failures.append({"check": "det2_delta_equals_D"})
    else:
        report["det2_delta_matches_gram"] = ok_det
    report["failures"] = failures
    report["ok"] = not failures
    return report
