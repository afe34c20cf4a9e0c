"""Minimal data, prime classification and the (a, b, c) decomposition of a
trinomial z^n + s z + t over k[x].

Every prime dividing s*t is classified from the lower Newton polygon of the
support {(0, v(t)), (1, v(s)), (n, 0)}:

* one segment (n*v(s) >= (n-1)*v(t)): type A(i) with i = v(t), or A0 when
  v(t) = 0 < v(s);
* two segments: type B(j) with j = n-1-v(s), or B0 when v(s) = 0.

An A(i) prime sends v(s) - v(t) to a_0 and one copy to a_i; a B(j) prime
sends one copy to b_j and v(t) - v(s) - 1 to b_0.  With these conventions

    s = a_0 * prod a_i^i * prod b_j^(n-1-j)
    t = b_0 * prod a_i^i * prod b_j^(n-j)
    a = (n-1)^(n-1) a_0^n prod a_i^i,   b = -(-n)^n b_0^(n-1) prod b_j^j
    c = a + b = unit * c0^2 * c1
    delta = (n-1)^(n-1) s^n - (-n)^n t^(n-1)
          = (prod a_i^i)^(n-1) (prod b_j^(n-1-j))^n * c

In projective mode the point at infinity is classified the same way using
s_inf = (n-1) d - deg s and t_inf = n d - deg t for the twist degree d.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .errors import (
    AssumptionViolation,
    CoprimalityViolated,
    NotCoprime,
    NotMinimal,
    SumMismatch,
    UnitRootUnavailable,
    ZeroS,
)
from .ring_core import FactoredPoly, Poly, check_bj_characteristic, factor_poly, squarefree_decomposition

INF = "inf"


@dataclass(frozen=True)
class BJInput:
    n: int
    s: Poly
    t: Poly
    field: object
    mode: str = "affine"
    twist: int | None = None

    @property
    def projective(self) -> bool:
        return self.mode == "projective"

    def inf_vals(self) -> tuple[int, int]:
        d = self.twist
        return (self.n - 1) * d - self.s.deg, self.n * d - (self.t.deg if not self.t.is_zero() else -10**9)

    def z_coeffs(self) -> list[Poly]:
        F = self.field
        cs = [self.t, self.s] + [Poly.zero(F)] * (self.n - 2) + [Poly.one(F)]
        return cs


@dataclass(frozen=True)
class PrimeClass:
    prime: object  # monic irreducible Poly or INF
    s_val: int
    t_val: int
    kind: str  # "A", "B", "A0", "B0", "unramified"
    index: int = 0  # i for A(i), j for B(j)

    @property
    def label(self) -> str:
        if self.kind in ("A", "B"):
            return f"{self.kind}({self.index})"
        return self.kind

    def place_name(self) -> str:
        return "inf" if self.prime == INF else self.prime.format()


@dataclass
class BJDecomposition:
    input: BJInput
    a_parts: dict  # i -> FactoredPoly, i = 0..n-1
    b_parts: dict  # j -> FactoredPoly, j = 0..n-2
    a: Poly
    b: Poly
    c: Poly
    c_unit: object
    c0: Poly
    c1: Poly
    delta: Poly
    classes: list
    infinity: PrimeClass | None = None
    inf_a: dict = dfield(default_factory=dict)  # slot -> exponent of the point at infinity
    inf_b: dict = dfield(default_factory=dict)
    inf_c: int = 0  # valuation of c at infinity

    @property
    def n(self) -> int:
        return self.input.n

    @property
    def field(self):
        return self.input.field

    def a_poly(self, i: int) -> Poly:
        part = self.a_parts.get(i)
        return part.expand() if part is not None else Poly.one(self.field)

    def b_poly(self, j: int) -> Poly:
        part = self.b_parts.get(j)
        return part.expand() if part is not None else Poly.one(self.field)

    def a_monic(self, i: int) -> Poly:
        part = self.a_parts.get(i)
        return part.monic_part() if part is not None else Poly.one(self.field)

    def b_monic(self, j: int) -> Poly:
        part = self.b_parts.get(j)
        return part.monic_part() if part is not None else Poly.one(self.field)

    @property
    def inf_c0(self) -> int:
        return self.inf_c // 2

    @property
    def inf_c1(self) -> int:
        return self.inf_c % 2

    def class_of(self, prime) -> PrimeClass | None:
        if prime == INF:
            return self.infinity
        for pc in self.classes:
            if pc.prime == prime:
                return pc
        return None

    def to_json(self) -> dict:
        F = self.field
        out = {
            "n": self.n,
            "a_parts": {str(i): fp.to_json() for i, fp in sorted(self.a_parts.items())},
            "b_parts": {str(j): fp.to_json() for j, fp in sorted(self.b_parts.items())},
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "c": self.c.to_json(),
            "c_unit": F.to_json(self.c_unit),
            "c0": self.c0.to_json(),
            "c1": self.c1.to_json(),
            "delta": self.delta.to_json(),
            "text": {
                "a": self.a.format(),
                "b": self.b.format(),
                "c": self.c.format(),
                "c0": self.c0.format(),
                "c1": self.c1.format(),
                "delta": self.delta.format(),
            },
            "classes": [
                {"prime": pc.place_name(), "s_val": pc.s_val, "t_val": pc.t_val, "kind": pc.label}
                for pc in self.classes
            ],
        }
        if self.infinity is not None:
            pc = self.infinity
            out["infinity"] = {
                "s_val": pc.s_val,
                "t_val": pc.t_val,
                "kind": pc.label,
                "c_val": self.inf_c,
            }
        return out


def _const(F, v) -> Poly:
    return Poly.const(F, v)


def make_bj_input(n: int, s: Poly, t: Poly, mode: str = "affine", twist: int | None = None) -> BJInput:
    F = s.field
    if n < 3:
        raise AssumptionViolation("degree n must be at least 3")
    check_bj_characteristic(F, n)
    if s.is_zero():
        raise ZeroS("s must be nonzero")
    if t.is_zero():
        raise AssumptionViolation("t = 0 makes z^n + s z reducible")
    if mode == "projective":
        if twist is None:
            twist = default_twist(n, s, t)
        if s.deg > (n - 1) * twist or t.deg > n * twist:
            raise AssumptionViolation(f"twist {twist} too small for deg s = {s.deg}, deg t = {t.deg}")
    else:
        twist = None
    return BJInput(n, s, t, F, mode, twist)


def default_twist(n: int, s: Poly, t: Poly) -> int:
    return max(-(-s.deg // (n - 1)), -(-t.deg // n), 0)


def make_minimal(n: int, s: Poly, t: Poly, mode: str = "affine", twist: int | None = None, seed: int = 0):
    """Divide out lambda = prod p^min(floor(v_p(s)/(n-1)), floor(v_p(t)/n)).

    Returns (BJInput, lambda as FactoredPoly, twist reduction at infinity)."""
    if s.is_zero():
        raise ZeroS("s must be nonzero")
    inp = make_bj_input(n, s, t, mode, twist)
    F = inp.field
    fs, ft = factor_poly(s, seed), factor_poly(t, seed)
    lam = []
    for p, e in fs.factors:
        k = min(e // (n - 1), ft.exponent(p) // n)
        if k > 0:
            lam.append((p, k))
    lam_fp = FactoredPoly.build(F, F.one, lam)
    L = lam_fp.expand()
    s2 = s.exact_div(L ** (n - 1))
    t2 = t.exact_div(L**n)
    inf_drop = 0
    if inp.projective:
        d = inp.twist - lam_fp.degree()
        s_inf, t_inf = (n - 1) * d - s2.deg, n * d - t2.deg
        inf_drop = min(s_inf // (n - 1), t_inf // n)
        d -= inf_drop
        return make_bj_input(n, s2, t2, "projective", d), lam_fp, inf_drop
    return make_bj_input(n, s2, t2), lam_fp, 0


def is_minimal(inp: BJInput, seed: int = 0) -> bool:
    _, lam, drop = make_minimal(inp.n, inp.s, inp.t, inp.mode, inp.twist, seed)
    return lam.is_unit() and drop == 0


def classify_prime(n: int, s_val: int, t_val: int) -> tuple[str, int]:
    """Newton-polygon classification; returns (kind, index)."""
    if s_val >= n - 1 and t_val >= n:
        raise NotMinimal(f"valuations ({s_val}, {t_val}) are not minimal for n = {n}")
    if n * s_val >= (n - 1) * t_val:
        if t_val == 0:
            return ("unramified", 0) if s_val == 0 else ("A0", 0)
        if not 1 <= t_val <= n - 1:
            raise NotMinimal(f"valuations ({s_val}, {t_val}) are not minimal for n = {n}")
        return "A", t_val
    if s_val == 0:
        return "B0", 0
    if not 1 <= s_val <= n - 2:
        raise NotMinimal(f"valuations ({s_val}, {t_val}) are not minimal for n = {n}")
    return "B", n - 1 - s_val


def _slot_exponents(n: int, kind: str, index: int, s_val: int, t_val: int):
    """(a-slot exponents, b-slot exponents) contributed by one prime."""
    a, b = {}, {}
    if kind == "A":
        if s_val > t_val:
            a[0] = s_val - t_val
        a[index] = 1
    elif kind == "A0":
        a[0] = s_val
    elif kind == "B":
        b[index] = 1
        if t_val - s_val - 1 > 0:
            b[0] = t_val - s_val - 1
    elif kind == "B0":
        b[0] = t_val
    return a, b


def _a_value(n: int, F, a_parts: dict) -> Poly:
    out = _const(F, F.pow(F.from_int(n - 1), n - 1))
    for i, part in a_parts.items():
        out = out * part.expand() ** (n if i == 0 else i)
    return out


def _b_value(n: int, F, b_parts: dict) -> Poly:
    out = _const(F, F.neg(F.pow(F.from_int(-n), n)))
    for j, part in b_parts.items():
        out = out * part.expand() ** (n - 1 if j == 0 else j)
    return out


def discriminant(n: int, s: Poly, t: Poly) -> Poly:
    F = s.field
    return s**n * F.pow(F.from_int(n - 1), n - 1) - t ** (n - 1) * F.pow(F.from_int(-n), n)


def decompose(inp: BJInput, seed: int = 0) -> BJDecomposition:
    n, F = inp.n, inp.field
    check_bj_characteristic(F, n)
    if inp.s.is_zero():
        raise ZeroS("s must be nonzero")
    fs, ft = factor_poly(inp.s, seed), factor_poly(inp.t, seed)
    primes = sorted(set(fs.primes()) | set(ft.primes()), key=lambda p: p.sort_key())
    a_lists: dict = {i: [] for i in range(n)}
    b_lists: dict = {j: [] for j in range(n - 1)}
    classes = []
    for p in primes:
        sv, tv = fs.exponent(p), ft.exponent(p)
        kind, idx = classify_prime(n, sv, tv)
        classes.append(PrimeClass(p, sv, tv, kind, idx))
        a_exp, b_exp = _slot_exponents(n, kind, idx, sv, tv)
        for i, e in a_exp.items():
            a_lists[i].append((p, e))
        for j, e in b_exp.items():
            b_lists[j].append((p, e))
    a_parts = {0: FactoredPoly.build(F, fs.unit, a_lists[0])}
    a_parts.update({i: FactoredPoly.build(F, F.one, a_lists[i]) for i in range(1, n) if a_lists[i]})
    b_parts = {0: FactoredPoly.build(F, ft.unit, b_lists[0])}
    b_parts.update({j: FactoredPoly.build(F, F.one, b_lists[j]) for j in range(1, n - 1) if b_lists[j]})

    a = _a_value(n, F, a_parts)
    b = _b_value(n, F, b_parts)
    c = a + b
    if c.is_zero():
        raise AssumptionViolation("discriminant vanishes: the trinomial is not separable")
    c_unit = c.lc
    c0, c1 = Poly.one(F), Poly.one(F)
    for g, e in squarefree_decomposition(c):
        c0 = c0 * g ** (e // 2)
        if e % 2:
            c1 = c1 * g
    delta = discriminant(n, inp.s, inp.t)
    dec = BJDecomposition(inp, a_parts, b_parts, a, b, c, c_unit, c0, c1, delta, classes)
    if inp.projective:
        _attach_infinity(dec)
    return dec


def _attach_infinity(dec: BJDecomposition) -> None:
    n, F = dec.n, dec.field
    s_inf, t_inf = dec.input.inf_vals()
    kind, idx = classify_prime(n, s_inf, t_inf)
    dec.infinity = PrimeClass(INF, s_inf, t_inf, kind, idx)
    dec.inf_a, dec.inf_b = _slot_exponents(n, kind, idx, s_inf, t_inf)
    va = sum(e * (n if i == 0 else i) for i, e in dec.inf_a.items())
    vb = sum(e * (n - 1 if j == 0 else j) for j, e in dec.inf_b.items())
    if dec.a.deg + va != dec.b.deg + vb:
        raise CoprimalityViolated("a and b are not sections of the same line bundle at infinity")
    dec.inf_c = dec.a.deg + va - dec.c.deg


def check_invariants(dec: BJDecomposition) -> list[str]:
    """Return a list of violated decomposition identities (empty when sound)."""
    n, F = dec.n, dec.field
    bad = []
    s_rebuilt = dec.a_poly(0)
    t_rebuilt = dec.b_poly(0)
    for i in range(1, n):
        ai = dec.a_poly(i)
        s_rebuilt = s_rebuilt * ai**i
        t_rebuilt = t_rebuilt * ai**i
    for j in range(1, n - 1):
        bj = dec.b_poly(j)
        s_rebuilt = s_rebuilt * bj ** (n - 1 - j)
        t_rebuilt = t_rebuilt * bj ** (n - j)
    if s_rebuilt != dec.input.s:
        bad.append("s reconstruction")
    if t_rebuilt != dec.input.t:
        bad.append("t reconstruction")
    if dec.a + dec.b != dec.c:
        bad.append("a + b = c")
    if dec.c0 * dec.c0 * dec.c1 * dec.c_unit != dec.c:
        bad.append("c = unit c0^2 c1")
    if not _squarefree(dec.c1):
        bad.append("c1 squarefree")
    for i in range(1, n):
        if not dec.a_parts.get(i, FactoredPoly.unit_only(F)).is_squarefree():
            bad.append(f"a_{i} squarefree")
    for j in range(1, n - 1):
        if not dec.b_parts.get(j, FactoredPoly.unit_only(F)).is_squarefree():
            bad.append(f"b_{j} squarefree")
    for x, y, name in ((dec.a, dec.b, "a,b"), (dec.a, dec.c, "a,c"), (dec.b, dec.c, "b,c")):
        if not x.gcd(y).is_one():
            bad.append(f"gcd({name}) = 1")
    A = Poly.one(F)
    for i in range(1, n):
        A = A * dec.a_poly(i) ** (i * (n - 1))
    for j in range(1, n - 1):
        A = A * dec.b_poly(j) ** ((n - 1 - j) * n)
    if A * dec.c != dec.delta:
        bad.append("delta factored form")
    return bad


def _squarefree(f: Poly) -> bool:
    return f.deg < 1 or f.gcd(f.derivative()).is_one()


@dataclass(frozen=True)
class Triple:
    a: Poly
    b: Poly
    c: Poly

    def to_json(self) -> dict:
        return {"a": self.a.to_json(), "b": self.b.to_json(), "c": self.c.to_json()}


def to_triple(dec: BJDecomposition) -> Triple:
    for x, y in ((dec.a, dec.b), (dec.a, dec.c), (dec.b, dec.c)):
        if not x.gcd(y).is_one():
            raise CoprimalityViolated("the triple (a, b, c) is not pairwise coprime")
    return Triple(dec.a, dec.b, dec.c)


def from_triple(n: int, triple: Triple, seed: int = 0) -> BJInput:
    """Rebuild minimal (s, t) from a coprime triple a + b = c."""
    a, b, c = triple.a, triple.b, triple.c
    F = a.field
    check_bj_characteristic(F, n)
    if a + b != c:
        raise SumMismatch("a + b != c")
    for x, y in ((a, b), (a, c), (b, c)):
        if not x.gcd(y).is_one():
            raise NotCoprime("triple entries are not pairwise coprime")
    fa, fb = factor_poly(a, seed), factor_poly(b, seed)
    ua = F.div(fa.unit, F.pow(F.from_int(n - 1), n - 1))
    ub = F.div(fb.unit, F.neg(F.pow(F.from_int(-n), n)))
    u_s = F.nth_root(ua, n)
    u_t = F.nth_root(ub, n - 1)
    if u_s is None or u_t is None:
        raise UnitRootUnavailable("unit part of the triple has no admissible root in the base field")
    s = _const(F, u_s)
    t = _const(F, u_t)
    for p, m in fa.factors:
        i, q = m % n, m // n
        s = s * p ** (q + i)
        t = t * p**i
    for p, m in fb.factors:
        j, q = m % (n - 1), m // (n - 1)
        if j == 0:
            t = t * p**q
        else:
            s = s * p ** (n - 1 - j)
            t = t * p ** (q + n - j)
    return make_bj_input(n, s, t)


def equivalent(n: int, st1: tuple[Poly, Poly], st2: tuple[Poly, Poly]) -> bool:
    """(s, t) ~ (e^(n-1) s, e^n t) for a unit e."""
    (s1, t1), (s2, t2) = st1, st2
    F = s1.field
    if s1.monic() != s2.monic() or t1.monic() != t2.monic():
        return False
    rs = F.div(s2.lc, s1.lc)
    rt = F.div(t2.lc, t1.lc)
    e = F.div(rt, rs)
    return F.pow(e, n - 1) == rs and F.pow(e, n) == rt
