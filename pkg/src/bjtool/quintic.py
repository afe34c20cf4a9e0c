"""Tschirnhaus reduction of z^5 + s2 z^3 - s3 z^2 + s4 z - s5 toward a trinomial.

y = u + v alpha + w alpha^2 + p alpha^3 + q alpha^4 has characteristic
polynomial lambda^5 + d4 lambda^4 + ... + d0.  The pipeline kills d4 (linear
in u), then d3 (a quadratic form, split into two products of linear forms
once two square roots are available), then d2 (a cubic form in the two
remaining variables), leaving y^5 + d1 y + d0.

Polynomial bookkeeping uses sympy sparse rings over the rational function
field k(x); every step is checked by recomputing the coefficients it claims
to kill.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction
from functools import lru_cache

from sympy import GF, QQ as SQQ
from sympy.polys.fields import field as sym_field
from sympy.polys.rings import ring as sym_ring

from .bj_data import decompose, make_minimal
from .errors import AssumptionViolation, DegenerateCubic, FieldError, GeneralityFailure, IdentityFailure, RadicalUnavailable
from .ring_core import Poly, factor_poly
from .ring_core.irreducible import _linear_factor

VARS = ("u", "v", "w", "p", "q")


@dataclass(frozen=True)
class QuinticInput:
    sigma2: Poly
    sigma3: Poly
    sigma4: Poly
    sigma5: Poly

    @property
    def field(self):
        return self.sigma2.field

    def sigmas(self) -> tuple:
        return (self.sigma2, self.sigma3, self.sigma4, self.sigma5)

    def coeffs(self) -> list[Poly]:
        F = self.field
        return [-self.sigma5, self.sigma4, -self.sigma3, self.sigma2, Poly.zero(F), Poly.one(F)]

    def to_json(self) -> dict:
        return {f"sigma{i}": s.to_json() for i, s in zip(range(2, 6), self.sigmas())}


# generic characteristic polynomial, computed once over Q[s2..s5][u..q]


@lru_cache(maxsize=1)
def generic_charpoly():
    """(ring, sigma gens, uvwpq gens, [d0..d4]) with sigma_i as ring variables."""
    R, *gens = sym_ring("s2,s3,s4,s5,u,v,w,p,q", SQQ)
    s2, s3, s4, s5 = gens[:4]
    u, v, w, p, q = gens[4:]
    zero, one = R.zero, R.one
    # alpha on (1, z, .., z^4), columns = images; z^5 = s5 - s4 z + s3 z^2 - s2 z^3
    last = [s5, -s4, s3, -s2, zero]
    Z = [[zero] * 5 for _ in range(5)]
    for j in range(4):
        Z[j + 1][j] = one
    for i in range(5):
        Z[i][4] = last[i]
    I5 = [[one if i == j else zero for j in range(5)] for i in range(5)]
    powers = [I5]
    for _ in range(4):
        powers.append(_matmul(powers[-1], Z))
    Y = [[u * powers[0][i][j] + v * powers[1][i][j] + w * powers[2][i][j] + p * powers[3][i][j] + q * powers[4][i][j]
          for j in range(5)] for i in range(5)]
    traces = []
    Yk = I5
    for _ in range(5):
        Yk = _matmul(Yk, Y)
        traces.append(sum((Yk[i][i] for i in range(5)), zero))
    # Newton: e_k from power sums
    e = [one]
    for k in range(1, 6):
        acc = zero
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * traces[i - 1]
        e.append(acc * SQQ(1, k))
    d = [(-1) ** (5 - i) * e[5 - i] for i in range(5)]
    return R, (s2, s3, s4, s5), (u, v, w, p, q), d


def _matmul(A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = A[i][0] * B[0][j]
            for k in range(1, n):
                acc += A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


# base field k(x), the working ring and conversions

GENS = VARS + ("r1", "r2")


@dataclass
class Base:
    K: object  # sympy rational function field k(x)
    x: object
    R: object  # K[u, v, w, p, q, r1, r2]; r1, r2 are formal square roots
    gens: tuple
    kfield: object  # ring_core field

    def from_poly(self, f: Poly):
        acc = self.K.zero
        for i, c in enumerate(f.coeffs):
            acc += self.scalar(c) * self.x**i
        return acc

    def scalar(self, c):
        return self.K(_to_sym(self.kfield, c))

    def rational(self, c):
        """A rational constant of the generic formulas, pushed into K."""
        if self.kfield.kind == "q":
            return self.K(c)
        p = self.kfield.p
        return self.K(int(c.numerator) * pow(int(c.denominator), -1, p) % p)

    def to_poly(self, e) -> tuple[Poly, Poly]:
        """(numerator, denominator) as ring_core polynomials, denominator monic."""
        num = _dense(self.kfield, e.numer)
        den = _dense(self.kfield, e.denom)
        inv = self.kfield.inv(den.lc)
        return num.scale(inv), den.scale(inv)

    def is_constant(self, e) -> bool:
        num, den = self.to_poly(e)
        return num.deg <= 0 and den.deg <= 0


def _to_sym(F, c):
    if F.kind == "q":
        c = Fraction(c)
        return SQQ(c.numerator, c.denominator)
    return int(c)


def _from_sym(F, c):
    if F.kind == "q":
        return Fraction(int(c.numerator), int(c.denominator))
    return int(c) % F.p


def _dense(F, pe, slot: int = 0) -> Poly:
    coeffs = {}
    for mono, c in pe.terms():
        coeffs[mono[slot]] = _from_sym(F, c)
    top = max(coeffs, default=-1)
    return Poly(F, [coeffs.get(i, F.zero) for i in range(top + 1)], coerce=False)


def make_base(F) -> Base:
    if F.kind == "q":
        dom = SQQ
    elif F.kind == "fp":
        if F.p in (2, 3, 5):
            raise FieldError("the quintic pipeline needs characteristic prime to 30")
        dom = GF(F.p)
    else:
        raise FieldError("the quintic pipeline runs over F_p or Q")
    K, x = sym_field("x", dom)
    R, *gens = sym_ring(",".join(GENS), K)
    return Base(K, x, R, tuple(gens), F)


def specialize(base: Base, sig, which=range(5)) -> list:
    """d_i in K[u..q] for concrete sigma values (elements of K), None where not requested."""
    _, _, _, d = generic_charpoly()
    out = []
    for i, di in enumerate(d):
        if i not in which:
            out.append(None)
            continue
        acc = base.R.zero
        for mono, c in di.terms():
            coeff = base.rational(c)
            for e, s in zip(mono[:4], sig):
                if e:
                    coeff *= s**e
            acc += base.R({mono[4:] + (0, 0): coeff})
        out.append(acc)
    return out


def _same(a, b) -> bool:
    """Equality through the difference: sympy does not normalize constant
    factors of denominators over GF(p), so == can miss equal fractions."""
    return not (a - b)


def _ground(base: Base, e):
    """The K-element of a ring element free of u..q and of r1, r2."""
    if not e.is_ground:
        raise ValueError("element is not in the base field")
    return e.coeff(base.R.one) if e else base.K.zero


# pipeline state


@dataclass
class Radical:
    name: str
    square: object  # element of K
    status: str  # in-base | formal | unavailable
    root: object = None

    def to_json(self) -> dict:
        out = {"name": self.name, "square": str(self.square), "status": self.status}
        if self.root is not None:
            out["root"] = str(self.root)
        return out


@dataclass
class TschirnhausState:
    input: QuinticInput
    base: Base
    sigma: tuple  # sigma2..sigma5 in K
    d: list  # d0..d4 in the working ring; d0, d1 are only formed at the back substitution
    relations: dict = dfield(default_factory=dict)  # each line as first derived
    subs: dict = dfield(default_factory=dict)  # the same lines after later substitutions
    tower: list = dfield(default_factory=list)
    reductions: list = dfield(default_factory=list)  # r_i^2 - square for formal radicals
    blocks: dict = dfield(default_factory=dict)
    cubic: dict = dfield(default_factory=dict)
    gamma: dict = dfield(default_factory=dict)
    notes: list = dfield(default_factory=list)
    step: int = 0

    def gen(self, name: str):
        return self.base.gens[GENS.index(name)]

    def reduce(self, e):
        return e.rem(self.reductions) if self.reductions else e

    def substitute(self, name: str, expr) -> None:
        g = self.gen(name)
        self.d = [None if di is None else self.reduce(di.compose(g, expr)) for di in self.d]
        self.subs = {k: self.reduce(e.compose(g, expr)) for k, e in self.subs.items()}
        self.subs[name] = expr
        self.relations[name] = expr

    def radicals_available(self) -> bool:
        return all(r.status != "unavailable" for r in self.tower)

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "relations": {k: str(v) for k, v in self.relations.items()},
            "substitutions": {k: str(v) for k, v in self.subs.items()},
            "d": {f"d{i}": "deferred" if di is None else str(di) for i, di in enumerate(self.d)},
            "tower": [r.to_json() for r in self.tower],
            "blocks": {k: str(v) for k, v in self.blocks.items()},
            "cubic": {k: str(v) for k, v in self.cubic.items()},
            "gamma": dict(self.gamma),
            "notes": list(self.notes),
        }


def start(q: QuinticInput) -> TschirnhausState:
    base = make_base(q.field)
    sig = tuple(base.from_poly(s) for s in q.sigmas())
    return TschirnhausState(q, base, sig, specialize(base, sig, which=(2, 3, 4)))


def charpoly_coeffs(q: QuinticInput, values=None) -> list:
    """d0..d4 of y = u + v alpha + w alpha^2 + p alpha^3 + q alpha^4.

    Without values the d_i are forms in the working ring; with values (five
    elements of k(x), or ring_core polynomials/scalars) they are field elements."""
    base = make_base(q.field)
    sig = tuple(base.from_poly(s) for s in q.sigmas())
    d = specialize(base, sig)
    if values is None:
        return d
    vals = [_as_field(base, c) for c in values]
    return [_evaluate(base, di, vals) for di in d]


def _evaluate(base: Base, form, vals):
    acc = base.K.zero
    for mono, c in form.terms():
        term = c
        for e, val in zip(mono, vals):
            if e:
                term *= val**e
        acc += term
    return acc


def _as_field(base: Base, c):
    if isinstance(c, Poly):
        return base.from_poly(c)
    if hasattr(c, "numer"):
        return c
    return base.scalar(c)


# stage 1: eliminate d4


def printed_u(state: TschirnhausState):
    s2, s3, s4, _ = state.sigma
    _, _, w, p, q = state.base.gens[:5]
    return (-3 * p * s3 + 2 * w * s2 + 4 * q * s4 - 2 * q * s2**2) * (1 / state.base.K(5))


def eliminate_d4(state: TschirnhausState) -> TschirnhausState:
    u = state.gen("u")
    printed = printed_u(state)
    d4 = state.d[4]
    coeff_u = d4.coeff(u)  # d4 is linear in u with a constant coefficient
    solved = -(d4 - coeff_u * u) * (1 / coeff_u)
    if not _same(solved, printed):
        raise IdentityFailure("the printed u does not solve d4 = 0")
    state.substitute("u", printed)
    if state.d[4]:
        raise IdentityFailure("d4 does not vanish after the u-substitution")
    state.step = 1
    return state


# stage 2: complete squares in d3


def tau1(sig):
    s2, s3, s4, _ = sig
    return 45 * s3**2 + 12 * s2**3 - 40 * s2 * s4


def tau2(sig):
    s2, s3, s4, s5 = sig
    return (160 * s4**3 + 117 * s4 * s3**2 * s2 + 12 * s2**4 * s4 - 88 * s2**2 * s4**2 - 4 * s2**3 * s3**2
            - 27 * s3**4 + 125 * s2 * s5**2 - 40 * s2**2 * s3 * s5 - 300 * s4 * s3 * s5)


def printed_blocks(sig, gens):
    """The V, W, P blocks of the normal form of d3 as printed."""
    s2, s3, s4, s5 = sig
    _, v, w, p, q = gens[:5]
    t1, t2 = tau1(sig), tau2(sig)
    V = s2 * (v - (5 * q * s5 + 2 * p * s2**2 - 4 * p * s4 + 3 * w * s3 - 5 * q * s3 * s2) * (1 / (2 * s2))) ** 2
    w_prime = (60 * p * s4 * s3 + 8 * s2**2 * p * s3 - 75 * q * s3 * s5 + 45 * q * s3**2 * s2 - 50 * p * s2 * s5
               + 12 * s2**4 * q - 44 * s2**2 * q * s4)
    W = (t1 / (20 * s2)) * (w - w_prime * (1 / t1)) ** 2
    p_prime = (195 * s3**2 * s2 * s5 - 375 * s3 * s5**2 + 36 * s2**4 * s5 - 4 * s4 * s3 * s2**3 + 48 * s4**2 * s3 * s2
               + 400 * s5 * s4**2 - 260 * s2**2 * s5 * s4 - 27 * s3**3 * s4)
    P = (t2 / t1) * (p - q * p_prime * (1 / (2 * t2))) ** 2
    return V, W, P


def complete_squares(form, order):
    """form = sum a_i lambda_i^2 with lambda_i = var_i + (later variables); returns [(a_i, lambda_i)]."""
    out = []
    rest = form
    zero = form.ring.zero
    for g in order:
        a = rest.coeff(g**2)
        if not a:
            raise GeneralityFailure("zero pivot while completing squares")
        linear = rest.diff(g).compose(g, zero)
        lam = g + linear * (1 / (2 * a))
        out.append((a, lam))
        rest = rest - a * lam**2
    if rest:
        raise IdentityFailure("completion of squares left a remainder")
    return out


def normalize_d3(state: TschirnhausState, signs=(1, 1)) -> TschirnhausState:
    """Normal form mu1 l1^2 - mu2 l2^2 + mu3 l3^2 - mu4 q^2 of d3, then the
    relations l1 = rho1 l2 and l3 = rho2 q with rho_i^2 = mu_{2i}/mu_{2i-1}."""
    sig = state.sigma
    t1, t2 = tau1(sig), tau2(sig)
    for name, value in (("sigma2", sig[0]), ("tau1", t1), ("tau2", t2)):
        if not value:
            err = GeneralityFailure(f"{name} vanishes")
            err.report = state.to_json()
            err.vanished = name
            raise err
    _, v, w, p, q, r1, r2 = state.base.gens
    (a1, l1), (a2, l2), (a3, l3), (a4, _) = complete_squares(state.d[3], (v, w, p, q))
    mu = (a1, -a2, a3, -a4)
    V, W, P = printed_blocks(sig, state.base.gens)
    checks = {
        "V": _same(a1 * l1**2, V),
        "W": _same(-a2 * l2**2, W),
        "P": _same(a3 * l3**2, P),
        "mu2_over_mu1": _same(mu[1] / mu[0], t1 / (20 * sig[0] ** 2)),
    }
    bad = [k for k, ok in checks.items() if not ok]
    if bad:
        raise IdentityFailure(f"completion of squares disagrees with the printed blocks: {bad}")
    state.blocks = {"mu1": mu[0], "mu2": mu[1], "mu3": mu[2], "mu4": mu[3], "tau1": t1, "tau2": t2,
                    "lambda1": l1, "lambda2": l2, "lambda3": l3}
    state.notes.append("V, W, P blocks and mu2/mu1 = tau1/(20 sigma2^2) match the printed formulas")
    rads = [radical(state.base, "mu21", mu[1] / mu[0]), radical(state.base, "mu43", mu[3] / mu[2])]
    state.tower = rads
    state.step = 2
    if not state.radicals_available():
        state.notes.append("stage 2 stopped: a square root is neither in the base nor a constant")
        return state
    rho = []
    for rad, sym, sign in zip(rads, (r1, r2), signs):
        if rad.status == "in-base":
            rho.append(sign * state.base.R(rad.root))
        else:
            state.reductions.append(sym**2 - state.base.R(rad.square))
            rho.append(sign * sym)
    state.substitute("v", rho[0] * l2 - (l1 - v))
    l3_now = state.reduce(l3.compose(v, state.subs["v"]))
    state.substitute("p", rho[1] * q - (l3_now - p))
    if state.d[3]:
        raise IdentityFailure("d3 does not vanish after the stage 2 relations")
    return state


def radical(base: Base, name: str, value) -> Radical:
    root = sqrt_in_field(base, value)
    if root is not None:
        return Radical(name, value, "in-base", root)
    return Radical(name, value, "formal" if base.is_constant(value) else "unavailable")


def sqrt_in_field(base: Base, value):
    """Square root of an element of k(x) inside k(x), or None."""
    if not value:
        return base.K.zero
    num, den = base.to_poly(value)
    fac = factor_poly(num * den)
    if any(e % 2 for _, e in fac.factors):
        return None
    F = base.kfield
    r = F.sqrt(fac.unit)
    if r is None or F.mul(r, r) != fac.unit:
        return None
    root = Poly.const(F, r)
    for P, e in fac.factors:
        root = root * P ** (e // 2)
    return base.from_poly(root) / base.from_poly(den)


# stage 3: normalize the cubic d2


def _tower_inverse(state: TschirnhausState, e):
    """Inverse of a nonzero element of K[r1, r2]/(reductions) via its conjugates."""
    conj = state.base.R.one
    syms = [state.gen("r1"), state.gen("r2")][: len(state.reductions)]
    for signs in _sign_patterns(len(syms)):
        if all(s == 1 for s in signs):
            continue
        c = e
        for sym, s in zip(syms, signs):
            if s < 0:
                c = c.compose(sym, -sym)
        conj = state.reduce(conj * c)
    norm = state.reduce(e * conj)
    if not norm.is_ground or not norm:
        raise IdentityFailure("tower norm is not a nonzero base element")
    return conj * (1 / _ground(state.base, norm))


def _sign_patterns(k: int):
    if k == 0:
        return [()]
    return [(s,) + rest for s in (1, -1) for rest in _sign_patterns(k - 1)]


def reduce_d2(state: TschirnhausState) -> TschirnhausState:
    """Restrict d2 to the stage 2 relations, a cubic form in (w, q), and bring it
    to W^3 + s1 W q^2 + t1 q^3 with w = W + shift q after dividing by its w^3 coefficient."""
    if state.step < 2 or not state.radicals_available():
        raise _unavailable(state, "stage 3 needs both stage 2 square roots in the base or constant")
    R = state.base.R
    w_slot = GENS.index("w")
    coeffs = [R.zero] * 4
    for mono, c in state.d[2].terms():
        if any(mono[i] for i in range(5) if i not in (w_slot, GENS.index("q"))):
            raise IdentityFailure("d2 still involves eliminated variables")
        coeffs[mono[w_slot]] += R({(0, 0, 0, 0, 0) + mono[5:]: c})
    c0, c1, c2, c3 = coeffs
    if not c3:
        raise DegenerateCubic("the cubic form has no w^3 term")
    inv3 = _tower_inverse(state, c3)
    shift = state.reduce(-c2 * inv3 * (1 / state.base.K(3)))
    s1 = state.reduce((c1 + 2 * c2 * shift + 3 * c3 * shift**2) * inv3)
    t1 = state.reduce((c0 + c1 * shift + c2 * shift**2 + c3 * shift**3) * inv3)
    state.cubic = {"c3": c3, "c2": c2, "c1": c1, "c0": c0, "shift": shift, "s1": s1, "t1": t1}
    state.notes.append("cubic normalized by w = W + shift*q and division by the w^3 coefficient")
    state.step = 3
    if not (s1.is_ground and t1.is_ground):
        raise _unavailable(state, "the normalized cubic does not descend to the base field")
    s1, t1 = _ground(state.base, s1), _ground(state.base, t1)
    state.cubic.update(s1=s1, t1=t1)
    if not 4 * s1**3 + 27 * t1**2:
        raise DegenerateCubic("the cubic form is not squarefree")
    cubic_gamma(state)
    return state


def _unavailable(state: TschirnhausState, msg: str) -> RadicalUnavailable:
    err = RadicalUnavailable(msg)
    err.report = state.to_json()
    return err


def _integral_cubic(state: TschirnhausState):
    """(S, T, m) in k[x] with theta = Theta / m turning theta^3 + s1 theta + t1 into Theta^3 + S Theta + T."""
    base = state.base
    s1, t1 = state.cubic["s1"], state.cubic["t1"]
    m = base.to_poly(s1)[1].lcm(base.to_poly(t1)[1])
    mK = base.from_poly(m)
    S = base.to_poly(s1 * mK**2)[0]
    T = base.to_poly(t1 * mK**3)[0]
    return S, T, m


def cubic_gamma(state: TschirnhausState, seed: int = 0) -> dict:
    """gamma from the B-J data of the normalized cubic, with gamma^3 checked
    modulo theta^3 + S theta + T, r3^2 = 3 and rb^2 = b11 c11 (theta = Theta for
    the integral form of the cubic)."""
    base = state.base
    K = base.K
    S, T, m = _integral_cubic(state)
    R3, th, r3, rb = sym_ring("theta,r3,rb", K)
    emb = lambda f: R3(base.from_poly(f))  # noqa: E731
    out = {"clearing": m.format(), "cubic": f"Theta^3 + ({S.format()}) Theta + ({T.format()})"}
    if S.is_zero():
        g3 = (th**3).rem([th**3 + emb(T)])
        out.update(s1_zero=True, gamma="Theta", gamma_cubed=str(g3), identity_verified=_same(g3, -emb(T)))
        cube = -T
    else:
        try:
            inp, _, _ = make_minimal(3, S, T, seed=seed)
            dec = decompose(inp, seed)
        except AssumptionViolation as exc:
            raise DegenerateCubic(f"the normalized cubic is degenerate: {exc}") from exc
        parts = {
            "a10": dec.a_poly(0), "a11": dec.a_poly(1), "a12": dec.a_poly(2),
            "b10": dec.b_poly(0), "b11": dec.b_poly(1),
            "c10": dec.c0, "c11": dec.c1.scale(dec.c_unit),
        }
        E = {k: emb(v) for k, v in parts.items()}
        gamma = (6 * E["a10"] * th**2 - 9 * E["b10"] * E["b11"] * th + r3 * E["c10"] * rb * th
                 + 4 * E["a10"] ** 2 * E["a11"] * E["a12"] ** 2 * E["b11"])
        rel = [th**3 + emb(inp.s) * th + emb(inp.t), r3**2 - 3, rb**2 - E["b11"] * E["c11"]]
        g3 = (gamma**3).rem(rel)
        cc = E["c11"] * E["c10"] ** 2
        expected = (4 * E["a11"] * E["a12"] ** 2 * E["b11"] ** 3 * cc * (cc - 3 * r3 * rb * E["b10"] * E["c10"])).rem(rel)
        ok = _same(g3, expected) and g3.degree(th) <= 0
        state.tower += [radical(base, "three", K(3)), radical(base, "b11c11", base.from_poly(parts["b11"] * parts["c11"]))]
        out.update(s1_zero=False, parts={k: v.format() for k, v in parts.items()}, gamma_cubed=str(g3),
                   identity_verified=ok)
        cube = None
        if not any(mono[1] or mono[2] for mono in g3.monoms()) and g3:
            num, den = base.to_poly(_ground_r3(g3))
            cube = num if den.is_one() else None
    if not out["identity_verified"]:
        raise IdentityFailure("gamma^3 does not reduce to the expected product")
    out["gamma_k"] = gamma_k_denominators(cube)
    state.gamma = out
    return out


def _ground_r3(e):
    return e.coeff(e.ring.one)


def gamma_k_denominators(cube: Poly | None) -> dict:
    """gamma_k = gamma^k / prod l_j^[jk/3] where gamma^3 = l1 l2^2 l3^3 with l1, l2 squarefree.
    The l_j are explicit only when gamma^3 lies in k[x]."""
    floors = {k: [j * k // 3 for j in (1, 2, 3)] for k in (1, 2)}
    if cube is None:
        return {"status": "formal", "exponents": floors}
    ells = {1: Poly.const(cube.field, cube.lc), 2: Poly.one(cube.field), 3: Poly.one(cube.field)}
    for P, e in factor_poly(cube).factors:
        ells[3] = ells[3] * P ** (e // 3)
        if e % 3:
            ells[e % 3] = ells[e % 3] * P
    return {"status": "explicit", "exponents": floors, "ell": {j: f.format() for j, f in ells.items()}}


def formal_linear_factor(state: TschirnhausState) -> dict:
    """L = w - (theta + shift) q for a formal root theta of the normalized cubic;
    checks that L divides the cubic form in (w, q)."""
    K = state.base.K
    Rl, w, q, th = sym_ring("w,q,theta", K)
    c = state.cubic
    if not c["shift"].is_ground:
        raise _unavailable(state, "the cubic transformation is not defined over the base")
    shift = _ground(state.base, c["shift"])
    form = sum((Rl(_ground(state.base, c[f"c{i}"])) * w**i * q ** (3 - i) for i in range(4)), Rl.zero)
    at_root = form.compose(w, (th + shift) * q)
    minpoly = th**3 + Rl(c["s1"]) * th + Rl(c["t1"])
    divides = not at_root.rem([minpoly])
    return {"L": f"w - (theta + {shift})*q", "theta_minpoly": str(minpoly), "divides": divides}


def cubic_root_in_base(state: TschirnhausState):
    """A root of theta^3 + s1 theta + t1 in k(x), or None."""
    S, T, m = _integral_cubic(state)
    F = state.base.kfield
    roots = _poly_roots_of_cubic([T, S, Poly.zero(F), Poly.one(F)])
    if not roots:
        return None
    return state.base.from_poly(roots[0]) / state.base.from_poly(m)


def _poly_roots_of_cubic(coeffs):
    """Roots in k[x] of Theta^3 + S Theta + T with S, T in k[x]."""
    if coeffs[0].field.kind == "q":
        return _rational_roots(coeffs)
    lin = _linear_factor(coeffs)
    return [] if lin is None else [-lin[0]]


def _rational_roots(coeffs):
    F = coeffs[0].field
    Rz, x, th = sym_ring("x,theta", SQQ)
    f = Rz.zero
    for i, c in enumerate(coeffs):
        for j, a in enumerate(c.coeffs):
            f += Rz(_to_sym(F, a)) * x**j * th**i
    out = []
    for g, _ in f.factor_list()[1]:
        if g.degree(th) == 1:
            a1, a0 = g.coeff_wrt(th, 1), g.coeff_wrt(th, 0)
            if a1.degree(x) <= 0:
                out.append(_dense(F, -a0 * (1 / a1.LC), slot=0))
    return out


# stage 4: back substitution


@dataclass
class QuinticReduction:
    s_hat: Poly
    t_hat: Poly
    y: tuple  # coefficients of 1, alpha, .., alpha^4 in k[x]
    scale: Poly  # least common denominator used to clear y
    state: TschirnhausState

    def to_json(self) -> dict:
        return {
            "s_hat": self.s_hat.to_json(),
            "t_hat": self.t_hat.to_json(),
            "y": [c.to_json() for c in self.y],
            "denominator_scale": self.scale.to_json(),
            "state": self.state.to_json(),
        }


def run_steps(q: QuinticInput, signs=(1, 1), seed: int = 0) -> TschirnhausState:
    """Stages 1-3 as far as the radicals allow (raises with a report attached otherwise)."""
    state = start(q)
    eliminate_d4(state)
    normalize_d3(state, signs)
    reduce_d2(state)
    return state


def bj_reduce_quintic(q: QuinticInput, signs=(1, 1), seed: int = 0) -> QuinticReduction:
    state = run_steps(q, signs, seed)
    if any(r.status != "in-base" for r in state.tower[:2]):
        raise _unavailable(state, "stage 4 over the base needs both stage 2 roots in the base")
    theta = cubic_root_in_base(state)
    if theta is None:
        state.gamma["linear_factor"] = formal_linear_factor(state)
        raise _unavailable(state, "the cubic in w/q has no root in the base field")
    base = state.base
    w_over_q = theta + _ground(base, state.cubic["shift"])
    w, qg = state.gen("w"), state.gen("q")
    ratios = {"w": w_over_q, "q": base.K.one}
    for name in ("u", "v", "p"):
        e = state.subs[name].compose(w, w_over_q * qg)
        ratios[name] = e.coeff(qg)
    coeffs = [ratios[n] for n in VARS]
    den = Poly.one(base.kfield)
    for c in coeffs:
        den = den.lcm(base.to_poly(c)[1])
    D = base.from_poly(den)
    y = [base.to_poly(c * D)[0] for c in coeffs]
    d = charpoly_coeffs(q, y)
    if any(d[2:]):
        raise IdentityFailure("d2, d3, d4 do not all vanish at the final substitution")
    s_hat, t_hat = base.to_poly(d[1])[0], base.to_poly(d[0])[0]
    if not trinomial_residue_is_zero(q, y, s_hat, t_hat):
        raise IdentityFailure("y^5 + s_hat y + t_hat does not vanish modulo f")
    state.notes.append(f"y cleared by the least common denominator {den.format()}")
    state.step = 4
    return QuinticReduction(s_hat, t_hat, tuple(y), den, state)


def trinomial_residue_is_zero(q: QuinticInput, y, s_hat: Poly, t_hat: Poly) -> bool:
    """Expand y^5 + s_hat y + t_hat in k[x][alpha]/(f) exactly."""
    F = q.field
    f = q.coeffs()
    zero = Poly.zero(F)

    def mul(A, B):
        prod = [zero] * 9
        for i, a in enumerate(A):
            if a.is_zero():
                continue
            for j, b in enumerate(B):
                if not b.is_zero():
                    prod[i + j] = prod[i + j] + a * b
        for k in range(8, 4, -1):
            c = prod[k]
            if not c.is_zero():
                prod[k] = zero
                for j in range(5):
                    prod[k - 5 + j] = prod[k - 5 + j] - c * f[j]
        return prod[:5]

    y = list(y)
    y2 = mul(y, y)
    y5 = mul(mul(y2, y2), y)
    res = [a + s_hat * b for a, b in zip(y5, y)]
    res[0] = res[0] + t_hat
    return all(c.is_zero() for c in res)


# symbolic checks over Q(s2, s3, s4, s5)


WEIGHTS = {"s2": 2, "s3": 3, "s4": 4, "s5": 5}


@lru_cache(maxsize=1)
def symbolic_checks() -> dict:
    """Stages 1 and 2 with the sigma_i as indeterminates.

    Checks the printed u, the printed V, W, P blocks, mu2/mu1, and recomputes
    Q' = 20 tau1 tau2 (Q-coefficient - printed envelope), which must be a
    polynomial over Z, weight-homogeneous of degree 26."""
    Rg, sg, vg, d = generic_charpoly()
    Ks, *sig = sym_field("s2,s3,s4,s5", SQQ)
    Rs, u, v, w, p, q = sym_ring(",".join(VARS), Ks)
    gens = (u, v, w, p, q)

    def move(e):
        acc = Rs.zero
        for mono, c in e.terms():
            coeff = Ks(c)
            for k, s in zip(mono[:4], sig):
                if k:
                    coeff *= s**k
            acc += Rs({mono[4:]: coeff})
        return acc

    d4, d3 = move(d[4]), move(d[3])
    s2, s3, s4, s5 = sig
    printed = (-3 * p * s3 + 2 * w * s2 + 4 * q * s4 - 2 * q * s2**2) * (1 / Ks(5))
    cu = d4.coeff(u)
    out = {"u_solves_d4": _same(-(d4 - cu * u) * (1 / cu), printed)}
    d3 = d3.compose(u, printed)
    out["d4_vanishes"] = not d4.compose(u, printed)
    (a1, l1), (a2, l2), (a3, l3), (a4, _) = complete_squares(d3, (v, w, p, q))
    V, W, P = printed_blocks(tuple(sig), gens)
    t1, t2 = tau1(sig), tau2(sig)
    out["V"] = _same(a1 * l1**2, V)
    out["W"] = _same(-a2 * l2**2, W)
    out["P"] = _same(a3 * l3**2, P)
    out["mu2_over_mu1"] = _same(-a2 / a1, t1 / (20 * s2**2))
    envelope = -4 * s3**2 * s2 + 4 * s3 * s5 - Ks(SQQ(12, 5)) * s4 * s2**2 + Ks(SQQ(2, 5)) * s4**2 + Ks(SQQ(3, 5)) * s2**4
    q_prime = 20 * t1 * t2 * (-a4 - envelope)
    num, den = q_prime.numer, q_prime.denom
    out["Q_prime_polynomial"] = den.is_ground and all(
        (c / den.LC).denominator == 1 for c in num.coeffs()
    )
    out["Q_prime_weight_26"] = {_weight(m) for m in num.monoms()} == {26}
    out["mu4_over_mu3_envelope"] = _same(-a4 / a3, (q_prime + 20 * t1 * t2 * envelope) / (20 * t2**2))
    out["tau_weights"] = {_weight(m) for m in t1.numer.monoms()} == {6} and {_weight(m) for m in t2.numer.monoms()} == {12}
    out["blocks_homogeneous"] = all(_block_homogeneous(B) for B in (V, W, P, a4 * q**2))
    return out


def _weight(mono) -> int:
    return sum(k * w for k, w in zip(mono, WEIGHTS.values()))


def _block_homogeneous(block) -> bool:
    """Single weight per block, with deg s_i = i and u, v, w, p, q of degrees
    0, -1, -2, -3, -4 (the degrees that make y homogeneous)."""
    weights = set()
    for mono, c in block.terms():
        var_weight = -sum(k * (i) for i, k in enumerate(mono))
        for cm in c.numer.monoms():
            for dm in c.denom.monoms():
                weights.add(var_weight + _weight(cm) - _weight(dm))
    return len(weights) == 1
