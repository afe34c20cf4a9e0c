"""Quartic extensions z^4 + s2 z^2 - s3 z + s4 over k[x].

Adjoining y with y^2 = d1, where tau = 2 s2^3 - 8 s2 s4 + 9 s3^2 = d1 d0^2,
turns the quartic into a trinomial w^4 + s_hat w + t_hat over R_hat = k[x][y]
via w = s2^2/2 + (3 s3/2 + d0 y/2) alpha + s2 alpha^2.  The trace-free part
of the closure of k[x][alpha] is then the involution-fixed part of the
trinomial's trace-free closure over R_hat.

The presentation step needs R_hat to be a principal ideal domain so the
trinomial machinery can run over it.  Two cases are realized exactly:

* d1 a non-square constant of F_p: R_hat = F_{p^2}[x];
* deg d1 = 1: R_hat = k[y] through x = (y^2 - d1(0)) / d1'(0).

Anything else raises NonPrincipalObstruction carrying divisor-level data.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .bj_data import BJDecomposition, decompose, make_minimal
from .closure import IntegralElement, canonical_form, is_integral, power_sums, weights, beta_elements
from .errors import AssumptionViolation, FieldError, GeneralityFailure, IdentityFailure, InternalCheckFailure, NonPrincipalObstruction, TauIsSquare, Unsupported
from .ring_core import ExtensionField, Poly, PolyMatrix, QuadExtElem, det_bareiss, factor_poly, irreducibility_check, kernel_basis


def _frac(F, num: int, den: int = 1):
    return F.div(F.from_int(num), F.from_int(den))


@dataclass(frozen=True)
class QuarticInput:
    sigma2: Poly
    sigma3: Poly
    sigma4: Poly

    @property
    def field(self):
        return self.sigma2.field

    def coeffs(self) -> list[Poly]:
        """Ascending z-coefficients of z^4 + s2 z^2 - s3 z + s4."""
        F = self.field
        return [self.sigma4, -self.sigma3, self.sigma2, Poly.zero(F), Poly.one(F)]

    def to_json(self) -> dict:
        return {"sigma2": self.sigma2.to_json(), "sigma3": self.sigma3.to_json(), "sigma4": self.sigma4.to_json()}


def quartic_tau(s2: Poly, s3: Poly, s4: Poly) -> Poly:
    F = s2.field
    return (s2**3).scale(F.from_int(2)) - (s2 * s4).scale(F.from_int(8)) + (s3 * s3).scale(F.from_int(9))


def split_square(tau: Poly, seed: int = 0) -> tuple[Poly, Poly]:
    """(d0, d1) with tau = d1 d0^2, d1 squarefree; a square unit is folded into d0."""
    F = tau.field
    fac = factor_poly(tau, seed)
    d0, d1 = Poly.one(F), Poly.const(F, fac.unit)
    for p, e in fac.factors:
        d0 = d0 * p ** (e // 2)
        if e % 2:
            d1 = d1 * p
    root = _unit_sqrt(F, fac.unit)
    if root is not None:
        d0 = d0.scale(root)
        d1 = d1.scale(F.inv(fac.unit))
    return d0, d1


def _unit_sqrt(F, u):
    if F.kind == "q":
        r = F.nth_root(u, 2)
        return r if r is not None and r * r == u else None
    return F.sqrt(u) if F.is_square(u) else None


@dataclass(frozen=True)
class QuarticReduction:
    input: QuarticInput
    tau: Poly
    d0: Poly
    d1: Poly
    w: tuple  # QuadExtElem coefficients of alpha^0, alpha^1, alpha^2
    s_hat: QuadExtElem
    t_hat: QuadExtElem
    irreducibility: str
    notes: tuple = ()

    def to_json(self) -> dict:
        return {
            "tau": self.tau.to_json(),
            "d0": self.d0.to_json(),
            "d1": self.d1.to_json(),
            "w": [c.to_json() for c in self.w],
            "s_hat": self.s_hat.to_json(),
            "t_hat": self.t_hat.to_json(),
            "identity_verified": True,
            "irreducibility": self.irreducibility,
            "notes": list(self.notes),
        }


# arithmetic in R[alpha]/(f) with coefficients in any ring supporting + and *


def alpha_mul(A: list, B: list, fco: list, zero) -> list:
    """Product of two alpha-vectors of length 4 reduced by alpha^4 = s3 alpha - s2 alpha^2 - s4."""
    prod = [zero] * 7
    for i, a in enumerate(A):
        if _nz(a):
            for j, b in enumerate(B):
                if _nz(b):
                    prod[i + j] = prod[i + j] + a * b
    for k in range(6, 3, -1):
        c = prod[k]
        if _nz(c):
            prod[k] = zero
            for j in range(4):
                if _nz(fco[j]):
                    prod[k - 4 + j] = prod[k - 4 + j] - c * fco[j]
    return prod[:4]


def _nz(c) -> bool:
    return not c.is_zero()


def _hat_coefficients(q: QuarticInput, d0: Poly, d1: Poly):
    F = q.field
    s2, s3, s4 = q.sigma2, q.sigma3, q.sigma4
    fr = lambda a, b=1: Poly.const(F, _frac(F, a, b))  # noqa: E731
    s_real = (
        s2**6 * fr(-1, 2) + s2**4 * s4 * fr(4) - s2**3 * s3**2 * fr(19, 4) - s2**2 * s4**2 * fr(8)
        + s2 * s3**2 * s4 * fr(27) - s3**4 * fr(27, 2)
    )
    s_imag = s3 * (s2**3 * fr(3) - s2 * s4 * fr(28) + s3**2 * fr(18)) * fr(-1, 4)
    t_real = (
        s2**5 * s3**2 * fr(19, 8) - s2**6 * s4 * fr(5, 4) + s2**4 * s4**2 + s2**8 * fr(3, 16)
        + s2**3 * s4 * s3**2 * fr(3, 2) + s4 * s3**4 * fr(81, 2) + s2**2 * s3**4 * fr(27, 4)
        - s4**2 * s3**2 * s2 * fr(36) + s2**2 * s4**3 * fr(4)
    )
    t_imag = s2**5 * s3 * fr(3, 8) + s4 * s3**3 * fr(27, 2) - s4**2 * s3 * s2 * fr(6) + s2**2 * s3**3 * fr(9, 4)
    s_hat = QuadExtElem(s_real, d0 * s_imag, d1)
    t_hat = QuadExtElem(t_real, d0 * t_imag, d1)
    w = (
        QuadExtElem.of(s2 * s2 * fr(1, 2), d1),
        QuadExtElem(s3 * fr(3, 2), d0 * fr(1, 2), d1),
        QuadExtElem.of(s2, d1),
    )
    return w, s_hat, t_hat


def quartic_identity_residue(q: QuarticInput, w, s_hat, t_hat, d1: Poly) -> list:
    """alpha-coordinates of w^4 + s_hat w + t_hat modulo (f, y^2 - d1)."""
    zero = QuadExtElem.of(0, d1)
    fco = [QuadExtElem.of(c, d1) for c in q.coeffs()[:4]]
    W = list(w) + [zero]
    W2 = alpha_mul(W, W, fco, zero)
    W4 = alpha_mul(W2, W2, fco, zero)
    res = [a + s_hat * b for a, b in zip(W4, W)]
    res[0] = res[0] + t_hat
    return res


def quartic_reduce(q: QuarticInput, seed: int = 0, check_irreducible: bool = True) -> QuarticReduction:
    F = q.field
    if F.char in (2, 3):
        raise FieldError("quartic reduction needs characteristic prime to 6")
    tau = quartic_tau(q.sigma2, q.sigma3, q.sigma4)
    if tau.is_zero():
        raise TauIsSquare("tau vanishes; the quartic is likely directly B-J reducible")
    d0, d1 = split_square(tau, seed)
    if d1.is_const() and _unit_sqrt(F, d1.lc) is not None:
        raise TauIsSquare(f"tau = {tau.format()} is a square; the quartic is likely directly B-J reducible")
    w, s_hat, t_hat = _hat_coefficients(q, d0, d1)
    residue = quartic_identity_residue(q, w, s_hat, t_hat, d1)
    if any(not c.is_zero() for c in residue):
        raise IdentityFailure("w^4 + s_hat w + t_hat does not vanish modulo (f, y^2 - d1)")
    status = irreducibility_check(q.coeffs()).status if check_irreducible else "unverified"
    notes = ("tau uses the weight-6 form 2*s2^3 - 8*s2*s4 + 9*s3^2",)
    return QuarticReduction(q, tau, d0, d1, w, s_hat, t_hat, status, notes)


def tau_is_weight_homogeneous(tau_fn=quartic_tau, field=None) -> bool:
    """Check tau(l^2 s2, l^3 s3, l^4 s4) == l^6 tau(s2, s3, s4) at a sample point."""
    from .ring_core import QQ

    F = field or QQ
    lam = F.from_int(3)
    s2, s3, s4 = (Poly.const(F, v) for v in (2, 5, 7))
    lhs = tau_fn(s2.scale(F.pow(lam, 2)), s3.scale(F.pow(lam, 3)), s4.scale(F.pow(lam, 4)))
    return lhs == tau_fn(s2, s3, s4).scale(F.pow(lam, 6))


# R_hat as a principal ideal domain


class _HatBase:
    """Identification of R_hat = k[x][y]/(y^2 - d1) with a univariate PID."""

    field: object
    y: Poly

    def to_base(self, e: QuadExtElem) -> Poly:
        raise NotImplementedError

    def from_base(self, P: Poly) -> QuadExtElem:
        raise NotImplementedError

    def conj(self, P: Poly) -> Poly:
        raise NotImplementedError

    def embed(self, u: Poly) -> Poly:
        return self.to_base(QuadExtElem.of(u, self.d1))

    def real(self, P: Poly) -> Poly:
        e = self.from_base(P)
        if not e.u1.is_zero():
            raise InternalCheckFailure("expected an involution-invariant element")
        return e.u0


class _TwistBase(_HatBase):
    kind = "constant_twist"

    def __init__(self, d1: Poly):
        F = d1.field
        self.d1 = d1
        self.k = F
        self.field = ExtensionField(F.p, [F.neg(d1.lc) % F.p, 0, 1])
        self.y = Poly.const(self.field, (0, 1))

    def to_base(self, e: QuadExtElem) -> Poly:
        L = max(len(e.u0.coeffs), len(e.u1.coeffs))
        return Poly(self.field, [(int(e.u0.coeff(i)), int(e.u1.coeff(i))) for i in range(L)], coerce=False)

    def from_base(self, P: Poly) -> QuadExtElem:
        u0 = Poly(self.k, [c[0] for c in P.coeffs], coerce=False)
        u1 = Poly(self.k, [c[1] for c in P.coeffs], coerce=False)
        return QuadExtElem(u0, u1, self.d1)

    def conj(self, P: Poly) -> Poly:
        p = self.field.p
        return Poly(self.field, [(c[0], -c[1] % p) for c in P.coeffs], coerce=False)


class _LinearBase(_HatBase):
    kind = "linear_d1"

    def __init__(self, d1: Poly):
        F = d1.field
        self.d1 = d1
        self.k = F
        self.field = F
        self.y = Poly.x(F)
        c0, c1 = d1.coeff(0), d1.coeff(1)
        # x = (y^2 - c0) / c1
        self.x_of_y = Poly(F, [F.div(F.neg(c0), c1), F.zero, F.inv(c1)], coerce=False)

    def to_base(self, e: QuadExtElem) -> Poly:
        return _compose(e.u0, self.x_of_y) + self.y * _compose(e.u1, self.x_of_y)

    def from_base(self, P: Poly) -> QuadExtElem:
        F = self.k
        even = Poly(F, P.coeffs[0::2], coerce=False)
        odd = Poly(F, P.coeffs[1::2], coerce=False)
        return QuadExtElem(_compose(even, self.d1), _compose(odd, self.d1), self.d1)

    def conj(self, P: Poly) -> Poly:
        F = self.k
        return Poly(F, [c if i % 2 == 0 else F.neg(c) for i, c in enumerate(P.coeffs)], coerce=False)


def _compose(u: Poly, g: Poly) -> Poly:
    acc = Poly.zero(g.field)
    for c in reversed(u.coeffs):
        acc = acc * g + Poly.const(g.field, c)
    return acc


def _split_type(d1: Poly, P: Poly) -> str:
    if d1.valuation(P) > 0:
        return "ramified"
    F = P.field
    if P.deg == 1:
        return "split" if F.is_square(d1.eval(F.neg(P.coeff(0)))) else "inert"
    # Euler criterion in k[x]/(P): d1^((q^deg - 1)/2) = 1
    from .ring_core.factor import powmod

    if F.order is None:
        return "unknown"
    r = powmod(d1 % P, (F.order**P.deg - 1) // 2, P)
    return "split" if r.is_one() else "inert"


def obstruction_data(red: QuarticReduction, seed: int = 0) -> list[dict]:
    """Primes of k[x] under the support of s_hat t_hat, with their splitting in R_hat."""
    out = []
    norm = red.s_hat.norm() * red.t_hat.norm()
    if norm.is_zero():
        return out
    for P, e in factor_poly(norm, seed).factors:
        out.append({
            "prime": P.format(),
            "splitting": _split_type(red.d1, P),
            "v_norm_s_hat": red.s_hat.norm().valuation(P),
            "v_norm_t_hat": red.t_hat.norm().valuation(P),
        })
    return out


def hat_base(red: QuarticReduction, seed: int = 0) -> _HatBase:
    F = red.input.field
    d1 = red.d1
    if d1.deg == 1:
        return _LinearBase(d1)
    if d1.deg == 0 and F.kind == "fp":
        return _TwistBase(d1)
    if d1.deg == 0:
        raise Unsupported("constant quadratic twists are only realized over prime fields")
    data = obstruction_data(red, seed)
    err = NonPrincipalObstruction(
        f"R_hat = k[x][y]/(y^2 - ({d1.format()})) is not realized as a principal ideal domain; "
        "returning divisor-level data"
    )
    err.data = data
    raise err


@dataclass
class QuarticPresentation:
    reduction: QuarticReduction
    base_kind: str
    hat_decomposition: BJDecomposition
    scale: QuadExtElem  # lambda with w_min = w / lambda
    c0_hat: QuadExtElem
    f_hat: tuple  # (f1 + f3 y, f2 + f4 y)
    g_hat: tuple
    gamma: tuple  # 6 IntegralElements over k[x]
    mu: tuple  # 6 IntegralElements over k[x]
    phi: tuple  # 4 rows of 10 coefficients (of v1..v10)
    relation_M: tuple  # 3x3 QuadExtElem
    checks: dict = dfield(default_factory=dict)

    @property
    def c0_norm(self) -> Poly:
        return self.c0_hat.norm()

    def phi_matrix(self) -> PolyMatrix:
        return PolyMatrix.from_rows(self.reduction.input.field, [list(r) for r in self.phi])

    def evaluate_phi(self, v: list[Poly]) -> list[Poly]:
        return self.phi_matrix().apply(v)

    def element(self, v: list[Poly]) -> IntegralElement:
        """sum v_i mu_i / |c0_hat|^2 for a solution v_1..v_10 of the syzygies."""
        return _lincomb(v[:6], self.mu, self.c0_norm)

    def to_json(self) -> dict:
        return {
            "base": self.base_kind,
            "scale": self.scale.to_json(),
            "c0_hat": self.c0_hat.to_json(),
            "f_hat": [e.to_json() for e in self.f_hat],
            "g_hat": [e.to_json() for e in self.g_hat],
            "gamma": [e.to_json() for e in self.gamma],
            "mu": [e.to_json() for e in self.mu],
            "phi": [[c.to_json() for c in row] for row in self.phi],
            "relation_M": [[e.to_json() for e in row] for row in self.relation_M],
            "checks": self.checks,
        }


def _lincomb(coeffs: list[Poly], elems, den: Poly) -> IntegralElement:
    """(sum c_i e_i) / den."""
    F = den.field
    common = Poly.one(F)
    for c, e in zip(coeffs, elems):
        if not c.is_zero():
            common = common.lcm(e.den)
    n = elems[0].n
    num = [Poly.zero(F)] * n
    for c, e in zip(coeffs, elems):
        if c.is_zero():
            continue
        scale = c * common.exact_div(e.den)
        num = [a + scale * b for a, b in zip(num, e.num)]
    return IntegralElement.make(num, common * den)


def _alpha_vector(base: _HatBase, q: QuarticInput, red: QuarticReduction, beta: IntegralElement, lam: Poly):
    """beta (in coordinates of w_min = w / lam) rewritten in the alpha basis over the base PID.
    Returns (numerator vector, denominator)."""
    B = base.field
    zero = Poly.zero(B)
    fco = [base.embed(c) for c in q.coeffs()[:4]]
    W = [base.to_base(c) for c in red.w] + [zero]
    power = [Poly.one(B), zero, zero, zero]
    num = [zero] * 4
    for k in range(4):
        c = beta.num[k]
        if not c.is_zero():
            scale = c * lam ** (3 - k)
            num = [a + scale * b for a, b in zip(num, power)]
        power = alpha_mul(power, W, fco, zero)
    return num, beta.den * lam**3


def _half(F, P: Poly) -> Poly:
    return P.scale(F.inv(F.from_int(2)))


def _gammas(base: _HatBase, vecs) -> list[IntegralElement]:
    k = base.k
    plus, minus = [], []
    for X, D in vecs:
        Dc = base.conj(D)
        Xc = [base.conj(c) for c in X]
        den = base.real(D * Dc)
        sym = [base.real(a * Dc + b * D) for a, b in zip(X, Xc)]
        anti = [base.real((a * Dc - b * D) * base.y) for a, b in zip(X, Xc)]
        plus.append(IntegralElement.make([_half(k, c) for c in sym], den))
        minus.append(IntegralElement.make([_half(k, c) for c in anti], den))
    return plus + minus


def _solve_M(base: _HatBase, vecs, c0B: Poly):
    """M with c0_hat * conj(beta_j) = sum_i beta_i M_ij, entries in the base PID."""
    B = base.field
    zero, one = Poly.zero(B), Poly.one(B)
    L = one
    for _, D in vecs:
        L = L.lcm(D)
    cols = [[c * L.exact_div(D) for c in X] for X, D in vecs]  # beta_i * L
    rows = None
    for drop in range(4):
        keep = [r for r in range(4) if r != drop]
        A = [[cols[i][r] for i in range(3)] for r in keep]
        det = det_bareiss(A, zero, one)
        if not det.is_zero():
            rows = keep
            break
    if rows is None:
        raise InternalCheckFailure("beta_1, beta_2, beta_3 are linearly dependent")
    M = [[None] * 3 for _ in range(3)]
    for j, (X, D) in enumerate(vecs):
        Dc = base.conj(D)
        # beta-side scaled by L * conj(D_j): rhs = c0 * conj(X_j) * L
        rhs = [c0B * base.conj(c) * L for c in X]
        A_full = [[cols[i][r] * Dc for i in range(3)] for r in range(4)]
        A = [A_full[r] for r in rows]
        det = det_bareiss(A, zero, one)
        sol = []
        for i in range(3):
            Ai = [[rhs[r] if col == i else A[rr][col] for col in range(3)] for rr, r in enumerate(rows)]
            q, rem = divmod(det_bareiss(Ai, zero, one), det)
            if not rem.is_zero():
                raise InternalCheckFailure("relation matrix entry is not in R_hat")
            sol.append(q)
        for r in range(4):
            lhs = zero
            for i in range(3):
                lhs = lhs + A_full[r][i] * sol[i]
            if lhs != rhs[r]:
                raise InternalCheckFailure("conjugate beta is not in the span of the betas")
        for i in range(3):
            M[i][j] = sol[i]
    return M


def _check_mu_relation(base: _HatBase, mu, M, c0B: Poly) -> bool:
    """(mu1..mu3)[conj(c0) I - M] == (mu4..mu6)[conj(c0) I + M] / y, over the base PID."""
    B = base.field
    zero = Poly.zero(B)
    common = Poly.one(base.k)
    for e in mu:
        common = common.lcm(e.den)
    Z = [[base.embed(c * common.exact_div(e.den)) for c in e.num] for e in mu]
    cc = base.conj(c0B)
    for j in range(3):
        lhs = [zero] * 4
        rhs = [zero] * 4
        for i in range(3):
            a = (cc if i == j else zero) - M[i][j]
            b = (cc if i == j else zero) + M[i][j]
            lhs = [acc + a * base.y * z for acc, z in zip(lhs, Z[i])]
            rhs = [acc + b * z for acc, z in zip(rhs, Z[i + 3])]
        if lhs != rhs:
            return False
    return True


def _phi_rows(F, f, g, c0, c0p, d1):
    """Coefficients of v1..v10 in phi_1..phi_4; f, g hold (f1, f2, f3, f4) and (g1, ..., g4)."""
    z = Poly.zero(F)
    f1, f2, f3, f4 = f
    g1, g2, g3, g4 = g
    phi1 = [f1, g1, z, d1 * f3, d1 * g3, z, c0, z, d1 * c0p, z]
    phi2 = [f3, g3, z, f1, g1, z, c0p, z, c0, z]
    phi3 = [z, f2, g2, z, d1 * f4, d1 * g4, z, c0, z, d1 * c0p]
    phi4 = [z, f4, g4, z, f2, g2, z, c0p, z, c0]
    return (tuple(phi1), tuple(phi2), tuple(phi3), tuple(phi4))


def quartic_presentation(red: QuarticReduction, seed: int = 0) -> QuarticPresentation:
    q = red.input
    F = q.field
    base = hat_base(red, seed)
    s_b, t_b = base.to_base(red.s_hat), base.to_base(red.t_hat)
    try:
        inp, lam_fac, _ = make_minimal(4, s_b, t_b, seed=seed)
        dec = decompose(inp, seed)
    except AssumptionViolation as exc:
        raise GeneralityFailure(f"the trinomial over R_hat is degenerate: {exc}") from exc
    lam = lam_fac.expand()
    _, f_b, g_b = weights(dec)
    betas = beta_elements(dec)
    vecs = [_alpha_vector(base, q, red, b, lam) for b in betas]
    gamma = _gammas(base, vecs)
    c0_hat = base.from_base(dec.c0)
    c0, c0p = c0_hat.u0, c0_hat.u1
    mu = []
    for k in range(3):
        mu.append(_lincomb([c0, -c0p], [gamma[k], gamma[k + 3]], Poly.one(F)))
    for k in range(3):
        mu.append(_lincomb([-(c0p * red.d1), c0], [gamma[k], gamma[k + 3]], Poly.one(F)))
    f_hat = tuple(base.from_base(c) for c in f_b)
    g_hat = tuple(base.from_base(c) for c in g_b)
    f = (f_hat[0].u0, f_hat[1].u0, f_hat[0].u1, f_hat[1].u1)
    g = (g_hat[0].u0, g_hat[1].u0, g_hat[0].u1, g_hat[1].u1)
    phi = _phi_rows(F, f, g, c0, c0p, red.d1)
    M_b = _solve_M(base, vecs, dec.c0)
    relation_ok = _check_mu_relation(base, mu, M_b, dec.c0)
    if not relation_ok:
        raise InternalCheckFailure("mu relation does not hold")
    M = tuple(tuple(base.from_base(c) for c in row) for row in M_b)
    pres = QuarticPresentation(
        red, base.kind, dec, base.from_base(lam), c0_hat, f_hat, g_hat, tuple(gamma), tuple(mu), phi, M
    )
    pres.checks = _gamma_checks(pres)
    pres.checks["mu_relation"] = relation_ok
    return pres


def _gamma_checks(pres: QuarticPresentation) -> dict:
    q = pres.reduction.input
    poly = q.coeffs()
    traces = power_sums(poly, 4)
    integral = all(is_integral(e, poly) for e in pres.gamma)
    trace_free = True
    for e in pres.gamma:
        tr = Poly.zero(q.field)
        for c, t in zip(e.num, traces):
            tr = tr + c * t
        trace_free = trace_free and tr.is_zero()
    return {"gamma_integral": integral, "gamma_trace_free": trace_free}


def trace_free_module(pres: QuarticPresentation) -> list[IntegralElement]:
    """Generators of the trace-free part from the solution module of phi = 0,
    reduced to a triangular basis."""
    kern = kernel_basis(pres.phi_matrix())
    gens = [pres.element(v) for v in kern]
    gens = [g for g in gens if g.alpha_degree() >= 0]
    return canonical_form(gens)
