"""The acceptance suite as callable checks.

Each criterion returns a CriterionResult; the pytest suite runs them at full
size and the `selftest` command runs them on a reduced corpus.  Every check
compares two routes that share no code beyond ring arithmetic, or an output
against literal values.
"""
from __future__ import annotations

import json
import os
import random
import tempfile
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .bj_data import check_invariants, decompose, make_bj_input, make_minimal
from .closure import (
    IntegralBasis,
    IntegralElement,
    _matmul,
    companion,
    floor_gcd_identity,
    integral_basis,
    same_module,
    trace_powers,
    verify_closure,
)
from .corpus import random_bj_pair, random_cyclic_cubic, random_minimal_inputs, random_poly, _random_squarefree
from .errors import BJError, GeneralityFailure, TindependenceFailure
from .ramification import closure_discriminant, local_profile
from .ring_core import QQ, Poly, PrimeField


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] criterion {self.number}: {self.title} ({self.seconds:.1f} s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "detail": self.detail}


@dataclass
class SuiteSize:
    corpus: int = 500
    quartic_fp: int = 100
    quartic_q: int = 10
    quintic: int = 100
    projective: int = 100
    cubics: int = 100
    quintic_cyclic: int = 100

    @classmethod
    def reduced(cls) -> SuiteSize:
        return cls(corpus=40, quartic_fp=15, quartic_q=2, quintic=12, projective=15, cubics=20, quintic_cyclic=15)


_CORPUS: dict = {}


def corpus(count: int, seed: int = 2024) -> list:
    """Random minimal affine inputs with their decompositions, cached per size."""
    key = (count, seed)
    if key not in _CORPUS:
        _CORPUS[key] = [(inp, decompose(inp)) for inp in random_minimal_inputs(count, seed=seed)]
    return _CORPUS[key]


def _timed(number: int, title: str, limit: float | None, body) -> CriterionResult:
    t0 = time.perf_counter()
    passed, detail = body()
    secs = time.perf_counter() - t0
    if limit is not None:
        detail["time_limit_s"] = limit
        if secs > limit:
            passed = False
            detail["over_time"] = True
    return CriterionResult(number, title, passed, secs, detail)


# 1


def criterion_decomposition(size: SuiteSize) -> CriterionResult:
    def body():
        bad = []
        for inp, dec in corpus(size.corpus):
            broken = check_invariants(dec)
            if broken:
                bad.append({"s": inp.s.format(), "t": inp.t.format(), "p": inp.field.p, "n": inp.n, "failed": broken})
        return not bad, {"instances": size.corpus, "failures": bad[:5]}

    return _timed(1, "decomposition reconstructs s, t, delta, c and is pairwise coprime", 60.0, body)


# 2


def criterion_oracle_profiles(size: SuiteSize) -> CriterionResult:
    from .puiseux_oracle import ramification_oracle

    def body():
        bad, places = [], 0
        for inp, dec in corpus(size.corpus):
            oracle = ramification_oracle(inp)
            D = closure_discriminant(dec)
            for place, prof in oracle.items():
                places += 1
                mine = local_profile(dec, place).indices()
                if mine != prof.indices() or D.valuation(place) != prof.different_exponent():
                    bad.append({"n": inp.n, "p": inp.field.p, "s": inp.s.to_json(), "t": inp.t.to_json(),
                                "place": place.format(), "closed_form": mine, "oracle": prof.indices()})
        return not bad, {"instances": size.corpus, "places": places, "mismatches": bad}

    return _timed(2, "closed-form profiles equal the Puiseux oracle and v(D) = sum (e-1) f", 300.0, body)


# 3


def _worked_bases() -> list[tuple[str, bool]]:
    F = PrimeField(7)
    x = Poly.x(F)
    one, zero = Poly.one(F), Poly.zero(F)
    cases = [
        ((x, x), [(one, zero, zero), (zero, one, zero), (x.scale(3), zero, one)], one),
        ((Poly(F, [4]), Poly(F, [2, 0, 1])), [(one, zero, zero), (zero, one, zero), (Poly(F, [5]), one, one)], x),
        ((x, x * x), [(one, zero, zero), (zero, one, zero), (x.scale(3), zero, one)], x),
    ]
    out = []
    for (s, t), rows, last_den in cases:
        dec = decompose(make_bj_input(3, s, t))
        expected = [IntegralElement.of_power(F, 3, 0), IntegralElement.of_power(F, 3, 1),
                    IntegralElement.make(list(rows[2]), last_den)]
        out.append((f"({s.format()}, {t.format()})", same_module(integral_basis(dec).elements, expected)))
    return out


def criterion_closure(size: SuiteSize) -> CriterionResult:
    def body():
        bad = []
        for inp, dec in corpus(size.corpus):
            rep = verify_closure(integral_basis(dec), expected_disc=closure_discriminant(dec), delta=dec.delta)
            if not rep["ok"]:
                bad.append({"s": inp.s.format(), "t": inp.t.format(), "p": inp.field.p, "failures": rep["failures"]})
        worked = _worked_bases()
        return not bad and all(ok for _, ok in worked), {
            "instances": size.corpus, "failures": bad[:5], "worked_instances": dict(worked)}

    return _timed(3, "integral basis: integral, disc = D, det^2 delta = D, worked F_7 bases", None, body)


# 4


def criterion_floor_gcd(size: SuiteSize) -> CriterionResult:
    def body():
        bad = [(n, k) for n in range(3, 65) for k in range(1, n) if not floor_gcd_identity(n, k)]
        return not bad, {"pairs_failed": bad}

    return _timed(4, "floor/gcd identity for 3 <= n <= 64", 1.0, body)


# 5


def _symbolic_traces(n: int) -> bool:
    from sympy import Matrix, expand, symbols, zeros

    s, t = symbols("s t")
    C = zeros(n, n)
    for j in range(n - 1):
        C[j + 1, j] = 1
    C[0, n - 1], C[1, n - 1] = -t, -s
    M = Matrix.eye(n)
    for i in range(1, n):
        M = M * C
        want = -(n - 1) * s if i == n - 1 else 0
        if expand(M.trace() - want) != 0:
            return False
    return True


def _companion_traces(inp) -> list:
    F = inp.field
    C = companion(inp.z_coeffs())
    n = inp.n
    M = [[Poly.one(F) if i == j else Poly.zero(F) for j in range(n)] for i in range(n)]
    out = [Poly.const(F, F.from_int(n))]
    for _ in range(1, n):
        M = _matmul(M, C, Poly.zero(F))
        tr = Poly.zero(F)
        for i in range(n):
            tr = tr + M[i][i]
        out.append(tr)
    return out


def criterion_traces(size: SuiteSize) -> CriterionResult:
    def body():
        symbolic = {n: _symbolic_traces(n) for n in (3, 4, 5)}
        rng = random.Random(5)
        bad = 0
        for _ in range(30):
            n = rng.choice((3, 4, 5))
            F = rng.choice((PrimeField(7), PrimeField(11), QQ))
            s, t = random_poly(F, rng.randint(0, 4), rng), random_poly(F, rng.randint(0, 4), rng)
            if s.is_zero() or t.is_zero():
                continue
            inp = make_bj_input(n, s, t)
            newton = trace_powers(inp)
            expected = [Poly.const(F, F.from_int(n))] + [Poly.zero(F)] * (n - 2) + [s.scale(F.from_int(-(n - 1)))]
            if newton != expected or _companion_traces(inp) != expected:
                bad += 1
        return all(symbolic.values()) and bad == 0, {"symbolic": symbolic, "polynomial_mismatches": bad}

    return _timed(5, "Tr(alpha^i) = 0 for i <= n-2 and Tr(alpha^(n-1)) = -(n-1)s", None, body)


# 6


def _random_quartics(F, rng, count: int, tries: int = 2000):
    from .quartic import QuarticInput

    out = []
    for _ in range(tries):
        if len(out) == count:
            break
        sig = [random_poly(F, rng.randint(0, 2), rng) for _ in range(3)]
        if any(s.is_zero() for s in sig):
            continue
        out.append(QuarticInput(*sig))
    return out


def criterion_quartic(size: SuiteSize) -> CriterionResult:
    from .quartic import quartic_identity_residue, quartic_reduce

    def body():
        rng = random.Random(11)
        stats = {"fp": 0, "q": 0, "skipped": {}}
        bad = []
        for kind, want in (("fp", size.quartic_fp), ("q", size.quartic_q)):
            tries = 0
            while stats[kind] < want and tries < 50 * want:
                tries += 1
                F = PrimeField(rng.choice((7, 11, 13))) if kind == "fp" else QQ
                q = _random_quartics(F, rng, 1)[0]
                try:
                    red = quartic_reduce(q, check_irreducible=False)
                except BJError as exc:
                    name = type(exc).__name__
                    stats["skipped"][name] = stats["skipped"].get(name, 0) + 1
                    if exc.exit_code == 4:
                        bad.append({"input": q.to_json(), "error": str(exc)})
                    continue
                residue = quartic_identity_residue(q, red.w, red.s_hat, red.t_hat, red.d1)
                if any(not r.is_zero() for r in residue):
                    bad.append({"input": q.to_json()})
                stats[kind] += 1
        ok = not bad and stats["fp"] == size.quartic_fp and stats["q"] == size.quartic_q
        return ok, {**stats, "failures": bad[:5]}

    return _timed(6, "quartic: w^4 + s_hat w + t_hat = 0 mod (f, y^2 - d1)", 120.0, body)


# 7

WORKED_QUINTIC = (Fraction(3, 10), Fraction(1, 150), Fraction(21, 2000), Fraction(-427, 75000))
WORKED_LINES = {
    "u": "3/25*w - 1/250*p - 69/2500*q",
    "v": "11/30*w + 109/1500*p - 1463/9000*q",
    "p": "1/6*q",
}
# 2^4 3^7 5^11 * d2 restricted to the relations, as (q^3, q^2 w, q w^2, w^3) coefficients
WORKED_CUBIC = (612630271, -900 * 2283643, -900 * 2004300, 900 * 7590000)
WORKED_CUBIC_SCALE = 2**4 * 3**7 * 5**11


def _random_quintic(rng: random.Random, kind: int):
    from .quintic import QuinticInput

    if kind == 3:
        F = QQ
        mk = lambda deg: Poly(F, [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(deg + 1)])
    else:
        F = PrimeField(rng.choice((7, 11, 13, 17)))
        mk = lambda deg: Poly(F, [rng.randrange(F.p) for _ in range(deg + 1)])
    deg = 0 if kind in (0, 3) else rng.randint(0, 2)
    return QuinticInput(*(mk(deg) for _ in range(4)))


def worked_quintic_check() -> dict:
    """Relations and the cubic form for the worked rational quintic."""
    from . import quintic as Q

    sig = Q.QuinticInput(*(Poly(QQ, [c]) for c in WORKED_QUINTIC))
    state = Q.run_steps(sig)
    rel = state.to_json()["relations"]
    lines = {k: rel.get(k) == v for k, v in WORKED_LINES.items()}
    cub = state.to_json()["cubic"]
    # coefficients of w^i q^(3-i) in d2 restricted to the relations
    c = [Fraction(cub[f"c{i}"]) for i in range(4)]
    cubic_ok = [x * WORKED_CUBIC_SCALE for x in c] == list(WORKED_CUBIC)
    return {"lines": lines, "cubic": cubic_ok}


def criterion_quintic(size: SuiteSize) -> CriterionResult:
    from . import quintic as Q

    def body():
        rng = random.Random(3)
        counts = {"d4_checked": 0, "d3_checked": 0, "reduced": 0, "stopped": {}}
        bad = []
        for trial in range(size.quintic):
            inp = _random_quintic(rng, trial % 4)
            try:
                state = Q.start(inp)
                Q.eliminate_d4(state)
            except GeneralityFailure as exc:
                counts["stopped"]["stage1 " + type(exc).__name__] = counts["stopped"].get("stage1 " + type(exc).__name__, 0) + 1
                continue
            counts["d4_checked"] += 1
            if state.d[4]:
                bad.append({"input": inp.to_json(), "failed": "d4"})
                continue
            try:
                Q.normalize_d3(state)
                if state.radicals_available():
                    counts["d3_checked"] += 1
                    if state.d[3]:
                        bad.append({"input": inp.to_json(), "failed": "d3"})
                Q.reduce_d2(state)
                Q.bj_reduce_quintic(inp)
                counts["reduced"] += 1
            except BJError as exc:
                name = type(exc).__name__
                counts["stopped"][name] = counts["stopped"].get(name, 0) + 1
                if exc.exit_code == 4:
                    bad.append({"input": inp.to_json(), "failed": str(exc)})
        symbolic = Q.symbolic_checks()
        worked = worked_quintic_check()
        ok = not bad and all(symbolic.values()) and all(worked["lines"].values()) and worked["cubic"]
        return ok, {**counts, "failures": bad[:5], "symbolic": symbolic, "worked": worked}

    return _timed(7, "quintic: d4 = 0, d3 = 0, printed blocks, worked example", None, body)


# 8


def _oracle_disc_degree(inp) -> int:
    from .puiseux_oracle import ramification_oracle

    total = 0
    for place, prof in ramification_oracle(inp).items():
        deg = 1 if isinstance(place, str) else place.deg
        total += deg * prof.different_exponent()
    return total


def criterion_cover(size: SuiteSize) -> CriterionResult:
    from .cover_geom import c1_det_divisor, c1_expressions_on_instance, cover_divisors, symbolic_checks

    def body():
        symbolic = {}
        for n in (3, 4, 5):
            chk = symbolic_checks(n)
            symbolic[n] = chk["T_independent"] and chk["c1_expressions_agree"]
        closed_form = symbolic_checks(3)["closed_form_exact"]
        bad = []
        for inp, dec in corpus(size.corpus)[: max(size.projective, 100)]:
            try:
                cover_divisors(dec)
            except TindependenceFailure as exc:
                bad.append({"s": inp.s.format(), "t": inp.t.format(), "failed": str(exc)})
                continue
            if not c1_expressions_on_instance(dec)["exact"]:
                bad.append({"s": inp.s.format(), "t": inp.t.format(), "failed": "c1 expressions"})
        half = []
        for inp in random_minimal_inputs(size.projective, seed=77, projective=True):
            dec = decompose(inp)
            c1 = c1_det_divisor(dec, integral_basis(dec))
            D = _oracle_disc_degree(inp)
            if 2 * c1.degree() != -D:
                half.append({"s": inp.s.format(), "t": inp.t.format(), "twist": inp.twist,
                             "deg_c1": c1.degree(), "deg_D": D})
        ok = all(symbolic.values()) and closed_form and not bad and not half
        return ok, {"symbolic": symbolic, "closed_form_n3": closed_form, "instance_failures": bad[:5],
                    "half_discriminant_failures": half[:5]}

    return _timed(8, "cover divisors: T-independence, c1 expressions, deg c1 = -deg D / 2", None, body)


# 9


def _cyclic_quintic_t(rng: random.Random):
    F = PrimeField(rng.choice((11, 31, 41)))
    while True:
        ls = [_random_squarefree(F, rng.randint(0, 2), rng) for _ in range(4)]
        prod = Poly.one(F)
        for ell in ls:
            prod = prod * ell
        if prod.deg > 0 and prod.gcd(prod.derivative()).is_one():
            break
    t = Poly.const(F, rng.randint(1, F.p - 1))
    for j, ell in enumerate(ls, 1):
        t = t * ell**j
    return t


def criterion_galois(size: SuiteSize) -> CriterionResult:
    from .cover_geom import check_quintic_conditions, delta_square_oracle, galois_cubic

    def body():
        rng = random.Random(1)
        bad, tally = [], {"cyclic_true": 0, "generic_true": 0, "generic_false": 0}
        for _ in range(size.cubics):
            F = PrimeField(rng.choice((7, 13, 19, 5, 11)))
            l1, l2 = random_cyclic_cubic(F, rng)
            t = l1 * l2 * l2 * Poly.const(F, rng.randint(1, F.p - 1))
            for mode in ("affine", "projective"):
                v = galois_cubic(Poly.zero(F), t, mode)
                tally["cyclic_true"] += v.criterion
                if not v.agree:
                    bad.append({"kind": "cyclic", "p": F.p, "t": t.format(), "mode": mode, **v.to_json()})
        done = 0
        while done < size.cubics:
            F = PrimeField(rng.choice((7, 11, 13)))
            s, t = random_bj_pair(F, 3, rng, 4)
            if s.is_zero() or t.is_zero():
                continue
            mode = ("affine", "projective")[done % 2]
            try:
                v = galois_cubic(s, t, mode)
            except BJError as exc:
                if exc.exit_code == 4:
                    bad.append({"kind": "generic", "error": str(exc)})
                continue
            done += 1
            tally["generic_true" if v.criterion else "generic_false"] += 1
            if not v.agree:
                bad.append({"kind": "generic", "p": F.p, "s": s.format(), "t": t.format(), "mode": mode, **v.to_json()})
        # generic cubics are rarely Galois; add oracle-positive ones found by rejection
        found, tries = 0, 0
        while found < size.cubics // 2 and tries < 200 * size.cubics:
            tries += 1
            F = PrimeField(rng.choice((7, 11, 13)))
            s, t = random_bj_pair(F, 3, rng, 3)
            if s.is_zero() or t.is_zero() or not delta_square_oracle(3, s, t):
                continue
            found += 1
            for mode in ("affine", "projective"):
                v = galois_cubic(s, t, mode)
                tally["generic_true"] += v.criterion
                if not v.agree:
                    bad.append({"kind": "oracle-positive", "p": F.p, "s": s.format(), "t": t.format(), "mode": mode,
                                **v.to_json()})
        tally["oracle_positive_generic"] = found
        quintic_bad = []
        for _ in range(size.quintic_cyclic):
            t = _cyclic_quintic_t(rng)
            r = check_quintic_conditions(t, "projective")
            if not (r["c1_twice_reduced_branch"] and r["totally_or_unramified"]):
                quintic_bad.append({"p": t.field.p, "t": t.format(), **r})
        ok = not bad and not quintic_bad and found == size.cubics // 2
        return ok, {**tally, "disagreements": bad[:5], "quintic_failures": quintic_bad[:5]}

    return _timed(9, "Galois criterion equals the discriminant-square oracle; cyclic quintic conditions", None, body)


# 10


def _corrupted(basis: IntegralBasis) -> list[IntegralBasis]:
    """Two corruptions: an extra denominator, and an index-raising multiple."""
    F = basis.field
    x1 = Poly(F, [1, 1])
    last = basis.elements[-1]
    over = IntegralElement.make(list(last.num), last.den * x1)
    under = IntegralElement.make([c * x1 for c in last.num], last.den)
    return [IntegralBasis(basis.elements[:-1] + [e], basis.poly) for e in (over, under)]


def criterion_negative(size: SuiteSize) -> CriterionResult:
    from .cli import main as cli_main

    def body():
        caught, total = 0, 0
        for inp, dec in corpus(size.corpus)[:50]:
            for bad in _corrupted(integral_basis(dec)):
                total += 1
                rep = verify_closure(bad, expected_disc=closure_discriminant(dec), delta=dec.delta)
                caught += not rep["ok"]
        rng = random.Random(9)
        flagged = 0
        for inp, _ in corpus(size.corpus)[:20]:
            lam = random_poly(inp.field, rng.randint(1, 2), rng, monic=True)
            n = inp.n
            red, lam_fp, _ = make_minimal(n, inp.s * lam ** (n - 1), inp.t * lam**n)
            flagged += (not lam_fp.is_unit()) and red.s == inp.s and red.t == inp.t
        code = _cli_exit(cli_main, {"field": {"type": "fp", "p": 3}, "n": 3, "s": [0, 1], "t": [0, 1]})
        ok = caught == total and flagged == 20 and code == 2
        return ok, {"corrupted_caught": f"{caught}/{total}", "non_minimal_flagged": f"{flagged}/20",
                    "p_divides_n(n-1)_exit": code}

    return _timed(10, "negative controls", None, body)


def _cli_exit(cli_main, problem: dict) -> int:
    with tempfile.TemporaryDirectory() as tmp:
        src = os.path.join(tmp, "problem.json")
        with open(src, "w", encoding="utf-8") as fh:
            json.dump(problem, fh)
        return cli_main(["analyze", "--input", src, "--output", os.path.join(tmp, "report.json")])


CRITERIA = [
    criterion_decomposition,
    criterion_oracle_profiles,
    criterion_closure,
    criterion_floor_gcd,
    criterion_traces,
    criterion_quartic,
    criterion_quintic,
    criterion_cover,
    criterion_galois,
    criterion_negative,
]


def run_suite(size: SuiteSize | None = None, only: list[int] | None = None) -> list[CriterionResult]:
    size = SuiteSize() if size is None else size
    out = []
    for i, fn in enumerate(CRITERIA, start=1):
        if only and i not in only:
            continue
        out.append(fn(size))
    return out
