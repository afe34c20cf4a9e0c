import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bjtool.closure import IntegralElement, is_integral, poly_discriminant, trace_form
from bjtool.corpus import random_poly
from bjtool.errors import BJError, NonPrincipalObstruction, TauIsSquare
from bjtool.puiseux_oracle import expand_at
from bjtool.quartic import (
    QuarticInput,
    quartic_identity_residue,
    quartic_presentation,
    quartic_reduce,
    quartic_tau,
    tau_is_weight_homogeneous,
    trace_free_module,
)
from bjtool.ring_core import Poly, PrimeField, det_bareiss, factor_poly


def test_tau_weight_homogeneous():
    assert tau_is_weight_homogeneous()


def test_tau_of_pure_cubic_term(P7):
    assert quartic_tau(P7(), P7(2), P7()) == P7(2) * P7(2) * P7(9)


def test_square_tau_refused(P7):
    with pytest.raises(TauIsSquare):
        quartic_reduce(QuarticInput(P7(), P7(2), P7()))


def _quartics(seed: int, count: int):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        F = PrimeField(rng.choice([5, 7, 11, 13]))
        sig = [random_poly(F, rng.randint(0, 2), rng) for _ in range(3)]
        out.append(QuarticInput(*sig))
    return out


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_trinomial_identity(seed):
    q = _quartics(seed, 1)[0]
    try:
        red = quartic_reduce(q, check_irreducible=False)
    except BJError as exc:
        assert exc.exit_code != 4
        return
    residue = quartic_identity_residue(q, red.w, red.s_hat, red.t_hat, red.d1)
    assert all(r.is_zero() for r in residue)


def _gram(basis, coeffs):
    F = coeffs[0].field
    G = trace_form(basis, coeffs)
    num = det_bareiss(G, Poly.zero(F), Poly.one(F))
    den = Poly.one(F)
    for e in basis:
        den = den * e.den * e.den
    return num.exact_div(den)


def test_presentation_against_branch_expansions():
    """The module 1 + trace-free part has the discriminant the branches predict."""
    checked = 0
    for q in _quartics(5, 400):
        try:
            red = quartic_reduce(q)
            pres = quartic_presentation(red)
        except BJError:
            continue
        if red.irreducibility != "irreducible":
            continue
        F = q.field
        assert all(pres.checks.values())
        mod = trace_free_module(pres)
        assert len(mod) == 3 and all(is_integral(e, q.coeffs()) for e in mod)
        gram = _gram([IntegralElement.of_power(F, 4, 0)] + mod, q.coeffs())
        cz = [[int(c) for c in co.coeffs] for co in q.coeffs()]
        for P, _ in factor_poly(poly_discriminant(q.coeffs())).factors:
            branches = expand_at(cz, [int(c) for c in P.coeffs], F.p)
            assert gram.valuation(P) == sum((b.e - 1) * b.f for b in branches)
        checked += 1
    assert checked >= 10


def test_obstruction_carries_data():
    for q in _quartics(5, 200):
        try:
            red = quartic_reduce(q, check_irreducible=False)
            quartic_presentation(red)
        except NonPrincipalObstruction as exc:
            assert isinstance(exc.data, list)
            for row in exc.data:
                assert row["splitting"] in ("inert", "split", "ramified")
            return
        except BJError:
            continue
    pytest.fail("no obstruction found in the sample")
