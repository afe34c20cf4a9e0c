import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bjtool import quintic as Q
from bjtool.acceptance import WORKED_CUBIC, WORKED_CUBIC_SCALE, WORKED_LINES, WORKED_QUINTIC, worked_quintic_check
from bjtool.errors import BJError, FieldError, GeneralityFailure, RadicalUnavailable
from bjtool.ring_core import QQ, Poly, PrimeField


def _const_input(F, values):
    return Q.QuinticInput(*(Poly(F, [v]) for v in values))


@pytest.fixture(scope="module")
def worked_state():
    return Q.run_steps(_const_input(QQ, WORKED_QUINTIC))


def test_symbolic_identities():
    checks = Q.symbolic_checks()
    assert checks and all(checks.values()), checks


def test_zero_substitution_gives_zero_coefficients():
    q = _const_input(QQ, (1, 2, 3, 4))
    assert all(not d for d in Q.charpoly_coeffs(q, [Poly(QQ, [])] * 5))


def test_charpoly_of_alpha():
    # y = alpha has the defining polynomial itself
    F = PrimeField(7)
    q = _const_input(F, (1, 2, 3, 4))
    x = Poly.one(F)
    zero = Poly.zero(F)
    d = Q.charpoly_coeffs(q, [zero, x, zero, zero, zero])
    base = Q.make_base(F)
    want = [-q.sigma5, q.sigma4, -q.sigma3, q.sigma2, zero]
    assert all(Q._same(a, base.from_poly(b)) for a, b in zip(d, want))


def test_printed_u_vanishes_with_w_p_q():
    state = Q.start(_const_input(QQ, (1, 2, 3, 4)))
    u = Q.printed_u(state)
    # working ring generators are u, v, w, p, q, ...: every monomial carries one of w, p, q
    assert u and all(sum(m[2:5]) == 1 for m in u.monoms())


def test_tau1_vanishing_is_a_generality_failure():
    q = _const_input(QQ, (1, 0, Fraction(3, 10), 1))
    with pytest.raises(GeneralityFailure) as info:
        Q.run_steps(q)
    assert info.value.vanished == "tau1"
    assert info.value.report["step"] >= 1


def test_small_characteristic_refused():
    with pytest.raises(FieldError):
        Q.make_base(PrimeField(5))


def test_worked_relations(worked_state):
    rel = worked_state.to_json()["relations"]
    assert {k: rel[k] for k in WORKED_LINES} == WORKED_LINES


def test_worked_cubic(worked_state):
    cub = worked_state.to_json()["cubic"]
    scaled = [Fraction(cub[f"c{i}"]) * WORKED_CUBIC_SCALE for i in range(4)]
    assert scaled == list(WORKED_CUBIC)
    assert worked_quintic_check() == {"lines": {"u": True, "v": True, "p": True}, "cubic": True}


def test_worked_gamma_and_linear_factor(worked_state):
    assert worked_state.gamma["identity_verified"]
    assert Q.formal_linear_factor(worked_state)["divides"]


def test_worked_example_stops_without_rational_root():
    with pytest.raises(RadicalUnavailable) as info:
        Q.bj_reduce_quintic(_const_input(QQ, WORKED_QUINTIC))
    report = info.value.report
    assert report["relations"]["p"] == "1/6*q"
    assert report["gamma"]["linear_factor"]["divides"]


def _random_input(seed: int):
    rng = random.Random(seed)
    F = PrimeField(rng.choice((7, 11, 13, 17)))
    deg = rng.choice((0, 0, 1, 2))
    return Q.QuinticInput(*(Poly(F, [rng.randrange(F.p) for _ in range(deg + 1)]) for _ in range(4)))


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_stages_kill_their_coefficients(seed):
    q = _random_input(seed)
    try:
        state = Q.start(q)
        Q.eliminate_d4(state)
    except GeneralityFailure:
        return
    assert not state.d[4]
    try:
        Q.normalize_d3(state)
    except BJError as exc:
        assert exc.exit_code != 4
        return
    if state.radicals_available():
        assert not state.d[3]


def test_full_reduction_verifies_trinomial():
    found = 0
    for seed in range(400):
        q = _random_input(seed)
        try:
            red = Q.bj_reduce_quintic(q)
        except BJError as exc:
            assert exc.exit_code != 4
            continue
        assert Q.trinomial_residue_is_zero(q, red.y, red.s_hat, red.t_hat)
        d = Q.charpoly_coeffs(q, list(red.y))
        assert not d[2] and not d[3] and not d[4]
        found += 1
        if found == 3:
            break
    assert found == 3
