"""Randomized invariants across modules."""

import random

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bjtool import cover_geom as cg
from bjtool.bj_data import check_invariants, decompose, discriminant, is_minimal, make_minimal
from bjtool.corpus import random_bj_pair
from bjtool.errors import AssumptionViolation
from bjtool.puiseux_oracle import ramification_oracle
from bjtool.ramification import discriminant_divisor, local_profile
from bjtool.ring_core import PrimeField

cases = dict(seed=st.integers(0, 10**6), n=st.sampled_from([3, 4, 5]), p=st.sampled_from([7, 11, 13]),
             mode=st.sampled_from(["affine", "projective"]))


def _draw(seed, n, p, mode):
    F = PrimeField(p)
    s, t = random_bj_pair(F, n, random.Random(seed), 5)
    assume(not s.is_zero() and not t.is_zero() and not discriminant(n, s, t).is_zero())
    inp, _, _ = make_minimal(n, s, t, mode)
    try:
        dec = decompose(inp)
    except AssumptionViolation:
        assume(False)
    return inp, dec


@settings(max_examples=40, deadline=None)
@given(**cases)
def test_decomposition_invariants(seed, n, p, mode):
    inp, dec = _draw(seed, n, p, mode)
    assert is_minimal(inp)
    assert check_invariants(dec) == []
    assert dec.delta == discriminant(n, inp.s, inp.t)


@settings(max_examples=30, deadline=None)
@given(**cases)
def test_oracle_degrees_sum_to_n(seed, n, p, mode):
    inp, dec = _draw(seed, n, p, mode)
    for place, prof in ramification_oracle(inp).items():
        assert sum(e * f for e, f in prof.branches) == n
        assert sorted(local_profile(dec, place).indices(), reverse=True) == prof.indices()


@settings(max_examples=30, deadline=None)
@given(seed=cases["seed"], n=cases["n"], p=cases["p"])
def test_projective_c1_is_half_discriminant(seed, n, p):
    _, dec = _draw(seed, n, p, "projective")
    ch = cg.c1_pushforward(dec)
    assert 2 * ch.c1_det.degree() == -discriminant_divisor(dec).degree()
    assert ch.degree_check


@settings(max_examples=30, deadline=None)
@given(**cases)
def test_T_independent_and_c1_expressions(seed, n, p, mode):
    _, dec = _draw(seed, n, p, mode)
    cd = cg.cover_divisors(dec)
    assert all(T == cd.T for T in cd.T_all)
    assert cg.c1_expressions_on_instance(dec)["exact"]


@settings(max_examples=8, deadline=None)
@given(n=st.integers(3, 9))
def test_symbolic_T_independence(n):
    res = cg.symbolic_checks(n)
    assert res["T_independent"] and res["c1_expressions_agree"]


@settings(max_examples=25, deadline=None)
@given(seed=cases["seed"], p=st.sampled_from([7, 13, 19]))
def test_galois_verdicts_agree(seed, p):
    F = PrimeField(p)
    s, t = random_bj_pair(F, 3, random.Random(seed), 4)
    assume(not t.is_zero() and not discriminant(3, s, t).is_zero())
    for mode in ("affine", "projective"):
        v = cg.galois_cubic(s, t, mode)
        assert v.agree
