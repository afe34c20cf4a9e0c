from bjtool.bj_data import INF, decompose, make_bj_input
from bjtool.ramification import (
    closure_discriminant,
    discriminant_divisor,
    local_profile,
    profile_for_slot,
    ramification_divisor,
    relevant_places,
)


def test_slot_profiles():
    assert profile_for_slot(3, "a1").indices() == [3]
    assert profile_for_slot(3, "b1").indices() == [2, 1]
    assert profile_for_slot(5, "c1").indices() == [2, 1, 1, 1]
    assert profile_for_slot(4, "a2").indices() == [2, 2]
    assert profile_for_slot(5, "b2").indices() == [2, 2, 1]


def test_e1_profiles(P7):
    dec = decompose(make_bj_input(3, P7(0, 1), P7(0, 1)))
    assert local_profile(dec, P7(0, 1)).indices() == [3]
    assert local_profile(dec, P7(5, 1)).indices() == [2, 1]
    assert closure_discriminant(dec) == P7(0, 0, 1) * P7(5, 1)


def test_e2_discriminant(P7):
    dec = decompose(make_bj_input(3, P7(4), P7(2, 0, 1)))
    # c0 = x contributes nothing, c1 = x^2 + 4 is a simple branch place
    assert closure_discriminant(dec) == P7(4, 0, 1)
    assert local_profile(dec, P7(0, 1)).is_unramified()


def test_ramification_divisor_pushes_to_branch(P7):
    dec = decompose(make_bj_input(3, P7(0, 1), P7(0, 0, 1)))
    R = ramification_divisor(dec)
    assert R.pushforward() == discriminant_divisor(dec)


def test_projective_infinity(P7):
    inp = make_bj_input(3, P7(0, 1), P7(0, 1), "projective", 1)
    dec = decompose(inp)
    assert INF in relevant_places(dec)
    # s_inf = 2 - 1 = 1, t_inf = 3 - 1 = 2: B(1) at infinity
    assert local_profile(dec, INF).indices() == [2, 1]
