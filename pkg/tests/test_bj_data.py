import pytest

from bjtool.bj_data import (
    Triple,
    check_invariants,
    classify_prime,
    decompose,
    discriminant,
    from_triple,
    make_bj_input,
    make_minimal,
    to_triple,
)
from bjtool.errors import FieldError, ZeroS
from bjtool.ring_core import QQ, Poly, PrimeField


def test_make_minimal_divides_lambda(P7):
    x = P7(0, 1)
    inp, lam, _ = make_minimal(3, P7(0, 0, 3), P7(0, 0, 0, 5))
    assert inp.s == P7(3) and inp.t == P7(5)
    assert lam.monic_part() == x


def test_make_minimal_keeps_minimal(P7):
    inp, lam, _ = make_minimal(3, P7(0, 1), P7(0, 1))
    assert lam.is_unit() and inp.s == P7(0, 1)


def test_make_minimal_degree_five():
    F = PrimeField(7)
    inp, lam, _ = make_minimal(5, Poly(F, [0, 0, 0, 0, 1]), Poly(F, [0, 0, 0, 0, 0, 1]))
    assert inp.s == Poly.one(F) and inp.t == Poly.one(F)
    assert lam.monic_part() == Poly.x(F)


def test_classify_prime():
    assert classify_prime(3, 1, 1) == ("A", 1)
    assert classify_prime(3, 1, 2) == ("B", 1)
    assert classify_prime(3, 0, 0)[0] == "unramified"


def test_decompose_e1(P7):
    dec = decompose(make_bj_input(3, P7(0, 1), P7(0, 1)))
    assert dec.a_poly(1).monic() == P7(0, 1)
    assert dec.a == P7(0, 4) and dec.b == P7(6) and dec.c == P7(6, 4)
    assert dec.c0 == P7(1) and dec.c1 == P7(5, 1) and dec.c_unit == 4
    assert dec.delta == P7(0, 0, 6, 4)


def test_decompose_e2(P7):
    dec = decompose(make_bj_input(3, P7(4), P7(2, 0, 1)))
    x2p2 = P7(2, 0, 1)
    assert dec.a == P7(4)
    assert dec.b == x2p2 * x2p2 * P7(6)
    assert dec.c == P7(0, 0, 6) * P7(4, 0, 1)
    assert dec.c0 == P7(0, 1) and dec.c1 == P7(4, 0, 1)
    assert dec.delta == P7(0, 0, 3) * P7(1, 0, 2)


def test_decompose_e3(P7):
    dec = decompose(make_bj_input(3, P7(0, 1), P7(0, 0, 1)))
    assert dec.b_poly(1).monic() == P7(0, 1)
    assert dec.c0 == P7(1) and dec.c1 == P7(3, 1)
    assert dec.c == P7(4, 6)
    assert dec.delta == P7(0, 0, 0, 4, 6)


def test_invariants_hold_on_examples(P7):
    for s, t in (((0, 1), (0, 1)), ((4,), (2, 0, 1)), ((0, 1), (0, 0, 1))):
        assert check_invariants(decompose(make_bj_input(3, P7(*s), P7(*t)))) == []


def test_discriminant_formula(P7):
    # (n-1)^(n-1) s^n - (-n)^n t^(n-1) for n = 3
    s, t = P7(0, 1), P7(0, 1)
    assert discriminant(3, s, t) == s * s * s * P7(4) + t * t * P7(27)


def test_triples_round_trip(P7):
    dec = decompose(make_bj_input(3, P7(0, 1), P7(0, 1)))
    tri = to_triple(dec)
    assert (tri.a, tri.b, tri.c) == (P7(0, 4), P7(6), P7(6, 4))
    back = from_triple(3, tri)
    assert back.s == P7(0, 1) and back.t == P7(0, 1)
    dec2 = decompose(make_bj_input(3, P7(4), P7(2, 0, 1)))
    tri2 = to_triple(dec2)
    assert tri2.b == P7(2, 0, 1) * P7(2, 0, 1) * P7(6)


def test_from_triple_over_q():
    one = Poly.one(QQ)
    inp = from_triple(3, Triple(Poly.const(QQ, 4), Poly.const(QQ, 27), Poly.const(QQ, 31)))
    assert inp.s == one and inp.t == one


def test_from_triple_cube(P7):
    x3 = P7(0, 0, 0, 4)
    inp = from_triple(3, Triple(x3, P7(27), x3 + P7(27)))
    assert inp.s == P7(0, 1) and inp.t == P7(1)


def test_guards(P7):
    with pytest.raises(ZeroS):
        make_bj_input(3, P7(), P7(0, 1))
    with pytest.raises(FieldError):
        make_bj_input(3, Poly(PrimeField(3), [0, 1]), Poly(PrimeField(3), [0, 1]))
