import random

from hypothesis import given, settings
from hypothesis import strategies as st

from bjtool.bj_data import decompose, make_bj_input
from bjtool.closure import (
    IntegralBasis,
    IntegralElement,
    cyclic_basis,
    floor_gcd_identity,
    integral_basis,
    is_integral,
    same_module,
    syzygy_matrix,
    trace_powers,
    verify_closure,
)
from bjtool.ramification import closure_discriminant
from bjtool.ring_core import Poly, PrimeField


def _basis(F, rows, last_den):
    return [IntegralElement.of_power(F, 3, 0), IntegralElement.of_power(F, 3, 1), IntegralElement.make(rows, last_den)]


def test_e1_basis(F7, P7):
    dec = decompose(make_bj_input(3, P7(0, 1), P7(0, 1)))
    basis = integral_basis(dec)
    assert same_module(basis.elements, _basis(F7, [P7(0, 3), P7(), P7(1)], P7(1)))
    rep = verify_closure(basis, expected_disc=closure_discriminant(dec), delta=dec.delta)
    assert rep["ok"]


def test_e2_basis(F7, P7):
    dec = decompose(make_bj_input(3, P7(4), P7(2, 0, 1)))
    assert same_module(integral_basis(dec).elements, _basis(F7, [P7(5), P7(1), P7(1)], P7(0, 1)))


def test_e3_basis(F7, P7):
    dec = decompose(make_bj_input(3, P7(0, 1), P7(0, 0, 1)))
    assert same_module(integral_basis(dec).elements, _basis(F7, [P7(0, 3), P7(), P7(1)], P7(0, 1)))


def test_corrupted_denominator_is_caught(P7):
    dec = decompose(make_bj_input(3, P7(4), P7(2, 0, 1)))
    basis = integral_basis(dec)
    last = basis.elements[-1]
    assert last.den == P7(0, 1)
    bad = IntegralBasis(basis.elements[:-1] + [IntegralElement(last.num, last.den * P7(0, 1))], basis.poly)
    rep = verify_closure(bad)
    assert not rep["integral"] and not rep["ok"]


def test_trace_powers(P7):
    x = P7(0, 1)
    assert trace_powers(make_bj_input(3, x, x)) == [P7(3), P7(), P7(0, 5)]
    assert trace_powers(make_bj_input(5, x, x)) == [P7(5), P7(), P7(), P7(), P7(0, 3)]


def test_floor_gcd_small():
    assert all(floor_gcd_identity(n, k) for n in range(3, 20) for k in range(1, n))


def test_syzygy_shape(P7):
    dec = decompose(make_bj_input(4, P7(0, 1), P7(0, 0, 1)))
    pres = syzygy_matrix(dec)
    assert pres.M.rows >= 1


def test_cyclic_basis_quintic():
    F = PrimeField(11)
    ells = [Poly(F, [1, 1]), Poly(F, [2, 1]), Poly(F, [3, 1]), Poly(F, [4, 1])]
    basis = cyclic_basis(5, ells, 1)
    dens = [e.den for e in basis.elements]
    l1, l2, l3, l4 = ells
    assert dens == [Poly.one(F), Poly.one(F), l3 * l4, l2 * l3 * l4 * l4, l2 * l3 * l3 * l4 * l4 * l4]
    assert verify_closure(basis)["ok"]


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.sampled_from([3, 4, 5]), p=st.sampled_from([7, 11, 13]))
def test_basis_properties(seed, n, p):
    """Every generator is integral and the trace-form discriminant equals D."""
    from bjtool.corpus import random_bj_pair
    from bjtool.bj_data import make_minimal

    if (n * (n - 1)) % p == 0:
        return
    F = PrimeField(p)
    s, t = random_bj_pair(F, n, random.Random(seed), 5)
    if s.is_zero() or t.is_zero():
        return
    inp, _, _ = make_minimal(n, s, t)
    dec = decompose(inp)
    if dec.delta.is_zero():
        return
    basis = integral_basis(dec)
    assert all(is_integral(e, basis.poly) for e in basis.elements)
    assert verify_closure(basis, expected_disc=closure_discriminant(dec), delta=dec.delta)["ok"]
