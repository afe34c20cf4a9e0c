import random
from fractions import Fraction

import pytest

from bjtool.errors import FieldError
from bjtool.ring_core import (
    QQ,
    PolyMatrix,
    Poly,
    PrimeField,
    QuadExtElem,
    check_bj_characteristic,
    factor_poly,
    irreducibility_check,
    kernel_basis,
    quad_conjugate_norm,
)


def test_factor_over_f7(P7):
    fac = factor_poly(P7(0, 0, 3, 0, 6))
    assert fac.unit == 6
    assert dict(fac.factors) == {P7(0, 1): 2, P7(4, 0, 1): 1}


def test_factor_linear_with_unit(P7):
    fac = factor_poly(P7(6, 4))
    assert fac.unit == 4
    assert dict(fac.factors) == {P7(5, 1): 1}


def test_factor_unit(F7):
    fac = factor_poly(Poly.one(F7))
    assert fac.unit == 1 and fac.factors == ()


def test_factor_expands_back_random():
    rng = random.Random(0)
    for p in (5, 7, 11, 13):
        F = PrimeField(p)
        for _ in range(20):
            f = Poly(F, [rng.randrange(p) for _ in range(rng.randint(2, 9))])
            if f.is_zero():
                continue
            fac = factor_poly(f)
            assert fac.expand() == f
            for g, _ in fac.factors:
                assert g.lc == 1


def test_factor_over_q():
    f = Poly(QQ, [Fraction(-1), 0, Fraction(1, 2)])  # x^2/2 - 1
    fac = factor_poly(f)
    assert fac.unit == Fraction(1, 2)
    assert fac.expand() == f


def test_kernel_of_row(F7, P7):
    x = P7(0, 1)
    M = PolyMatrix.from_rows(F7, [[P7(1), P7(6, 0, 3), x]])
    ker = kernel_basis(M)
    assert len(ker) == 2
    for v in ker:
        assert P7(1) * v[0] + P7(6, 0, 3) * v[1] + x * v[2] == P7()
    # projections span the same module as (1, 1) and (x, 0): unimodular 2x2 determinant
    a, b = ker[0][:2], ker[1][:2]
    det = a[0] * b[1] - a[1] * b[0]
    # {(1,1),(x,0)} has determinant -x; same module iff the determinants agree up to a unit
    assert det.monic() == x


def test_kernel_trivial_cases(F7, P7):
    assert len(kernel_basis(PolyMatrix.zero(F7, 1, 2))) == 2
    assert kernel_basis(PolyMatrix.from_rows(F7, [[P7(1)]])) == []


def test_conjugate_norm(P7):
    d = P7(0, 0, 1)
    conj, norm = quad_conjugate_norm(QuadExtElem.y(d))
    assert conj.u0.is_zero() and conj.u1 == P7(6)
    assert norm == -d
    base = QuadExtElem.of(P7(3, 1), d)
    conj, norm = quad_conjugate_norm(base)
    assert conj == base and norm == P7(3, 1) * P7(3, 1)
    _, norm = quad_conjugate_norm(QuadExtElem.of(P7(0, 1), P7(1, 0, 1), P7(1)))
    assert norm == P7(6)


def test_irreducibility(P7):
    x = P7(0, 1)
    assert irreducibility_check([x, x, P7(), P7(1)]).status == "irreducible"
    assert irreducibility_check([P7(0, 0, 6), P7(), P7(1)]).status == "reducible"
    assert irreducibility_check([P7(0, 6), P7(), P7(), P7(1)]).status in ("irreducible", "unverified")


def test_characteristic_guard():
    with pytest.raises(FieldError):
        check_bj_characteristic(PrimeField(3), 3)
    with pytest.raises(FieldError):
        check_bj_characteristic(PrimeField(2), 5)
    check_bj_characteristic(PrimeField(7), 3)


def test_prime_field_rejects_composite():
    with pytest.raises(FieldError):
        PrimeField(9)
