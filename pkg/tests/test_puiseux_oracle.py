from fractions import Fraction

import pytest

from bjtool.bj_data import INF, make_bj_input
from bjtool.closure import IntegralElement
from bjtool.errors import PlaceNotRelevant
from bjtool.puiseux_oracle import branch_valuation, newton_polygon, puiseux_branches, ramification_oracle
from bjtool.ring_core import QQ, Poly


def test_newton_polygons():
    assert newton_polygon(3, 1, 1).segments == ((Fraction(-1, 3), 3),)
    assert newton_polygon(3, 1, 2).segments == ((Fraction(-1), 1), (Fraction(-1, 2), 2))
    assert newton_polygon(5, 0, 0).ramified_segments() == ()


def test_totally_ramified_branch(P7):
    x = P7(0, 1)
    branches = puiseux_branches(make_bj_input(3, x, x), x)
    assert [(b.e, b.f) for b in branches] == [(3, 1)]


def test_simple_branch_split(P7):
    x = P7(0, 1)
    branches = puiseux_branches(make_bj_input(3, x, x * x), x)
    assert sorted((b.e, b.f) for b in branches) == [(1, 1), (2, 1)]


def test_quadratic_place(P7):
    branches = puiseux_branches(make_bj_input(3, P7(4), P7(2, 0, 1)), P7(4, 0, 1))
    assert sorted(b.e for b in branches) == [1, 2]
    assert sum(b.e * b.f for b in branches) == 3


def test_valuations(F7, P7):
    x = P7(0, 1)
    br = puiseux_branches(make_bj_input(3, x, x), x)[0]
    assert branch_valuation(IntegralElement.of_power(F7, 3, 1), br) == Fraction(1, 3)
    assert branch_valuation(IntegralElement.of_power(F7, 3, 0), br) == 0
    elem = IntegralElement.make([P7(0, 3), P7(), P7(1)], x)
    for b in puiseux_branches(make_bj_input(3, x, x * x), x):
        assert branch_valuation(elem, b) >= 0
        if b.e == 2:
            assert branch_valuation(elem, b) == 0


def test_oracle_examples(P7):
    x = P7(0, 1)
    prof = ramification_oracle(make_bj_input(3, x, x))
    assert {str(k): v.indices() for k, v in prof.items()} == {"x": [3], "x + 5": [2, 1]}
    prof = ramification_oracle(make_bj_input(3, x, x * x))
    assert {str(k): v.indices() for k, v in prof.items()} == {"x": [2, 1], "x + 3": [2, 1]}


def test_oracle_unit_delta(P7):
    assert ramification_oracle(make_bj_input(3, P7(1), P7(1))) == {}


def test_oracle_over_q():
    x = Poly.x(QQ)
    prof = ramification_oracle(make_bj_input(3, x, x))
    assert [v.indices() for v in prof.values()] == [[3], [2, 1]]


def test_infinity_needs_projective(P7):
    x = P7(0, 1)
    with pytest.raises(PlaceNotRelevant):
        puiseux_branches(make_bj_input(3, x, x), INF)
    prof = ramification_oracle(make_bj_input(3, x, x, "projective", 1))
    assert prof[INF].indices() == [2, 1]
