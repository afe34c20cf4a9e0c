import pytest

from bjtool import cover_geom as cg
from bjtool.bj_data import decompose, make_minimal
from bjtool.errors import WrongDegree
from bjtool.ramification import INF, Divisor
from bjtool.ring_core import Poly, PrimeField


def _dec(P, n, s, t, mode="affine"):
    inp, _, _ = make_minimal(n, P(*s), P(*t), mode, None, 0)
    return decompose(inp, 0)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_symbolic_identities(n):
    res = cg.symbolic_checks(n)
    assert res["T_independent"] and res["c1_expressions_agree"]
    if n <= 5:
        assert res["closed_form_equivalent"]


def test_cubic_symbolic_extras():
    res = cg.symbolic_checks(3)
    assert res["closed_form_exact"] and res["eta_form"] and res["two_eta"]


def test_cubic_closed_form_atoms():
    expected = cg.atom("C0") - cg.atom("A1") - cg.atom("A2") - cg.atom("B0") - cg.atom("B1")
    assert cg.sym_c1_closed_form(3) == expected


def test_quartic_and_quintic_closed_forms():
    four = cg.atom("C0") - cg.atom("A0", 2) - cg.atom("A1", 2) - cg.atom("A2", 2) - cg.atom("A3", 3) \
        - cg.atom("B1") - cg.atom("B2")
    five = cg.atom("C0") - sum((cg.atom(a, 2) for a in ("A1", "A2", "A3", "A4", "B0", "B1", "B2")), cg.SymDivisor()) \
        - cg.atom("B3", 3)
    assert cg.sym_c1_closed_form(4) == four
    assert cg.sym_c1_closed_form(5) == five


def test_cubic_divisors_collapse(P7):
    dec = _dec(P7, 3, (4,), (2, 0, 1))
    cd = cg.cover_divisors(dec)
    assert len(cd.V) == 3
    # V_1 = div(f_1) with f_1 = 2 a0 a2, a unit for this input
    assert cd.V[0].is_zero()
    assert cd.V[1] == Divisor.of_poly(P7(2, 0, 1))
    assert cd.V[2] == Divisor.of_poly(P7(0, 1))


def test_worked_affine_c1(P7):
    dec = _dec(P7, 3, (4,), (2, 0, 1))
    ch = cg.c1_pushforward(dec)
    x, q = Divisor.of_poly(P7(0, 1)), Divisor.of_poly(P7(2, 0, 1))
    # det of the basis change is 1/x; the sign follows c1 = -div(det)
    assert ch.c1_det == x
    assert ch.c1_formula == x - q
    assert ch.c1_formula.degree() == -1


def test_projective_c1_half_discriminant(P7):
    dec = _dec(P7, 3, (0, 1), (0, 0, 1), "projective")
    ch = cg.c1_pushforward(dec)
    assert ch.c1_det.degree() == -2
    assert ch.degree_check and ch.half_discriminant_check


def test_branch_divisors(P7):
    br = cg.branch_divisors(_dec(P7, 3, (0, 1), (0, 1)))
    assert br.simple == Divisor.of_poly(P7(5, 1))
    assert br.reduced == Divisor.of_poly(P7(0, 1)) + Divisor.of_poly(P7(5, 1))
    br = cg.branch_divisors(_dec(P7, 3, (0, 1), (0, 0, 1)))
    assert br.simple == Divisor.of_poly(P7(0, 1)) + Divisor.of_poly(P7(3, 1))
    assert br.total.is_zero()


def test_branch_divisors_unramified(P7):
    br = cg.branch_divisors(_dec(P7, 3, (1,), (1,)))
    assert br.branch.is_zero() and br.reduced.is_zero()


def test_cubic_identities_projective(P7):
    res = cg.check_cubic_identities(_dec(P7, 3, (0, 1), (0, 0, 1), "projective"))
    for key in ("branch_is_div_D", "closed_form_exact", "c1_total_and_eta", "two_eta",
                "c_relation", "c1_half_branch", "unramified_iff_c1_trivial"):
        assert res[key], key
    assert res["c1_degree"] == -2


def test_cubic_identities_wrong_degree(P7):
    with pytest.raises(WrongDegree):
        cg.check_cubic_identities(_dec(P7, 4, (0, 1), (0, 1)))


@pytest.mark.parametrize("s,t", [((0, 1), (0, 1)), ((4,), (2, 0, 1))])
def test_galois_negative_examples(P7, s, t):
    for mode in ("affine", "projective"):
        v = cg.galois_cubic(P7(*s), P7(*t), mode)
        assert not v.criterion and not v.oracle
        assert not v.conditions["totally_or_unramified"]


def test_galois_cyclic_cubic(P7):
    t = P7(0, 1, 1) * P7(0, 1) * P7(1, 1)
    v = cg.galois_cubic(Poly.zero(P7(1).field), t, "projective")
    assert v.criterion and v.oracle


def test_cyclic_quintic_conditions(P7):
    x = P7(0, 1)
    ells = [x + P7(k) for k in range(4)]
    t = ells[0] * ells[1] ** 2 * ells[2] ** 3 * ells[3] ** 4
    res = cg.check_quintic_conditions(t, "projective")
    assert res["affine_c1_formula"] and res["totally_or_unramified"] and res["c1_twice_reduced_branch"]
    c1, red = cg.cyclic_c1(5, t, "projective")
    assert c1.degree() == -2 * red.degree() == -8


def test_quintic_conditions_general(P7):
    res = cg.check_quintic_conditions(_dec(P7, 5, (0, 1), (0, 0, 1), "projective"))
    assert res["kind"] == "general"
    assert res["totally_or_unramified"] is False


def test_contract_aliases():
    assert cg.check_thm53 is cg.check_cubic_identities
    assert cg.check_prop57 is cg.check_quintic_conditions


def test_infinity_point_in_projective_c1(P7):
    dec = _dec(P7, 3, (0, 1), (0, 1), "projective")
    assert INF in cg.c1_pushforward(dec).c1_det.support()
