from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from keyvar import intersection as I
from keyvar.intersection import A, E, CubicIntersectionForm, DivisorExpr, triple

from strategies import rationals

FORM_R = CubicIntersectionForm(Fraction(5, 2), 1, -2, -5)
FORM_IR = CubicIntersectionForm(Fraction(5, 2), 1, -2, -6)
divisors = st.builds(DivisorExpr, rationals, rationals)


def _brute_triple(form, d1, d2, d3):
    """Expand by summing over all 8 basis choices with an explicit product table."""
    table = {0: form.a3, 1: form.a2e, 2: form.ae2, 3: form.e3}
    total = Fraction(0)
    for choice in range(8):
        coeff, k = Fraction(1), 0
        for bit, d in enumerate((d1, d2, d3)):
            if choice >> bit & 1:
                coeff *= d.e
                k += 1
            else:
                coeff *= d.a
        total += coeff * table[k]
    return total


def test_basic_products():
    assert triple(FORM_R, A) == Fraction(5, 2)
    assert triple(FORM_R, 2 * A - E) == 1
    assert triple(FORM_IR, 2 * A - E) == 2


def test_solve_unknown_product():
    partial = CubicIntersectionForm(Fraction(5, 2), 1, -2, None)
    L = 2 * A - E
    assert I.solve_unknown_product(partial, L, L, L, 1) == -5
    assert I.solve_unknown_product(partial, L, L, L, 2) == -6


def test_degenerate_constraint():
    partial = CubicIntersectionForm(Fraction(5, 2), 1, -2, None)
    with pytest.raises(I.DegenerateConstraint):
        I.solve_unknown_product(partial, A, A, A, 3)


def test_unknown_product_blocks_evaluation():
    partial = CubicIntersectionForm(None, 1, -2, -5)
    with pytest.raises(ValueError):
        triple(partial, A)


def test_type_r_numerics():
    rep = I.typeR_numerics()
    v = rep.values
    assert v["E^3"] == -5 and v["deg C"] == 12 and v["(-K_Etilde)^2"] == -138
    assert v["p_g(C)"] == 7 and v["(-K)^2 Etilde"] == Fraction(27, 2) and v["(-K)^2 L"] == 4
    assert rep.disagreements() == []


def test_type_ir_numerics_and_discrepancy():
    rep = I.typeIR_numerics()
    v = rep.values
    assert v["E^3"] == -6 and v["deg C"] == 4 and v["(-K_Etilde)^2"] == -10
    assert v["p_g(C)"] == 1 and v["(-K)^2 Etilde"] == Fraction(11, 2)
    assert v["(-K)^2 L"] == 4
    diffs = rep.disagreements()
    assert [r.as_tuple()[0] for r in diffs] == ["(-K)^2 L"]
    assert diffs[0].reference == 8 and diffs[0].agree is False


def test_le_system():
    r = I.derive_from_LE_system(4, 0, -12, -138, l_cube=1)
    assert r.k2e == Fraction(27, 2) and r.k2l == 4 and r.k_cube_check == Fraction(5, 2)
    ir = I.derive_from_LE_system(2, 0, -4, -10, l_cube=2)
    assert ir.k2e == Fraction(11, 2) and ir.k2l == 4 and ir.k_cube_check == Fraction(5, 2)


def test_le_system_matches_form():
    for c in (I.TYPE_R, I.TYPE_IR):
        form = I.form_for(c)
        deg = -triple(form, c.exc, c.exc, I.L_DIV)
        k2 = triple(form, A - c.exc, A - c.exc, c.exc)
        sol = I.derive_from_LE_system(c.k_in_l, 0, -deg, k2)
        assert sol.e3 == triple(form, c.exc)
        assert sol.ke2 == triple(form, A, c.exc, c.exc)


def test_diophantine():
    assert I.diophantine_no_solution(5, 54)
    assert I.diophantine_no_solution(5, 4)
    assert not I.diophantine_no_solution(3, 6)
    with pytest.raises(ValueError):
        I.diophantine_no_solution(0, 6)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 12), (5, 55), (7, 13), (3, 10)])
def test_diophantine_against_enumeration(a, b):
    exists = any(a * m * k == b for m in range(1, b + 1) for k in range(1, b + 1))
    assert I.diophantine_no_solution(a, b) == (not exists)


def test_contradiction_chains():
    c = I.contradiction_equation(Fraction(5, 2), 4, 4)
    assert (c.a, c.b) == (5, 54) and c.push == Fraction(27, 8)
    h = I.contradiction_equation(Fraction(5, 2), 1, None)
    assert (h.a, h.b) == (5, 4)
    cmp = I.typeIR_k2l_comparison()
    assert (cmp["derived"].a, cmp["derived"].b) == (5, 22)
    assert (cmp["reference"].a, cmp["reference"].b) == (5, 54)
    assert cmp["reference"].t == Fraction(5, 16) and cmp["reference"].push == Fraction(27, 16)
    assert cmp["derived"].no_solution and cmp["reference"].no_solution


@settings(max_examples=100, deadline=None)
@given(divisors, divisors, divisors)
def test_triple_symmetric_and_matches_brute_force(d1, d2, d3):
    v = triple(FORM_R, d1, d2, d3)
    assert v == _brute_triple(FORM_R, d1, d2, d3)
    assert v == triple(FORM_R, d2, d1, d3) == triple(FORM_R, d3, d2, d1) == triple(FORM_R, d1, d3, d2)


@settings(max_examples=100, deadline=None)
@given(divisors, divisors, divisors, divisors, rationals)
def test_triple_linear(d1, d1b, d2, d3, c):
    assert triple(FORM_IR, c * d1 + d1b, d2, d3) == c * triple(FORM_IR, d1, d2, d3) + triple(FORM_IR, d1b, d2, d3)
