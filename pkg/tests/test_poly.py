from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from keyvar.poly import (INHOMOGENEOUS, Poly, PolyMap, RingMismatch, WeightedRing, evaluate, jacobian,
                         poly_arith, ring, substitute, weighted_degree)
from keyvar.type_r.data import build, f_family, q_family

from oracles import eval_terms, naive_mul
from strategies import RING6, WRING, points, polys, rationals


XY = WeightedRing(tuple(f"x{i}" for i in range(1, 6)) + tuple(f"y{i}" for i in range(1, 6)), (1,) * 10)


def test_difference_of_squares():
    x1, y1 = XY.vars("x1", "y1")
    assert poly_arith(x1 + y1, x1 - y1, "mul") == x1 ** 2 - y1 ** 2


def test_additive_inverse_is_empty():
    p = XY("3*x1^2*y2 - 1/2*x3")
    z = poly_arith(p, -p, "add")
    assert z.terms == {} and z.is_zero()


def test_q12_q34_against_naive_multiplier():
    q = q_family(XY.vars(*XY.names[:5]), XY.vars(*XY.names[5:]))
    prod = q[1, 2] * q[3, 4]
    assert prod.terms == naive_mul(q[1, 2].terms, q[3, 4].terms)
    assert weighted_degree(prod) == 4 and len(prod.terms) == 4


def test_ring_mismatch():
    other = WeightedRing(("x1",), (1,))
    with pytest.raises(RingMismatch):
        XY.var("x1") + other.var("x1")


def test_coefficients_are_canonical_fractions():
    p = XY("2/4*x1")
    c = p.coefficient((1,) + (0,) * 9)
    assert c == Fraction(1, 2) and c.denominator == 2


def test_substitute_binomial_and_identity():
    x1, y1 = XY.vars("x1", "y1")
    m = PolyMap.from_dict(XY, XY, {"x1": x1 + y1})
    assert substitute(x1 ** 2, m) == x1 ** 2 + 2 * x1 * y1 + y1 ** 2
    p = XY("x1*y2 - 3*x5^3 + 7")
    assert substitute(p, PolyMap.identity(XY)) == p


def test_pf1234_under_s5r_gives_f1():
    d = build()
    R = d.ring
    r = {n: R.var(f"r{n}") for n in ("15", "24", "34", "35")}
    assert f_family(r)[0] == R("-r24*r34 - r24*r35")


def test_weighted_degree_examples():
    R = ring("x1:1 r0 r15:2")
    assert weighted_degree(R("r0*r15")) == 4
    assert weighted_degree(R("x1 + r15")) is INHOMOGENEOUS
    d = build()
    assert weighted_degree(d.RF[2]) == 4


def test_evaluate_examples():
    q = q_family(XY.vars(*XY.names[:5]), XY.vars(*XY.names[5:]))
    assert q[1, 5].evaluate([1, 0, 0, 0, 0, 0, 0, 0, 0, 1]) == 1
    d = build()
    R = d.ring
    f1 = d.f[0]
    pt = [0] * R.nvars
    pt[R.index("r15")] = 1
    assert f1.evaluate(pt) == 0
    pt[R.index("r0")] = -6
    assert d.RF[5].evaluate(pt) == 0
    with pytest.raises(ValueError):
        evaluate(f1, [0, 1])


def test_jacobian_examples():
    x1 = XY.var("x1")
    J = jacobian([x1 ** 2])
    assert J[0, 0] == 2 * x1
    q = q_family(XY.vars(*XY.names[:5]), XY.vars(*XY.names[5:]))
    J = jacobian(list(q.values()))
    for i in range(J.shape[0]):
        for j in range(J.shape[1]):
            e = J[i, j]
            assert e.is_zero() or (len(e.terms) == 1 and abs(next(iter(e.terms.values()))) == 1
                                   and weighted_degree(e) == 1)
    assert jacobian([XY.const(3), XY.const(-1)]).is_zero()


def test_text_form_and_parser():
    p = XY("x1^2*y1 - 1/3*x2 + 5")
    assert Poly.parse(p.to_text(), XY) == p
    assert XY("x1-x2") == XY("x1 + -1*x2")
    assert XY("-x1+x2") == XY.var("x2") - XY.var("x1")


def test_graded_polymap_rejects_wrong_degree():
    with pytest.raises(ValueError):
        PolyMap.from_dict(WRING, WRING, {"u": WRING.var("v")}, scale=1)


# ---------------------------------------------------------------------------
# properties

@settings(max_examples=200, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p and p + q == q + p


@settings(max_examples=100, deadline=None)
@given(polys(), polys())
def test_mul_matches_naive_oracle(p, q):
    assert (p * q).terms == naive_mul(p.terms, q.terms)


@settings(max_examples=100, deadline=None)
@given(polys(), polys(), points())
def test_evaluate_is_multiplicative(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert p.evaluate(pt) == eval_terms(p.terms, pt)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), st.lists(polys(max_terms=3), min_size=6, max_size=6))
def test_substitute_is_a_homomorphism(p, q, images):
    m = PolyMap(RING6, RING6, tuple(images))
    assert substitute(p * q, m) == substitute(p, m) * substitute(q, m)
    assert substitute(p + q, m) == substitute(p, m) + substitute(q, m)


def _homogeneous(ring, d, coeffs):
    monos = ring.monomials_of_degree(d)
    return Poly(ring, {m: c for m, c in zip(monos, coeffs)})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 6), st.lists(rationals, min_size=12, max_size=12),
       st.integers(1, 2), st.lists(st.lists(rationals, min_size=12, max_size=12), min_size=3, max_size=3))
def test_graded_map_preserves_homogeneity(d, coeffs, k, img_coeffs):
    p = _homogeneous(WRING, d, coeffs)
    images = [_homogeneous(WRING, k * w, c) for w, c in zip(WRING.weights, img_coeffs)]
    m = PolyMap(WRING, WRING, tuple(images), scale=k)
    out = substitute(p, m)
    assert out.is_zero() or weighted_degree(out) == k * d


@settings(max_examples=100, deadline=None)
@given(polys())
def test_text_round_trip(p):
    assert Poly.parse(p.to_text(), RING6) == p
