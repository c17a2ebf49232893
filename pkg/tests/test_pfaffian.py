from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from keyvar.pfaffian import (PAIRS, PLUCKER_ORDER, SkewPolyMatrix5, UndefinedMap, line_quadric_profile,
                             mu_map, pfaffian4, pfaffian4_values, plucker, skew_rows, wedge2, wedge2_poly)
from keyvar.poly import WeightedRing
from keyvar.type_ir.data import quadric
from keyvar.type_r.data import q_family

from oracles import leibniz_det
from strategies import rationals

T = WeightedRing(tuple(f"t{i}{j}" for i, j in PAIRS), (1,) * 10)
P = WeightedRing(tuple(f"p{i}" for i in range(1, 6)), (1,) * 5)
vec5 = st.lists(rationals, min_size=5, max_size=5)


def _point(**kw):
    return {k: Fraction(kw.get(f"r{k[0]}{k[1]}", 0)) for k in PAIRS}


def test_generic_pfaffian_expansion():
    A = SkewPolyMatrix5.generic(T, "t")
    assert pfaffian4(A, (1, 2, 3, 4)) == T("t12*t34 - t13*t24 + t14*t23")


def test_pfaffian_rejects_bad_index():
    A = SkewPolyMatrix5.generic(T, "t")
    with pytest.raises(ValueError):
        pfaffian4(A, (2, 1, 3, 4))


def test_plucker_of_q_vanishes():
    R = WeightedRing(tuple(f"x{i}" for i in range(1, 6)) + tuple(f"y{i}" for i in range(1, 6)), (1,) * 10)
    q = q_family(R.vars(*R.names[:5]), R.vars(*R.names[5:]))
    assert all(p.is_zero() for p in plucker(SkewPolyMatrix5(q, R)))


def test_plucker_of_symbolic_wedge_vanishes():
    R = WeightedRing(tuple(f"u{i}" for i in range(1, 6)) + tuple(f"v{i}" for i in range(1, 6)), (1,) * 10)
    M = wedge2_poly(R.vars(*R.names[:5]), R.vars(*R.names[5:]))
    assert all(p.is_zero() for p in plucker(M))


def test_plucker_at_r12_r34():
    A = SkewPolyMatrix5.generic(T, "t")
    pt = [1 if n in ("t12", "t34") else 0 for n in T.names]
    assert [p.evaluate(pt) for p in plucker(A)] == [1, 0, 0, 0, 0]


def test_mu_map_examples():
    assert mu_map(_point(r12=1, r34=1)) == (0, 0, 0, 0, 1)
    assert mu_map(_point(r12=1, r45=1)) == (0, 0, 1, 0, 0)
    with pytest.raises(UndefinedMap):
        mu_map(wedge2([1, 2, 3, 4, 5], [0, 1, -1, 2, 7]))


def test_wedge_examples():
    w = wedge2([1, 0, 0, 0, 0], [0, 1, 0, 0, 0])
    assert w[(1, 2)] == 1 and sum(abs(v) for v in w.values()) == 1
    assert not any(wedge2([1, 2, 3, 4, 5], [1, 2, 3, 4, 5]).values())


def test_line_quadric_profiles():
    Q = quadric("general", P)
    assert Q == P("p1*p2 + p3*p4 + p5^2")
    assert line_quadric_profile(_point(r12=1), Q) == "two-points"
    assert line_quadric_profile(_point(r45=1), Q) == "tangent"
    assert line_quadric_profile(_point(r23=1), Q) == "contained"
    with pytest.raises(ValueError):
        line_quadric_profile(_point(r12=1, r34=1), Q)


def _signed_perm_pfaffian(M, idx):
    """Pfaffian by summing over all perfect matchings with permutation signs."""
    total = Fraction(0)
    for perm in permutations(idx):
        if perm[0] < perm[1] and perm[2] < perm[3] and perm[0] < perm[2]:
            inv = sum(1 for a in range(4) for b in range(a + 1, 4)
                      if idx.index(perm[a]) > idx.index(perm[b]))
            sign = -1 if inv % 2 else 1
            total += sign * M[perm[0] - 1][perm[1] - 1] * M[perm[2] - 1][perm[3] - 1]
    return total


@settings(max_examples=100, deadline=None)
@given(st.lists(rationals, min_size=10, max_size=10))
def test_pfaffian_squares_to_determinant(vals):
    r = dict(zip(PAIRS, vals))
    M = skew_rows(r).rows
    for idx, pf in zip(PLUCKER_ORDER, pfaffian4_values(r)):
        sub = [[M[i - 1][j - 1] for j in idx] for i in idx]
        assert pf * pf == leibniz_det(sub)
        assert pf == _signed_perm_pfaffian(M, idx)


@settings(max_examples=100, deadline=None)
@given(vec5, vec5)
def test_wedges_are_decomposable(u, v):
    assert not any(pfaffian4_values(wedge2(u, v)))


@settings(max_examples=100, deadline=None)
@given(vec5, vec5, vec5, vec5, rationals)
def test_mu_map_kernel_and_scaling(u, v, w, z, lam):
    a, b = wedge2(u, v), wedge2(w, z)
    r = {k: a[k] + b[k] for k in PAIRS}
    if not any(pfaffian4_values(r)):
        return
    m = mu_map(r)
    for vec in (u, v, w, z):
        assert sum(x * y for x, y in zip(m, vec)) == 0
    if lam:
        scaled = mu_map({k: lam * x for k, x in r.items()})
        assert scaled == tuple(lam * lam * x for x in m)
