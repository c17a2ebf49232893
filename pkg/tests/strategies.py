"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from keyvar.poly import Poly, WeightedRing

RING6 = WeightedRing(("a", "b", "c", "d", "e", "f"), (1, 1, 1, 1, 1, 1))
WRING = WeightedRing(("u", "v", "w"), (1, 2, 3))

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)
small_rationals = st.integers(-3, 3).map(Fraction)


def monomials(nvars, max_exp=2, max_total=4):
    return st.tuples(*[st.integers(0, max_exp)] * nvars).filter(lambda m: sum(m) <= max_total)


def polys(ring=RING6, max_terms=5):
    return st.dictionaries(monomials(ring.nvars), rationals, max_size=max_terms).map(
        lambda d: Poly(ring, d))


def points(ring=RING6):
    return st.lists(rationals, min_size=ring.nvars, max_size=ring.nvars)


def matrices(max_n=5):
    return st.integers(1, max_n).flatmap(
        lambda m: st.integers(1, max_n).flatmap(
            lambda n: st.lists(st.lists(small_rationals, min_size=n, max_size=n), min_size=m, max_size=m)))


def square_matrices(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(small_rationals, min_size=n, max_size=n), min_size=n, max_size=n))
