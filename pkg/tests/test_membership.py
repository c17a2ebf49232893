import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from keyvar.linalg import RatMatrix, rat_det
from keyvar.membership import (CertificateSolver, equal_mod_ideal, find_certificate, hilbert_function,
                               linear_span_matrix, map_preserves)
from keyvar.pfaffian import PAIRS, SkewPolyMatrix5, plucker
from keyvar.poly import Poly, PolyMap, WeightedRing
from keyvar.type_r.checks import sigma_map
from keyvar.type_r.data import build

from strategies import rationals

X = WeightedRing(("x1", "x2", "x3"), (1, 1, 1))
G = WeightedRing(tuple(f"r{i}{j}" for i, j in PAIRS), (1,) * 10)
PF = plucker(SkewPolyMatrix5.generic(G, "r"))


def _independent_expand(cert, point):
    return sum((c.evaluate(point) * g.evaluate(point) for c, g in zip(cert.coefficients, cert.generators)),
               Fraction(0))


def test_simple_certificate():
    x1, x2 = X.vars("x1", "x2")
    cert = find_certificate(x1 ** 2 + x1 * x2, [x1], 1)
    assert cert.coefficients == (x1 + x2,)


def test_degree_obstruction():
    x1 = X.var("x1")
    for bound in (0, 1, 3, None):
        assert find_certificate(x1, [x1 ** 2], bound) is None


def test_equal_mod_ideal_examples():
    x1, x2 = X.vars("x1", "x2")
    p = X("x1*x2 + 3")
    cert = equal_mod_ideal(p, p, [x1 ** 2])
    assert cert is not None and all(c.is_zero() for c in cert.coefficients)
    assert equal_mod_ideal(x1, x2, [x1 ** 2], 2) is None


def test_identity_map_preserves_generators():
    certs = map_preserves(PolyMap.identity(G), PF, PF)
    assert certs is not None
    for k, c in enumerate(certs):
        assert c.coefficients[k] == G.one() and all(
            d.is_zero() for i, d in enumerate(c.coefficients) if i != k)


def test_span_matrix_of_a_swap():
    x1, x2 = X.vars("x1", "x2")
    swap = PolyMap.from_dict(X, X, {"x1": x2, "x2": x1})
    sm = linear_span_matrix([x1, x2], swap)
    assert sm.matrix.tolist() == [[0, 1], [1, 0]] and sm.trace() == 0


def test_span_matrix_of_q_under_sigma2():
    d = build()
    qs = [d.q[k] for k in PAIRS]
    sm = linear_span_matrix(qs, sigma_map(2))
    assert sm is not None and sm.matrix.shape == (10, 10)
    assert rat_det(sm.matrix) != 0


def test_span_matrix_composition():
    d = build()
    qs = [d.q[k] for k in PAIRS]
    s1, s2 = sigma_map(1), sigma_map(2)
    m1 = linear_span_matrix(qs, s1).matrix
    m2 = linear_span_matrix(qs, s2).matrix
    m12 = linear_span_matrix(qs, s1.then(s2)).matrix
    assert m12.tolist() == (m1 @ m2).tolist()


def test_plucker_hilbert_function():
    # G(2,5) has Hilbert polynomial with values 1, 10, 50, 175 in degrees 0..3
    assert [hilbert_function(PF, d) for d in range(4)] == [1, 10, 50, 175]
    assert hilbert_function(PF, 3, modulus=2_147_483_647) == 175


def _random_target(rng):
    target = G.zero()
    for g in PF:
        coeff = G.zero()
        for _ in range(2):
            coeff = coeff + Fraction(rng.randint(-5, 5)) * G.gens()[rng.randrange(10)]
        target = target + coeff * g
    return target


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.lists(rationals, min_size=10, max_size=10))
def test_certificates_re_expand(seed, point):
    target = _random_target(random.Random(seed))
    cert = find_certificate(target, PF)
    assert cert is not None
    assert cert.expand() == target
    assert _independent_expand(cert, point) == target.evaluate(point)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_bound_monotone_and_graded_agrees_with_full(seed):
    target = _random_target(random.Random(seed))
    assert find_certificate(target, PF, 0) is None
    for b in (1, 2):
        assert find_certificate(target, PF, b) is not None
    full = find_certificate(target, PF, 1, graded=False)
    assert full is not None and full.expand() == target


def test_graded_and_full_agree_on_non_members():
    x1, x2, x3 = X.vars("x1", "x2", "x3")
    gens = [x1 * x2, x2 * x3]
    for target in (x1 * x3, x1 ** 2 * x3):
        graded = find_certificate(target, gens, 2)
        full = find_certificate(target, gens, 2, graded=False)
        assert (graded is None) == (full is None)


def test_solver_reuses_eliminations():
    solver = CertificateSolver(PF)
    for _ in range(3):
        assert solver.find(G("r12") * PF[0]) is not None
    assert len(solver._spans) == 1
