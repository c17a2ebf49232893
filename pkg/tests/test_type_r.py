from fractions import Fraction

import pytest

from keyvar.linalg import rat_rank
from keyvar.membership import linear_span_matrix
from keyvar.pfaffian import PAIRS
from keyvar.poly import PolyMap, weighted_degree
from keyvar.registry import default_registry
from keyvar.sampling import RationalSampler
from keyvar.type_r import checks as C
from keyvar.type_r.data import POINTS_Q, build

TYPE_R_IDS = [i for i in default_registry().ids() if i.startswith("typeR.")]


@pytest.mark.parametrize("check_id", TYPE_R_IDS)
def test_registered_check_passes(registry_results, check_id):
    res = registry_results[check_id]
    assert res.status == "pass", res.notes


def test_build_examples():
    d = build()
    R = d.ring
    assert d.f[2] == R.var("r15") * R.var("r24")
    for i in range(4):
        assert 30 * d.U[i] == 30 * d.S[i] + 5 * d.K[i] + 2 * d.L[i]
    for name, (p, deg) in d.named_polys().items():
        assert weighted_degree(p) == deg, name


def test_rf6_at_p1():
    d = build()
    pt = d.point(r=(1, 0, 0, 0), r0=-6)
    assert all(p.evaluate(pt) == 0 for p in d.RF)


def test_gamma1_sample_and_jacobian_rank():
    d = build()
    pt = d.point(x=(1, 0, 0, 0, 0), y=(0, 0, 0, 0, 1), r=(-1, 0, 0, 0), r0=6)
    assert all(p.evaluate(pt) == 0 for p in d.RF)
    assert C.jacobian_rank(d.RF, pt) < 4


def test_mq_rank_examples():
    d = build()
    pt = d.point(x=(0, 0, 0, 1, 0), y=(0, 0, 0, 0, 1))
    assert rat_rank(d.Mq.evaluate(pt)) == 1
    pt = d.point(x=(1,) * 5, y=(1,) * 5)
    assert rat_rank(d.Mq.evaluate(pt)) == 0
    assert d.Mq.submatrix([0, 1, 2, 3], [0, 1, 2, 3]).det().is_zero()


def test_action_convention_gives_transpositions():
    assert C.determine_action_convention() == C.ACTION_CONVENTION
    perms = C.sigma4_permutations()
    assert len(C.generated_group(list(perms.values()))) == 120


def test_sigma1_trace_and_dr_invariance():
    d = build()
    sm = linear_span_matrix(d.RF, C.sigma_map(1))
    assert sm.trace() == 3
    for i in range(1, 6):
        assert C.sigma_map(i)(d.DR) == d.DR


def test_sigma5_is_an_involution_exactly():
    s5 = C.sigma_map(5)
    assert s5.then(s5) == PolyMap.identity(build().ring)


def test_span_matrices_transport_equivariance():
    d = build()
    for i in range(1, 6):
        sm = linear_span_matrix(d.RF, C.sigma_map(i))
        for k, img in enumerate(sm.images):
            rhs = d.ring.zero()
            for c, p in zip(sm.matrix.rows[k], d.RF):
                rhs = rhs + c * p
            assert img == rhs


def test_segre_points_minors():
    from itertools import combinations
    for tri in combinations(POINTS_Q, 3):
        assert rat_rank(list(tri)) == 3
    for quad in combinations(POINTS_Q, 4):
        assert rat_rank(list(quad)) == 4


def test_rhat_at_s_equal_one_recovers_rf():
    d = build()
    Rh = C.rhat_ring()
    eqs = C.rhat_equations(Rh)
    assign = {"s": 1, "rh0": d.ring.var("r0")}
    assign.update({f"rh{k}": d.ring.var(f"r{k}") for k in ("15", "24", "34", "35")})
    assign.update({f"xh{i}": d.ring.var(f"x{i}") for i in range(1, 6)})
    assign.update({f"yh{i}": d.ring.var(f"y{i}") for i in range(1, 6)})
    m = PolyMap.from_dict(Rh, d.ring, assign, keep=False)
    assert tuple(m(p) for p in eqs) == d.RF


def test_qfacr_degenerate_sample_is_rejected():
    vals = {"rt24": Fraction(2), "rt34": Fraction(1), "rt35": Fraction(-1)}
    with pytest.raises(C.PreconditionError):
        C.qfacr_forward(vals)


def test_seed_determinism_of_samplers():
    a = C.gamma_point(1, RationalSampler(7, "g"))
    b = C.gamma_point(1, RationalSampler(7, "g"))
    assert a == b


def test_mq_minors3_bound_zero_is_inconclusive():
    res = C.check_mq_minors3(bound=0)
    assert res.status == "inconclusive"
