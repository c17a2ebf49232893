import json
import random
from fractions import Fraction

import pytest

from keyvar.membership import find_certificate
from keyvar.pfaffian import PAIRS, line_quadric_profile, pair_name, plucker
from keyvar.poly import INHOMOGENEOUS, PolyMap, WeightedRing, multidegree
from keyvar.registry import default_registry
from keyvar.sampling import RationalSampler
from keyvar.type_ir import checks as C
from keyvar.type_ir.data import (FIBER_CLAIMS, GENERAL, QUADRIC_HYPERPLANE, SCROLL_GRADINGS, SPECIAL,
                                  build_case, cover_equation, fiber_system, quadric)

TYPE_IR_IDS = [i for i in default_registry().ids() if i.startswith("typeIR.")]
P = WeightedRing(tuple(f"p{i}" for i in range(1, 6)), (1,) * 5)


@pytest.mark.parametrize("check_id", TYPE_IR_IDS)
def test_registered_check_passes(registry_results, check_id):
    res = registry_results[check_id]
    assert res.status == "pass", res.notes


def test_general_pf1234_of_q_vanishes():
    case = build_case(GENERAL)
    assert plucker(case.qmatrix)[0].is_zero()


def test_special_fifth_column_is_zero():
    case = build_case(SPECIAL)
    assert all(case.q[(i, 5)].is_zero() for i in range(1, 5))


def test_general_s_coefficient_of_r12():
    case = build_case(GENERAL)
    R = case.ring
    assert case.s.coeff_of("r12") == R("x1*x4 + x2*x3")


def test_special_quadric_identity():
    q = build_case(SPECIAL).q
    assert ((q[1, 2] + q[3, 4]) ** 2 - 4 * q[1, 3] * q[2, 4]).is_zero()


def test_general_q_at_e1_is_contained_line():
    r = C._numeric_q(GENERAL, (1, 0, 0, 0))
    assert line_quadric_profile(r, quadric(GENERAL, P)) == "contained"


def test_special_m14_equals_m23():
    case = build_case(SPECIAL)
    assert case.m[(1, 4)] == case.m[(2, 3)]


def test_double_cover_sign_at_s_zero():
    for tag, factor in ((GENERAL, Fraction(1, 4)), (SPECIAL, Fraction(1))):
        case = build_case(tag)
        C_ = case.cover
        at0 = PolyMap.from_dict(C_, C_, {"st": 0})(cover_equation(case.cover_m))
        assert at0 == factor * case.branch


def test_first_univ_relation_general():
    case = build_case(GENERAL)
    cert = find_certificate(case.universal[0], case.cone_relations)
    assert cert is not None and cert.expand() == case.universal[0]


def test_fiber_systems_general():
    case = build_case(GENERAL)
    F = {c.label: c for c in FIBER_CLAIMS[GENERAL]}
    sys_a = fiber_system(case, F["a"].r, F["a"].s)
    R = sys_a[0].ring
    x1, x2, x3, x4 = R.vars("xt1", "xt2", "xt3", "xt4")
    assert set(sys_a) == {x1 * x4 - x2 * x3, x1 * x3, x2 * x4}
    sys_c = fiber_system(case, F["c"].r, F["c"].s)
    assert set(sys_c) == {x4 ** 2, x3 * x4, x2 * x4}


def test_orbit_profiles_special():
    Q = quadric(SPECIAL, P)
    h = QUADRIC_HYPERPLANE[SPECIAL]

    def pt(**kw):
        return {k: Fraction(kw.get(pair_name("r", *k), 0)) for k in PAIRS}

    assert line_quadric_profile(pt(r15=1, r25=-1), Q, hyperplane=h) == "disjoint"
    assert line_quadric_profile(pt(r13=1, r23=-1), Q, hyperplane=h) == "tangent"


def test_special_cone_samples_avoid_excluded_locus():
    s = RationalSampler(3, "t")
    for _ in range(10):
        x, r = C.sample_cone_point(SPECIAL, s)
        assert any(r[(i, 5)] for i in range(1, 5))


def test_scroll_generator_bidegrees():
    case = build_case(GENERAL)
    degs = {multidegree(p, SCROLL_GRADINGS) for p in case.scroll_generators}
    assert INHOMOGENEOUS not in degs
    assert multidegree(case.scroll_universal[0], SCROLL_GRADINGS) == (2, 1)


def _forms(seed):
    rng = random.Random(seed)
    return [{pair_name("r", i, j): rng.randint(-3, 3) for i, j in PAIRS} for _ in range(6)]


@pytest.mark.parametrize("tag", [GENERAL, SPECIAL])
def test_lforms_hook_on_random_section(tag):
    res = C.check_lforms(tag, _forms(3))
    assert res.status == "pass", res.notes


def test_lforms_rejects_dependent_forms():
    forms = _forms(1)
    forms[5] = dict(forms[0])
    assert C.check_lforms(GENERAL, forms).status == "fail"


def test_load_lforms(tmp_path):
    path = tmp_path / "forms.json"
    forms = [{"rt12": 1, "r34": "1/2"}] * 6
    path.write_text(json.dumps({"case": "special", "forms": forms}))
    tag, loaded = C.load_lforms(str(path))
    assert tag == SPECIAL and loaded[0]["r34"] == Fraction(1, 2)
    path.write_text(json.dumps({"case": "other", "forms": forms}))
    with pytest.raises(ValueError):
        C.load_lforms(str(path))
    path.write_text(json.dumps({"forms": forms[:3]}))
    with pytest.raises(ValueError):
        C.load_lforms(str(path))


def test_unknown_coordinate_in_form():
    with pytest.raises(ValueError):
        C._form_row({"r66": 1})
