"""Type IR: the two double covers, orbit representatives and their fibers.

Run with ``python demos/double_covers.py``.
"""

from keyvar.pfaffian import line_quadric_profile
from keyvar.type_ir import checks
from keyvar.type_ir.data import ORBIT_REPS, TAGS, build_case, cover_equation


def main():
    for tag in TAGS:
        case = build_case(tag)
        print(f"== {tag} case ==")
        cover = cover_equation(case.cover_m)
        print(f"  cover equation: {len(cover.terms)} terms; branch quartic: {len(case.branch.terms)} terms")
        res = checks.check_double_cover(tag)
        print(f"  double cover identity: {res.status} ({res.notes})")
        for rep in ORBIT_REPS[tag]:
            print(f"  orbit {rep.label}: r = {rep.r}, expected profile {rep.profile}")
        res = checks.check_fibers(tag, seed=0, trials=5)
        print(f"  fibers over the orbit representatives: {res.status}")
        print()


if __name__ == "__main__":
    main()
