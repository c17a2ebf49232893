"""Equations of the Type IR construction in its General and Special cases.

Four rings appear:

* the cone ring: x1..x4 of weight 1 and r12..r45 of weight 2;
* the double-cover ring: rt12..rt45 of weight 1 and st of weight 2;
* the scroll ring: rt, st, xt1..xt4 and w with two extra weight rows;
* the fiber ring: xt1..xt4 and w, used after fixing rt and st at a point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from ..pfaffian import PAIRS, PLUCKER_ORDER, SkewPolyMatrix5, pair_name, plucker
from ..poly import INHOMOGENEOUS, Poly, PolyMap, WeightedRing, multidegree, weighted_degree

GENERAL = "general"
SPECIAL = "special"
TAGS = (GENERAL, SPECIAL)

X_NAMES = tuple(f"x{i}" for i in range(1, 5))
XT_NAMES = tuple(f"xt{i}" for i in range(1, 5))
R_NAMES = tuple(pair_name("r", i, j) for i, j in PAIRS)
RT_NAMES = tuple(pair_name("rt", i, j) for i, j in PAIRS)

# weight rows of the scroll, in the order rt12..rt45, st, xt1..xt4, w
SCROLL_GRADINGS = ((1,) * 10 + (2,) + (0,) * 4 + (-1,), (0,) * 10 + (0,) + (1,) * 4 + (2,))


def cone_ring() -> WeightedRing:
    return WeightedRing(X_NAMES + R_NAMES, (1,) * 4 + (2,) * 10)


def cover_ring() -> WeightedRing:
    return WeightedRing(RT_NAMES + ("st",), (1,) * 10 + (2,))


def scroll_ring() -> WeightedRing:
    # primary weight is the sum of the two rows, so every variable is positive
    return WeightedRing(RT_NAMES + ("st",) + XT_NAMES + ("w",), (1,) * 10 + (2,) + (1,) * 4 + (1,))


def fiber_ring() -> WeightedRing:
    return WeightedRing(XT_NAMES + ("w",), (1,) * 4 + (2,))


# formula helpers -----------------------------------------------------------

def q_matrix(tag: str, x: Sequence[Poly]) -> Dict[Tuple[int, int], Poly]:
    """Upper entries of the skew matrix q(x) for the given case."""
    x1, x2, x3, x4 = x
    zero = x1.ring.zero()
    q = {
        (1, 2): -x1 * x4 - x2 * x3, (1, 3): -x3 * x3, (1, 4): x4 * x4,
        (2, 3): x1 * x1, (2, 4): -x2 * x2, (3, 4): x1 * x4 - x2 * x3,
    }
    if tag == GENERAL:
        q.update({(1, 5): x3 * x4, (2, 5): x1 * x2, (3, 5): x1 * x3, (4, 5): -x2 * x4})
    elif tag == SPECIAL:
        q.update({(1, 5): zero, (2, 5): zero, (3, 5): zero, (4, 5): zero})
    else:
        raise ValueError(f"unknown case {tag!r}")
    return q


def s_form(tag: str, x: Sequence[Poly], r: SkewPolyMatrix5) -> Poly:
    """The form s(x, r), linear in r and quadratic in x."""
    x1, x2, x3, x4 = x
    if tag == GENERAL:
        return ((x1 * x4 + x2 * x3) * r[1, 2] - x2 * x2 * r[1, 3] + x1 * x1 * r[1, 4]
                + 2 * x1 * x2 * r[1, 5] + x4 * x4 * r[2, 3] - x3 * x3 * r[2, 4]
                + 2 * x3 * x4 * r[2, 5] + (x2 * x3 - x1 * x4) * r[3, 4]
                - 2 * x2 * x4 * r[3, 5] + 2 * x1 * x3 * r[4, 5])
    if tag == SPECIAL:
        return 2 * (x1 * x2 * r[1, 5] + x3 * x4 * r[2, 5] - x2 * x4 * r[3, 5] + x1 * x3 * r[4, 5])
    raise ValueError(f"unknown case {tag!r}")


def m_family(tag: str, r: SkewPolyMatrix5, s: Poly) -> Dict[Tuple[int, int], Poly]:
    """m_ij(r, s); in the Special case m14 is identified with m23."""
    p1234, p1235, p1245, p1345, p2345 = plucker(r)
    m = {(1, 2): p2345, (1, 3): -p1235, (2, 4): p1245, (3, 4): p1345}
    if tag == GENERAL:
        m[(1, 4)] = -(p1234 - s) / 2
        m[(2, 3)] = (p1234 + s) / 2
    elif tag == SPECIAL:
        m[(2, 3)] = s / 2
        m[(1, 4)] = m[(2, 3)]
    else:
        raise ValueError(f"unknown case {tag!r}")
    return m


def branch_quartic(tag: str, r: SkewPolyMatrix5) -> Poly:
    p1234, p1235, p1245, p1345, p2345 = plucker(r)
    core = p2345 * p1345 + p1235 * p1245
    if tag == GENERAL:
        return 4 * core - p1234 * p1234
    return core


def cover_equation(m: Dict[Tuple[int, int], Poly]) -> Poly:
    return m[1, 2] * m[3, 4] - m[1, 3] * m[2, 4] + m[1, 4] * m[2, 3]


def universal_relations(x: Sequence[Poly], m: Dict[Tuple[int, int], Poly]) -> Tuple[Poly, ...]:
    """Incidence of a point of P(W) with a 2-plane in Pluecker coordinates m, then the quadric."""
    x1, x2, x3, x4 = x
    return (
        x1 * m[2, 3] - x2 * m[1, 3] + x3 * m[1, 2],
        x1 * m[2, 4] - x2 * m[1, 4] + x4 * m[1, 2],
        x1 * m[3, 4] - x3 * m[1, 4] + x4 * m[1, 3],
        x2 * m[3, 4] - x3 * m[2, 4] + x4 * m[2, 3],
        cover_equation(m),
    )


def mixed_pfaffian(a: SkewPolyMatrix5, b: SkewPolyMatrix5, idx) -> Poly:
    """Part of Pf_idx(a + b) that is linear in both a and b."""
    i, j, k, l = idx
    return ((a[i, j] * b[k, l] + a[k, l] * b[i, j]) - (a[i, k] * b[j, l] + a[j, l] * b[i, k])
            + (a[i, l] * b[j, k] + a[j, k] * b[i, l]))


def scroll_pfaffian_relations(r: SkewPolyMatrix5, q: SkewPolyMatrix5, w: Poly) -> Tuple[Poly, ...]:
    """The five relations mixing r and q with w times Pf(r)."""
    pf = plucker(r)
    return tuple(mixed_pfaffian(r, q, idx) + w * p for idx, p in zip(PLUCKER_ORDER, pf))


# orbit representatives and printed fibers ---------------------------------

def quadric(tag: str, ring: WeightedRing) -> Poly:
    p = ring.gens()
    base = p[0] * p[1] + p[2] * p[3]
    return base + p[4] * p[4] if tag == GENERAL else base


# the Special quadric lives in the hyperplane p5 = 0
QUADRIC_HYPERPLANE = {GENERAL: None, SPECIAL: (0, 0, 0, 0, 1)}


@dataclass(frozen=True)
class OrbitRep:
    label: str
    r: Dict[Tuple[int, int], int]
    profile: str


ORBIT_REPS = {
    GENERAL: (
        OrbitRep("a", {(1, 2): 1}, "two-points"),
        OrbitRep("b", {(4, 5): 1}, "tangent"),
        OrbitRep("c", {(2, 3): 1}, "contained"),
    ),
    SPECIAL: (
        OrbitRep("a", {(1, 5): 1, (2, 5): -1}, "disjoint"),
        OrbitRep("b", {(1, 5): 1}, "one-point"),
        OrbitRep("c", {(1, 3): 1, (1, 4): -1, (2, 3): 1, (2, 4): -1}, "two-points"),
        OrbitRep("d", {(1, 3): 1, (2, 3): -1}, "tangent"),
        OrbitRep("e", {(1, 3): 1}, "contained"),
    ),
}


@dataclass(frozen=True)
class Component:
    """A fiber component given by generators of its (prime) ideal in the fiber ring."""

    equations: Tuple[str, ...]

    def ideal(self) -> Tuple[Poly, ...]:
        Fr = fiber_ring()
        return tuple(Fr(text) for text in self.equations)

    def describe(self) -> str:
        return "{" + ", ".join(f"{e} = 0" for e in self.equations) + "}"


@dataclass(frozen=True)
class FiberClaim:
    label: str
    r: Dict[Tuple[int, int], int]
    components: Tuple[Component, ...]
    s: int = 0
    note: str = ""


def _c(*eqs: str) -> Component:
    return Component(tuple(eqs))


FIBER_CLAIMS = {
    GENERAL: (
        FiberClaim("a", {(1, 2): 1}, (_c("xt1", "xt2"), _c("xt3", "xt4"))),
        FiberClaim("b", {(4, 5): 1}, (_c("xt1", "xt3"),),
                   note="printed with multiplicity 2; checked as a set"),
        FiberClaim("c", {(2, 3): 1}, (_c("xt4"),)),
    ),
    SPECIAL: (
        FiberClaim("a", {(1, 5): 1, (2, 5): -1}, (_c("xt1 - xt3", "xt2 - xt4"),
                                                  _c("xt1 + xt3", "xt2 + xt4"))),
        FiberClaim("b", {(1, 5): 1}, (_c("xt1", "xt2"),)),
        FiberClaim("c", {(1, 3): 1, (1, 4): -1, (2, 3): 1, (2, 4): -1},
                   (_c("xt1^2 - xt2^2 + xt3^2 - xt4^2"),), note="cone over a smooth quadric surface"),
        FiberClaim("d", {(1, 3): 1, (2, 3): -1}, (_c("xt2 - xt4"), _c("xt2 + xt4"))),
        FiberClaim("e", {(1, 3): 1}, (_c("xt2"),)),
        FiberClaim("f", {(1, 2): 1, (3, 4): 1}, (_c("w - 2*xt2*xt3"),),
                   note="point off G(2,V) with st = rt15 = rt25 = rt35 = rt45 = 0"),
    ),
}


# the case object -----------------------------------------------------------

class ConstructionError(RuntimeError):
    pass


@dataclass
class TypeIRCase:
    tag: str
    ring: WeightedRing
    x: Tuple[Poly, ...]
    rbar: SkewPolyMatrix5
    q: Dict[Tuple[int, int], Poly]
    s: Poly
    m: Dict[Tuple[int, int], Poly]
    cone_relations: Tuple[Poly, ...]
    universal: Tuple[Poly, ...]
    cover: WeightedRing
    cover_m: Dict[Tuple[int, int], Poly]
    branch: Poly
    scroll: WeightedRing
    scroll_universal: Tuple[Poly, ...]
    scroll_pfaffians: Tuple[Poly, ...]
    extras: Dict[str, object] = field(default_factory=dict)

    @property
    def qmatrix(self) -> SkewPolyMatrix5:
        return SkewPolyMatrix5(self.q, self.ring)

    @property
    def scroll_generators(self) -> Tuple[Poly, ...]:
        return tuple(p for p in self.scroll_universal + self.scroll_pfaffians if p)


@lru_cache(maxsize=None)
def build_case(tag: str) -> TypeIRCase:
    if tag not in TAGS:
        raise ValueError(f"unknown case {tag!r}")
    R = cone_ring()
    x = R.vars(*X_NAMES)
    rbar = SkewPolyMatrix5.generic(R, "r")
    q = q_matrix(tag, x)
    s = s_form(tag, x, rbar)
    m = m_family(tag, rbar, s)
    qm = SkewPolyMatrix5(q, R)
    cone_relations = plucker(rbar + qm)
    universal = universal_relations(x, m)

    C = cover_ring()
    rt = SkewPolyMatrix5.generic(C, "rt")
    cover_m = m_family(tag, rt, C.var("st"))
    branch = branch_quartic(tag, rt)

    S = scroll_ring()
    rts = SkewPolyMatrix5.generic(S, "rt")
    xt = S.vars(*XT_NAMES)
    ms = m_family(tag, rts, S.var("st"))
    qt = SkewPolyMatrix5(q_matrix(tag, xt), S)
    scroll_universal = universal_relations(xt, ms)
    scroll_pf = scroll_pfaffian_relations(rts, qt, S.var("w"))

    case = TypeIRCase(tag=tag, ring=R, x=x, rbar=rbar, q=q, s=s, m=m,
                      cone_relations=cone_relations, universal=universal, cover=C,
                      cover_m=cover_m, branch=branch, scroll=S,
                      scroll_universal=scroll_universal, scroll_pfaffians=scroll_pf)
    for name, p, deg in (
            [(f"q{i}{j}", v, 2) for (i, j), v in q.items() if v]
            + [("s", s, 4), ("branch", branch, 4)]
            + [(f"cone{k}", p, 4) for k, p in enumerate(cone_relations, 1)]):
        if weighted_degree(p) != deg:
            raise ConstructionError(f"{tag}: {name} is not homogeneous of degree {deg}")
    for p in scroll_universal + scroll_pf:
        if p and multidegree(p, SCROLL_GRADINGS) is INHOMOGENEOUS:
            raise ConstructionError(f"{tag}: scroll generator is not bi-homogeneous: {p}")
    return case


def fiber_map(case: TypeIRCase, r: Dict[Tuple[int, int], int], s=0) -> PolyMap:
    """Fix rt and st at a point; xt and w stay free."""
    S = case.scroll
    Fr = fiber_ring()
    assign = {pair_name("rt", i, j): Fr.const(r.get((i, j), 0)) for i, j in PAIRS}
    assign["st"] = Fr.const(s)
    for n in XT_NAMES + ("w",):
        assign[n] = Fr.var(n)
    return PolyMap.from_dict(S, Fr, assign, keep=False)


def fiber_system(case: TypeIRCase, r: Dict[Tuple[int, int], int], s=0) -> List[Poly]:
    m = fiber_map(case, r, s)
    out = []
    for p in case.scroll_universal + case.scroll_pfaffians:
        img = m(p)
        if img:
            prim = img.scale_to_primitive()[1]
            if prim not in out:
                out.append(prim)
    return out
