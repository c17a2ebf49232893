"""5x5 skew-symmetric matrices, their 4x4 Pfaffians and the Grassmannian G(2,5)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Mapping, Sequence, Tuple

from .linalg import PolyMatrix, RatMatrix, rat_rank
from .poly import Poly, WeightedRing, to_rational

PAIRS: Tuple[Tuple[int, int], ...] = tuple(combinations(range(1, 6), 2))
"""Index pairs (i, j), i < j, in lexicographic order: 12, 13, ..., 45."""

PLUCKER_ORDER: Tuple[Tuple[int, int, int, int], ...] = (
    (1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5), (2, 3, 4, 5))


def pair_name(prefix: str, i: int, j: int) -> str:
    return f"{prefix}{i}{j}"


class SkewPolyMatrix5:
    """Skew-symmetric 5x5 matrix stored through its ten upper entries."""

    def __init__(self, entries: Mapping[Tuple[int, int], Poly], ring: WeightedRing | None = None):
        ring = ring or next(iter(entries.values())).ring
        self.ring = ring
        up = {}
        for (i, j) in PAIRS:
            v = entries.get((i, j))
            if v is None:
                v = ring.zero()
            elif not isinstance(v, Poly):
                v = ring.const(v)
            up[(i, j)] = v
        for key in entries:
            if key not in up:
                raise ValueError(f"entry {key} is not an upper index pair")
        self.upper: Dict[Tuple[int, int], Poly] = up

    def __getitem__(self, ij) -> Poly:
        i, j = ij
        if i == j:
            return self.ring.zero()
        if i < j:
            return self.upper[(i, j)]
        return -self.upper[(j, i)]

    def __add__(self, other: "SkewPolyMatrix5") -> "SkewPolyMatrix5":
        return SkewPolyMatrix5({k: self.upper[k] + other.upper[k] for k in PAIRS}, self.ring)

    def full(self) -> PolyMatrix:
        return PolyMatrix(self.ring, [[self[i, j] for j in range(1, 6)] for i in range(1, 6)])

    def map(self, f) -> "SkewPolyMatrix5":
        ups = {k: f(v) for k, v in self.upper.items()}
        return SkewPolyMatrix5(ups, next(iter(ups.values())).ring)

    @staticmethod
    def generic(ring: WeightedRing, prefix: str = "t") -> "SkewPolyMatrix5":
        return SkewPolyMatrix5({(i, j): ring.var(pair_name(prefix, i, j)) for i, j in PAIRS}, ring)


def pfaffian4(M: SkewPolyMatrix5, idx: Sequence[int]) -> Poly:
    idx = tuple(idx)
    if len(idx) != 4 or any(a >= b for a, b in zip(idx, idx[1:])) or not set(idx) <= set(range(1, 6)):
        raise ValueError(f"malformed index set {idx}")
    i, j, k, l = idx
    return M[i, j] * M[k, l] - M[i, k] * M[j, l] + M[i, l] * M[j, k]


def plucker(M: SkewPolyMatrix5) -> Tuple[Poly, ...]:
    """The five Pfaffians Pf1234, Pf1235, Pf1245, Pf1345, Pf2345."""
    return tuple(pfaffian4(M, idx) for idx in PLUCKER_ORDER)


# numeric versions ----------------------------------------------------------

def _vec10(r) -> Dict[Tuple[int, int], Fraction]:
    if isinstance(r, Mapping):
        return {k: to_rational(r.get(k, 0)) for k in PAIRS}
    r = list(r)
    if len(r) != 10:
        raise ValueError("need ten Plucker coordinates")
    return {k: to_rational(v) for k, v in zip(PAIRS, r)}


def _entry(r, i, j):
    if i == j:
        return Fraction(0)
    return r[(i, j)] if i < j else -r[(j, i)]


def pfaffian4_values(r) -> Tuple[Fraction, ...]:
    r = _vec10(r)
    out = []
    for i, j, k, l in PLUCKER_ORDER:
        out.append(_entry(r, i, j) * _entry(r, k, l) - _entry(r, i, k) * _entry(r, j, l)
                   + _entry(r, i, l) * _entry(r, j, k))
    return tuple(out)


class UndefinedMap(ValueError):
    pass


def mu_map(r) -> Tuple[Fraction, ...]:
    """[Pf2345, -Pf1345, Pf1245, -Pf1235, Pf1234]; undefined on G(2,5)."""
    p1234, p1235, p1245, p1345, p2345 = pfaffian4_values(r)
    z = (p2345, -p1345, p1245, -p1235, p1234)
    if not any(z):
        raise UndefinedMap("all Pfaffians vanish: the point lies on G(2,5)")
    return z


def wedge2(u: Sequence, v: Sequence) -> Dict[Tuple[int, int], Fraction]:
    """Coordinates r_ij = u_i v_j - u_j v_i of u ^ v."""
    u = [to_rational(a) for a in u]
    v = [to_rational(a) for a in v]
    if len(u) != 5 or len(v) != 5:
        raise ValueError("wedge2 expects two 5-vectors")
    return {(i, j): u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1] for i, j in PAIRS}


def wedge2_poly(u: Sequence[Poly], v: Sequence[Poly]) -> SkewPolyMatrix5:
    ring = u[0].ring
    return SkewPolyMatrix5({(i, j): u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1] for i, j in PAIRS}, ring)


def skew_rows(r) -> RatMatrix:
    r = _vec10(r)
    return RatMatrix([[_entry(r, i, j) for j in range(1, 6)] for i in range(1, 6)])


def is_decomposable(r) -> bool:
    vals = _vec10(r)
    return any(vals.values()) and not any(pfaffian4_values(vals))


def line_span(r) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """Two vectors spanning the line of a decomposable r (first independent row pair)."""
    if not is_decomposable(r):
        raise ValueError("r is not a nonzero decomposable 2-vector")
    rows = skew_rows(r).rows
    first = next(row for row in rows if any(row))
    for row in rows:
        if rat_rank([first, row]) == 2:
            return first, row
    raise ValueError("rank-2 skew matrix with proportional rows")  # unreachable


def quadric_value(Q: Poly, point: Sequence) -> Fraction:
    return Q.evaluate(point)


def _binary_form(Q: Poly, u, v):
    a = Q.evaluate(u)
    c = Q.evaluate(v)
    b = Q.evaluate([x + y for x, y in zip(u, v)]) - a - c
    return a, b, c


def line_quadric_profile(r, Q: Poly, hyperplane: Sequence | None = None) -> str:
    """Classify how the line of a decomposable 2-vector meets a quadric.

    ``Q`` is a quadratic form in five variables.  When ``hyperplane`` (the
    coefficients of a linear form) is given, the quadric is read as living
    in that hyperplane, which matters for cones such as p1*p2 + p3*p4.  A
    line not inside the hyperplane meets it in one point, giving
    ``one-point`` or ``disjoint``.  Otherwise the restriction a*s^2 + b*s*t
    + c*t^2 is classified as ``contained``, ``tangent`` or ``two-points``.
    """
    u, v = line_span(r)
    if hyperplane is not None:
        h = [to_rational(a) for a in hyperplane]
        hu = sum(a * b for a, b in zip(h, u))
        hv = sum(a * b for a, b in zip(h, v))
        if hu or hv:
            point = [hv * a - hu * b for a, b in zip(u, v)]
            return "one-point" if Q.evaluate(point) == 0 else "disjoint"
    a, b, c = _binary_form(Q, u, v)
    if a == b == c == 0:
        return "contained"
    if b * b - 4 * a * c == 0:
        return "tangent"
    return "two-points"
