"""Explicit equations, matrices and group data of the Type R key variety.

The ambient cone has coordinates x1..x5, y1..y5 of weight 1 and r0, r15,
r24, r34, r35 of weight 2.  Every family is built from small formula
helpers that take the variables as arguments, so the same formulas also
produce the scroll versions (tilde and hat coordinates).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from ..linalg import PolyMatrix, RatMatrix
from ..pfaffian import PAIRS, SkewPolyMatrix5, plucker
from ..poly import INHOMOGENEOUS, Poly, PolyMap, WeightedRing, weighted_degree

R_KEYS = ("15", "24", "34", "35")

X_NAMES = tuple(f"x{i}" for i in range(1, 6))
Y_NAMES = tuple(f"y{i}" for i in range(1, 6))
R_NAMES = tuple(f"r{k}" for k in R_KEYS)


# formula helpers -----------------------------------------------------------

def q_family(x: Sequence[Poly], y: Sequence[Poly]) -> Dict[Tuple[int, int], Poly]:
    """q_ij = x_i y_j - x_j y_i for 1 <= i < j <= 5."""
    return {(i, j): x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1] for i, j in PAIRS}


def f_family(r: Dict[str, Poly]) -> Tuple[Poly, ...]:
    r15, r24, r34, r35 = (r[k] for k in R_KEYS)
    return (
        -r24 * (r34 + r35),
        -(r15 - r35) * (r34 + r35),
        r15 * r24,
        r15 * r34,
        -(r24 + r34) * r35,
    )


def rf_linear_part(q, r: Dict[str, Poly]) -> Tuple[Poly, ...]:
    """The parts of RF1..RF5 that are bilinear in q and r."""
    r15, r24, r34, r35 = (r[k] for k in R_KEYS)
    return (
        -q[1, 3] * r24 + (q[1, 2] - q[1, 4] - q[2, 4]) * r34 - (q[1, 4] + q[2, 4]) * r35,
        q[2, 3] * r15 - (q[1, 5] + q[2, 5]) * r34 + (q[1, 2] + q[1, 3] - q[1, 5] - q[2, 5]) * r35,
        q[2, 4] * r15 + q[1, 5] * r24 + q[1, 4] * r35,
        q[3, 4] * r15 + (q[1, 5] + q[4, 5]) * r34 - (q[1, 4] - q[4, 5]) * r35,
        -q[3, 5] * r24 + (q[2, 5] - q[4, 5]) * r34 - (q[2, 4] + q[3, 4] + q[4, 5]) * r35,
    )


def s_family(q) -> Tuple[Poly, ...]:
    return (
        -q[1, 5] * q[2, 4] + q[4, 5] * q[1, 3] - q[1, 5] * q[1, 4] - q[1, 5] * q[2, 5]
        + q[1, 2] * q[1, 5] + q[1, 3] * q[1, 5] - q[1, 5] ** 2,
        q[2, 4] * q[3, 4] + q[2, 4] ** 2 - q[1, 2] * q[2, 4] + q[1, 4] * q[3, 4]
        + q[1, 4] * q[2, 4] + q[2, 4] * q[2, 5] - q[1, 2] * q[3, 4] + q[1, 5] * q[2, 4],
        q[1, 5] * q[3, 4] - q[1, 3] * q[3, 4] - q[1, 3] * q[2, 4] + q[2, 4] * q[3, 5],
        -q[1, 5] * q[3, 4] - q[1, 5] * q[2, 3] - q[2, 4] * q[3, 5],
    )


def k_family(q, r: Dict[str, Poly]) -> Tuple[Poly, ...]:
    r15, r24, r34, r35 = (r[k] for k in R_KEYS)
    return (
        (3 * q[1, 2] + 3 * q[1, 3] - 3 * q[1, 4] - 6 * q[1, 5] - 2 * q[2, 4] - 3 * q[2, 5] - q[3, 4]) * r15
        - 2 * q[1, 5] * r24 + 2 * (q[1, 5] + q[4, 5]) * r34
        + 2 * (q[1, 4] + 3 * q[1, 5] + q[4, 5]) * r35,
        2 * q[2, 4] * r15
        + (-3 * q[1, 2] - q[1, 3] + 3 * q[1, 4] + 2 * q[1, 5] + 6 * q[2, 4] + 3 * q[2, 5] + 3 * q[3, 4]) * r24
        + 2 * (-q[1, 2] + q[1, 4] + q[2, 4]) * r34 + 2 * (-q[1, 4] - 2 * q[2, 4]) * r35,
        2 * q[3, 4] * r15 + (-2 * q[1, 3] + 2 * q[3, 5]) * r24
        + (-q[1, 2] - 3 * q[1, 3] + q[1, 4] + 2 * q[1, 5] - 2 * q[2, 4] + q[2, 5] - 3 * q[3, 4]
           - 2 * q[4, 5]) * r34
        + 2 * (q[1, 4] - 2 * q[3, 4] - q[4, 5]) * r35,
        2 * (-q[2, 3] - q[3, 4]) * r15 - 2 * q[3, 5] * r24 + 2 * (-q[2, 5] + q[4, 5]) * r34
        + (q[1, 2] + q[1, 3] - q[1, 4] + 2 * q[1, 5] - 2 * q[2, 4] - q[2, 5] + q[3, 4]
           + 2 * q[4, 5]) * r35,
    )


def l_family(r: Dict[str, Poly]) -> Tuple[Poly, ...]:
    r15, r24, r34, r35 = (r[k] for k in R_KEYS)
    return (
        -r15 * (3 * r15 + 2 * r24 - 2 * r34 - 6 * r35),
        r24 * (2 * r15 + 3 * r24 + 2 * r34 - 4 * r35),
        -r34 * (-2 * r15 + 2 * r24 + 3 * r34 + 4 * r35),
        r35 * (2 * r15 - 2 * r24 + 2 * r34 + r35),
    )


def s5r_upper(r: Dict[str, Poly]) -> Dict[Tuple[int, int], Poly]:
    """Upper entries of the skew matrix cut by the linear conditions on r."""
    r15, r24, r34, r35 = (r[k] for k in R_KEYS)
    zero = r15.ring.zero()
    return {
        (1, 2): zero, (1, 3): r34 + r35, (1, 4): zero, (1, 5): r15,
        (2, 3): -r34 - r35, (2, 4): r24, (2, 5): -r35,
        (3, 4): r34, (3, 5): r35, (4, 5): zero,
    }


def d_r(x: Sequence[Poly]) -> Poly:
    """The quartic D_R(x)."""
    x1, x2, x3, x4, x5 = x
    return (x1**2 * x2**2 + 2 * x1**2 * x2 * x3 + x1**2 * x3**2 - 2 * x1**2 * x2 * x4
            - 2 * x1**2 * x3 * x4 + 2 * x1 * x2 * x3 * x4 + 2 * x1 * x3**2 * x4 + x1**2 * x4**2
            - 2 * x1 * x3 * x4**2 + x3**2 * x4**2 + 2 * x1 * x2**2 * x5 + 2 * x1 * x2 * x3 * x5
            - 2 * x1 * x2 * x4 * x5 - 4 * x1 * x3 * x4 * x5 - 2 * x2 * x3 * x4 * x5 + x2**2 * x5**2)


def segre_cubic(z: Sequence[Poly]) -> Poly:
    z1, z2, z3, z4, z5 = z
    return -z1 * (z3 * z4 - z2 * z5) - (z2 - z3) * (z2 + z4) * z5


def mq_rows(q) -> List[List[Poly]]:
    zero = q[1, 2].ring.zero()
    return [
        [zero, -q[1, 3], q[1, 2] - q[1, 4] - q[2, 4], -q[1, 4] - q[2, 4]],
        [q[2, 3], zero, -q[1, 5] - q[2, 5], q[1, 2] + q[1, 3] - q[1, 5] - q[2, 5]],
        [q[2, 4], q[1, 5], zero, q[1, 4]],
        [q[3, 4], zero, q[1, 5] + q[4, 5], -q[1, 4] + q[4, 5]],
        [zero, -q[3, 5], q[2, 5] - q[4, 5], -q[2, 4] - q[3, 4] - q[4, 5]],
    ]


# group data ----------------------------------------------------------------

SIGMA_4DIM = {
    1: ((-1, 0, 0, 0), (0, 1, 0, 0), (0, -1, -1, 0), (0, 1, 0, -1)),
    2: ((0, 0, 0, -1), (-1, -1, 0, 1), (1, 0, -1, -1), (-1, 0, 0, 0)),
    3: ((0, 0, -1, -1), (0, -1, 0, 0), (-1, 0, 0, 1), (0, 0, 0, -1)),
    4: ((-1, 0, 1, 1), (0, -1, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)),
}

SIGMA_5DIM = {
    1: ((1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, -1, -1, 0, 0), (0, 0, 0, 1, 0), (-1, 0, 0, -1, -1)),
    2: ((0, 0, -1, 0, 0), (1, 1, 1, 0, 0), (-1, 0, 0, 0, 0), (0, 1, 1, -1, -1), (0, 0, 0, 0, 1)),
    3: ((1, 0, 0, 0, 0), (-1, 0, 0, -1, 0), (0, 0, 0, 0, -1), (-1, -1, 0, 0, 0), (0, 0, -1, 0, 0)),
    4: ((1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 1, 0, -1, 0), (-1, 0, 1, 0, -1)),
    5: ((0, 1, 0, -1, 0), (1, 0, 0, 1, 0), (-1, 0, 0, -1, -1), (0, 0, 0, 1, 0), (0, -1, -1, 0, 0)),
}

# linear part of the sigma_5 transformation on (r15, r24, r34, r35, r0)
SIGMA5_R_MATRIX = (
    (F(-4, 5), F(-1, 5), F(1, 5), F(3, 5), F(1, 30)),
    (0, -1, 0, 0, 0),
    (0, 0, -1, 0, 0),
    (F(1, 5), F(-1, 5), F(1, 5), F(-2, 5), F(1, 30)),
    (F(36, 5), F(-36, 5), F(36, 5), F(108, 5), F(1, 5)),
)


def sigma5_r_shift(q) -> Tuple[Poly, ...]:
    """Quadratic shift of the sigma_5 transformation, one entry per r15, r24, r34, r35, r0."""
    return (
        F(1, 2) * (q[1, 2] + q[1, 3] - q[1, 4] - 2 * q[1, 5] + 2 * q[2, 3] + q[3, 4] - q[2, 5]),
        -q[1, 4] - q[2, 4],
        q[1, 4] - q[3, 4] - q[4, 5],
        F(1, 2) * (-q[1, 2] - q[1, 3] - q[1, 4] + q[2, 5] + q[3, 4]),
        6 * (q[1, 2] + q[1, 3] + q[1, 5] - q[2, 3] - q[2, 4] - q[2, 5] - q[3, 4] + q[4, 5]),
    )


POINTS_Q = (
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (1, 0, 0, 1),
    (0, 1, -1, 1),
)


# the ten rank-1 loci: linear conditions on x (and identically on y) and the
# q_ij required to be nonzero
DELTA_LOCI = {
    1: (((1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0)), (4, 5)),
    2: (((1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 0, 1, 0)), (3, 5)),
    3: (((1, 0, 0, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1)), (2, 3)),
    4: (((0, 0, 1, 0, 0), (0, 0, 0, 0, 1), (0, 1, 0, -1, 0)), (1, 2)),
    5: (((1, 0, 0, 0, 0), (0, 1, 0, -1, 0), (0, 0, 1, 0, -1)), (2, 3)),
    6: (((0, 0, 1, 1, 0), (0, 1, 0, -1, 0), (1, 0, 0, 1, 1)), (1, 2)),
    7: (((0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (1, 0, 0, 0, 1)), (1, 2)),
    8: (((0, 0, 0, 1, 0), (0, 0, 0, 0, 1), (0, 1, 1, 0, 0)), (1, 2)),
    9: (((0, 0, 1, 0, 0), (1, 1, 0, 0, 0), (1, 0, 0, 1, 1)), (1, 2)),
    10: (((0, 0, 0, 0, 1), (0, 1, 1, 0, 0), (1, 0, -1, 0, 0)), (1, 2)),
}


@dataclass(frozen=True)
class GammaLocus:
    """Gamma_i: linear conditions on x (same on y) plus r as functions of q."""

    index: int
    x_conditions: Tuple[Tuple[int, ...], ...]
    # r = coeffs * q_pair for (r15, r24, r34, r35) and r0 = r0_coeff * q_pair
    pair: Tuple[int, int]
    r_coeffs: Tuple[int, int, int, int]
    r0_coeff: int


# r_k = -q_pair on its own coordinate, e.g. r15 = -q15 on Gamma_1, r0 = -6 r15 = 6 q15
GAMMA_LOCI = {
    1: GammaLocus(1, ((0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 1, 0)), (1, 5), (-1, 0, 0, 0), 6),
    2: GammaLocus(2, ((1, 0, 0, 0, 0), (0, 0, 1, 0, 0), (0, 0, 0, 0, 1)), (2, 4), (0, -1, 0, 0), -6),
    3: GammaLocus(3, ((1, 1, 0, 0, 0), (1, 0, 0, 1, 0), (0, 0, 0, 0, 1)), (3, 4), (0, 0, -1, 0), 6),
    4: GammaLocus(4, ((0, 0, 0, 1, 0), (1, 1, 0, 0, 0), (1, 0, -1, 0, 1)), (3, 5), (-1, 0, 0, -1), -6),
    5: GammaLocus(5, ((1, 0, 0, 0, 0), (0, 1, 1, 0, 0), (0, 0, 0, 1, 1)), (2, 4), (0, -1, 1, -1), 6),
}

# singular points with x = y = 0, as (r15, r24, r34, r35, r0)
SINGULAR_POINTS = {
    0: (0, 0, 0, 0, 1),
    1: (1, 0, 0, 0, -6),
    2: (0, 1, 0, 0, 6),
    3: (0, 0, 1, 0, -6),
    4: (1, 0, 0, 1, 6),
    5: (0, -1, 1, -1, 6),
}


# the data object -----------------------------------------------------------

@dataclass
class TypeRData:
    ring: WeightedRing
    x: Tuple[Poly, ...]
    y: Tuple[Poly, ...]
    r0: Poly
    r: Dict[str, Poly]
    q: Dict[Tuple[int, int], Poly]
    f: Tuple[Poly, ...]
    RF: Tuple[Poly, ...]
    S: Tuple[Poly, ...]
    K: Tuple[Poly, ...]
    L: Tuple[Poly, ...]
    U: Tuple[Poly, ...]
    A1: PolyMatrix
    A2: PolyMatrix
    A3: PolyMatrix
    B1: PolyMatrix
    B2: PolyMatrix
    B3: PolyMatrix
    C1: PolyMatrix
    C2: PolyMatrix
    C3: PolyMatrix
    C4: PolyMatrix
    skew: SkewPolyMatrix5
    Mq: PolyMatrix
    DR: Poly
    extras: Dict[str, object] = field(default_factory=dict)

    @property
    def RF15(self) -> Tuple[Poly, ...]:
        return self.RF[:5]

    def named_polys(self) -> Dict[str, Tuple[Poly, int]]:
        """Every named family member with its documented weighted degree."""
        out = {}
        for (i, j), v in self.q.items():
            out[f"q{i}{j}"] = (v, 2)
        for name, fam in (("f", self.f), ("RF", self.RF), ("S", self.S), ("K", self.K),
                          ("L", self.L), ("U", self.U)):
            for k, v in enumerate(fam, 1):
                out[f"{name}{k}"] = (v, 4)
        return out

    def point(self, x=None, y=None, r=(0, 0, 0, 0), r0=0) -> Tuple:
        """Coordinates in ring order from the x, y, (r15, r24, r34, r35), r0 blocks."""
        x = tuple(x) if x is not None else (0,) * 5
        y = tuple(y) if y is not None else (0,) * 5
        return x + y + (r0,) + tuple(r)


def type_r_ring() -> WeightedRing:
    names = X_NAMES + Y_NAMES + ("r0",) + R_NAMES
    return WeightedRing(names, (1,) * 10 + (2,) * 5)


def _matrix(ring, rows):
    return PolyMatrix(ring, rows)


def build_matrices(ring, q, r, RF, U):
    r15, r24, r34, r35 = (r[k] for k in R_KEYS)
    z = ring.zero()
    t = F(1, 3)
    tt = F(2, 3)
    A1 = _matrix(ring, [[RF[4], -RF[3], RF[2], -RF[1], RF[0]]])
    up = s5r_upper(r)
    skew = SkewPolyMatrix5({k: q[k] + up[k] for k in PAIRS}, ring)
    A2 = skew.full()
    A3 = A1.T()
    B3 = _matrix(ring, [[U[0]], [-U[1]], [U[2]], [-U[3]]])
    B2 = _matrix(ring, [
        [t * q[1, 3], -tt * q[2, 3] + t * (r34 + r35), z, tt * q[3, 4] + t * r34, -t * q[3, 5]],
        [t * q[1, 3] + q[2, 4] - tt * q[1, 5] + t * (-2 * r15 + r24 + r34 + r35),
         -q[2, 4] + t * q[2, 3] - tt * q[2, 5] + t * (-2 * r24 - r34 + r35),
         -q[2, 3] - q[3, 4] - tt * q[3, 5],
         -q[2, 4] - t * q[3, 4] - tt * q[4, 5] - t * (2 * r24 + r34),
         -t * q[3, 5]],
        [q[2, 4] + tt * q[1, 4] + t * r24, -t * q[2, 4], -t * q[3, 4], z,
         -q[2, 4] - q[3, 4] - tt * q[4, 5] - t * (r24 + r34)],
        [t * q[1, 5], -q[1, 5] - tt * q[2, 5] - t * (r15 - r35), t * q[3, 5],
         -q[1, 5] - tt * q[4, 5] - t * r15, z],
        [q[1, 5] + tt * r15, q[1, 3] - q[1, 5] - t * (r15 - r34), -q[1, 3] + q[3, 5] - tt * r34, z,
         -q[1, 5] - tt * r15],
        [z, -q[1, 2] + q[1, 4] + q[2, 4] + tt * r24,
         q[1, 2] - q[1, 4] - q[1, 5] - q[2, 4] - q[2, 5] - t * (r15 + r24), z,
         -q[1, 5] - q[4, 5] - tt * r15],
    ])
    B1 = _matrix(ring, [
        [z, -q[3, 4], q[2, 4] + t * (r24 + r34), -q[2, 3] + tt * r35, -tt * r34],
        [-q[3, 5], z, q[1, 5] + tt * r15, z, -q[1, 3] - tt * r34],
        [q[2, 5] - q[4, 5], -q[1, 5] - q[4, 5] - r15, -t * r15, q[1, 5] + q[2, 5] + r15,
         q[1, 2] - q[1, 4] - q[2, 4] + t * (2 * r15 - r24)],
        [-q[2, 4] - q[3, 4] - q[4, 5] - r24 - r34, q[1, 4] - q[4, 5], q[1, 4],
         -q[1, 2] - q[1, 3] + q[1, 5] + q[2, 5] + t * (r15 - 3 * r34 - 3 * r35),
         -q[1, 4] - q[2, 4] - r24],
    ])
    C1 = _matrix(ring, [[r15, r24, r34, r35]])
    C2 = _matrix(ring, [
        [-r24, -r34, -r35, z, z, z],
        [r15, z, z, -r34, -r35, z],
        [z, r15, z, r24, z, -r35],
        [z, z, r15, z, r24, r34],
    ])
    C3 = _matrix(ring, [
        [z, z, r35, r34],
        [z, r35, z, -r24],
        [z, -r34, -r24, z],
        [r35, z, z, r15],
        [-r34, z, r15, z],
        [r24, r15, z, z],
    ])
    C4 = _matrix(ring, [[r15], [-r24], [r34], [-r35]])
    return dict(A1=A1, A2=A2, A3=A3, B1=B1, B2=B2, B3=B3, C1=C1, C2=C2, C3=C3, C4=C4, skew=skew)


class ConstructionError(RuntimeError):
    pass


@lru_cache(maxsize=None)
def build() -> TypeRData:
    R = type_r_ring()
    x = R.vars(*X_NAMES)
    y = R.vars(*Y_NAMES)
    r0 = R.var("r0")
    r = {k: R.var(f"r{k}") for k in R_KEYS}
    q = q_family(x, y)
    f = f_family(r)
    lin = rf_linear_part(q, r)
    RF15 = tuple(a + b for a, b in zip(lin, f))
    S = s_family(q)
    K = k_family(q, r)
    L = l_family(r)
    U = tuple((30 * s + 5 * k + 2 * l) / 30 for s, k, l in zip(S, K, L))
    RF69 = tuple(r0 * r[key] - 30 * u for key, u in zip(R_KEYS, U))
    RF = RF15 + RF69
    mats = build_matrices(R, q, r, RF, U)
    Mq = PolyMatrix(R, mq_rows(q))
    data = TypeRData(ring=R, x=x, y=y, r0=r0, r=r, q=q, f=f, RF=RF, S=S, K=K, L=L, U=U,
                     Mq=Mq, DR=d_r(x), **mats)
    for name, (p, deg) in data.named_polys().items():
        if weighted_degree(p) != deg:
            raise ConstructionError(f"{name} is not homogeneous of degree {deg}")
    return data


def linear_form(ring: WeightedRing, coeffs: Sequence, names: Sequence[str]) -> Poly:
    total = ring.zero()
    for c, n in zip(coeffs, names):
        if c:
            total = total + ring.var(n) * c
    return total
