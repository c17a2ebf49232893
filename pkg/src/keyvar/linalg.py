"""Exact dense linear algebra over Q and small polynomial matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .poly import Poly, RingMismatch, WeightedRing, evaluate, to_rational


@dataclass(frozen=True)
class RatMatrix:
    rows: Tuple[Tuple[Fraction, ...], ...]

    def __init__(self, rows: Sequence[Sequence]):
        data = tuple(tuple(to_rational(v) for v in row) for row in rows)
        if data and len({len(r) for r in data}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", data)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def T(self) -> "RatMatrix":
        return RatMatrix(list(zip(*self.rows))) if self.rows else RatMatrix([])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError("dimension mismatch")
        cols = other.T().rows
        return RatMatrix([[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
                          for row in self.rows])

    def apply(self, v: Sequence) -> Tuple[Fraction, ...]:
        v = [to_rational(a) for a in v]
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.rows)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def tolist(self) -> List[List[Fraction]]:
        return [list(r) for r in self.rows]

    def to_text(self) -> str:
        return "[" + "; ".join(", ".join(str(v) for v in r) for r in self.rows) + "]"


def _as_rows(M) -> List[List[Fraction]]:
    if isinstance(M, RatMatrix):
        return [list(r) for r in M.rows]
    return [[to_rational(v) for v in row] for row in M]


def _integer_rows(rows: List[List[Fraction]]) -> List[List[int]]:
    out = []
    for row in rows:
        den = 1
        for v in row:
            den = den * v.denominator // gcd(den, v.denominator)
        out.append([int(v * den) for v in row])
    return out


def bareiss_echelon(rows: List[List[int]]) -> Tuple[List[List[int]], List[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Returns the reduced rows and the pivot columns.  All intermediate values
    stay integral; each step divides exactly by the previous pivot.
    """
    A = [list(r) for r in rows]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    pivots: List[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        for i in range(r + 1, nrows):
            a = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c, ncols):
                row_i[j] = (piv * row_i[j] - a * row_r[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return A, pivots


def rat_rank(M) -> int:
    rows = _as_rows(M)
    if not rows or not rows[0]:
        return 0
    _, piv = bareiss_echelon(_integer_rows(rows))
    return len(piv)


def rat_det(M) -> Fraction:
    rows = _as_rows(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    for row in rows:
        den = 1
        for v in row:
            den = den * v.denominator // gcd(den, v.denominator)
        scale /= den
    A = _integer_rows(rows)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] * scale


def rref(M) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q (Gauss-Jordan) and pivot columns."""
    A = _as_rows(M)
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(nrows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rat_solve(A, b: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """A particular solution of A x = b, or None when inconsistent."""
    rows = _as_rows(A)
    b = [to_rational(v) for v in b]
    if len(rows) != len(b):
        raise ValueError("dimension mismatch between A and b")
    ncols = len(rows[0]) if rows else 0
    aug = [row + [bi] for row, bi in zip(rows, b)]
    R, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(R, piv):
        x[c] = row[-1]
    return tuple(x)


def rat_nullspace(A) -> List[Tuple[Fraction, ...]]:
    rows = _as_rows(A)
    if not rows:
        return []
    ncols = len(rows[0])
    R, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(R, piv):
            v[c] = -row[f]
        basis.append(tuple(v))
    return basis


class PolyMatrix:
    """Rectangular matrix of polynomials over one ring."""

    def __init__(self, ring: WeightedRing, rows: Sequence[Sequence]):
        self.ring = ring
        data = []
        for row in rows:
            out = []
            for v in row:
                if isinstance(v, Poly):
                    if v.ring != ring:
                        raise RingMismatch("matrix entry in a different ring")
                    out.append(v)
                else:
                    out.append(ring.const(v))
            data.append(tuple(out))
        if data and len({len(r) for r in data}) != 1:
            raise ValueError("ragged matrix")
        self.rows: Tuple[Tuple[Poly, ...], ...] = tuple(data)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def T(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, list(zip(*self.rows)))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.T().rows
        zero = self.ring.zero()
        out = []
        for row in self.rows:
            out.append([sum((a * b for a, b in zip(row, col)), zero) for col in cols])
        return PolyMatrix(self.ring, out)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def is_zero(self) -> bool:
        return all(not v for row in self.rows for v in row)

    def nonzero_entries(self):
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                if v:
                    yield (i, j), v

    def evaluate(self, point: Sequence) -> RatMatrix:
        return RatMatrix([[evaluate(v, point) for v in row] for row in self.rows])

    def map(self, f) -> "PolyMatrix":
        rows = [[f(v) for v in row] for row in self.rows]
        ring = rows[0][0].ring if rows and rows[0] else self.ring
        return PolyMatrix(ring, rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    def det(self) -> Poly:
        """Determinant by cofactor expansion (only used on small minors)."""
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        return _poly_det(self.rows, self.ring)


def _poly_det(rows, ring) -> Poly:
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ring.zero()
    for j, a in enumerate(rows[0]):
        if not a:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _poly_det(minor, ring)
        total = total - term if j % 2 else total + term
    return total
