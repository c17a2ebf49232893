"""Bounded-degree ideal membership certificates by exact linear algebra.

A certificate writes ``target = sum c_i * g_i`` with explicit polynomial
coefficients ``c_i``.  The search fixes an ansatz of coefficient monomials
(graded by weight when the inputs are homogeneous) and solves the
resulting sparse linear system exactly.  A failed search is not a proof of
non-membership; it only says no certificate exists inside that ansatz.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .linalg import RatMatrix, rat_rank
from .poly import (INHOMOGENEOUS, Monomial, Poly, PolyMap, RingMismatch, WeightedRing,
                   monomials_up_to, multidegree, substitute, weighted_degree)

DEFAULT_INHOMOGENEOUS_BOUND = 4


class SparseSpan:
    """Incrementally maintained echelon basis of sparse rational vectors.

    Every basis vector remembers which combination of the inserted columns
    produced it, so a vector found in the span can be written back in terms
    of the original columns.
    """

    def __init__(self):
        self.labels: List[Hashable] = []
        self._basis: List[Tuple[Hashable, Dict, Dict[int, Fraction]]] = []
        self._pivot_rows = set()

    def __len__(self):
        return len(self._basis)

    def _reduce(self, vec: Dict, combo: Dict[int, Fraction]):
        vec = dict(vec)
        for pivot, bvec, bcombo in self._basis:
            a = vec.get(pivot)
            if not a:
                continue
            f = a / bvec[pivot]
            for k, v in bvec.items():
                nv = vec.get(k, 0) - f * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
            for k, v in bcombo.items():
                nv = combo.get(k, 0) - f * v
                if nv:
                    combo[k] = nv
                else:
                    combo.pop(k, None)
        return vec, combo

    def add(self, label: Hashable, vec: Dict) -> bool:
        """Insert a column; return True when it enlarged the span."""
        idx = len(self.labels)
        self.labels.append(label)
        red, combo = self._reduce(vec, {idx: Fraction(1)})
        if not red:
            return False
        pivot = min(red)
        self._basis.append((pivot, red, combo))
        return True

    def express(self, vec: Dict) -> Optional[Dict[Hashable, Fraction]]:
        """Coefficients (by label) writing ``vec`` in the span, or None."""
        red, combo = self._reduce(vec, {})
        if red:
            return None
        out: Dict[Hashable, Fraction] = {}
        for k, v in combo.items():
            # combo tracks vec - sum(...) so the representation is its negative
            out[self.labels[k]] = out.get(self.labels[k], 0) - v
        return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class GeneratorSet:
    ring: WeightedRing
    generators: Tuple[Poly, ...]

    def __init__(self, generators: Sequence[Poly], ring: WeightedRing | None = None):
        gens = tuple(generators)
        if not gens:
            raise ValueError("generator set must be nonempty")
        ring = ring or gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise RingMismatch("generators live in different rings")
            if not g:
                raise ValueError("zero generator")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", gens)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i):
        return self.generators[i]


@dataclass(frozen=True)
class MembershipCertificate:
    target: Poly
    generators: Tuple[Poly, ...]
    coefficients: Tuple[Poly, ...]
    bound: Optional[int] = None

    def __post_init__(self):
        if len(self.coefficients) != len(self.generators):
            raise ValueError("one coefficient per generator")
        if self.expand() != self.target:
            raise ValueError("certificate does not re-expand to its target")

    def expand(self) -> Poly:
        total = self.target.ring.zero()
        for c, g in zip(self.coefficients, self.generators):
            if c:
                total = total + c * g
        return total

    def to_dict(self) -> Dict[str, str]:
        return {str(i): c.to_text() for i, c in enumerate(self.coefficients) if c}

    def digest(self) -> str:
        text = self.target.to_text() + "|" + ";".join(f"{k}:{v}" for k, v in self.to_dict().items())
        return hashlib.sha256(text.encode()).hexdigest()[:16]


class CertificateSolver:
    """Membership search against a fixed generator set.

    Ansatz columns ``monomial * generator`` are inserted lazily per target
    degree, so many targets of the same degree share one elimination.
    """

    def __init__(self, gens, gradings: Sequence[Sequence[int]] | None = None):
        self.gens = gens if isinstance(gens, GeneratorSet) else GeneratorSet(gens)
        self.ring = self.gens.ring
        self.gradings = [tuple(g) for g in (gradings or [])]
        self._gen_deg = [weighted_degree(g) for g in self.gens]
        self._gen_md = [multidegree(g, self.gradings) if self.gradings else () for g in self.gens]
        self._spans: Dict[Hashable, SparseSpan] = {}

    def _ansatz(self, target: Poly, bound: Optional[int], graded: bool):
        """List of (generator index, coefficient monomial) and a cache key."""
        tdeg = weighted_degree(target)
        homogeneous = graded and tdeg is not INHOMOGENEOUS and all(
            d is not INHOMOGENEOUS for d in self._gen_deg)
        cols = []
        if homogeneous:
            tmd = multidegree(target, self.gradings) if self.gradings else ()
            if tmd is INHOMOGENEOUS:
                tmd = None
            for i, d in enumerate(self._gen_deg):
                k = tdeg - d
                if k < 0 or (bound is not None and k > bound):
                    continue
                want = None
                if self.gradings and tmd is not None and self._gen_md[i] is not INHOMOGENEOUS:
                    want = tuple(a - b for a, b in zip(tmd, self._gen_md[i]))
                for m in self.ring.monomials_of_degree(k):
                    if want is not None and tuple(
                            self.ring.monomial_weight(m, row) for row in self.gradings) != want:
                        continue
                    cols.append((i, m))
            key = ("graded", tdeg, tmd, bound)
        else:
            cap = DEFAULT_INHOMOGENEOUS_BOUND if bound is None else bound
            monos = monomials_up_to(self.ring, cap)
            for i in range(len(self.gens)):
                for m in monos:
                    cols.append((i, m))
            key = ("full", cap)
        return cols, key

    def _span_for(self, cols, key) -> SparseSpan:
        span = self._spans.get(key)
        if span is None:
            span = SparseSpan()
            for i, m in cols:
                g = self.gens[i]
                vec = {}
                for gm, c in g.terms.items():
                    vec[tuple(a + b for a, b in zip(gm, m))] = c
                span.add((i, m), vec)
            self._spans[key] = span
        return span

    def find(self, target: Poly, bound: Optional[int] = None, graded: bool = True
             ) -> Optional[MembershipCertificate]:
        if target.ring != self.ring:
            raise RingMismatch("target and generators live in different rings")
        if not target:
            zeros = tuple(self.ring.zero() for _ in self.gens)
            return MembershipCertificate(target, self.gens.generators, zeros, bound)
        cols, key = self._ansatz(target, bound, graded)
        if not cols:
            return None
        span = self._span_for(cols, key)
        rep = span.express(target.terms)
        if rep is None:
            return None
        coeffs: List[Dict[Monomial, Fraction]] = [dict() for _ in self.gens]
        for (i, m), c in rep.items():
            coeffs[i][m] = c
        polys = tuple(Poly(self.ring, d) for d in coeffs)
        return MembershipCertificate(target, self.gens.generators, polys, bound)


def find_certificate(target: Poly, gens, coeff_degree_bound: Optional[int] = None,
                     gradings: Sequence[Sequence[int]] | None = None,
                     graded: bool = True) -> Optional[MembershipCertificate]:
    """Certificate for ``target`` in the ideal of ``gens`` or None.

    For homogeneous inputs the coefficient of g_i ranges over monomials of
    degree deg(target) - deg(g_i), skipped when that exceeds the bound.
    Extra ``gradings`` (weight rows) further restrict the ansatz.  With
    ``graded=False`` every monomial up to the bound is allowed.
    """
    return CertificateSolver(gens, gradings).find(target, coeff_degree_bound, graded)


def map_preserves(m: PolyMap, source_gens, image_gens, bound: Optional[int] = None,
                  gradings: Sequence[Sequence[int]] | None = None
                  ) -> Optional[List[MembershipCertificate]]:
    """Certificates showing every pulled-back source generator lies in ⟨image_gens⟩."""
    source = source_gens if isinstance(source_gens, GeneratorSet) else GeneratorSet(source_gens)
    if source.ring != m.source:
        raise RingMismatch("map source ring differs from the generator ring")
    solver = CertificateSolver(image_gens, gradings)
    if solver.ring != m.target:
        raise RingMismatch("image generators must live in the map's target ring")
    out = []
    for g in source:
        cert = solver.find(substitute(g, m), bound)
        if cert is None:
            return None
        out.append(cert)
    return out


@dataclass(frozen=True)
class SpanMatrix:
    polys: Tuple[Poly, ...]
    images: Tuple[Poly, ...]
    matrix: RatMatrix

    def __post_init__(self):
        for k, img in enumerate(self.images):
            rhs = self.polys[0].ring.zero()
            for c, p in zip(self.matrix.rows[k], self.polys):
                if c:
                    rhs = rhs + p * c
            if rhs != img:
                raise ValueError(f"span matrix row {k} does not reproduce the image")

    def trace(self) -> Fraction:
        return self.matrix.trace()


def coefficient_matrix(polys: Sequence[Poly]) -> Tuple[RatMatrix, List[Monomial]]:
    monos = sorted({m for p in polys for m in p.terms}, key=polys[0].ring.sort_key)
    return RatMatrix([[p.coefficient(m) for m in monos] for p in polys]), monos


def linear_span_matrix(polys: Sequence[Poly], m: PolyMap) -> Optional[SpanMatrix]:
    """Constant matrix M with p_k(m) = sum_l M[k][l] p_l, or None."""
    polys = tuple(polys)
    if m.source != m.target:
        raise RingMismatch("span matrices need an endomorphism")
    mat, _ = coefficient_matrix(polys)
    if rat_rank(mat) != len(polys):
        raise ValueError("polynomials are linearly dependent")
    span = SparseSpan()
    for l, p in enumerate(polys):
        span.add(l, p.terms)
    images = tuple(substitute(p, m) for p in polys)
    rows = []
    for img in images:
        rep = span.express(img.terms)
        if rep is None:
            return None
        rows.append([rep.get(l, Fraction(0)) for l in range(len(polys))])
    return SpanMatrix(polys, images, RatMatrix(rows))


def equal_mod_ideal(p: Poly, q: Poly, gens, bound: Optional[int] = None,
                    gradings: Sequence[Sequence[int]] | None = None
                    ) -> Optional[MembershipCertificate]:
    return find_certificate(p - q, gens, bound, gradings)


def _rank_mod(vectors: List[Dict], modulus: int) -> int:
    """Rank over GF(modulus) of sparse rational vectors (denominators must be units)."""
    basis: Dict[Hashable, Dict] = {}
    for vec in vectors:
        v = {}
        for k, c in vec.items():
            c = Fraction(c)
            r = c.numerator * pow(c.denominator, -1, modulus) % modulus
            if r:
                v[k] = r
        while v:
            pivot = min(v)
            row = basis.get(pivot)
            if row is None:
                inv = pow(v[pivot], -1, modulus)
                basis[pivot] = {k: c * inv % modulus for k, c in v.items()}
                break
            f = v[pivot]
            for k, c in row.items():
                nv = (v.get(k, 0) - f * c) % modulus
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
    return len(basis)


def _degree_columns(gens: Sequence[Poly], degree: int) -> List[Dict]:
    ring = gens[0].ring
    cols = []
    for g in gens:
        d = weighted_degree(g)
        if d is INHOMOGENEOUS:
            raise ValueError("graded pieces need homogeneous generators")
        if d > degree:
            continue
        for m in ring.monomials_of_degree(degree - d):
            cols.append({tuple(a + b for a, b in zip(gm, m)): c for gm, c in g.terms.items()})
    return cols


def graded_piece_dimension(gens: Sequence[Poly], degree: int, modulus: Optional[int] = None) -> int:
    """Dimension of the degree-``degree`` part of the ideal of homogeneous ``gens``.

    With ``modulus`` the rank is taken over that prime field, which can only
    be smaller than the rank over the rationals.
    """
    cols = _degree_columns(gens, degree)
    if modulus is not None:
        return _rank_mod(cols, modulus)
    span = SparseSpan()
    for vec in cols:
        span.add(None, vec)
    return len(span)


def hilbert_function(gens: Sequence[Poly], degree: int, modulus: Optional[int] = None) -> int:
    """dim (R/I)_degree for homogeneous generators.

    A modular value is an upper bound for the rational one.
    """
    ring = gens[0].ring
    return len(ring.monomials_of_degree(degree)) - graded_piece_dimension(gens, degree, modulus)
