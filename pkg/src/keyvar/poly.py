"""Exact sparse polynomials over the rationals in weighted polynomial rings.

A polynomial is a map from exponent tuples to nonzero ``Fraction``
coefficients.  Terms are kept in graded-lex order (weighted degree first,
then lexicographic in the ring's variable order) whenever they are listed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]

INHOMOGENEOUS = None
"""Marker returned by :func:`weighted_degree` for inhomogeneous input."""


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {value!r} to a rational")


# name registry shared by every ring built in this process
_REGISTRY: Dict[str, int] = {}


def register_names(names: Iterable[str]) -> None:
    for name in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ValueError(f"bad variable name {name!r}")
        _REGISTRY.setdefault(name, len(_REGISTRY))


def registered_names() -> Tuple[str, ...]:
    return tuple(sorted(_REGISTRY, key=_REGISTRY.__getitem__))


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class WeightedRing:
    """Polynomial ring over Q with positive integer weights on the variables."""

    names: Tuple[str, ...]
    weights: Tuple[int, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        if len(self.names) != len(self.weights):
            raise ValueError("one weight per variable")
        if any(int(w) != w or w <= 0 for w in self.weights):
            raise ValueError("weights must be positive integers")
        register_names(self.names)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index_map()[name]

    def _index_map(self) -> Dict[str, int]:
        return _index_map(self.names)

    def var(self, name: str) -> "Poly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self) -> Tuple["Poly", ...]:
        return tuple(self.var(n) for n in self.names)

    def vars(self, *names: str) -> Tuple["Poly", ...]:
        return tuple(self.var(n) for n in names)

    def const(self, c) -> "Poly":
        return Poly(self, {self.one_monomial(): to_rational(c)})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def monomial_weight(self, mono: Monomial, weights: Sequence[int] | None = None) -> int:
        w = self.weights if weights is None else weights
        return sum(a * b for a, b in zip(mono, w))

    def monomials_of_degree(self, d: int) -> Tuple[Monomial, ...]:
        """All monomials of weighted degree exactly ``d``, in canonical order."""
        return _monomials_of_degree(self.weights, d)

    def sort_key(self, mono: Monomial):
        return (-self.monomial_weight(mono), tuple(-a for a in mono))

    def __call__(self, text: str) -> "Poly":
        return Poly.parse(text, self)


@lru_cache(maxsize=None)
def _index_map(names: Tuple[str, ...]) -> Dict[str, int]:
    return {n: i for i, n in enumerate(names)}


@lru_cache(maxsize=None)
def _monomials_of_degree(weights: Tuple[int, ...], d: int) -> Tuple[Monomial, ...]:
    n = len(weights)
    out = []

    def rec(i, left, acc):
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        w = weights[i]
        for a in range(left // w, -1, -1):
            acc.append(a)
            rec(i + 1, left - a * w, acc)
            acc.pop()

    if d >= 0:
        rec(0, d, [])
    return tuple(out)


def _add_mono(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: WeightedRing, terms: Mapping[Monomial, object] | None = None):
        self.ring = ring
        clean = {}
        if terms:
            n = ring.nvars
            for mono, c in terms.items():
                c = to_rational(c)
                if c:
                    if len(mono) != n:
                        raise ValueError("monomial length does not match ring")
                    clean[tuple(mono)] = c
        self.terms: Dict[Monomial, Fraction] = clean
        self._hash = None

    # construction helpers ------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"{self.ring.names} vs {other.ring.names}")
            return other
        return self.ring.const(other)

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return _raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = to_rational(other)
            if not c:
                return self.ring.zero()
            return _raw(self.ring, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out: Dict[Monomial, Fraction] = {}
        get = out.get
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = get(m, 0) + ca * cb
        return _raw(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = to_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # comparison ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {self.ring.one_monomial()}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(self.ring.one_monomial(), Fraction(0))

    # inspection ----------------------------------------------------------
    def sorted_terms(self) -> Iterator[Tuple[Monomial, Fraction]]:
        for m in sorted(self.terms, key=self.ring.sort_key):
            yield m, self.terms[m]

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def coeff_of(self, var_name: str, power: int = 1) -> "Poly":
        """Coefficient of ``var^power`` viewing the polynomial in that variable."""
        i = self.ring.index(var_name)
        out = {}
        for m, c in self.terms.items():
            if m[i] == power:
                mm = list(m)
                mm[i] = 0
                out[tuple(mm)] = c
        return _raw(self.ring, out)

    def variables(self) -> Tuple[str, ...]:
        used = set()
        for m in self.terms:
            used.update(i for i, a in enumerate(m) if a)
        return tuple(self.ring.names[i] for i in sorted(used))

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree(self, weights: Sequence[int] | None = None):
        return weighted_degree(self, weights)

    def evaluate(self, point: Sequence) -> Fraction:
        return evaluate(self, point)

    def subs(self, assignment: Mapping[str, object]) -> "Poly":
        """Substitute some variables by polynomials or rationals, keep the rest."""
        images = []
        for name in self.ring.names:
            if name in assignment:
                v = assignment[name]
                images.append(v if isinstance(v, Poly) else self.ring.const(v))
            else:
                images.append(self.ring.var(name))
        target = images[0].ring if images else self.ring
        return substitute(self, PolyMap(self.ring, target, tuple(images)))

    def diff(self, var_name: str) -> "Poly":
        i = self.ring.index(var_name)
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return _raw(self.ring, out)

    def scale_to_primitive(self) -> Tuple[Fraction, "Poly"]:
        """Return ``(c, p)`` with self = c*p and p having coprime integer coefficients."""
        if not self.terms:
            return Fraction(1), self
        from math import gcd

        den = 1
        for c in self.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c * den))
        lead = next(iter(self.sorted_terms()))[1]
        if lead < 0:
            g = -g
        c = Fraction(g, den)
        return c, self / c

    # text ----------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        names = self.ring.names
        for m, c in self.sorted_terms():
            pieces = [str(c)]
            for name, a in zip(names, m):
                if a == 1:
                    pieces.append(name)
                elif a:
                    pieces.append(f"{name}^{a}")
            parts.append("*".join(pieces))
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"Poly({self.to_text()!r})"

    @staticmethod
    def parse(text: str, ring: WeightedRing) -> "Poly":
        """Inverse of :meth:`to_text`.

        Also accepts binary ``-``, missing spaces around ``+`` and a leading
        ``-`` on variables, so hand-written text like ``x1^2 - 2*x2`` parses.
        """
        text = text.strip()
        if text == "0":
            return ring.zero()
        text = re.sub(r"(?<=[\w)])\s*-\s*", "+-", text)
        out: Dict[Monomial, Fraction] = {}
        for chunk in text.split("+"):
            pieces = chunk.strip().split("*")
            coeff = Fraction(1)
            mono = [0] * ring.nvars
            for piece in pieces:
                piece = piece.strip()
                if re.fullmatch(r"-?\d+(/\d+)?", piece):
                    coeff *= Fraction(piece)
                    continue
                sign = 1
                if piece.startswith("-"):
                    sign, piece = -1, piece[1:]
                name, _, exp = piece.partition("^")
                mono[ring.index(name)] += int(exp) if exp else 1
                coeff *= sign
            m = tuple(mono)
            out[m] = out.get(m, 0) + coeff
        return Poly(ring, out)


def _raw(ring: WeightedRing, terms: Dict[Monomial, Fraction]) -> Poly:
    p = Poly.__new__(Poly)
    p.ring = ring
    p.terms = terms
    p._hash = None
    return p


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    if not isinstance(p, Poly) or not isinstance(q, Poly):
        raise TypeError("poly_arith expects two Polys")
    if p.ring != q.ring:
        raise RingMismatch("operands live in different rings")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def weighted_degree(p: Poly, weights: Sequence[int] | None = None):
    """Common weighted degree of all terms, or ``INHOMOGENEOUS``.

    The zero polynomial has no degree and is reported as inhomogeneous.
    """
    degs = {p.ring.monomial_weight(m, weights) for m in p.terms}
    if len(degs) != 1:
        return INHOMOGENEOUS
    return degs.pop()


def multidegree(p: Poly, gradings: Sequence[Sequence[int]]):
    """Tuple of degrees for several weight rows, or ``INHOMOGENEOUS``."""
    out = []
    for row in gradings:
        d = weighted_degree(p, row)
        if d is INHOMOGENEOUS:
            return INHOMOGENEOUS
        out.append(d)
    return tuple(out)


def evaluate(p: Poly, point: Sequence) -> Fraction:
    if len(point) != p.ring.nvars:
        raise ValueError(f"point has {len(point)} entries, ring has {p.ring.nvars} variables")
    pt = [to_rational(v) for v in point]
    total = Fraction(0)
    for m, c in p.terms.items():
        v = c
        for x, a in zip(pt, m):
            if a:
                v *= x**a
                if not v:
                    break
        total += v
    return total


@dataclass(frozen=True)
class PolyMap:
    """Ring map given by one target polynomial per source variable.

    ``substitute(p, m)`` replaces each source variable by its image.  When
    ``scale`` is set the map is graded: the image of a variable of weight w is
    homogeneous of degree ``scale * w`` in the target ring (or zero).
    """

    source: WeightedRing
    target: WeightedRing
    images: Tuple[Poly, ...]
    scale: int | None = None

    def __post_init__(self):
        if len(self.images) != self.source.nvars:
            raise ValueError("need one image per source variable")
        for img in self.images:
            if img.ring != self.target:
                raise RingMismatch("image outside the target ring")
        if self.scale is not None:
            for w, img in zip(self.source.weights, self.images):
                if img and weighted_degree(img) != self.scale * w:
                    raise ValueError("graded map has an image of the wrong degree")

    @staticmethod
    def from_dict(source: WeightedRing, target: WeightedRing, assignment: Mapping[str, object],
                  scale: int | None = None, keep: bool = True) -> "PolyMap":
        """Build a map from a partial assignment; unassigned variables map to the
        same-named target variable when ``keep`` is set."""
        images = []
        for name in source.names:
            if name in assignment:
                v = assignment[name]
                images.append(v if isinstance(v, Poly) else target.const(v))
            elif keep:
                images.append(target.var(name))
            else:
                raise ValueError(f"no image for {name}")
        return PolyMap(source, target, tuple(images), scale)

    @staticmethod
    def identity(ring: WeightedRing) -> "PolyMap":
        return PolyMap(ring, ring, ring.gens(), 1)

    def __call__(self, p: Poly) -> Poly:
        return substitute(p, self)

    def then(self, other: "PolyMap") -> "PolyMap":
        """The map ``p -> other(self(p))``."""
        if other.source != self.target:
            raise RingMismatch("maps do not compose")
        scale = None
        if self.scale is not None and other.scale is not None:
            scale = self.scale * other.scale
        return PolyMap(self.source, other.target, tuple(other(img) for img in self.images), scale)

    def image(self, name: str) -> Poly:
        return self.images[self.source.index(name)]

    def apply_to_point(self, point: Sequence) -> Tuple[Fraction, ...]:
        """Evaluate the images at a point of the target ring."""
        return tuple(evaluate(img, point) for img in self.images)

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))


def substitute(p: Poly, m: PolyMap) -> Poly:
    if p.ring != m.source:
        raise RingMismatch("polynomial is not in the map's source ring")
    target = m.target
    result: Dict[Monomial, Fraction] = {}
    powers: Dict[Tuple[int, int], Poly] = {}

    def power(i, a):
        key = (i, a)
        if key not in powers:
            if a == 1:
                powers[key] = m.images[i]
            else:
                powers[key] = power(i, a // 2) * power(i, a - a // 2)
        return powers[key]

    for mono, c in p.terms.items():
        term = None
        for i, a in enumerate(mono):
            if a:
                f = power(i, a)
                term = f if term is None else term * f
                if not term.terms:
                    break
        if term is None:
            key = target.one_monomial()
            result[key] = result.get(key, 0) + c
            continue
        for tm, tc in term.terms.items():
            result[tm] = result.get(tm, 0) + c * tc
    return _raw(target, {k: v for k, v in result.items() if v})


def jacobian(polys: Sequence[Poly], ring: WeightedRing | None = None):
    """Matrix of formal partial derivatives, one row per polynomial."""
    from .linalg import PolyMatrix

    if ring is None:
        if not polys:
            raise ValueError("empty list needs an explicit ring")
        ring = polys[0].ring
    rows = [[p.diff(name) for name in ring.names] for p in polys]
    return PolyMatrix(ring, rows)


def monomials_up_to(ring: WeightedRing, d: int) -> Tuple[Monomial, ...]:
    out = []
    for k in range(d + 1):
        out.extend(ring.monomials_of_degree(k))
    return tuple(out)


def monomials_total_degree(nvars: int, d: int) -> Iterator[Monomial]:
    """Monomials of ordinary total degree ``d`` in ``nvars`` variables."""
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


def ring(spec: str | Sequence[Tuple[str, int]]) -> WeightedRing:
    """Convenience constructor: ``ring("x1 x2:1 r:2")`` or a list of pairs.

    In the string form every name takes the weight written after the next
    colon, e.g. ``"x1 x2:1 r15:2"`` gives x1, x2 weight 1 and r15 weight 2.
    """
    if isinstance(spec, str):
        names, weights, pending = [], [], []
        for tok in spec.split():
            if ":" in tok:
                name, w = tok.split(":")
                pending.append(name)
                names.extend(pending)
                weights.extend([int(w)] * len(pending))
                pending = []
            else:
                pending.append(tok)
        names.extend(pending)
        weights.extend([1] * len(pending))
        return WeightedRing(tuple(names), tuple(weights))
    return WeightedRing(tuple(n for n, _ in spec), tuple(w for _, w in spec))
