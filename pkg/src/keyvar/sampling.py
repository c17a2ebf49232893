"""Seeded sampling of small rational points."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

NUM_RANGE = 20
DEN_RANGE = 5
DEFAULT_TRIALS = 25


class RationalSampler:
    """Deterministic stream of rationals n/d with |n| <= 20 and 1 <= d <= 5.

    Each check derives its own stream from the run seed and its name, so
    results do not depend on which other checks ran or in what order.
    """

    def __init__(self, seed: int, label: str = "", num_range: int = NUM_RANGE,
                 den_range: int = DEN_RANGE):
        self.rng = random.Random(f"{seed}:{label}")
        self.num_range = num_range
        self.den_range = den_range

    def rational(self) -> Fraction:
        n = self.rng.randint(-self.num_range, self.num_range)
        d = self.rng.randint(1, self.den_range)
        return Fraction(n, d)

    def nonzero(self) -> Fraction:
        while True:
            v = self.rational()
            if v:
                return v

    def vector(self, n: int) -> List[Fraction]:
        return [self.rational() for _ in range(n)]

    def small_int_vector(self, n: int, bound: int = 2) -> List[Fraction]:
        return [Fraction(self.rng.randint(-bound, bound)) for _ in range(n)]

    def until(self, make: Callable[[], object], accept: Callable[[object], bool],
              max_tries: int = 10000):
        """Rejection sampling: call ``make`` until ``accept`` holds."""
        for _ in range(max_tries):
            v = make()
            if accept(v):
                return v
        raise RuntimeError("rejection sampling exhausted its attempts")

    def combination(self, basis: Sequence[Sequence[Fraction]]) -> List[Fraction]:
        """Random rational combination of basis vectors."""
        if not basis:
            raise ValueError("empty basis")
        coeffs = self.vector(len(basis))
        return [sum((c * b[i] for c, b in zip(coeffs, basis)), Fraction(0))
                for i in range(len(basis[0]))]
