"""Independent reference implementations used only by the tests."""

from fractions import Fraction
from itertools import combinations, permutations


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i, j in enumerate(perm):
            term *= rows[i][j]
            if not term:
                break
        total += term
    return total


def minor_rank(rows):
    """Largest k with a nonzero k x k minor."""
    if not rows:
        return 0
    m, n = len(rows), len(rows[0])
    for k in range(min(m, n), 0, -1):
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                if leibniz_det([[rows[i][j] for j in cs] for i in rs]):
                    return k
    return 0


def naive_mul(p_terms, q_terms):
    out = {}
    for m1, c1 in p_terms.items():
        for m2, c2 in q_terms.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def eval_terms(terms, point):
    total = Fraction(0)
    for m, c in terms.items():
        v = Fraction(c)
        for x, e in zip(point, m):
            v *= Fraction(x) ** e
        total += v
    return total
