"""Walk through the Type R equations: Pfaffians, the Segre cubic and M_q.

Run with ``python demos/pfaffians_and_segre.py``.
"""

from itertools import combinations

from keyvar.linalg import rat_rank
from keyvar.pfaffian import plucker
from keyvar.sampling import RationalSampler
from keyvar.type_r.data import POINTS_Q, build, segre_cubic


def main():
    d = build()
    print("Ring:", d.ring)
    print("\nThe five Pfaffians of the 5x5 skew matrix:")
    for i, p in enumerate(plucker(d.skew), 1):
        print(f"  Pf{i} has {len(p.terms)} terms, degree {p.degree()}")

    print("\nThe nine equations RF1..RF9:")
    for i, p in enumerate(d.RF, 1):
        print(f"  RF{i}: {len(p.terms)} terms")

    print("\nSegre cubic through the mu-coordinates built from f1..f5:")
    f = d.f
    z = (f[4], -f[3], f[2], -f[1], f[0])
    print("  S3(mu) =", segre_cubic(z))

    print("\nThe five points: ranks of every triple and quadruple")
    triples = {rat_rank(list(t)) for t in combinations(POINTS_Q, 3)}
    quads = {rat_rank(list(t)) for t in combinations(POINTS_Q, 4)}
    print(f"  triples {triples}, quadruples {quads}")

    print("\nRank of M_q at a few random points (expected 3):")
    s = RationalSampler(0, "demo")
    for _ in range(3):
        x, y = s.vector(5), s.vector(5)
        pt = d.point(x=x, y=y)
        print("  rank", rat_rank(d.Mq.evaluate(pt)))


if __name__ == "__main__":
    main()
