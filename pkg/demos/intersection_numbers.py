"""Intersection numbers on the two blow-ups and the resulting contradictions.

Run with ``python demos/intersection_numbers.py``.
"""

from keyvar import intersection as I


def main():
    for report in (I.typeR_numerics(), I.typeIR_numerics()):
        print(f"== {report.label} ==")
        for row in report.rows:
            print("  " + str(row))
        print()

    print("Diophantine equations a*m*k = b with no positive solutions:")
    for a, b in ((5, 54), (5, 4), (5, 22)):
        print(f"  {a}*m*k = {b}: no solution = {I.diophantine_no_solution(a, b)}")

    cmp = I.typeIR_k2l_comparison()
    print(f"\nType IR (-K)^2 L: derived {cmp['derived_k2l']}, reference {cmp['reference_k2l']}")
    for key in ("derived", "reference"):
        c = cmp[key]
        print(f"  {key}: {c.equation()} (no solution: {c.no_solution})")


if __name__ == "__main__":
    main()
