"""Intersection numbers on a rank-2 divisor lattice spanned by A = -K and E.

A cubic intersection form is fixed by four rational numbers A^3, A^2 E,
A E^2, E^3.  Divisors are rational combinations a*A + e*E and triple
products are expanded trilinearly.  One product may be left unknown and
solved from a single linear constraint.

The module also derives the numerical data of the two 3-fold
constructions from that form and compares each derived value with a
reference value, producing report rows (claim, premises, derived,
reference, agree).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import rat_solve
from .poly import to_rational

# index k = number of E factors in A^(3-k) E^k
_PRODUCT_NAMES = ("A3", "A2E", "AE2", "E3")


class DegenerateConstraint(ValueError):
    """The constraint does not involve the unknown product."""


@dataclass(frozen=True)
class DivisorExpr:
    """The divisor a*A + e*E."""

    a: Fraction
    e: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", to_rational(self.a))
        object.__setattr__(self, "e", to_rational(self.e))

    def __add__(self, other: "DivisorExpr") -> "DivisorExpr":
        return DivisorExpr(self.a + other.a, self.e + other.e)

    def __sub__(self, other: "DivisorExpr") -> "DivisorExpr":
        return DivisorExpr(self.a - other.a, self.e - other.e)

    def __neg__(self) -> "DivisorExpr":
        return DivisorExpr(-self.a, -self.e)

    def __mul__(self, c) -> "DivisorExpr":
        c = to_rational(c)
        return DivisorExpr(self.a * c, self.e * c)

    __rmul__ = __mul__

    def __str__(self):
        return f"{self.a}*A + {self.e}*E"


A = DivisorExpr(1, 0)
E = DivisorExpr(0, 1)


@dataclass(frozen=True)
class CubicIntersectionForm:
    """Symmetric trilinear form on span(A, E); ``None`` marks an unknown product."""

    a3: Optional[Fraction]
    a2e: Optional[Fraction]
    ae2: Optional[Fraction]
    e3: Optional[Fraction]

    def __post_init__(self):
        for name in ("a3", "a2e", "ae2", "e3"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, to_rational(v))

    @property
    def products(self) -> Tuple[Optional[Fraction], ...]:
        return (self.a3, self.a2e, self.ae2, self.e3)

    def unknown_index(self) -> Optional[int]:
        missing = [k for k, v in enumerate(self.products) if v is None]
        if len(missing) > 1:
            raise ValueError("at most one product may be unknown")
        return missing[0] if missing else None

    def with_product(self, k: int, value) -> "CubicIntersectionForm":
        vals = list(self.products)
        vals[k] = to_rational(value)
        return CubicIntersectionForm(*vals)


def _expansion(d1: DivisorExpr, d2: DivisorExpr, d3: DivisorExpr) -> List[Fraction]:
    """Coefficients c_k with d1 d2 d3 = sum c_k * A^(3-k) E^k."""
    coeffs = [Fraction(0)] * 4
    for pick in range(8):
        c = Fraction(1)
        k = 0
        for bit, d in enumerate((d1, d2, d3)):
            if pick >> bit & 1:
                c *= d.e
                k += 1
            else:
                c *= d.a
        coeffs[k] += c
    return coeffs


def triple(form: CubicIntersectionForm, d1: DivisorExpr, d2: DivisorExpr | None = None,
           d3: DivisorExpr | None = None) -> Fraction:
    """d1 * d2 * d3; with one argument, the cube d1^3."""
    d2 = d1 if d2 is None else d2
    d3 = d1 if d3 is None else d3
    total = Fraction(0)
    for c, v in zip(_expansion(d1, d2, d3), form.products):
        if not c:
            continue
        if v is None:
            raise ValueError("triple product depends on an unknown intersection number")
        total += c * v
    return total


def solve_unknown_product(form: CubicIntersectionForm, d1: DivisorExpr, d2: DivisorExpr,
                          d3: DivisorExpr, value) -> Fraction:
    """Solve d1 d2 d3 = value for the single unknown product of ``form``."""
    k = form.unknown_index()
    if k is None:
        raise ValueError("the form has no unknown product")
    coeff = _expansion(d1, d2, d3)[k]
    if coeff == 0:
        raise DegenerateConstraint(f"the constraint does not involve {_PRODUCT_NAMES[k]}")
    rest = triple(form.with_product(k, 0), d1, d2, d3)
    return (to_rational(value) - rest) / coeff


# ---------------------------------------------------------------------------
# report rows

@dataclass(frozen=True)
class ReportRow:
    claim: str
    premises: str
    derived: object
    reference: object

    @property
    def agree(self) -> bool:
        return self.derived == self.reference

    def as_tuple(self):
        return (self.claim, self.premises, self.derived, self.reference, self.agree)

    def __str__(self):
        mark = "agree" if self.agree else "DIFFER"
        return f"{self.claim} = {self.derived} (reference {self.reference}, {mark}) from {self.premises}"


@dataclass
class NumericsReport:
    label: str
    values: Dict[str, object] = field(default_factory=dict)
    rows: List[ReportRow] = field(default_factory=list)

    def add(self, claim: str, premises: str, derived, reference=None):
        self.values[claim] = derived
        self.rows.append(ReportRow(claim, premises, derived, derived if reference is None else reference))

    def disagreements(self) -> List[ReportRow]:
        return [r for r in self.rows if not r.agree]


# values of A^3, A^2 E, A E^2 shared by both constructions
KNOWN_PRODUCTS = (Fraction(5, 2), Fraction(1), Fraction(-2))


@dataclass(frozen=True)
class Construction:
    """Numerical input of one construction.

    ``l_cube`` is L^3 with L = 2A - E; the exceptional divisor of the
    contraction to the base is ``exc`` and -K = ``k_in_l`` * L - exc.
    ``m`` and ``m_prime`` count singular fibers of the two kinds along C.
    """

    label: str
    l_cube: int
    exc: DivisorExpr
    k_in_l: int
    m: int
    m_prime: int


TYPE_R = Construction("typeR", 1, DivisorExpr(7, -4), 4, 0, 5)
TYPE_IR = Construction("typeIR", 2, DivisorExpr(3, -2), 2, 5, 0)

L_DIV = DivisorExpr(2, -1)

REFERENCE = {
    "typeR": {"E^3": -5, "deg C": 12, "(-K_Etilde)^2": -138, "p_g(C)": 7,
              "(-K)^2 Etilde": Fraction(27, 2), "(-K)^2 L": 4},
    "typeIR": {"E^3": -6, "deg C": 4, "(-K_Etilde)^2": -10, "p_g(C)": 1,
               "(-K)^2 Etilde": Fraction(11, 2), "(-K)^2 L": 8},
}


def form_for(c: Construction) -> CubicIntersectionForm:
    """Solve E^3 from L^3 and return the completed form."""
    partial = CubicIntersectionForm(*KNOWN_PRODUCTS, None)
    e3 = solve_unknown_product(partial, L_DIV, L_DIV, L_DIV, c.l_cube)
    return partial.with_product(3, e3)


def genus_from_self_intersection(k2: Fraction, m: int, m_prime: int) -> Fraction:
    """p_g from (-K_Etilde)^2 = 8(1 - p_g) - 2m - 18m'."""
    return 1 - (to_rational(k2) + 2 * m + 18 * m_prime) / 8


def _numerics(c: Construction) -> NumericsReport:
    ref = REFERENCE[c.label]
    rep = NumericsReport(c.label)
    form = form_for(c)
    rep.add("E^3", f"A^3, A^2E, AE^2 = 5/2, 1, -2 and L^3 = {c.l_cube}", form.e3, ref["E^3"])
    Et = c.exc
    deg_c = -triple(form, Et, Et, L_DIV)
    rep.add("deg C", f"-Etilde^2 L with Etilde = {Et}", deg_c, ref["deg C"])
    kE = triple(form, A - Et, A - Et, Et)
    rep.add("(-K_Etilde)^2", "(A - Etilde)^2 Etilde", kE, ref["(-K_Etilde)^2"])
    pg = genus_from_self_intersection(kE, c.m, c.m_prime)
    rep.add("p_g(C)", f"8(1 - p_g) - 2m - 18m' with m = {c.m}, m' = {c.m_prime}", pg, ref["p_g(C)"])
    rep.add("(-K)^2 Etilde", "A^2 Etilde from the form", triple(form, A, A, Et), ref["(-K)^2 Etilde"])
    rep.add("(-K)^2 L", "A^2 L from the form", triple(form, A, A, L_DIV), ref["(-K)^2 L"])
    rep.values["form"] = form
    return rep


def typeR_numerics() -> NumericsReport:
    return _numerics(TYPE_R)


def typeIR_numerics() -> NumericsReport:
    return _numerics(TYPE_IR)


# ---------------------------------------------------------------------------
# the L, Etilde basis

@dataclass(frozen=True)
class LESolution:
    k2e: Fraction
    ke2: Fraction
    e3: Fraction
    k2l: Fraction
    k_cube_check: Fraction


def derive_from_LE_system(k_in_l: int, e_l2, e2_l, k_etilde_sq, k_cube=Fraction(5, 2),
                          l_cube=None) -> LESolution:
    """Solve for ((-K)^2 E, (-K) E^2, E^3) in the basis L, E with -K = c L - E.

    Inputs are E L^2, E^2 L and (-K_E)^2 = (-K - E)^2 E.  The three linear
    equations come from substituting L = (-K + E)/c into the first two
    and expanding the third.  (-K)^2 L then follows from (-K)^3.  When
    L^3 is given, (c L - E)^3 is recomputed as a closure check.
    """
    c = to_rational(k_in_l)
    e_l2, e2_l, k_etilde_sq = map(to_rational, (e_l2, e2_l, k_etilde_sq))
    # E(-K + E)^2 = c^2 E L^2 ;  E^2(-K + E) = c E^2 L ;  (-K - E)^2 E = given
    rows = [[1, 2, 1], [0, 1, 1], [1, -2, 1]]
    rhs = [c * c * e_l2, c * e2_l, k_etilde_sq]
    sol = rat_solve(rows, rhs)
    if sol is None:
        raise ValueError("singular system")
    k2e, ke2, e3 = sol
    k2l = (to_rational(k_cube) + k2e) / c
    closure = None
    if l_cube is not None:
        l3 = to_rational(l_cube)
        closure = c ** 3 * l3 - 3 * c * c * e_l2 + 3 * c * e2_l - e3
    return LESolution(k2e, ke2, e3, k2l, closure)


# ---------------------------------------------------------------------------
# contradiction arithmetic

def diophantine_no_solution(a: int, b: int) -> bool:
    """True iff a*m*k = b has no solution in positive integers m, k."""
    if a <= 0:
        raise ValueError("a must be positive")
    return b <= 0 or b % a != 0


@dataclass(frozen=True)
class Contradiction:
    """Outcome of G = p(-K - t D) with G.gamma = -2 and f_* G = (m/p) p D'."""

    t: Fraction
    push: Fraction
    a: int
    b: int

    @property
    def no_solution(self) -> bool:
        return diophantine_no_solution(self.a, self.b)

    def equation(self) -> str:
        return f"{self.a}*m*k = {self.b}"


def contradiction_equation(k_cube, k2_d, k_in_d: Optional[int], g_gamma: int = -2) -> Contradiction:
    """Integer equation forced on a crepant divisor G = p(-K) - q D.

    (-K)^2 G = 0 gives q = t p with t = (-K)^3 / (-K)^2 D.  When ``k_in_d``
    is given the pushforward of -K is k_in_d times the generator and
    m = (k_in_d - t) p must be a positive integer; otherwise m = p.
    Then G.gamma = -t p (D.gamma) becomes a*m*k = b with k = D.gamma.
    """
    t = to_rational(k_cube) / to_rational(k2_d)
    push = Fraction(1) if k_in_d is None else to_rational(k_in_d) - t
    ratio = t / push
    a = ratio.numerator
    b = -g_gamma * ratio.denominator
    return Contradiction(t, push, a, b)


def typeIR_k2l_comparison() -> Dict[str, object]:
    """Both chains for the Type IR contradiction: derived (-K)^2 L against the reference 8."""
    sol = derive_from_LE_system(TYPE_IR.k_in_l, 0, -4, -10)
    derived = contradiction_equation(Fraction(5, 2), sol.k2l, TYPE_IR.k_in_l)
    printed = contradiction_equation(Fraction(5, 2), REFERENCE["typeIR"]["(-K)^2 L"], TYPE_IR.k_in_l)
    return {"derived_k2l": sol.k2l, "reference_k2l": REFERENCE["typeIR"]["(-K)^2 L"],
            "derived": derived, "reference": printed}
