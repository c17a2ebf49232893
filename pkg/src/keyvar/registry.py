"""Named checks and their execution."""

from __future__ import annotations

import fnmatch
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from .results import CheckLog, CheckResult
from .sampling import DEFAULT_TRIALS

DEFAULT_SEED = 0
SEED_ENV = "KEYVAR_SEED"

# reported findings that do not make a run fail
WHITELISTED_DISCREPANCIES = frozenset({"intersection.typeIR.k2l"})


@dataclass(frozen=True)
class RunConfig:
    patterns: tuple = ()
    seed: int = DEFAULT_SEED
    trials: int = DEFAULT_TRIALS
    degree_bound: Optional[int] = None
    fmt: str = "text"
    fail_fast: bool = False
    timings: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.fmt not in ("text", "machine"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if not -2 ** 63 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        if self.degree_bound is not None and self.degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


@dataclass(frozen=True)
class Check:
    id: str
    run: Callable[[RunConfig], CheckResult]
    summary: str = ""


class Registry:
    def __init__(self, checks: Iterable[Check] = ()):
        self._checks: Dict[str, Check] = {}
        for c in checks:
            self.register(c)

    def register(self, check: Check) -> None:
        if check.id in self._checks:
            raise ValueError(f"duplicate check id {check.id}")
        self._checks[check.id] = check

    def add(self, check_id: str, summary: str = ""):
        """Decorator form of ``register``."""
        def deco(fn):
            self.register(Check(check_id, fn, summary))
            return fn
        return deco

    def ids(self) -> List[str]:
        return sorted(self._checks)

    def __getitem__(self, check_id: str) -> Check:
        return self._checks[check_id]

    def __len__(self):
        return len(self._checks)

    def select(self, patterns: Sequence[str] = ()) -> List[Check]:
        """Checks whose id matches any glob pattern (all of them when none are given)."""
        ids = self.ids()
        if patterns:
            ids = [i for i in ids if any(fnmatch.fnmatchcase(i, p) for p in patterns)]
        return [self._checks[i] for i in ids]

    def copy(self) -> "Registry":
        return Registry(self._checks.values())


def execute(check: Check, config: RunConfig) -> CheckResult:
    """Run one check; exceptions become failures and the id is enforced."""
    start = time.perf_counter()
    try:
        res = check.run(config)
    except Exception as exc:  # a crashing check is reported, not propagated
        res = CheckResult(check.id, "fail", witness=f"{type(exc).__name__}: {exc}",
                          notes="check raised an exception")
    elapsed = (time.perf_counter() - start) * 1000 if config.timings else None
    return replace(res, id=check.id, elapsed=elapsed)


def _execute_by_id(args):
    check_id, config = args
    return execute(default_registry()[check_id], config)


def run_checks(registry: Registry, config: RunConfig) -> List[CheckResult]:
    checks = registry.select(config.patterns)
    results: List[CheckResult] = []
    if config.jobs > 1 and not config.fail_fast and registry_is_default(registry):
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_execute_by_id, [(c.id, config) for c in checks]))
    else:
        for c in checks:
            res = execute(c, config)
            results.append(res)
            if config.fail_fast and is_failure(res):
                break
    return sorted(results, key=lambda r: r.id)


def is_failure(res: CheckResult) -> bool:
    if res.status == "fail":
        return True
    return res.status == "discrepancy" and res.id not in WHITELISTED_DISCREPANCIES


def exit_code(results: Sequence[CheckResult]) -> int:
    return 1 if any(is_failure(r) for r in results) else 0


# ---------------------------------------------------------------------------
# the default registry

_DEFAULT: Optional[Registry] = None


def registry_is_default(reg: Registry) -> bool:
    return reg.ids() == default_registry().ids()


def default_registry() -> Registry:
    global _DEFAULT
    if _DEFAULT is None:
        reg = Registry()
        _register_core(reg)
        _register_type_r(reg)
        _register_type_ir(reg)
        _register_intersection(reg)
        _DEFAULT = reg
    return _DEFAULT.copy()


def _register_type_r(reg: Registry) -> None:
    from .type_r import checks as r

    simple = {
        "typeR.rf_plucker": (r.check_rf_are_plucker, "RF1..RF5 are the Pfaffians of the skew matrix"),
        "typeR.two_relations": (r.check_two_relations, "the x- and y-relations over RF1..RF5"),
        "typeR.segre": (r.check_segre, "Segre cubic identity and the five points"),
        "typeR.complexes": (r.check_complexes, "commuting diagram and complex conditions"),
        "typeR.s6.coxeter": (r.check_s6_coxeter, "Coxeter relations of the generators"),
        "typeR.s6.span": (r.check_s6_span, "span matrices on RF1..RF9"),
        "typeR.s6.dr_invariant": (r.check_s6_invariant, "D_R is invariant"),
        "typeR.mq.minors4": (r.check_mq_minors4, "4x4 minors of M_q vanish"),
        "typeR.singular.points": (r.check_singular_points_exact, "the six explicit singular points"),
        "typeR.homogeneity": (r.check_homogeneity, "weighted homogeneity of the named equations"),
    }
    for cid, (fn, summary) in simple.items():
        reg.register(Check(cid, lambda cfg, fn=fn: fn(), summary))

    seeded = {
        "typeR.mq.rank1": (r.check_mq_rank1, "rank 1 on the loci Delta_i"),
        "typeR.mq.rank0": (r.check_mq_rank0, "rank 0 on Delta_0"),
        "typeR.mq.rank3": (r.check_mq_rank3, "rank 3 at generic points"),
        "typeR.singular.gamma": (r.check_singular_gamma, "points of the loci Gamma_i are singular"),
        "typeR.singular.chart": (r.check_singular_chart, "smoothness in the r0 chart"),
        "typeR.maps_weights": (r.check_maps_and_weights, "maps between the models and their weights"),
        "typeR.qfacr_chart": (r.check_qfacr_chart, "chart of the blow-up model"),
    }
    for cid, (fn, summary) in seeded.items():
        reg.register(Check(cid, lambda cfg, fn=fn: fn(seed=cfg.seed, trials=cfg.trials), summary))

    reg.register(Check("typeR.mq.minors3",
                       lambda cfg: r.check_mq_minors3(2 if cfg.degree_bound is None else cfg.degree_bound),
                       "3x3 minors of M_q lie in the ideal of S1..S4"))
    reg.register(Check("typeR.s6.loci",
                       lambda cfg: r.check_loci_permuted(seed=cfg.seed, trials=min(cfg.trials, 3)),
                       "the generators permute the singular loci"))
    reg.register(Check("typeR.scroll_models", lambda cfg: r.check_scroll_models(seed=cfg.seed),
                       "scroll models of the resolution"))


def _register_type_ir(reg: Registry) -> None:
    from .type_ir import checks as ir
    from .type_ir.data import TAGS

    for tag in TAGS:
        reg.register(Check(f"typeIR.{tag}.veronese", lambda cfg, t=tag: ir.check_veronese_image(
            t, seed=cfg.seed, trials=cfg.trials), "q(x) lies on G(2,5) and its lines meet the quadric"))
        reg.register(Check(f"typeIR.{tag}.double_cover", lambda cfg, t=tag: ir.check_double_cover(t),
                           "double cover identity"))
        reg.register(Check(f"typeIR.{tag}.univ_relations", lambda cfg, t=tag: ir.check_univ_relations(t),
                           "incidence relations over the Pluecker relations"))
        reg.register(Check(f"typeIR.{tag}.gtilde_psi", lambda cfg, t=tag: ir.check_gtilde_and_psi(
            t, seed=cfg.seed, trials=cfg.trials), "scroll model and the map psi"))
        reg.register(Check(f"typeIR.{tag}.fibers", lambda cfg, t=tag: ir.check_fibers(
            t, seed=cfg.seed, trials=cfg.trials), "fibers over the orbit representatives"))
        reg.register(Check(f"typeIR.{tag}.orbits", lambda cfg, t=tag: ir.check_orbit_reps(t),
                           "orbit representatives and their line-quadric profiles"))


def lforms_check(tag: str, forms) -> Check:
    from .type_ir import checks as ir
    return Check(f"typeIR.{tag}.lforms", lambda cfg: ir.check_lforms(tag, forms),
                 "user-supplied linear section")


# ---------------------------------------------------------------------------
# core checks

def _register_core(reg: Registry) -> None:
    from .linalg import rat_det, rat_rank, rref
    from .membership import find_certificate
    from .pfaffian import PAIRS, SkewPolyMatrix5, pfaffian4_values, plucker, wedge2
    from .poly import Poly, WeightedRing
    from .sampling import RationalSampler

    @reg.add("core.poly.roundtrip", "polynomial text round trip and ring axioms")
    def _(cfg):
        log = CheckLog("core.poly.roundtrip")
        R = WeightedRing(("x", "y", "z"), (1, 1, 2))
        s = RationalSampler(cfg.seed, "core.poly.roundtrip")

        def rand_poly():
            terms = {}
            for m in R.monomials_of_degree(s.rng.randint(0, 4)):
                c = s.rational()
                if c:
                    terms[m] = c
            return Poly(R, terms)

        bad = None
        for _ in range(cfg.trials):
            p, q, r = rand_poly(), rand_poly(), rand_poly()
            if Poly.parse(p.to_text(), R) != p:
                bad = ("round trip", p.to_text())
            elif (p + q) * r != p * r + q * r or p * q != q * p:
                bad = ("ring axioms", p.to_text(), q.to_text(), r.to_text())
            if bad:
                break
        log.expect(bad is None, f"parse(to_text(p)) = p and distributivity at {cfg.trials} samples", bad)
        return log.result()

    @reg.add("core.linalg.bareiss", "fraction-free elimination agrees with rational elimination")
    def _(cfg):
        log = CheckLog("core.linalg.bareiss")
        s = RationalSampler(cfg.seed, "core.linalg.bareiss")
        bad = None
        for _ in range(cfg.trials):
            n = s.rng.randint(1, 5)
            k = s.rng.randint(0, n)
            basis = [s.vector(n) for _ in range(k)]
            rows = [s.combination(basis) if basis else [Fraction(0)] * n for _ in range(n)]
            _, pivots = rref(rows)
            if rat_rank(rows) != len(pivots):
                bad = ("rank", rows)
            elif len(pivots) < n and rat_det(rows) != 0:
                bad = ("determinant of a singular matrix", rows)
            if bad:
                break
        log.expect(bad is None, f"Bareiss rank equals Gauss-Jordan rank at {cfg.trials} samples", bad)
        log.expect(rat_det([[2, 1], [1, 1]]) == 1 and rat_det([[0, 1], [1, 0]]) == -1, "small determinants")
        return log.result()

    @reg.add("core.pfaffian.decomposable", "Pfaffians vanish on decomposable 2-vectors")
    def _(cfg):
        log = CheckLog("core.pfaffian.decomposable")
        s = RationalSampler(cfg.seed, "core.pfaffian.decomposable")
        bad = None
        for _ in range(cfg.trials):
            r = wedge2(s.vector(5), s.vector(5))
            if any(pfaffian4_values(r)):
                bad = r
                break
        log.expect(bad is None, f"u^v lies on G(2,5) at {cfg.trials} samples", bad)
        e = {k: Fraction(0) for k in PAIRS}
        e[(1, 2)] = e[(3, 4)] = Fraction(1)
        log.expect(any(pfaffian4_values(e)), "e1^e2 + e3^e4 is not decomposable")
        return log.result()

    @reg.add("core.membership.reexpand", "certificates re-expand to their targets")
    def _(cfg):
        log = CheckLog("core.membership.reexpand")
        G = WeightedRing(tuple(f"r{i}{j}" for i, j in PAIRS) + tuple(f"u{i}" for i in range(1, 6)),
                         (1,) * 15)
        pf = plucker(SkewPolyMatrix5.generic(G, "r"))
        u = G.vars(*(f"u{i}" for i in range(1, 6)))
        target = sum((c * p for c, p in zip(u, pf)), G.zero())
        cert = find_certificate(target, pf)
        log.expect(cert is not None and cert.expand() == target, "a combination of Pfaffians is certified")
        cert = find_certificate(G.var("u1") * G.var("u2") * G.var("u3"), pf)
        log.expect(cert is None, "a cubic in the u-variables has no certificate")
        return log.result()

    @reg.add("core.sampling.determinism", "seeded sampling is reproducible")
    def _(cfg):
        log = CheckLog("core.sampling.determinism")
        a = RationalSampler(cfg.seed, "x").vector(10)
        b = RationalSampler(cfg.seed, "x").vector(10)
        c = RationalSampler(cfg.seed, "y").vector(10)
        log.expect(a == b, "same seed and label give the same stream")
        log.expect(a != c, "different labels give different streams")
        return log.result()


# ---------------------------------------------------------------------------
# intersection checks

def _register_intersection(reg: Registry) -> None:
    from . import intersection as I

    @reg.add("intersection.form", "trilinear symmetric expansion")
    def _(cfg):
        log = CheckLog("intersection.form")
        form = I.form_for(I.TYPE_R)
        log.expect(I.triple(form, I.A) == Fraction(5, 2), "A^3 = 5/2")
        log.expect(I.triple(form, I.L_DIV) == 1, "(2A - E)^3 = 1 with E^3 = -5")
        from .sampling import RationalSampler
        s = RationalSampler(cfg.seed, "intersection.form")
        bad = None
        for _ in range(cfg.trials):
            d = [I.DivisorExpr(s.rational(), s.rational()) for _ in range(4)]
            c = s.rational()
            vals = {I.triple(form, d[i], d[j], d[k]) for i, j, k in
                    ((0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1))}
            lin = I.triple(form, d[0] * c + d[3], d[1], d[2]) == \
                c * I.triple(form, d[0], d[1], d[2]) + I.triple(form, d[3], d[1], d[2])
            if len(vals) != 1 or not lin:
                bad = [str(x) for x in d]
                break
        log.expect(bad is None, f"symmetry and linearity at {cfg.trials} samples", bad)
        return log.result()

    def numerics_check(cid, report, skip=()):
        log = CheckLog(cid)
        for row in report.rows:
            if row.claim in skip:
                log.note(f"{row.claim} = {row.derived} (compared in intersection.typeIR.k2l)")
                continue
            log.expect(row.agree, str(row))
        return log.result()

    reg.register(Check("intersection.typeR", lambda cfg: numerics_check(
        "intersection.typeR", I.typeR_numerics()), "Type R intersection numbers"))
    reg.register(Check("intersection.typeIR", lambda cfg: numerics_check(
        "intersection.typeIR", I.typeIR_numerics(), skip=("(-K)^2 L",)), "Type IR intersection numbers"))

    def le_check(cid, c: I.Construction, deg_c, k_e2, skip_k2l=False):
        log = CheckLog(cid)
        sol = I.derive_from_LE_system(c.k_in_l, 0, -deg_c, k_e2, l_cube=c.l_cube)
        ref = I.REFERENCE[c.label]
        log.expect(sol.k2e == ref["(-K)^2 Etilde"], f"(-K)^2 Etilde = {sol.k2e} from the L, Etilde system")
        if skip_k2l:
            log.note(f"(-K)^2 L = {sol.k2l} (compared in intersection.typeIR.k2l)")
        else:
            log.expect(sol.k2l == ref["(-K)^2 L"], f"(-K)^2 L = {sol.k2l}")
        log.expect(sol.k_cube_check == Fraction(5, 2),
                   f"closure ({c.k_in_l}L - Etilde)^3 = {sol.k_cube_check}")
        form = I.form_for(c)
        log.expect(sol.e3 == I.triple(form, c.exc), "Etilde^3 agrees with the A, E form")
        return log.result()

    reg.register(Check("intersection.typeR.le_system", lambda cfg: le_check(
        "intersection.typeR.le_system", I.TYPE_R, 12, -138), "Type R numbers in the L, Etilde basis"))
    reg.register(Check("intersection.typeIR.le_system", lambda cfg: le_check(
        "intersection.typeIR.le_system", I.TYPE_IR, 4, -10, skip_k2l=True),
        "Type IR numbers in the L, Etilde basis"))

    @reg.add("intersection.typeR.contradiction", "no crepant divisorial contraction (Type R, two cases)")
    def _(cfg):
        log = CheckLog("intersection.typeR.contradiction")
        k2l = I.typeR_numerics().values["(-K)^2 L"]
        c = I.contradiction_equation(Fraction(5, 2), k2l, I.TYPE_R.k_in_l)
        log.expect((c.a, c.b) == (5, 54) and c.no_solution, f"{c.equation()} has no positive solutions")
        h = I.contradiction_equation(Fraction(5, 2), 1, None)
        log.expect((h.a, h.b) == (5, 4) and h.no_solution, f"{h.equation()} (with m = p) has no positive solutions")
        return log.result()

    @reg.add("intersection.typeIR.contradiction", "no crepant divisorial contraction (Type IR)")
    def _(cfg):
        log = CheckLog("intersection.typeIR.contradiction")
        cmp = I.typeIR_k2l_comparison()
        d, r = cmp["derived"], cmp["reference"]
        log.expect(d.no_solution, f"with (-K)^2 L = {cmp['derived_k2l']}: {d.equation()} has no positive solutions")
        log.expect(r.no_solution, f"with (-K)^2 L = {cmp['reference_k2l']}: {r.equation()} has no positive solutions")
        return log.result()

    @reg.add("intersection.typeIR.k2l", "Type IR value of (-K)^2 L against the reference")
    def _(cfg):
        cmp = I.typeIR_k2l_comparison()
        d, r = cmp["derived"], cmp["reference"]
        notes = (f"derived (-K)^2 L = 1/2((-K)^3 + (-K)^2 Etilde) = {cmp['derived_k2l']}, "
                 f"reference {cmp['reference_k2l']}; derived chain: G = p(-K - {d.t} L), m = {d.push}p, "
                 f"{d.equation()}; reference chain: G = p(-K - {r.t} L), m = {r.push}p, {r.equation()}; "
                 f"no positive solutions in either chain")
        status = "pass" if cmp["derived_k2l"] == cmp["reference_k2l"] else "discrepancy"
        return CheckResult("intersection.typeIR.k2l", status, witness=str(cmp["derived_k2l"]), notes=notes)

    @reg.add("intersection.diophantine", "positive solutions of a*m*k = b")
    def _(cfg):
        log = CheckLog("intersection.diophantine")
        log.expect(I.diophantine_no_solution(5, 54), "5mk = 54 has no solutions")
        log.expect(I.diophantine_no_solution(5, 4), "5pk = 4 has no solutions")
        log.expect(I.diophantine_no_solution(5, 22), "5mk = 22 has no solutions")
        log.expect(not I.diophantine_no_solution(3, 6), "3mk = 6 has solutions")
        return log.result()
