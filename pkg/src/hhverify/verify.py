"""Verdicts for single points, grid sweeps, and counterexample search.

A report compares one inequality at one parameter point and carries both
numeric sides, the margin rhs - lhs, and a verdict. The verdict rule is
total and replayable from the report fields alone:

    lhs is None                      -> "inconclusive"
    rhs is None                      -> "inapplicable"
    margin >= -margin_tolerance(...) -> "holds"
    otherwise                        -> "violated"

where margin_tolerance = 10 * quad_err + 1e-9 * max(1, |lhs|, |rhs|). The
quadrature term dominates when the integrator was the bottleneck; the
relative term absorbs closed-form rounding at exact-equality points.

Chain inequalities (the two refinement chains) evaluate every term but
report only the tightest adjacent pair, the one minimizing margin + its
tolerance. That pair violates its tolerance exactly when some pair in the
chain does, so replaying the verdict from the reported fields agrees with
checking the whole chain.

Hypothesis checking is sampling-based class membership (see classify). A
failed check makes the verdict "inconclusive" rather than letting a bound
that was never claimed count as violated; a check that cannot run because
the function is not evaluable on the class domain does the same, with the
failure recorded in diagnostics.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

from .bounds import (
    VARIANTS,
    BoundSide,
    ChainValues,
    chain_dr1,
    chain_dr2,
    eq4_rhs,
    eq22_rhs,
    eq31_branches,
    eq42_rhs,
    mixed_geometric_integrand,
    sym_geometric_integrand,
)
from .classify import (
    DEFAULT_SEED,
    ClassParams,
    SampleEvaluationError,
    check_alpha_m_log_convex,
)
from .funcspec import EvaluationError, FamilyError, FamilySpec, FunctionExpr, family_instantiate, registered_families
from .means import arithmetic_mean
from .quadrature import IntegrandError, Interval, QuadResult, mean_integral

__all__ = [
    "THEOREMS",
    "CHAIN_THEOREMS",
    "HOLDS",
    "VIOLATED",
    "INAPPLICABLE",
    "INCONCLUSIVE",
    "VERDICTS",
    "HYP_PASS",
    "HYP_FAIL",
    "HYP_SKIPPED",
    "ReportParams",
    "InequalityReport",
    "MinMargin",
    "SweepSummary",
    "SearchResult",
    "margin_tolerance",
    "replay_verdict",
    "effective_class_params",
    "verify_theorem",
    "sweep",
    "search_min_margin",
]

THEOREMS = ("dr1", "dr2", "eq4", "eq11", "eq22", "eq31", "eq42")
CHAIN_THEOREMS = ("dr1", "dr2")

HOLDS = "holds"
VIOLATED = "violated"
INAPPLICABLE = "inapplicable"
INCONCLUSIVE = "inconclusive"
VERDICTS = (HOLDS, VIOLATED, INAPPLICABLE, INCONCLUSIVE)

HYP_PASS = "pass"
HYP_FAIL = "fail"
HYP_SKIPPED = "skipped"


@dataclass(frozen=True)
class ReportParams:
    """The parameter point a report was evaluated at.

    family is the sorted (name, value) pairs of the generating family, or
    None when the function came from a raw expression.
    """

    a: float
    b: float
    alpha: float
    m: float
    family: Optional[tuple[tuple[str, float], ...]] = None


@dataclass(frozen=True)
class InequalityReport:
    theorem: str
    variant: str
    params: ReportParams
    hypothesis: str  # "pass" | "fail" | "skipped"
    lhs: Optional[float]
    rhs: Optional[float]
    margin: Optional[float]
    quad_err: float
    verdict: str
    diagnostics: Optional[str] = field(default=None, compare=False)


@dataclass(frozen=True)
class MinMargin:
    value: float
    theorem: str
    variant: str
    params: ReportParams


@dataclass(frozen=True)
class SweepSummary:
    reports: tuple[InequalityReport, ...]
    min_margin: Optional[MinMargin]
    counts: Mapping[str, int]


@dataclass(frozen=True)
class SearchResult:
    best_params: Mapping[str, float]
    best_margin: float  # math.inf when no evaluated point produced a margin
    report: InequalityReport
    evals: int


def margin_tolerance(lhs: float, rhs: float, quad_err: float) -> float:
    """Slack below which a negative margin is still treated as holding."""
    return 10.0 * quad_err + 1e-9 * max(1.0, abs(lhs), abs(rhs))


def replay_verdict(
    lhs: Optional[float],
    rhs: Optional[float],
    margin: Optional[float],
    quad_err: float,
) -> str:
    """Recompute a report's verdict from its numeric fields."""
    if lhs is None:
        return INCONCLUSIVE
    if rhs is None:
        return INAPPLICABLE
    if margin is None:
        raise ValueError("margin must be set when both sides are")
    return HOLDS if margin >= -margin_tolerance(lhs, rhs, quad_err) else VIOLATED


def effective_class_params(theorem: str, m: float, alpha: float) -> ClassParams:
    """The membership class a theorem's hypothesis actually requires.

    The chains assume plain log-convexity, the two ratio-kernel bounds use
    both parameters, and the rest need only the m-class.
    """
    _require_theorem(theorem)
    if theorem in CHAIN_THEOREMS:
        return ClassParams(m=1.0, alpha=1.0)
    if theorem in ("eq31", "eq42"):
        return ClassParams(m=m, alpha=alpha)
    return ClassParams(m=m, alpha=1.0)


def _require_theorem(theorem: str) -> None:
    if theorem not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem!r} (known: {', '.join(THEOREMS)})")


def _require_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


# ---------------------------------------------------------------------------
# per-point evaluation


@dataclass(frozen=True)
class _HypOutcome:
    status: str  # HYP_PASS | HYP_FAIL | HYP_SKIPPED
    proceed: bool
    diagnostics: Optional[str] = None


_HYP_OFF = _HypOutcome(HYP_SKIPPED, proceed=True)

_HypLookup = Callable[[ClassParams], _HypOutcome]


def _run_class_check(
    f: FunctionExpr,
    domain_upper: float,
    eff: ClassParams,
    grid_n: int,
    tol_rel: float,
    seed: int,
) -> _HypOutcome:
    try:
        report = check_alpha_m_log_convex(f, domain_upper, eff, grid_n=grid_n, tol_rel=tol_rel, seed=seed)
    except SampleEvaluationError as err:
        return _HypOutcome(HYP_SKIPPED, proceed=False, diagnostics=f"class check aborted: {err}")
    if report.verdict == "pass":
        return _HypOutcome(HYP_PASS, proceed=True)
    w = report.worst_violation
    assert w is not None
    detail = (
        f"class check failed on [0, {domain_upper!r}] at (x={w.x!r}, y={w.y!r}, t={w.t!r})"
        f" with deficit {w.deficit!r}"
    )
    return _HypOutcome(HYP_FAIL, proceed=False, diagnostics=detail)


class _IntegralCache:
    """Lazily computed integrals shared by the theorems at one point.

    An integral that raised is cached too, so a second theorem needing it
    re-raises instead of re-integrating up to the same bad abscissa.
    """

    def __init__(self, f: FunctionExpr, iv: Interval, tol: float):
        self._f = f
        self._iv = iv
        self._tol = tol
        self._store: dict[str, QuadResult | Exception] = {}

    def _get(self, key: str, thunk: Callable[[], QuadResult]) -> QuadResult:
        if key not in self._store:
            try:
                self._store[key] = thunk()
            except (EvaluationError, IntegrandError) as err:
                self._store[key] = err
        cached = self._store[key]
        if isinstance(cached, Exception):
            raise cached
        return cached

    def mean_f(self) -> QuadResult:
        return self._get("mean_f", lambda: mean_integral(self._f, self._iv, self._tol))

    def sym_geometric(self) -> QuadResult:
        s = self._iv.a + self._iv.b
        return self._get(
            "sym_geometric",
            lambda: mean_integral(sym_geometric_integrand(self._f, s), self._iv, self._tol),
        )

    def mixed_geometric(self, m: float) -> QuadResult:
        if m == 1.0:
            return self.sym_geometric()
        s = self._iv.a + self._iv.b
        return self._get(
            f"mixed_geometric:{m!r}",
            lambda: mean_integral(mixed_geometric_integrand(self._f, s, m), self._iv, self._tol),
        )


def _report_params(
    theorem: str,
    iv: Interval,
    m: float,
    alpha: float,
    family: Optional[tuple[tuple[str, float], ...]],
) -> ReportParams:
    if theorem in CHAIN_THEOREMS:
        return ReportParams(float(iv.a), float(iv.b), 1.0, 1.0, family)
    return ReportParams(float(iv.a), float(iv.b), float(alpha), float(m), family)


def _assembled(
    theorem: str,
    variant: str,
    rp: ReportParams,
    hyp: str,
    lhs_value: float,
    lhs_err: float,
    rhs: BoundSide,
) -> InequalityReport:
    if not rhs.applicable:
        return InequalityReport(
            theorem, variant, rp, hyp,
            lhs=lhs_value, rhs=None, margin=None, quad_err=lhs_err,
            verdict=INAPPLICABLE, diagnostics=rhs.reason,
        )
    assert rhs.value is not None
    margin = rhs.value - lhs_value
    quad_err = lhs_err + rhs.err_est
    verdict = HOLDS if margin >= -margin_tolerance(lhs_value, rhs.value, quad_err) else VIOLATED
    return InequalityReport(
        theorem, variant, rp, hyp,
        lhs=lhs_value, rhs=rhs.value, margin=margin, quad_err=quad_err, verdict=verdict,
    )


def _chain_report(theorem: str, chain: ChainValues, variant: str, rp: ReportParams, hyp: str) -> InequalityReport:
    best = None
    best_slack = math.inf
    for first, second in itertools.pairwise(chain.terms):
        margin = second.value - first.value
        err = first.err_est + second.err_est
        slack = margin + margin_tolerance(first.value, second.value, err)
        if best is None or slack < best_slack:
            best = (first, second, margin, err)
            best_slack = slack
    assert best is not None
    first, second, margin, err = best
    verdict = HOLDS if best_slack >= 0.0 else VIOLATED
    return InequalityReport(
        theorem, variant, rp, hyp,
        lhs=first.value, rhs=second.value, margin=margin, quad_err=err, verdict=verdict,
        diagnostics=f"tightest adjacent pair: {first.label} <= {second.label}",
    )


def _compute_report(
    theorem: str,
    f: FunctionExpr,
    iv: Interval,
    m: float,
    alpha: float,
    variant: str,
    tol: float,
    cache: _IntegralCache,
    rp: ReportParams,
    hyp: str,
) -> InequalityReport:
    if theorem == "dr1":
        return _chain_report(theorem, chain_dr1(f, iv, tol), variant, rp, hyp)
    if theorem == "dr2":
        return _chain_report(theorem, chain_dr2(f, iv, tol), variant, rp, hyp)
    if theorem == "eq4":
        lhs = cache.mean_f()
        return _assembled(theorem, variant, rp, hyp, lhs.value, lhs.err_est, eq4_rhs(f, iv, m))
    if theorem == "eq11":
        rhs_int = cache.mixed_geometric(m)
        lhs_value = f.evaluate(arithmetic_mean(iv.a, iv.b))
        return _assembled(
            theorem, variant, rp, hyp, lhs_value, 0.0,
            BoundSide(value=rhs_int.value, err_est=rhs_int.err_est),
        )
    if theorem == "eq22":
        lhs = cache.sym_geometric()
        return _assembled(theorem, variant, rp, hyp, lhs.value, lhs.err_est, eq22_rhs(f, iv, m, variant))
    if theorem == "eq31":
        lhs = cache.mean_f()
        rhs, _branches = eq31_branches(f, iv, ClassParams(m=m, alpha=alpha))
        return _assembled(theorem, variant, rp, hyp, lhs.value, lhs.err_est, rhs)
    if theorem == "eq42":
        lhs = cache.sym_geometric()
        rhs = eq42_rhs(f, iv, ClassParams(m=m, alpha=alpha), variant)
        return _assembled(theorem, variant, rp, hyp, lhs.value, lhs.err_est, rhs)
    raise AssertionError(f"unhandled theorem {theorem!r}")


def _point_reports(
    theorems: Sequence[str],
    f: FunctionExpr,
    iv: Interval,
    *,
    m: float,
    alpha: float,
    variant: str,
    tol: float,
    hyp_lookup: _HypLookup,
    family: Optional[tuple[tuple[str, float], ...]],
) -> list[InequalityReport]:
    cache = _IntegralCache(f, iv, tol)
    hyp_cache: dict[tuple[float, float], _HypOutcome] = {}
    reports: list[InequalityReport] = []
    for theorem in theorems:
        eff = effective_class_params(theorem, m=m, alpha=alpha)
        key = (eff.m, eff.alpha)
        if key not in hyp_cache:
            hyp_cache[key] = hyp_lookup(eff)
        outcome = hyp_cache[key]
        rp = _report_params(theorem, iv, m, alpha, family)
        if not outcome.proceed:
            reports.append(
                InequalityReport(
                    theorem, variant, rp, outcome.status,
                    lhs=None, rhs=None, margin=None, quad_err=0.0,
                    verdict=INCONCLUSIVE, diagnostics=outcome.diagnostics,
                )
            )
            continue
        try:
            reports.append(
                _compute_report(theorem, f, iv, m, alpha, variant, tol, cache, rp, outcome.status)
            )
        except (EvaluationError, IntegrandError) as err:
            reports.append(
                InequalityReport(
                    theorem, variant, rp, outcome.status,
                    lhs=None, rhs=None, margin=None, quad_err=0.0,
                    verdict=INCONCLUSIVE, diagnostics=str(err),
                )
            )
    return reports


def _family_pairs(family: Optional[FamilySpec]) -> Optional[tuple[tuple[str, float], ...]]:
    if family is None:
        return None
    return tuple(sorted((name, float(value)) for name, value in family.params.items()))


def verify_theorem(
    theorem: str,
    f: FunctionExpr,
    iv: Interval,
    *,
    m: float = 1.0,
    alpha: float = 1.0,
    variant: str = "corrected",
    tol: float = 1e-10,
    check_hypothesis: bool = True,
    grid_n: int = 33,
    tol_rel: float = 1e-9,
    seed: int = DEFAULT_SEED,
    family: Optional[FamilySpec] = None,
) -> InequalityReport:
    """Verify one inequality for ``f`` on ``iv`` and return the report.

    With check_hypothesis on, class membership is sampled on
    [0, b / m_eff] first (m_eff from the theorem's effective class); a
    failed or aborted check yields an inconclusive report instead of a
    numeric comparison. ``family`` is labeling metadata only; it does not
    have to match ``f``, but the CLI always passes the spec it built the
    function from.
    """
    _require_theorem(theorem)
    _require_variant(variant)
    ClassParams(m=m, alpha=alpha)  # range-check even for theorems that ignore one of them

    if check_hypothesis:
        def lookup(eff: ClassParams) -> _HypOutcome:
            return _run_class_check(f, iv.b / eff.m, eff, grid_n, tol_rel, seed)
    else:
        def lookup(eff: ClassParams) -> _HypOutcome:
            return _HYP_OFF

    return _point_reports(
        [theorem], f, iv, m=m, alpha=alpha, variant=variant, tol=tol,
        hyp_lookup=lookup, family=_family_pairs(family),
    )[0]


# ---------------------------------------------------------------------------
# sweeps

_HYPOTHESIS_MODES = ("off", "once", "per-point")


def sweep(
    family: str,
    family_grids: Mapping[str, Sequence[float]],
    a_values: Sequence[float],
    b_values: Sequence[float],
    m_values: Sequence[float],
    alpha_values: Sequence[float],
    theorems: Sequence[str],
    *,
    variant: str = "corrected",
    tol: float = 1e-10,
    hypothesis: str = "off",
    grid_n: int = 33,
    tol_rel: float = 1e-9,
    seed: int = DEFAULT_SEED,
) -> SweepSummary:
    """Verify ``theorems`` over the cartesian grid of family and interval parameters.

    Iteration order is deterministic: family parameters (names sorted),
    then a, b, alpha, m, then the theorems in the order given. Points with
    a >= b are skipped without a report. Hypothesis modes: "off" skips
    membership checks, "per-point" samples on [0, b / m_eff] at every
    point, and "once" samples each distinct (family member, effective
    class) combination a single time on [0, max(b) / m_eff].

    Inconclusive points never abort the sweep; they are reported and
    counted like any other verdict.
    """
    for theorem in theorems:
        _require_theorem(theorem)
    _require_variant(variant)
    if hypothesis not in _HYPOTHESIS_MODES:
        raise ValueError(f"hypothesis mode must be one of {_HYPOTHESIS_MODES}, got {hypothesis!r}")

    names = sorted(family_grids)
    grids = [list(family_grids[name]) for name in names]
    max_b = max(b_values) if len(b_values) else 0.0
    once_cache: dict[tuple, _HypOutcome] = {}
    reports: list[InequalityReport] = []

    for combo in itertools.product(*grids):
        spec = FamilySpec(family, dict(zip(names, combo)))
        f = family_instantiate(spec)
        fam_pairs = _family_pairs(spec)
        for a in a_values:
            for b in b_values:
                if a >= b:
                    continue
                iv = Interval(a, b)
                for alpha in alpha_values:
                    for m in m_values:
                        if hypothesis == "off":
                            def lookup(eff: ClassParams) -> _HypOutcome:
                                return _HYP_OFF
                        elif hypothesis == "per-point":
                            def lookup(eff: ClassParams, _f=f, _b=b) -> _HypOutcome:
                                return _run_class_check(_f, _b / eff.m, eff, grid_n, tol_rel, seed)
                        else:
                            def lookup(eff: ClassParams, _f=f, _combo=combo) -> _HypOutcome:
                                key = (_combo, eff.m, eff.alpha)
                                if key not in once_cache:
                                    once_cache[key] = _run_class_check(
                                        _f, max_b / eff.m, eff, grid_n, tol_rel, seed
                                    )
                                return once_cache[key]
                        reports.extend(
                            _point_reports(
                                theorems, f, iv, m=m, alpha=alpha, variant=variant,
                                tol=tol, hyp_lookup=lookup, family=fam_pairs,
                            )
                        )

    counts = {verdict: 0 for verdict in VERDICTS}
    for report in reports:
        counts[report.verdict] += 1
    best: Optional[MinMargin] = None
    for report in reports:
        if report.margin is not None and (best is None or report.margin < best.value):
            best = MinMargin(report.margin, report.theorem, report.variant, report.params)
    return SweepSummary(reports=tuple(reports), min_margin=best, counts=counts)


# ---------------------------------------------------------------------------
# counterexample search

_POINT_KEYS = ("a", "b", "alpha", "m")
_POINT_DEFAULTS = {"a": 0.0, "b": 1.0, "alpha": 1.0, "m": 1.0}
_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_BRACKET_REL = 1e-12


def search_min_margin(
    family: str,
    box: Mapping[str, tuple[float, float]],
    theorem: str,
    *,
    variant: str = "corrected",
    budget: int = 200,
    tol: float = 1e-10,
    fixed: Optional[Mapping[str, float]] = None,
    seed: int = DEFAULT_SEED,
) -> SearchResult:
    """Minimize the margin of ``theorem`` over a box of parameters.

    ``box`` maps parameter names (family parameters and optionally a, b,
    alpha, m) to (lo, hi) ranges; ``fixed`` pins parameters to constants.
    Unmentioned interval parameters default to a=0, b=1, alpha=1, m=1.
    The search spends ceil(budget/2) evaluations on a low-discrepancy
    lattice over the box, then cycles coordinate-wise golden-section
    refinement from the best point until the budget runs out, a cycle
    stops improving, or brackets shrink below 1e-12 of each range.

    Points that fail to evaluate (a >= b after assembly, a parameter out
    of its family's range, evaluation errors) count toward the budget with
    an infinite margin. Hypothesis checking is never run here; the point
    of the search is hunting violations, gated or not.
    """
    _require_theorem(theorem)
    _require_variant(variant)
    if budget < 1:
        raise ValueError(f"budget must be >= 1, got {budget!r}")
    families = registered_families()
    if family not in families:
        raise FamilyError(f"unknown family {family!r} (known: {', '.join(sorted(families))})")
    param_names = families[family]
    fixed = dict(fixed or {})

    allowed = set(param_names) | set(_POINT_KEYS)
    for source, keys in (("box", box.keys()), ("fixed", fixed.keys())):
        unknown = sorted(set(keys) - allowed)
        if unknown:
            raise ValueError(f"{source} names {unknown} are not parameters of family {family!r}")
    overlap = sorted(set(box) & set(fixed))
    if overlap:
        raise ValueError(f"parameters {overlap} appear in both box and fixed")
    missing = [name for name in param_names if name not in box and name not in fixed]
    if missing:
        raise ValueError(f"family parameters {missing} need a box range or a fixed value")

    dims = sorted(box)
    if len(dims) > len(_PRIMES):
        raise ValueError(f"at most {len(_PRIMES)} search dimensions are supported, got {len(dims)}")
    ranges: list[tuple[float, float]] = []
    for name in dims:
        lo, hi = box[name]
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise ValueError(f"box range for {name!r} must be finite with lo < hi, got {(lo, hi)!r}")
        if name == "a" and lo < 0.0:
            raise ValueError("box range for 'a' must stay >= 0")
        if name in ("alpha", "m") and not (0.0 < lo and hi <= 1.0):
            raise ValueError(f"box range for {name!r} must lie inside (0, 1]")
        ranges.append((float(lo), float(hi)))

    def assemble(coords: Sequence[float]) -> dict[str, float]:
        point = dict(_POINT_DEFAULTS)
        point.update({k: float(v) for k, v in fixed.items()})
        for name, value in zip(dims, coords):
            point[name] = float(value)
        return point

    def evaluate_point(point: Mapping[str, float]) -> tuple[float, InequalityReport]:
        fam_pairs = tuple(sorted((name, point[name]) for name in param_names))
        a, b, alpha, m = point["a"], point["b"], point["alpha"], point["m"]
        if theorem in CHAIN_THEOREMS:
            rp = ReportParams(a, b, 1.0, 1.0, fam_pairs)
        else:
            rp = ReportParams(a, b, alpha, m, fam_pairs)

        def stub(detail: str) -> tuple[float, InequalityReport]:
            report = InequalityReport(
                theorem, variant, rp, HYP_SKIPPED,
                lhs=None, rhs=None, margin=None, quad_err=0.0,
                verdict=INCONCLUSIVE, diagnostics=detail,
            )
            return math.inf, report

        if not a < b:
            return stub(f"empty interval: a={a!r} >= b={b!r}")
        try:
            f = family_instantiate(FamilySpec(family, {name: point[name] for name in param_names}))
        except FamilyError as err:
            return stub(str(err))
        report = _point_reports(
            [theorem], f, Interval(a, b), m=m, alpha=alpha, variant=variant,
            tol=tol, hyp_lookup=lambda eff: _HYP_OFF, family=fam_pairs,
        )[0]
        margin = report.margin if report.margin is not None else math.inf
        return margin, report

    if not dims:
        margin, report = evaluate_point(assemble(()))
        return SearchResult(best_params=assemble(()), best_margin=margin, report=report, evals=1)

    rng = random.Random(seed)
    offsets = [rng.random() for _ in dims]
    gammas = [math.sqrt(p) % 1.0 for p in _PRIMES[: len(dims)]]

    evals = 0
    best_coords: list[float] = []
    best_margin = math.inf
    best_report: Optional[InequalityReport] = None

    coarse_n = min(budget, math.ceil(budget / 2))
    for i in range(coarse_n):
        coords = [
            lo + ((offsets[j] + i * gammas[j]) % 1.0) * (hi - lo)
            for j, (lo, hi) in enumerate(ranges)
        ]
        margin, report = evaluate_point(assemble(coords))
        evals += 1
        if best_report is None or margin < best_margin:
            best_coords, best_margin, best_report = coords, margin, report
    assert best_report is not None

    def line_minimize(j: int, cap: int) -> tuple[float, float, Optional[InequalityReport], int]:
        """Golden-section along coordinate j from the current best point."""
        lo, hi = ranges[j]
        base = list(best_coords)

        def g(x: float) -> tuple[float, InequalityReport]:
            base[j] = x
            return evaluate_point(assemble(base))

        used = 0
        left, right = lo, hi
        c = right - _INVPHI * (right - left)
        d = left + _INVPHI * (right - left)
        fc, rc = g(c)
        fd, rd = g(d)
        used += 2
        if fc <= fd:
            line_x, line_f, line_r = c, fc, rc
        else:
            line_x, line_f, line_r = d, fd, rd
        while (right - left) > _BRACKET_REL * (hi - lo) and used < cap:
            if fc <= fd:
                right, d, fd, rd = d, c, fc, rc
                c = right - _INVPHI * (right - left)
                fc, rc = g(c)
            else:
                left, c, fc, rc = c, d, fd, rd
                d = left + _INVPHI * (right - left)
                fd, rd = g(d)
            used += 1
            candidate_f, candidate_x, candidate_r = (fc, c, rc) if fc <= fd else (fd, d, rd)
            if candidate_f < line_f:
                line_x, line_f, line_r = candidate_x, candidate_f, candidate_r
        return line_x, line_f, line_r, used

    improved = True
    while improved and budget - evals >= 2:
        improved = False
        for j in range(len(dims)):
            cap = budget - evals
            if cap < 2:
                break
            x, fx, report_x, used = line_minimize(j, cap)
            evals += used
            if fx < best_margin and report_x is not None:
                best_coords[j] = x
                best_margin = fx
                best_report = report_x
                improved = True

    return SearchResult(
        best_params=assemble(best_coords),
        best_margin=best_margin,
        report=best_report,
        evals=evals,
    )
