"""Command line front end.

Subcommands:
    check     verify one or more inequalities at a single parameter point
    chain     evaluate a refinement chain term by term
    classify  sampling-based class membership, no inequality verification
    sweep     verify inequalities over cartesian parameter grids
    search    minimize an inequality margin over a parameter box

Exit codes: 0 when every verdict holds (classify: membership passed), 1 on
any violation (classify: membership failed), 2 for usage and validation
errors, 3 when some verdict is inconclusive or an output path cannot be
written.

Reports serialize with %.17g floats and a fixed key order, so identical
inputs produce byte-identical JSON and CSV across runs.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from typing import Mapping, Optional, Sequence

from .bounds import VARIANTS, ChainValues, chain_dr1, chain_dr2
from .classify import DEFAULT_SEED, ClassParams, SampleEvaluationError, check_alpha_m_log_convex
from .funcspec import (
    EvaluationError,
    ExprSyntaxError,
    FamilyError,
    FamilySpec,
    FunctionExpr,
    family_instantiate,
    parse,
    registered_families,
)
from .quadrature import MIN_TOL, IntegrandError, Interval
from .verify import (
    CHAIN_THEOREMS,
    INCONCLUSIVE,
    THEOREMS,
    VIOLATED,
    InequalityReport,
    ReportParams,
    SearchResult,
    SweepSummary,
    search_min_margin,
    sweep,
    verify_theorem,
)

__all__ = [
    "EXIT_OK",
    "EXIT_VIOLATED",
    "EXIT_USAGE",
    "EXIT_INCONCLUSIVE",
    "report_to_dict",
    "report_from_dict",
    "summary_to_dict",
    "run",
    "main",
]

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


class _CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# serialization


def _fmt_float(value: float) -> str:
    return "%.17g" % value


_STRING_ESCAPES = {'"': '\\"', "\\": "\\\\", "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _json_string(text: str) -> str:
    parts = ['"']
    for ch in text:
        if ch in _STRING_ESCAPES:
            parts.append(_STRING_ESCAPES[ch])
        elif ord(ch) < 0x20:
            parts.append("\\u%04x" % ord(ch))
        else:
            parts.append(ch)
    parts.append('"')
    return "".join(parts)


def _json_value(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return _fmt_float(value) if math.isfinite(value) else "null"
    if isinstance(value, str):
        return _json_string(value)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_json_value(item) for item in value) + "]"
    if isinstance(value, dict):
        return "{" + ",".join(f"{_json_string(key)}:{_json_value(item)}" for key, item in value.items()) + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _params_to_dict(params: ReportParams) -> dict:
    return {
        "a": params.a,
        "b": params.b,
        "alpha": params.alpha,
        "m": params.m,
        "family_params": None if params.family is None else dict(params.family),
    }


def report_to_dict(report: InequalityReport) -> dict:
    """The JSON form of a report: exactly these nine keys, in this order."""
    return {
        "theorem": report.theorem,
        "variant": report.variant,
        "params": _params_to_dict(report.params),
        "hypothesis": report.hypothesis,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "margin": report.margin,
        "quad_err": report.quad_err,
        "verdict": report.verdict,
    }


def report_from_dict(data: Mapping) -> InequalityReport:
    """Rebuild a report from its JSON form (diagnostics are not serialized)."""
    params = data["params"]
    fam = params.get("family_params")
    family = None if fam is None else tuple(sorted((str(k), float(v)) for k, v in fam.items()))

    def opt(key: str) -> Optional[float]:
        return None if data[key] is None else float(data[key])

    return InequalityReport(
        theorem=str(data["theorem"]),
        variant=str(data["variant"]),
        params=ReportParams(
            float(params["a"]), float(params["b"]), float(params["alpha"]), float(params["m"]), family
        ),
        hypothesis=str(data["hypothesis"]),
        lhs=opt("lhs"),
        rhs=opt("rhs"),
        margin=opt("margin"),
        quad_err=float(data["quad_err"]),
        verdict=str(data["verdict"]),
    )


def summary_to_dict(summary: SweepSummary) -> dict:
    if summary.min_margin is None:
        best = None
    else:
        best = {
            "value": summary.min_margin.value,
            "theorem": summary.min_margin.theorem,
            "variant": summary.min_margin.variant,
            "params": _params_to_dict(summary.min_margin.params),
        }
    return {"reports": [report_to_dict(r) for r in summary.reports], "min_margin": best}


_CSV_COLUMNS = (
    "theorem", "variant", "a", "b", "alpha", "m", "family_params",
    "lhs", "rhs", "margin", "quad_err", "hypothesis", "verdict",
)


def _family_cell(params: ReportParams) -> str:
    if params.family is None:
        return ""
    return ";".join(f"{name}={_fmt_float(value)}" for name, value in params.family)


def _reports_to_csv(reports: Sequence[InequalityReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for r in reports:
        writer.writerow(
            [
                r.theorem,
                r.variant,
                _fmt_float(r.params.a),
                _fmt_float(r.params.b),
                _fmt_float(r.params.alpha),
                _fmt_float(r.params.m),
                _family_cell(r.params),
                "" if r.lhs is None else _fmt_float(r.lhs),
                "" if r.rhs is None else _fmt_float(r.rhs),
                "" if r.margin is None else _fmt_float(r.margin),
                _fmt_float(r.quad_err),
                r.hypothesis,
                r.verdict,
            ]
        )
    return buf.getvalue()


def _emit(text: str, destination: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if destination == "-":
        sys.stdout.write(text)
    else:
        with open(destination, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# tables


def _format_table(rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "\n".join(
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows
    )


def _g12(value: Optional[float]) -> str:
    return "-" if value is None else "%.12g" % value


def _report_rows(reports: Sequence[InequalityReport], with_params: bool) -> str:
    if with_params:
        rows = [["theorem", "variant", "family", "a", "b", "alpha", "m", "hypothesis", "verdict", "margin"]]
        for r in reports:
            rows.append(
                [
                    r.theorem, r.variant, _family_cell(r.params) or "-",
                    "%.6g" % r.params.a, "%.6g" % r.params.b,
                    "%.6g" % r.params.alpha, "%.6g" % r.params.m,
                    r.hypothesis, r.verdict, _g12(r.margin),
                ]
            )
    else:
        rows = [["theorem", "variant", "hypothesis", "verdict", "lhs", "rhs", "margin", "quad_err"]]
        for r in reports:
            rows.append(
                [
                    r.theorem, r.variant, r.hypothesis, r.verdict,
                    _g12(r.lhs), _g12(r.rhs), _g12(r.margin), _g12(r.quad_err),
                ]
            )
    lines = [_format_table(rows)]
    for r in reports:
        if r.diagnostics:
            lines.append(f"note ({r.theorem}): {r.diagnostics}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument helpers


def _resolve_seed(cli_seed: Optional[int]) -> int:
    if cli_seed is not None:
        return cli_seed
    env = os.environ.get("HH_SEED")
    if env is not None:
        try:
            return int(env, 0)
        except ValueError:
            raise _CliError(f"HH_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _validate_tol(tol: float) -> None:
    if not (math.isfinite(tol) and tol >= MIN_TOL):
        raise _CliError(f"--tol must be >= {MIN_TOL:g}, got {tol!r}")


def _split_assignment(item: str, what: str) -> tuple[str, str]:
    name, sep, value = item.partition("=")
    if not sep or not name or not value:
        raise _CliError(f"{what} expects NAME=VALUE, got {item!r}")
    return name, value


def _parse_param_values(items: Sequence[str]) -> dict[str, float]:
    out: dict[str, float] = {}
    for item in items:
        name, value = _split_assignment(item, "--param")
        if name in out:
            raise _CliError(f"duplicate --param {name!r}")
        out[name] = float(value)
    return out


def _parse_grid(text: str) -> list[float]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise _CliError(f"grid must be 'lo:hi:n', a value, or a comma list, got {text!r}")
        lo, hi = float(parts[0]), float(parts[1])
        n = int(parts[2])
        if n < 1:
            raise _CliError(f"grid count must be >= 1, got {n}")
        if n == 1:
            return [lo]
        values = [lo + (hi - lo) * i / (n - 1) for i in range(n)]
        values[-1] = hi
        return values
    return [float(part) for part in text.split(",")]


def _parse_param_grids(items: Sequence[str]) -> dict[str, list[float]]:
    out: dict[str, list[float]] = {}
    for item in items:
        name, value = _split_assignment(item, "--param")
        if name in out:
            raise _CliError(f"duplicate --param {name!r}")
        out[name] = _parse_grid(value)
    return out


def _parse_ranges(items: Sequence[str]) -> dict[str, tuple[float, float]]:
    out: dict[str, tuple[float, float]] = {}
    for item in items:
        name, value = _split_assignment(item, "--range")
        parts = value.split(":")
        if len(parts) != 2:
            raise _CliError(f"--range expects NAME=LO:HI, got {item!r}")
        if name in out:
            raise _CliError(f"duplicate --range {name!r}")
        out[name] = (float(parts[0]), float(parts[1]))
    return out


def _parse_theorems(items: Sequence[str]) -> list[str]:
    names: list[str] = []
    for item in items:
        names.extend(part for part in (s.strip() for s in item.split(",")) if part)
    if not names:
        raise _CliError("at least one --theorem is required")
    for name in names:
        if name not in THEOREMS:
            raise _CliError(f"unknown theorem {name!r} (known: {', '.join(THEOREMS)})")
    return names


def _resolve_function(args) -> tuple[FunctionExpr, Optional[FamilySpec]]:
    if args.f is not None and args.family is not None:
        raise _CliError("give either --f or --family, not both")
    if args.f is not None:
        if args.param:
            raise _CliError("--param only applies with --family")
        return parse(args.f), None
    if args.family is not None:
        spec = FamilySpec(args.family, _parse_param_values(args.param))
        return family_instantiate(spec), spec
    raise _CliError("a function is required: --f EXPR or --family NAME --param NAME=VALUE")


def _exit_code(reports: Sequence[InequalityReport]) -> int:
    verdicts = {r.verdict for r in reports}
    if VIOLATED in verdicts:
        return EXIT_VIOLATED
    if INCONCLUSIVE in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _emit_reports(args, reports: Sequence[InequalityReport], with_params: bool) -> None:
    wrote = False
    if args.json is not None:
        payload = report_to_dict(reports[0]) if len(reports) == 1 else [report_to_dict(r) for r in reports]
        _emit(_json_value(payload), args.json)
        wrote = True
    if getattr(args, "csv", None) is not None:
        _emit(_reports_to_csv(reports), args.csv)
        wrote = True
    if not wrote:
        print(_report_rows(reports, with_params))


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_check(args) -> int:
    f, family = _resolve_function(args)
    theorems = _parse_theorems(args.theorem)
    seed = _resolve_seed(args.seed)
    _validate_tol(args.tol)
    iv = Interval(args.a, args.b)
    reports = [
        verify_theorem(
            theorem, f, iv, m=args.m, alpha=args.alpha, variant=args.variant, tol=args.tol,
            check_hypothesis=args.hypothesis == "on", grid_n=args.grid_n, tol_rel=args.tol_rel,
            seed=seed, family=family,
        )
        for theorem in theorems
    ]
    _emit_reports(args, reports, with_params=False)
    return _exit_code(reports)


def _chain_to_dict(theorem: str, chain: ChainValues, report: InequalityReport) -> dict:
    return {
        "theorem": theorem,
        "terms": [{"label": t.label, "value": t.value, "err_est": t.err_est} for t in chain.terms],
        "report": report_to_dict(report),
    }


def _cmd_chain(args) -> int:
    f, family = _resolve_function(args)
    seed = _resolve_seed(args.seed)
    _validate_tol(args.tol)
    iv = Interval(args.a, args.b)
    chain_fn = chain_dr1 if args.theorem == "dr1" else chain_dr2
    chain = chain_fn(f, iv, args.tol)
    report = verify_theorem(
        args.theorem, f, iv, tol=args.tol, check_hypothesis=args.hypothesis == "on",
        grid_n=args.grid_n, tol_rel=args.tol_rel, seed=seed, family=family,
    )
    if args.json is not None:
        _emit(_json_value(_chain_to_dict(args.theorem, chain, report)), args.json)
    else:
        rows = [["term", "value", "err_est"]]
        rows.extend([t.label, _g12(t.value), _g12(t.err_est)] for t in chain.terms)
        print(_format_table(rows))
        print(f"verdict: {report.verdict} (margin {_g12(report.margin)}, {report.diagnostics})")
    return _exit_code([report])


def _cmd_classify(args) -> int:
    f, _family = _resolve_function(args)
    seed = _resolve_seed(args.seed)
    if not (math.isfinite(args.domain_upper) and args.domain_upper > 0.0):
        raise _CliError(f"--domain-upper must be positive, got {args.domain_upper!r}")
    params = ClassParams(m=args.m, alpha=args.alpha)
    try:
        report = check_alpha_m_log_convex(
            f, args.domain_upper, params, grid_n=args.grid_n, tol_rel=args.tol_rel, seed=seed
        )
    except SampleEvaluationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    worst = None
    if report.worst_violation is not None:
        w = report.worst_violation
        worst = {"x": w.x, "y": w.y, "t": w.t, "lhs": w.lhs, "rhs": w.rhs, "deficit": w.deficit}
    payload = {
        "verdict": report.verdict,
        "samples": report.samples,
        "m": args.m,
        "alpha": args.alpha,
        "domain_upper": args.domain_upper,
        "worst_violation": worst,
    }
    if args.json is not None:
        _emit(_json_value(payload), args.json)
    else:
        print(f"verdict: {report.verdict} (samples={report.samples}, m={args.m:g}, alpha={args.alpha:g})")
        if worst is not None:
            print(
                "worst violation: x=%.12g y=%.12g t=%.12g lhs=%.12g rhs=%.12g deficit=%.12g"
                % (worst["x"], worst["y"], worst["t"], worst["lhs"], worst["rhs"], worst["deficit"])
            )
    return EXIT_OK if report.verdict == "pass" else EXIT_VIOLATED


def _cmd_sweep(args) -> int:
    theorems = _parse_theorems(args.theorem)
    seed = _resolve_seed(args.seed)
    _validate_tol(args.tol)
    summary = sweep(
        args.family,
        _parse_param_grids(args.param),
        _parse_grid(args.a),
        _parse_grid(args.b),
        _parse_grid(args.m),
        _parse_grid(args.alpha),
        theorems,
        variant=args.variant,
        tol=args.tol,
        hypothesis=args.hypothesis,
        grid_n=args.grid_n,
        tol_rel=args.tol_rel,
        seed=seed,
    )
    wrote = False
    if args.json is not None:
        _emit(_json_value(summary_to_dict(summary)), args.json)
        wrote = True
    if args.csv is not None:
        _emit(_reports_to_csv(summary.reports), args.csv)
        wrote = True
    if not wrote:
        if summary.reports:
            print(_report_rows(summary.reports, with_params=True))
        counts = "  ".join(f"{verdict}: {count}" for verdict, count in summary.counts.items())
        print(f"reports: {len(summary.reports)}  {counts}")
        if summary.min_margin is not None:
            mm = summary.min_margin
            p = mm.params
            print(
                "min margin: %.12g (%s, a=%.6g b=%.6g alpha=%.6g m=%.6g%s)"
                % (mm.value, mm.theorem, p.a, p.b, p.alpha, p.m,
                   f", {_family_cell(p)}" if p.family else "")
            )
    return _exit_code(summary.reports)


def _search_to_dict(result: SearchResult) -> dict:
    return {
        "best_params": {name: result.best_params[name] for name in sorted(result.best_params)},
        "best_margin": result.best_margin if math.isfinite(result.best_margin) else None,
        "evals": result.evals,
        "report": report_to_dict(result.report),
    }


def _cmd_search(args) -> int:
    seed = _resolve_seed(args.seed)
    _validate_tol(args.tol)
    result = search_min_margin(
        args.family,
        _parse_ranges(args.range),
        args.theorem,
        variant=args.variant,
        budget=args.budget,
        tol=args.tol,
        fixed=_parse_param_values(args.param),
        seed=seed,
    )
    if args.json is not None:
        _emit(_json_value(_search_to_dict(result)), args.json)
    else:
        point = "  ".join(f"{name}={result.best_params[name]:.12g}" for name in sorted(result.best_params))
        margin = "%.12g" % result.best_margin if math.isfinite(result.best_margin) else "none"
        print(f"best margin: {margin} after {result.evals} evaluations")
        print(f"best point: {point}")
        print(_report_rows([result.report], with_params=False))
    return _exit_code([result.report])


# ---------------------------------------------------------------------------
# parser assembly


def _add_function_options(p: argparse.ArgumentParser, param_help: str) -> None:
    p.add_argument("--f", metavar="EXPR", help="function of x, e.g. 'exp(2*x)' or 'x^2+1'")
    p.add_argument("--family", choices=sorted(registered_families()), help="named parametric family")
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE", help=param_help)


def _add_sampling_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid-n", type=int, default=33, help="membership grid resolution per axis (default 33)")
    p.add_argument("--tol-rel", type=float, default=1e-9, help="membership violation tolerance (default 1e-9)")
    p.add_argument("--seed", type=int, default=None, help="sampling seed; overrides HH_SEED (default 0x5EED)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhverify",
        description="Numerical verifier for integral-mean inequalities of log-convex type functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="verify inequalities at one parameter point")
    _add_function_options(check, "family parameter, e.g. k=2 (repeatable)")
    check.add_argument("--theorem", action="append", required=True, metavar="NAME",
                       help=f"one of {', '.join(THEOREMS)}; comma lists and repeats allowed")
    check.add_argument("--variant", choices=VARIANTS, default="corrected")
    check.add_argument("--a", type=float, default=0.0, help="interval left endpoint (default 0)")
    check.add_argument("--b", type=float, default=1.0, help="interval right endpoint (default 1)")
    check.add_argument("--m", type=float, default=1.0)
    check.add_argument("--alpha", type=float, default=1.0)
    check.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance (default 1e-10)")
    check.add_argument("--hypothesis", choices=("on", "off"), default="on",
                       help="sample class membership before verifying (default on)")
    _add_sampling_options(check)
    check.add_argument("--json", metavar="PATH|-", help="write the report(s) as JSON")
    check.add_argument("--csv", metavar="PATH|-", help="write the report(s) as CSV")
    check.set_defaults(handler=_cmd_check)

    chain = sub.add_parser("chain", help="evaluate a refinement chain term by term")
    _add_function_options(chain, "family parameter, e.g. k=2 (repeatable)")
    chain.add_argument("--theorem", choices=CHAIN_THEOREMS, required=True)
    chain.add_argument("--a", type=float, default=0.0)
    chain.add_argument("--b", type=float, default=1.0)
    chain.add_argument("--tol", type=float, default=1e-10)
    chain.add_argument("--hypothesis", choices=("on", "off"), default="on")
    _add_sampling_options(chain)
    chain.add_argument("--json", metavar="PATH|-")
    chain.set_defaults(handler=_cmd_chain)

    classify = sub.add_parser("classify", help="check class membership only")
    _add_function_options(classify, "family parameter, e.g. c=0.5 (repeatable)")
    classify.add_argument("--m", type=float, default=1.0)
    classify.add_argument("--alpha", type=float, default=1.0)
    classify.add_argument("--domain-upper", type=float, required=True,
                          help="membership is sampled on [0, this]")
    _add_sampling_options(classify)
    classify.add_argument("--json", metavar="PATH|-")
    classify.set_defaults(handler=_cmd_classify)

    swp = sub.add_parser("sweep", help="verify inequalities over parameter grids")
    swp.add_argument("--family", choices=sorted(registered_families()), required=True)
    swp.add_argument("--param", action="append", default=[], metavar="NAME=GRID",
                     help="family parameter grid: 'lo:hi:n', a value, or a comma list (repeatable)")
    swp.add_argument("--theorem", action="append", required=True, metavar="NAME")
    swp.add_argument("--variant", choices=VARIANTS, default="corrected")
    swp.add_argument("--a", default="0", metavar="GRID", help="grid for a (default 0)")
    swp.add_argument("--b", default="1", metavar="GRID", help="grid for b (default 1)")
    swp.add_argument("--m", default="1", metavar="GRID", help="grid for m (default 1)")
    swp.add_argument("--alpha", default="1", metavar="GRID", help="grid for alpha (default 1)")
    swp.add_argument("--tol", type=float, default=1e-10)
    swp.add_argument("--hypothesis", choices=("off", "once", "per-point"), default="off",
                     help="membership checking per point, once per family member, or off (default)")
    _add_sampling_options(swp)
    swp.add_argument("--json", metavar="PATH|-")
    swp.add_argument("--csv", metavar="PATH|-")
    swp.set_defaults(handler=_cmd_sweep)

    search = sub.add_parser("search", help="minimize an inequality margin over a box")
    search.add_argument("--family", choices=sorted(registered_families()), required=True)
    search.add_argument("--range", action="append", default=[], metavar="NAME=LO:HI",
                        help="search range for a parameter (family names plus a, b, alpha, m)")
    search.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                        help="pin a parameter to a constant (repeatable)")
    search.add_argument("--theorem", choices=THEOREMS, required=True)
    search.add_argument("--variant", choices=VARIANTS, default="corrected")
    search.add_argument("--budget", type=int, default=200, help="total point evaluations (default 200)")
    search.add_argument("--tol", type=float, default=1e-10)
    search.add_argument("--seed", type=int, default=None)
    search.add_argument("--json", metavar="PATH|-")
    search.set_defaults(handler=_cmd_search)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run a subcommand, and return the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code is None:
            return EXIT_OK
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except _CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except (ExprSyntaxError, FamilyError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (EvaluationError, IntegrandError, SampleEvaluationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


def main() -> None:
    sys.exit(run())
