"""Command-line driver: ``keyvar list`` and ``keyvar run``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from .registry import (DEFAULT_SEED, SEED_ENV, WHITELISTED_DISCREPANCIES, Registry, RunConfig,
                       default_registry, exit_code, lforms_check, run_checks)
from .results import CheckResult
from .sampling import DEFAULT_TRIALS

EXIT_CONFIG = 2

MACHINE_KEYS = ("id", "status", "witness", "elapsed", "notes")


class ConfigError(ValueError):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="keyvar", description="Exact checks of the key variety equations.")
    sub = p.add_subparsers(dest="command", required=True)
    ls = sub.add_parser("list", help="print check identifiers")
    ls.add_argument("patterns", nargs="*", help="glob patterns such as 'typeR.mq*'")
    run = sub.add_parser("run", help="run checks")
    run.add_argument("patterns", nargs="*", help="glob patterns; all checks when omitted")
    run.add_argument("--all", action="store_true", help="run every check (same as no pattern)")
    run.add_argument("--seed", type=int, default=None,
                     help=f"sampling seed (default ${SEED_ENV} or {DEFAULT_SEED})")
    run.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="samples per sampled check")
    run.add_argument("--degree-bound", type=int, default=None,
                     help="coefficient degree bound for bounded certificate searches")
    run.add_argument("--format", choices=("text", "machine"), default="text")
    run.add_argument("--fail-fast", action="store_true", help="stop at the first failing check")
    run.add_argument("--lforms", metavar="FILE", help="JSON file with six linear forms for the Type IR hook")
    run.add_argument("--timings", action="store_true", help="record elapsed milliseconds per check")
    run.add_argument("--jobs", type=int, default=1, help="worker processes")
    return p


def resolve_seed(value: Optional[int], environ=os.environ) -> int:
    if value is not None:
        return value
    raw = environ.get(SEED_ENV)
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def format_machine(res: CheckResult) -> str:
    obj = {"id": res.id, "status": res.status, "witness": res.witness,
           "elapsed": None if res.elapsed is None else round(res.elapsed, 3), "notes": res.notes}
    return json.dumps(obj, sort_keys=False, ensure_ascii=False)


def format_text(res: CheckResult) -> str:
    tag = res.status.upper()
    if res.status == "discrepancy" and res.id in WHITELISTED_DISCREPANCIES:
        tag += " (known)"
    line = f"{tag:<22}{res.id}"
    if res.elapsed is not None:
        line += f"  [{res.elapsed:.0f} ms]"
    out = [line]
    if res.notes:
        out.append("    " + res.notes)
    if res.witness is not None and res.status != "pass":
        out.append("    witness: " + res.witness)
    return "\n".join(out)


def summary_line(results: Sequence[CheckResult]) -> str:
    counts = {}
    for r in results:
        counts[r.status] = counts.get(r.status, 0) + 1
    parts = [f"{counts.get(s, 0)} {s}" for s in ("pass", "fail", "inconclusive", "discrepancy")]
    return f"{len(results)} checks: " + ", ".join(parts)


def main(argv: Optional[List[str]] = None, registry: Optional[Registry] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else 0
    reg = registry.copy() if registry is not None else default_registry()

    if args.command == "list":
        for check in reg.select(args.patterns):
            print(check.id, file=out)
        return 0

    try:
        seed = resolve_seed(args.seed)
        patterns = () if args.all else tuple(args.patterns)
        config = RunConfig(patterns=patterns, seed=seed, trials=args.trials,
                           degree_bound=args.degree_bound, fmt=args.format,
                           fail_fast=args.fail_fast, timings=args.timings, jobs=args.jobs)
        if args.lforms:
            from .type_ir.checks import load_lforms
            tag, forms = load_lforms(args.lforms)
            reg.register(lforms_check(tag, forms))
    except (ConfigError, ValueError, OSError) as exc:
        print(f"keyvar: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    results = run_checks(reg, config)
    for res in results:
        print(format_machine(res) if config.fmt == "machine" else format_text(res), file=out)
    if config.fmt == "text":
        print(summary_line(results), file=out)
    return exit_code(results)


if __name__ == "__main__":
    sys.exit(main())
