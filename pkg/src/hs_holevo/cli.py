"""Command-line entry point: ``hs-holevo {verify,example,compare}``.

Exit codes: 0 clean, 1 proven-inequality violation, 2 usage/config/IO error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Sequence

from . import report
from .verify import RunConfig, compare_rows, example_sweep, margin_class, run_suite, theta_grid

log = logging.getLogger("hs_holevo")

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
SEED_ENV = "HS_HOLEVO_SEED"


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        out: list[int] = []
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        return out
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers like '2,3' or '2..5', got {text!r}") from None


def _default_seed() -> int:
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None


def _common(p: argparse.ArgumentParser, default_format: str = "csv") -> None:
    p.add_argument("--seed", type=int, default=None, help=f"master seed (default: ${SEED_ENV} or 42)")
    p.add_argument("--format", choices=("csv", "json"), default=default_format)
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)


def _suite_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--audit-trials", type=int, default=999, help="trials of the cross-term identity audit")
    p.add_argument("--dim-p", type=_int_list, default=[2, 3, 4, 5], help="alphabet sizes n, e.g. 2..5")
    p.add_argument("--dim-q", type=_int_list, default=[2, 3, 4, 5, 6], help="signal dimensions q, e.g. 2..6")
    p.add_argument("--mode", choices=("pure", "mixed", "mixed-ranks", "all"), default="mixed-ranks")
    p.add_argument("--tol", type=float, default=1e-9, help="inequality tolerance")
    p.add_argument("--tol-validate", type=float, default=1e-10, help="state validation tolerance")
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hs-holevo", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", default=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="randomized theorem and corollary checks")
    _suite_flags(p)
    _common(p, default_format="json")

    p = sub.add_parser("example", help="two-signal qubit example over a theta grid")
    p.add_argument("--theta-points", type=int, default=181)
    _common(p)

    p = sub.add_parser("compare", help="HS bound next to the Holevo bound, per trial")
    _suite_flags(p)
    _common(p)
    return parser


def _config(args) -> RunConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        return RunConfig(
            seed=seed,
            trials=args.trials,
            dims_p=tuple(args.dim_p),
            dims_q=tuple(args.dim_q),
            ensemble_mode=args.mode,
            tol_ineq=args.tol,
            tol_validate=args.tol_validate,
            audit_trials=args.audit_trials,
            output_format=args.format,
            output_path=args.out,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


def cmd_verify(args, _negate: Sequence[str] = ()) -> int:
    cfg = _config(args)
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    rep = run_suite(cfg, workers=args.workers, _negate=_negate)
    if cfg.output_format == "json":
        _emit(report.dumps(report.report_dict(rep)), cfg.output_path)
    else:
        _emit(report.write_csv(report.verify_rows(rep), report.VERIFY_COLUMNS), cfg.output_path)
    for name, s in rep.summaries().items():
        log.info("%-26s %-9s trials=%-6d min=%+.3e violations=%d", name, s["class"], s["trials"], s["min_margin"], s["violations"])
    if rep.empirical_violations:
        log.warning("empirical-claim violations: %d (reported, not failing)", rep.empirical_violations)
    return EXIT_VIOLATION if rep.proven_violations else EXIT_OK


def cmd_example(args) -> int:
    if args.theta_points < 2:
        raise UsageError("--theta-points must be >= 2")
    records = example_sweep(theta_grid(args.theta_points))
    if args.format == "json":
        _emit(report.dumps(report.example_dict(records)), args.out)
    else:
        _emit(report.write_csv(report.example_rows(records), report.EXAMPLE_COLUMNS), args.out)
    failed = [r for r in records if any(margin_class(k) == "proven" for k in r.violated)]
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_compare(args) -> int:
    cfg = _config(args)
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    rows = compare_rows(cfg, workers=args.workers)
    if cfg.output_format == "json":
        payload = {
            "schema_version": report.SCHEMA_VERSION,
            "version": report.version_string(),
            "command": "compare",
            "config": cfg.to_dict(),
            "rows": rows,
        }
        _emit(report.dumps(payload), cfg.output_path)
    else:
        _emit(report.write_csv(rows, report.COMPARE_COLUMNS), cfg.output_path)
    return EXIT_OK if all(r["satisfied"] for r in rows) else EXIT_VIOLATION


COMMANDS = {"verify": cmd_verify, "example": cmd_example, "compare": cmd_compare}


def main(argv: Sequence[str] | None = None, _negate: Sequence[str] = ()) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(format="%(message)s", stream=sys.stderr)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    try:
        if args.command == "verify":
            return cmd_verify(args, _negate=_negate)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"hs-holevo: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
