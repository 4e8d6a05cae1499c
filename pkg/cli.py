"""
Command-line front end for the check suites.

Usage:
    duplex-schur relations --family heckeB --r 1 --m 2
    duplex-schur omega --r 1 --m 3 --I 2,3 --J 1   # prints the word and rank certificate
    duplex-schur qaction --gen B0 --r 1 --m 2 --dump dumps/
    duplex-schur duality --side levi --mode eval --seed 7
    duplex-schur schur --ambient 2r+4
    duplex-schur report-all --config run.env

Exit codes: 0 when every check passed or was skipped, 1 when a check failed or
a suite raised, 2 on usage errors.
"""

import argparse
import sys
from typing import Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from models import CheckReport, RunConfig, write_reports
from orchestrator import run_suite
from tensorspace import OverlapError

load_dotenv()


def parse_positions(text: str) -> list[int]:
    """Comma-separated 1-based positions; the empty string is the empty set."""
    text = text.strip()
    if not text:
        return []
    try:
        return sorted({int(part) for part in text.split(",")})
    except ValueError:
        raise argparse.ArgumentTypeError(f"positions must be comma-separated integers, got {text!r}")


def resolve_ambient(text: str, r: int) -> int:
    """Accept '2r+2', '2r+4' or a literal even integer."""
    compact = text.replace(" ", "").lower()
    if compact == "2r+2":
        return 2 * r + 2
    if compact == "2r+4":
        return 2 * r + 4
    try:
        n = int(compact)
    except ValueError:
        raise ValueError(f"ambient must be 2r+2, 2r+4 or an integer, got {text!r}")
    if n % 2 or not 2 <= n <= 2 * r + 4:
        raise ValueError(f"ambient dimension must be even with 2 <= n <= {2 * r + 4}, got {n}")
    return n


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--r", type=int, default=None, help="rank parameter (default 1)")
    parser.add_argument("--m", type=int, default=None, help="tensor power (default 2)")
    parser.add_argument("--mode", choices=["exact", "eval"], default=None, help="rank computation mode")
    parser.add_argument("--seed", type=int, default=None, help="seed for evaluation points")
    parser.add_argument("--output", default=None, help="JSON report path")
    parser.add_argument("--timings", action="store_true", help="record wall times in the JSON report")
    parser.add_argument("--spot-check", action="store_true", help="exact re-rank of evaluated closures")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="duplex-schur",
        description="Exact checks for the type-B Hecke, duplex Hecke and iota-quantum actions on tensor space",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    relations = sub.add_parser("relations", help="defining relations of H(B_m) and the duplex algebra")
    relations.add_argument("--family", choices=["heckeB", "duplex", "matsumoto"], default=None)
    _common(relations)

    omega = sub.add_parser("omega", help="transport of an (I, J) summand onto the standard summand")
    omega.add_argument("--I", dest="I", type=parse_positions, default=None, help="positions such as 2,3")
    omega.add_argument("--J", dest="J", type=parse_positions, default=None, help="positions such as 1")
    omega.add_argument("--all", action="store_true", help="every disjoint (I, J) pair")
    omega.add_argument("--literal", action="store_true", help="use T_0 instead of T_0^-1 in the word")
    _common(omega)

    qaction = sub.add_parser("qaction", help="one generator action, or the quantum sanity suite")
    qaction.add_argument("--gen", default=None, help="E0, F-1, K2^-1, B1, B0, k2, X, G1, ...")
    qaction.add_argument("--dump", default=None, help="directory for the sparse-matrix dump")
    _common(qaction)

    duality = sub.add_parser("duality", help="double centralizer property")
    duality.add_argument("--side", choices=["levi", "full"], default="levi")
    duality.add_argument("--omit", action="append", default=[], help="generator label to drop (repeatable)")
    _common(duality)

    semisimple = sub.add_parser("semisimple", help="trace-form semisimplicity of both image algebras")
    _common(semisimple)

    schur = sub.add_parser("schur", help="q-Schur checks on V_n^{(x)m}")
    schur.add_argument("--ambient", default="2r+4", help="2r+2, 2r+4 or an even integer n")
    _common(schur)

    report_all = sub.add_parser("report-all", help="every suite in a fixed sequence")
    report_all.add_argument("--config", default=None, help="dotenv-format file with R, M, MODE, SEED, ...")
    _common(report_all)

    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    overrides = {
        "r": args.r,
        "m": args.m,
        "mode": args.mode,
        "seed": args.seed,
        "output": args.output,
        "record_timings": args.timings or None,
        "spot_check": args.spot_check or None,
    }
    if getattr(args, "config", None):
        return RunConfig.from_env_file(args.config, **overrides)
    return RunConfig(**{k: v for k, v in overrides.items() if v is not None})


def _options(args: argparse.Namespace, config: RunConfig) -> dict:
    if args.command == "relations":
        return {"family": args.family}
    if args.command == "omega":
        options = {"literal": args.literal}
        if not args.all and (args.I is not None or args.J is not None):
            options["I"] = args.I or []
            options["J"] = args.J or []
            if set(options["I"]) & set(options["J"]):
                raise OverlapError(f"I={options['I']} and J={options['J']} overlap")
        return options
    if args.command == "qaction":
        return {"gen": args.gen, "dump": args.dump}
    if args.command == "duality":
        return {"side": args.side, "omit": args.omit}
    if args.command == "schur":
        return {"ambient": resolve_ambient(args.ambient, config.r)}
    return {}


def _print_transport(report: CheckReport) -> None:
    """Word and rank certificate of one omega transport."""
    dims = report.dimensions
    for note in report.notes:
        print(f"[Omega] {note}")
    print(
        f"[Omega] rank {dims['rank']}/{dims['target']} "
        f"(projected {dims['projected_rank']}, domain {dims['domain']})"
    )


def run(argv: Optional[list[str]] = None) -> int:
    """
    Parse arguments, run the requested suite and write the JSON report.

    Returns:
        Process exit code
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
        options = _options(args, config)
    except (ValidationError, ValueError) as e:
        parser.error(str(e))

    state = run_suite(args.command, config, options)

    for report in state.reports:
        if report.check == "omega_transport":
            _print_transport(report)

    write_reports(state.reports, config.output, config.record_timings)
    print(f"[OK] Wrote {len(state.reports)} reports to {config.output}")
    for path in state.dumps:
        print(f"[OK] Dump written to {path}")
    for error in state.errors:
        print(f"[X] {error}", file=sys.stderr)
    return 1 if state.failed else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
