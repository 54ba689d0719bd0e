"""Command-line front end for cwforest.

Exit codes: 0 success, 1 a verification witness was found (or a matrix is
not in the monoid), 2 usage error, 3 resource cap exceeded.
"""

import argparse
import sys
from typing import List, Optional

from loguru import logger

from cwforest import __version__
from cwforest.core.classical import cw_row_of, newman_successor
from cwforest.core.config_manager import CONFIG_FILE, DEFAULT_LIMITS, ConfigManager, ResourceLimits
from cwforest.core.errors import CWForestError, ResourceLimitError
from cwforest.core.forest import ForestConfig, decompose, iter_orphans, row
from cwforest.core.matrix_monoid import factor, parse_matrix
from cwforest.core.rational import Rational, continued_fraction, height
from cwforest.core.verify import (
    VerificationReport,
    verify_freeness,
    verify_partition,
    verify_range,
    verify_symmetry,
)
from cwforest.utils.export import ROW_FORMATS, ExportManager, render_row
from cwforest.utils.logging_setup import DEFAULT_LEVEL, setup_logging

EXIT_OK = 0
EXIT_WITNESS = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

# flags each verify claim needs
VERIFY_FLAGS = {
    "symmetry": ("u", "v", "depth"),
    "partition": ("u", "v", "height"),
    "freeness": ("u", "v", "maxlen"),
    "range": ("u", "v", "height"),
}


class UsageError(CWForestError):
    pass


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError(f"expected a positive integer, got {text}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise ValueError(f"expected a nonnegative integer, got {text}")
    return value


def _rational(text: str) -> Rational:
    return Rational.parse(text)


# argparse reports the function name in its error message
_positive_int.__name__ = "positive integer"
_nonnegative_int.__name__ = "nonnegative integer"
_rational.__name__ = "positive rational"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=CONFIG_FILE, help="JSON configuration file")
    common.add_argument("--log-level", default=DEFAULT_LEVEL)
    common.add_argument("--log-file", default=None)
    common.add_argument("--max-depth", type=_nonnegative_int, default=None)
    common.add_argument("--max-height", type=_positive_int, default=None)
    common.add_argument("--max-word-length", type=_positive_int, default=None)
    common.add_argument(
        "--workers",
        type=_positive_int,
        default=None,
        help="threads for the verification sweeps; the checks are pure Python, so only a "
        "free-threaded interpreter turns more workers into a speedup",
    )
    common.add_argument(
        "--unbounded",
        action="store_true",
        help="acknowledge --max-* values above the built-in caps",
    )

    forest = argparse.ArgumentParser(add_help=False)
    forest.add_argument("--u", type=_positive_int, default=1)
    forest.add_argument("--v", type=_positive_int, default=1)

    parser = argparse.ArgumentParser(
        prog="cwforest",
        description="Forests of rational trees generated by L_u and R_v",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    p_row = commands.add_parser("row", parents=[common, forest], help="print row n of a tree")
    p_row.add_argument("--root", type=_rational, default=Rational(1, 1))
    p_row.add_argument("--n", type=_nonnegative_int, required=True)
    p_row.add_argument("--format", choices=ROW_FORMATS, default="text")
    p_row.add_argument("--output", default=None, help="also export the row to CSV or JSON")

    p_locate = commands.add_parser("locate", parents=[common, forest], help="root, path and address of q")
    p_locate.add_argument("q", type=_rational)

    p_verify = commands.add_parser("verify", parents=[common, forest], help="run a verification")
    p_verify.add_argument("claim", choices=tuple(VERIFY_FLAGS))
    p_verify.add_argument("--root", type=_rational, default=Rational(1, 1))
    p_verify.add_argument("--depth", type=_nonnegative_int, default=None)
    p_verify.add_argument("--height", type=_positive_int, default=None)
    p_verify.add_argument("--maxlen", type=_positive_int, default=None)
    p_verify.add_argument("--output", default=None, help="also write the report to a file")

    p_cf = commands.add_parser("cf", parents=[common], help="continued fraction and Calkin-Wilf row")
    p_cf.add_argument("q", type=_rational)

    p_succ = commands.add_parser("successor", parents=[common], help="next Calkin-Wilf entry")
    p_succ.add_argument("q", type=_rational)

    p_orphans = commands.add_parser("orphans", parents=[common, forest], help="tree roots up to a height")
    p_orphans.add_argument("--height", type=_positive_int, required=True)

    p_factor = commands.add_parser("factor", parents=[common, forest], help="word of a monoid element")
    p_factor.add_argument("matrix", help='e.g. "[[3,2],[1,1]]"')

    return parser


def resolve_limits(args: argparse.Namespace) -> ResourceLimits:
    requested = {
        "max_depth": args.max_depth,
        "max_height": args.max_height,
        "max_word_length": args.max_word_length,
    }
    for name, value in requested.items():
        if value is not None and value > getattr(DEFAULT_LIMITS, name) and not args.unbounded:
            raise UsageError(f"--{name.replace('_', '-')} {value} is above the built-in cap; add --unbounded")
    return ConfigManager(args.config).limits(workers=args.workers, **requested)


def _emit_report(report: VerificationReport, output: Optional[str]) -> int:
    print(report.to_json())
    if output:
        ExportManager.export_report(report, output)
    return EXIT_OK if report.passed else EXIT_WITNESS


def cmd_row(args: argparse.Namespace, limits: ResourceLimits) -> int:
    entries = row(ForestConfig(args.u, args.v), args.root, args.n, max_depth=limits.max_depth)
    print(render_row(entries, args.n, args.format))
    if args.output:
        ExportManager.export_row(entries, args.n, args.output)
    return EXIT_OK


def cmd_locate(args: argparse.Namespace, limits: ResourceLimits) -> int:
    # the path of q can be as long as its height
    if height(args.q) > limits.max_height:
        raise ResourceLimitError("height", height(args.q), limits.max_height)
    found = decompose(ForestConfig(args.u, args.v), args.q)
    print(
        f"root={found.root} path={found.word} "
        f"row={found.address.row} index={found.address.index}"
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, limits: ResourceLimits) -> int:
    missing = [flag for flag in VERIFY_FLAGS[args.claim] if getattr(args, flag) is None]
    if missing:
        raise UsageError(f"verify {args.claim} needs " + ", ".join(f"--{m}" for m in missing))

    if args.claim == "symmetry":
        report = verify_symmetry(
            args.u, args.v, args.root, args.depth, max_depth=limits.max_depth, workers=limits.workers
        )
    elif args.claim == "partition":
        report = verify_partition(
            args.u, args.v, args.height, max_height=limits.max_height, workers=limits.workers
        )
    elif args.claim == "freeness":
        report = verify_freeness(
            args.u, args.v, args.maxlen, max_word_length=limits.max_word_length, workers=limits.workers
        )
    else:
        report = verify_range(
            args.u, args.v, args.height, max_height=limits.max_height, workers=limits.workers
        )
    return _emit_report(report, args.output)


def cmd_cf(args: argparse.Namespace, limits: ResourceLimits) -> int:
    coefficients = ",".join(str(a) for a in continued_fraction(args.q))
    print(f"[{coefficients}] row={cw_row_of(args.q)}")
    return EXIT_OK


def cmd_successor(args: argparse.Namespace, limits: ResourceLimits) -> int:
    print(newman_successor(args.q))
    return EXIT_OK


def cmd_orphans(args: argparse.Namespace, limits: ResourceLimits) -> int:
    if args.height > limits.max_height:
        raise ResourceLimitError("height", args.height, limits.max_height)
    for position, q in enumerate(iter_orphans(ForestConfig(args.u, args.v), args.height)):
        sys.stdout.write(f" {q}" if position else str(q))
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_factor(args: argparse.Namespace, limits: ResourceLimits) -> int:
    word = factor(parse_matrix(args.matrix), args.u, args.v)
    if word is None:
        print("none")
        return EXIT_WITNESS
    print(f"path={word}")
    return EXIT_OK


COMMANDS = {
    "row": cmd_row,
    "locate": cmd_locate,
    "verify": cmd_verify,
    "cf": cmd_cf,
    "successor": cmd_successor,
    "orphans": cmd_orphans,
    "factor": cmd_factor,
}


def main(argv: Optional[List[str]] = None) -> int:
    # row entries and addresses outgrow the default int-to-text digit limit
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help and --version exit 0, parse errors exit 2
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        setup_logging(args.log_file, args.log_level.upper())
        limits = resolve_limits(args)
        return COMMANDS[args.command](args, limits)
    except ResourceLimitError as e:
        logger.debug(f"resource cap: {e}")
        print(f"cwforest: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as e:
        logger.debug(f"file error: {e}")
        print(f"cwforest: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CWForestError, ValueError) as e:
        logger.debug(f"usage error: {e}")
        print(f"cwforest: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
