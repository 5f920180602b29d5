"""
depfca command line.

Examples:
  depfca binarize people.csv
  depfca check-fd people.csv --lhs id --rhs name --method context
  depfca discover-fd people.csv --max-lhs 2 --format json
  depfca check-mvd courses.csv --lhs course --rhs "teacher|book"
  depfca check-dmvd courses.csv --lhs course --rhs "teacher|book"
  depfca gamma courses.csv --partition "course|teacher,book"
  depfca lattice courses.csv --kind dmvd --closure join
  depfca partition people.csv --attrs id,name

Exit codes: 0 success / HOLDS, 1 FAILS, 2 usage, 3 ingestion, 4 capacity.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence, TextIO

from pydantic import ValidationError

from .config import IngestOptions, get_settings, setup_logging
from .context import binarize, implication_holds, to_burmeister
from .dmvd_lattice import JOIN, MEET, dmvd_holds, dmvd_lattice, mvd_lattice
from .exceptions import CapacityError, ContractError, DepFCAError, IngestionError, UsageError
from .fd_discovery import discover_minimal_fds
from .mvd import AttrPartition, GaloisConnection, GeneralizedMVD
from .oracle import oracle_fd, oracle_mvd
from .partitions import fd_holds, partition_of_set
from .relation import AttrSet, Relation, load_csv
from .schemas import (
    CheckResult,
    ContextRecord,
    FDRecord,
    LatticeRecord,
    PartitionRecord,
    TuplePartitionRecord,
    dump_json,
    partition_blocks,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_INGESTION = 3
EXIT_CAPACITY = 4

FD_METHODS = ("partition", "context", "oracle")
MVD_METHODS = ("closure", "oracle")


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so run() owns the exit code"""

    def error(self, message):
        raise UsageError(message)


def _global_flags() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--delimiter", default=",", help="CSV field delimiter (default: ,)")
    common.add_argument("--dedupe-rows", action="store_true", help="Drop exact duplicate rows, keeping the first")
    common.add_argument("--null-distinct", action="store_true", help="Treat every empty cell as unequal to every cell")
    common.add_argument("--max-tuples", type=int, default=None, help="phi enumeration cap (default: DEPFCA_MAX_TUPLES)")
    common.add_argument("--max-lhs", type=int, default=None, help="Largest FD left-hand side (default: no bound)")
    common.add_argument("--format", choices=("text", "json"), default="text", help="Output format (default: text)")
    common.add_argument("--log-level", default=None, help="Log level (default: DEPFCA_LOG_LEVEL)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = _Parser(
        prog="depfca",
        description="Check and discover functional and multivalued dependencies in CSV tables",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__.split("\n", 2)[2],
    )
    verbs = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def verb(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = verbs.add_parser(name, parents=[common], help=help_text, description=help_text)
        sub.add_argument("csv", help="Input CSV file with a header row")
        return sub

    verb("binarize", "Print the tuple-pair formal context (Burmeister format)")

    sub = verb("check-fd", "Check the functional dependency LHS -> RHS")
    sub.add_argument("--lhs", default="", help="Comma-separated attribute names (default: empty set)")
    sub.add_argument("--rhs", required=True, help="Comma-separated attribute names")
    sub.add_argument("--method", choices=FD_METHODS, default="partition")

    verb("discover-fd", "List all minimal non-trivial FDs")

    sub = verb("check-mvd", "Check the generalized MVD LHS ->> Y1|...|Ym")
    sub.add_argument("--lhs", default="", help="Comma-separated attribute names (default: empty set)")
    sub.add_argument("--rhs", required=True, help='Blocks separated by "|", names by ","')
    sub.add_argument("--method", choices=MVD_METHODS, default="closure")

    sub = verb("check-dmvd", "Check the degenerated MVD LHS ->> Y1|...|Ym")
    sub.add_argument("--lhs", default="", help="Comma-separated attribute names (default: empty set)")
    sub.add_argument("--rhs", required=True, help='Blocks separated by "|", names by ","')

    sub = verb("gamma", "Print the Gamma closure of an attribute partition")
    sub.add_argument("--partition", required=True, help='Blocks separated by "|", names by ","')

    sub = verb("lattice", "Print the DMVD or MVD attribute-partition lattice")
    sub.add_argument("--kind", choices=("dmvd", "mvd"), required=True)
    sub.add_argument("--closure", choices=(MEET, JOIN), default=None, help="DMVD lattice closure (default: meet)")

    sub = verb("partition", "Print the tuple partition induced by an attribute set")
    sub.add_argument("--attrs", default="", help="Comma-separated attribute names (default: empty set)")

    return parser


# ========================== FLAG PARSING ==========================

def _names(text: str) -> List[str]:
    return [name.strip() for name in text.split(",") if name.strip()]


def _resolve(rel: Relation, text: str) -> AttrSet:
    try:
        return rel.resolve(_names(text))
    except ContractError as e:
        raise UsageError(str(e)) from e


def _blocks(rel: Relation, text: str, flag: str) -> List[AttrSet]:
    blocks = [_resolve(rel, part) for part in text.split("|")]
    if any(not block for block in blocks):
        raise UsageError(f"{flag} has an empty block: {text!r}")
    return blocks


def _dependency(rel: Relation, args) -> GeneralizedMVD:
    try:
        return GeneralizedMVD(_resolve(rel, args.lhs), tuple(_blocks(rel, args.rhs, "--rhs")), rel.arity)
    except ContractError as e:
        raise UsageError(str(e)) from e


def _load(args) -> Relation:
    try:
        opts = IngestOptions(
            dedupe_rows=args.dedupe_rows,
            null_distinct=args.null_distinct,
            delimiter=args.delimiter,
        )
    except ValidationError as e:
        raise UsageError(e.errors()[0]["msg"]) from e
    return load_csv(args.csv, opts)


def _verdict(holds: bool) -> int:
    return EXIT_OK if holds else EXIT_FAILS


def _emit_check(out: TextIO, args, kind: str, rel: Relation, lhs: AttrSet, rhs: Sequence[AttrSet], method: str, holds: bool):
    if args.format == "json":
        result = CheckResult(
            kind=kind,
            lhs=rel.names(lhs),
            rhs=[rel.names(block) for block in rhs],
            method=method,
            holds=holds,
        )
        out.write(dump_json(CheckResult, result) + "\n")
    else:
        out.write("HOLDS\n" if holds else "FAILS\n")


# ========================== COMMANDS ==========================

def cmd_binarize(args, out: TextIO) -> int:
    rel = _load(args)
    ctx = binarize(rel)
    if args.format == "json":
        record = ContextRecord(
            objects=[list(pair) for pair in ctx.objects],
            attributes=list(ctx.attributes),
            incidence=ctx.incidence.tolist(),
        )
        out.write(dump_json(ContextRecord, record) + "\n")
    else:
        out.write(to_burmeister(ctx))
    return EXIT_OK


def cmd_check_fd(args, out: TextIO) -> int:
    rel = _load(args)
    lhs = _resolve(rel, args.lhs)
    rhs = _resolve(rel, args.rhs)
    if not rhs:
        raise UsageError("--rhs names no attribute")

    if args.method == "context":
        holds = implication_holds(binarize(rel), lhs, rhs)
    elif args.method == "oracle":
        holds = oracle_fd(rel, lhs, rhs)
    else:
        holds = fd_holds(rel, lhs, rhs)
    _emit_check(out, args, "fd", rel, lhs, [rhs], args.method, holds)
    return _verdict(holds)


def cmd_discover_fd(args, out: TextIO) -> int:
    rel = _load(args)
    if args.max_lhs is not None and args.max_lhs < 0:
        raise UsageError(f"--max-lhs must be >= 0, got {args.max_lhs}")
    fds = discover_minimal_fds(rel, max_lhs=args.max_lhs)
    if args.format == "json":
        out.write(dump_json(List[FDRecord], [FDRecord.from_fd(fd, rel) for fd in fds]) + "\n")
    else:
        for fd in fds:
            out.write(fd.render(rel) + "\n")
    return EXIT_OK


def cmd_check_mvd(args, out: TextIO) -> int:
    rel = _load(args)
    d = _dependency(rel, args)
    if args.method == "oracle":
        holds = oracle_mvd(rel, d)
    else:
        holds = GaloisConnection(rel, args.max_tuples).mvd_holds(d)
    _emit_check(out, args, "mvd", rel, d.lhs, d.rhs_blocks, args.method, holds)
    return _verdict(holds)


def cmd_check_dmvd(args, out: TextIO) -> int:
    rel = _load(args)
    d = _dependency(rel, args)
    holds = dmvd_holds(rel, d)
    _emit_check(out, args, "dmvd", rel, d.lhs, d.rhs_blocks, "agreement", holds)
    return _verdict(holds)


def cmd_gamma(args, out: TextIO) -> int:
    rel = _load(args)
    try:
        p = AttrPartition(_blocks(rel, args.partition, "--partition"), rel.arity)
    except ContractError as e:
        raise UsageError(f"--partition must cover every attribute once: {e}") from e
    closed = GaloisConnection(rel, args.max_tuples).gamma(p)
    if args.format == "json":
        out.write(dump_json(PartitionRecord, PartitionRecord(blocks=partition_blocks(closed, rel.attributes))) + "\n")
    else:
        out.write(closed.render(rel.attributes) + "\n")
    return EXIT_OK


def cmd_lattice(args, out: TextIO) -> int:
    if args.kind == "mvd" and args.closure is not None:
        raise UsageError("--closure applies to --kind dmvd only")
    rel = _load(args)
    if args.kind == "dmvd":
        closure = args.closure or MEET
        lattice = dmvd_lattice(rel, closure)
    else:
        closure = "gamma"
        lattice = mvd_lattice(rel, max_tuples=args.max_tuples)

    if args.format == "json":
        record = LatticeRecord(
            kind=args.kind,
            closure=closure,
            elements=[partition_blocks(p, rel.attributes) for p in lattice.sorted()],
        )
        out.write(dump_json(LatticeRecord, record) + "\n")
    else:
        for line in lattice.render(rel.attributes):
            out.write(line + "\n")
    return EXIT_OK


def cmd_partition(args, out: TextIO) -> int:
    rel = _load(args)
    xs = _resolve(rel, args.attrs)
    p = partition_of_set(rel, xs)
    if args.format == "json":
        record = TuplePartitionRecord(attributes=rel.names(xs), blocks=[list(b) for b in p.blocks])
        out.write(dump_json(TuplePartitionRecord, record) + "\n")
    else:
        out.write("|".join(",".join(map(str, b)) for b in p.blocks) + "\n")
    return EXIT_OK


COMMANDS: Dict[str, Callable] = {
    "binarize": cmd_binarize,
    "check-fd": cmd_check_fd,
    "discover-fd": cmd_discover_fd,
    "check-mvd": cmd_check_mvd,
    "check-dmvd": cmd_check_dmvd,
    "gamma": cmd_gamma,
    "lattice": cmd_lattice,
    "partition": cmd_partition,
}


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Execute one command

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])
        stdout: Result stream
        stderr: Diagnostic stream

    Returns:
        Process exit code
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        setup_logging(args.log_level or get_settings().log_level)
        logger.info(f"depfca {args.command} {args.csv}")
        if args.max_tuples is not None and args.max_tuples < 1:
            raise UsageError(f"--max-tuples must be >= 1, got {args.max_tuples}")
        return COMMANDS[args.command](args, stdout)
    except (UsageError, ContractError) as e:
        stderr.write(f"[ERROR] {e}\n")
        return EXIT_USAGE
    except IngestionError as e:
        stderr.write(f"[ERROR] {e}\n")
        return EXIT_INGESTION
    except CapacityError as e:
        stderr.write(f"[ERROR] {e}\n")
        return EXIT_CAPACITY
    except DepFCAError as e:
        stderr.write(f"[ERROR] {e}\n")
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return int(e.code or 0)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
