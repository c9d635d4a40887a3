#!/usr/bin/env python3
"""Command-line interface for fingerprint, access and LCE queries on compressed strings."""

import argparse
import logging
import os
import secrets
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

from src.bench import run_bench
from src.errors import GcfpError, OutOfBoundsError, ShapeViolationError
from src.fingerprint import MERSENNE_61, FpConfig
from src.frontends import balanced_slp, lz78_to_linear_slp
from src.grammar import Grammar, LinearSlp
from src.lce import lce, lce_with_finger
from src.linear_index import build_linear_index
from src.loader import GrammarLoader
from src.slp_index import build_index
from src.verify import verify_linear, verify_slp

logger = logging.getLogger("gcfp")

EXIT_OK = 0
EXIT_COLLISION = 1
EXIT_USAGE = 2
EXIT_IO = 3

QUERY_ARITY = {"access": 1, "fp": 2, "lce": 2}


class UsageError(Exception):
    """Bad input that is the caller's fault; maps to exit code 2."""


class InputError(Exception):
    """A file could not be read or written; maps to exit code 3."""


def escape_byte(b: int) -> str:
    """Printable ASCII as itself, everything else (and the backslash) as ``\\xNN``."""
    if 33 <= b <= 126 and b != 0x5C:
        return chr(b)
    return f"\\x{b:02x}"


def unescape_byte(token: str) -> int:
    if token.startswith("\\x"):
        return int(token[2:], 16)
    return ord(token)


def resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    env = os.environ.get("GCFP_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"GCFP_SEED must be an integer, got {env!r}") from None
    return secrets.randbits(64)


def read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read '{path}': {e.strerror or e}") from e


def load_grammar(path: str) -> Grammar:
    loader = GrammarLoader()
    try:
        if path == "-":
            return loader.load(sys.stdin.read())
        return loader.load_file(path)
    except OSError as e:
        raise InputError(f"cannot read '{path}': {e.strerror or e}") from e
    except UnicodeDecodeError as e:
        raise UsageError(f"'{path}' is not a grammar file: {e}") from e


def make_config(grammar: Grammar, args) -> FpConfig:
    seed = resolve_seed(args.seed)
    prime = args.prime or MERSENNE_61
    cfg = FpConfig.from_seed(seed, max_len=grammar.length, prime=prime)
    logger.info("fingerprint config: %s", cfg.to_line())
    return cfg


def parse_query(line: str, lineno: int) -> Tuple[str, List[int]]:
    fields = line.split()
    if not fields or fields[0] not in QUERY_ARITY:
        raise UsageError(f"line {lineno}: unknown query {line.strip()!r}")
    op, rest = fields[0], fields[1:]
    if len(rest) != QUERY_ARITY[op]:
        raise UsageError(f"line {lineno}: '{op}' takes {QUERY_ARITY[op]} positions")
    try:
        positions = [int(f) for f in rest]
    except ValueError:
        raise UsageError(f"line {lineno}: positions must be integers") from None
    if op == "fp" and positions[0] > positions[1]:
        raise UsageError(f"line {lineno}: inverted range {positions[0]} {positions[1]}")
    return op, positions


def answer(idx, op: str, positions: List[int], use_finger: bool) -> str:
    try:
        if op == "access":
            return escape_byte(idx.access(positions[0]))
        i, j = positions
        if op == "fp":
            if use_finger:
                f = idx.fp_range_with_finger(idx.finger_for(i), i, j)
            else:
                f = idx.fp_range(i, j)
            return f"{f.value} {f.length}"
        if use_finger:
            return str(lce_with_finger(idx, i, j))
        return str(lce(idx, i, j))
    except OutOfBoundsError as e:
        return f"error: {e}"


def run_verification(grammar: Grammar, cfg: FpConfig, alg: str, budget: Optional[int]):
    if alg == "linear":
        if isinstance(grammar, LinearSlp):
            try:
                return verify_linear(grammar, cfg)
            except ShapeViolationError as e:
                logger.warning("%s; falling back to the SLP verifier", e)
        else:
            logger.warning("grammar is not a Linear SLP; falling back to the SLP verifier")
    return verify_slp(grammar, cfg, budget)


def cmd_compress(args) -> int:
    text = read_bytes(args.input)
    if not text:
        raise UsageError("cannot compress empty input")
    grammar = lz78_to_linear_slp(text) if args.mode == "lz78" else balanced_slp(text)
    output = GrammarLoader().dump(grammar)
    if args.output:
        try:
            Path(args.output).write_text(output, encoding="ascii")
        except OSError as e:
            raise InputError(f"cannot write '{args.output}': {e.strerror or e}") from e
    else:
        sys.stdout.write(output)
    n = len(grammar)
    print(f"n={n} N={len(text)} ratio={n / len(text):.4f}", file=sys.stderr)
    return EXIT_OK


def cmd_query(args) -> int:
    grammar = load_grammar(args.grammar)
    cfg = make_config(grammar, args)
    linear = isinstance(grammar, LinearSlp)
    if args.finger and not linear:
        raise UsageError("--finger needs a Linear SLP grammar")
    if args.verify != "mc":
        result = run_verification(grammar, cfg, args.verify, None)
        if not result.good:
            print(result.witness)
            return EXIT_COLLISION

    if args.op:
        queries = [parse_query(" ".join(args.op), 1)]
    else:
        if args.queries and args.queries != "-":
            try:
                lines = Path(args.queries).read_text(encoding="utf-8").splitlines()
            except OSError as e:
                raise InputError(f"cannot read '{args.queries}': {e.strerror or e}") from e
        else:
            lines = sys.stdin.read().splitlines()
        queries = [
            parse_query(line, lineno)
            for lineno, line in enumerate(lines, 1)
            if line.strip() and not line.lstrip().startswith("#")
        ]

    idx = build_linear_index(grammar, cfg) if linear else build_index(grammar, cfg)
    if args.workers > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            answers = list(pool.map(lambda q: answer(idx, q[0], q[1], args.finger), queries))
    else:
        answers = [answer(idx, op, positions, args.finger) for op, positions in queries]
    for line in answers:
        print(line)
    return EXIT_OK


def cmd_verify(args) -> int:
    grammar = load_grammar(args.grammar)
    cfg = make_config(grammar, args)
    result = run_verification(grammar, cfg, args.alg, args.budget)
    if result.good:
        print("GOOD")
        return EXIT_OK
    print(result.witness)
    return EXIT_COLLISION


def cmd_bench(args) -> int:
    grammar = load_grammar(args.grammar)
    cfg = make_config(grammar, args)
    if args.dist[0] == "uniform" and len(args.dist) == 1:
        distance = None
    elif args.dist[0] == "local" and len(args.dist) == 2 and args.dist[1].isdigit():
        distance = int(args.dist[1])
    else:
        raise UsageError("--dist takes 'uniform' or 'local D'")
    run_bench(grammar, cfg, args.queries, distance, cfg.rng_seed, sys.stdout)
    return EXIT_OK


def add_seed_options(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--seed", type=int, default=None, help="fingerprint seed (default: $GCFP_SEED or random)"
    )
    parser.add_argument("--prime", type=int, default=None, help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcfp",
        description="Fingerprints, random access and LCE queries on grammar-compressed strings",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  %(prog)s compress text.txt -o text.slp --mode lz78
  echo "lce 1 5" | %(prog)s query text.slp --seed 7
  %(prog)s verify text.slp --alg linear
  %(prog)s bench text.slp --queries 1000 --dist local 16
        """,
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging")
    parser.add_argument("--version", action="version", version="%(prog)s 1.0.0")
    sub = parser.add_subparsers(dest="command", required=True)

    compress = sub.add_parser("compress", help="build a grammar from raw bytes")
    compress.add_argument("input", help='input file (use "-" for stdin)')
    compress.add_argument("-o", "--output", default=None, help="grammar file (default: stdout)")
    compress.add_argument("--mode", choices=["lz78", "balanced"], default="lz78")
    compress.set_defaults(func=cmd_compress)

    query = sub.add_parser("query", help="answer access/fp/lce queries")
    query.add_argument("grammar", help='grammar file (use "-" for stdin)')
    query.add_argument(
        "--op", nargs="+", default=None, metavar="OP", help="a single query, e.g. --op lce 1 5"
    )
    query.add_argument("--queries", default=None, help="query file (default: stdin)")
    query.add_argument("--finger", action="store_true", help="use finger queries")
    query.add_argument("--verify", choices=["mc", "slp", "linear"], default="mc")
    query.add_argument("--workers", type=int, default=1)
    add_seed_options(query)
    query.set_defaults(func=cmd_query)

    verify = sub.add_parser("verify", help="check the fingerprint function is collision-free")
    verify.add_argument("grammar")
    verify.add_argument("--alg", choices=["slp", "linear"], default="slp")
    verify.add_argument("--budget", type=int, default=None, help="max dictionary entries")
    add_seed_options(verify)
    verify.set_defaults(func=cmd_verify)

    bench = sub.add_parser("bench", help="time queries and print CSV")
    bench.add_argument("grammar")
    bench.add_argument("--queries", type=int, default=1000)
    bench.add_argument("--dist", nargs="+", default=["uniform"], metavar="uniform|local D")
    add_seed_options(bench)
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        return args.func(args)
    except InputError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_IO
    except SyntaxError as e:
        print(f"Syntax Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, GcfpError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
