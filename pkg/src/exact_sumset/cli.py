"""Command-line front end: every solver on rational text files.

Input files hold one rational token per value (`p/q`, integer, or exact
decimal), whitespace separated, with `#` starting a comment line.  Outputs
are sorted rationals in canonical form, one per line.  Runs are
reproducible: the seed comes from --seed, or the EXACT_SUMSET_SEED
environment variable when the flag is absent, and defaults to 0.

Exit codes: 0 success, 1 internal retry-cap abort, 2 parse error,
3 contract violation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass

from gmpy2 import mpq

from .algebra import format_rational, parse_rational
from .constellation import constellation
from .errors import ContractViolation, ParseError, RetryCapExceeded
from .prony import SparseFn, sumset_size
from .restricted import interval_sumset, prefix_sumset
from .subsetsum import RatMultiset, all_subset_sums, capped_subset_sums
from .sumset import RunStats, SumsetParams, compute_sumset, convolve, real_set
from .threesum import preprocess, query
from . import bench as bench_module

JSON_SCHEMA_VERSION = 1


@dataclass
class RunReport:
    """Per-invocation statistics; emitted to stderr with --stats."""

    operation: str
    input_sizes: list
    output_size: int
    elapsed_s: float
    retries: int
    seed: int

    def lines(self) -> list:
        return [
            f"operation: {self.operation}",
            f"input sizes: {'x'.join(str(s) for s in self.input_sizes)}",
            f"output size: {self.output_size}",
            f"elapsed: {self.elapsed_s:.3f}s",
            f"retries: {self.retries}",
            f"seed: {self.seed}",
        ]

    def as_dict(self) -> dict:
        return {
            "operation": self.operation,
            "input_sizes": self.input_sizes,
            "output_size": self.output_size,
            "elapsed_s": round(self.elapsed_s, 6),
            "retries": self.retries,
            "seed": self.seed,
        }


def _read_tokens(path: str) -> list:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file ({exc})") from exc
    values = []
    for lineno, line in enumerate(lines, start=1):
        body = line.split("#", 1)[0]
        for token in body.split():
            try:
                values.append(parse_rational(token))
            except ParseError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}") from exc
    return values


def _read_set(path: str) -> tuple:
    return real_set(_read_tokens(path))


def _read_point_value_file(path: str) -> SparseFn:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file ({exc})") from exc
    entries = []
    for lineno, line in enumerate(lines, start=1):
        body = line.split("#", 1)[0]
        tokens = body.split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise ParseError(
                f"{path}:{lineno}: expected `point value`, got {len(tokens)} tokens")
        try:
            entries.append((parse_rational(tokens[0]), parse_rational(tokens[1])))
        except ParseError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from exc
    try:
        return SparseFn(entries)
    except ContractViolation as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _emit(args, values, report: RunReport, pair_values=None) -> None:
    if args.format == "json":
        if pair_values is not None:
            payload_values = [[format_rational(x), format_rational(v)]
                              for x, v in pair_values]
        else:
            payload_values = [v if isinstance(v, (bool, int)) else format_rational(v)
                              for v in values]
        print(json.dumps({
            "schema": JSON_SCHEMA_VERSION,
            "values": payload_values,
            "report": report.as_dict(),
        }))
    else:
        if pair_values is not None:
            for x, v in pair_values:
                print(f"{format_rational(x)} {format_rational(v)}")
        else:
            for v in values:
                if isinstance(v, bool):
                    print("true" if v else "false")
                elif isinstance(v, int):
                    print(v)
                else:
                    print(format_rational(v))
    if args.stats:
        for line in report.lines():
            print(line, file=sys.stderr)


def _params(args) -> SumsetParams:
    return SumsetParams(restriction_constant=args.restriction_constant,
                        threads=args.threads)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("EXACT_SUMSET_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ParseError(f"EXACT_SUMSET_SEED: not an integer ({env!r})") from exc
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exact-sumset",
        description="Exact output-sensitive sumset computations on rational sets.")
    parser.add_argument("--seed", type=int, default=None,
                        help="RNG seed (default: EXACT_SUMSET_SEED or 0)")
    parser.add_argument("--format", choices=("plain", "json"), default="plain")
    parser.add_argument("--stats", action="store_true",
                        help="emit a run report to standard error")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for independent subtasks")
    parser.add_argument("--restriction-constant", type=int, default=None,
                        help="override the restriction-count constant "
                             "(default: the published 160; smaller is faster "
                             "and still exact, at a retry risk)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sumset", help="A + B")
    p.add_argument("a_file")
    p.add_argument("b_file")

    p = sub.add_parser("convolve", help="convolution of two point/value files")
    p.add_argument("f_file")
    p.add_argument("g_file")

    p = sub.add_parser("size", help="|A + B| without computing A + B")
    p.add_argument("a_file")
    p.add_argument("b_file")

    p = sub.add_parser("constellation", help="all shifts s with A + s inside B")
    p.add_argument("a_file")
    p.add_argument("b_file")

    p = sub.add_parser("prefix", help="(A + B) up to a threshold")
    p.add_argument("a_file")
    p.add_argument("b_file")
    p.add_argument("--max", required=True, metavar="U", help="upper threshold")

    p = sub.add_parser("interval", help="(A + B) inside [min, max]")
    p.add_argument("a_file")
    p.add_argument("b_file")
    p.add_argument("--min", required=True, metavar="L")
    p.add_argument("--max", required=True, metavar="U")

    p = sub.add_parser("subsetsum", help="all subset sums, optionally capped")
    p.add_argument("x_file")
    p.add_argument("--target", default=None, metavar="T")
    p.add_argument("--boost-exponent", type=int, default=None,
                   help="completeness-boosting exponent for capped runs "
                        "(default: the published 102)")

    p = sub.add_parser("threesum", help="preprocess A, B, C and answer one query")
    p.add_argument("a_file")
    p.add_argument("b_file")
    p.add_argument("c_file")
    p.add_argument("--query", nargs=3, required=True,
                   metavar=("AQ", "BQ", "CQ"))

    p = sub.add_parser("bench", help="timing suites")
    p.add_argument("suite", choices=sorted(bench_module.SUITES))
    p.add_argument("--sizes", default=None,
                   help="comma-separated instance sizes")

    return parser


def _run(args) -> int:
    seed = _seed(args)
    rng = random.Random(seed)
    params = _params(args)
    started = time.perf_counter()

    if args.command == "sumset":
        A = _read_set(args.a_file)
        B = _read_set(args.b_file)
        stats = RunStats()
        out = compute_sumset(A, B, rng, params, stats)
        report = RunReport("sumset", [len(A), len(B)], len(out),
                           time.perf_counter() - started, stats.retries, seed)
        _emit(args, out, report)
    elif args.command == "size":
        A = _read_set(args.a_file)
        B = _read_set(args.b_file)
        out = sumset_size(A, B)
        report = RunReport("size", [len(A), len(B)], 1,
                           time.perf_counter() - started, 0, seed)
        _emit(args, [out], report)
    elif args.command == "convolve":
        f = _read_point_value_file(args.f_file)
        g = _read_point_value_file(args.g_file)
        out = convolve(f, g, rng, params)
        report = RunReport("convolve", [len(f), len(g)], len(out),
                           time.perf_counter() - started, 0, seed)
        _emit(args, None, report, pair_values=list(out))
    elif args.command == "constellation":
        A = _read_set(args.a_file)
        B = _read_set(args.b_file)
        out = constellation(A, B, rng)
        report = RunReport("constellation", [len(A), len(B)], len(out),
                           time.perf_counter() - started, 0, seed)
        _emit(args, out, report)
    elif args.command == "prefix":
        A = _read_set(args.a_file)
        B = _read_set(args.b_file)
        u = parse_rational(args.max)
        out = prefix_sumset(A, B, u, rng, params)
        report = RunReport("prefix", [len(A), len(B)], len(out),
                           time.perf_counter() - started, 0, seed)
        _emit(args, out, report)
    elif args.command == "interval":
        A = _read_set(args.a_file)
        B = _read_set(args.b_file)
        lo = parse_rational(args.min)
        hi = parse_rational(args.max)
        out = interval_sumset(A, B, lo, hi, rng, params)
        report = RunReport("interval", [len(A), len(B)], len(out),
                           time.perf_counter() - started, 0, seed)
        _emit(args, out, report)
    elif args.command == "subsetsum":
        values = _read_tokens(args.x_file)
        X = RatMultiset.from_values(values)
        if args.target is None:
            out = all_subset_sums(X, rng, params)
        else:
            t = parse_rational(args.target)
            kwargs = {}
            if args.boost_exponent is not None:
                kwargs["boost_exponent"] = args.boost_exponent
            out = capped_subset_sums(X, t, rng, params, **kwargs)
        report = RunReport("subsetsum", [X.n], len(out),
                           time.perf_counter() - started, 0, seed)
        _emit(args, out, report)
    elif args.command == "threesum":
        A = _read_set(args.a_file)
        B = _read_set(args.b_file)
        C = _read_set(args.c_file)
        idx = preprocess(A, B, C, rng, params=params)
        aq = _read_set(args.query[0])
        bq = _read_set(args.query[1])
        cq = _read_set(args.query[2])
        out = query(idx, aq, bq, cq)
        report = RunReport("threesum", [len(A), len(B), len(C)], 1,
                           time.perf_counter() - started, 0, seed)
        _emit(args, [out], report)
    elif args.command == "bench":
        sizes = None
        if args.sizes:
            sizes = [int(s) for s in args.sizes.split(",")]
        bench_module.run_suite(args.suite, seed=seed, sizes=sizes,
                               params=params)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.restriction_constant is None:
        args.restriction_constant = SumsetParams().restriction_constant
    try:
        return _run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return 3
    except RetryCapExceeded as exc:
        print(f"internal abort: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
