"""Command-line interface.

Exit codes are stable: 0 success (verification passed), 1 verification
failed, 2 usage or parse error (including shape mismatches), 3 I/O error.
Matrix files for ``mul`` are plain text grids: one row per line, entries
0 or 1 separated by spaces.
"""

from __future__ import annotations

import argparse
import json
import sys

from .evaluate import RecursionPlan, apply_scheme, bench, multiply_recursive
from .compose import tensor
from .flips import random_walk
from .gf2 import GF2k, BitMatrix, mul_naive
from .io import (CanonicalFormatError, ParseError, load_scheme, save_scheme,
                 serialize_expression)
from .verify import brent_residual, verify_randomized

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

RING_NAMES = {f"GF{1 << k}": k for k in range(1, 9)}


def _read_grid(path) -> BitMatrix:
    with open(path, "r", encoding="utf-8") as f:
        rows = []
        for line in f:
            line = line.strip()
            if not line:
                continue
            rows.append([int(tok) for tok in line.split()])
    if not rows:
        raise ValueError(f"{path}: empty matrix file")
    return BitMatrix.from_lists(rows)


def _grid_lines(mat: BitMatrix) -> list[str]:
    return [" ".join(str(mat.get(i, j)) for j in range(mat.cols))
            for i in range(mat.rows)]


def cmd_verify(args) -> int:
    s = load_scheme(args.scheme)
    report = brent_residual(s)
    dims = f"{s.n}x{s.m}x{s.p}"
    if report.correct:
        print(f"dims={dims} rank={s.rank} brent=ok")
    else:
        print(f"dims={dims} rank={s.rank} brent=FAIL violations={report.violations}")
    if args.report:
        print(f"total_equations={report.total_equations}")
        if report.first_violation:
            (i, j), (x, y), (u, v) = report.first_violation
            print(f"first_violation=a[{i + 1},{j + 1}]*b[{x + 1},{y + 1}]"
                  f"*c[{u + 1},{v + 1}]")
    if not report.correct:
        return EXIT_VERIFY_FAILED
    if args.randomized:
        field = GF2k(RING_NAMES[args.ring])
        ok = verify_randomized(s, field, args.randomized, args.seed)
        print(f"randomized_ring={args.ring} trials={args.randomized} "
              f"result={'ok' if ok else 'FAIL'}")
        if not ok:
            return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_mul(args) -> int:
    A = _read_grid(args.a)
    B = _read_grid(args.b)
    if args.naive:
        if A.cols != B.rows:
            raise ValueError(f"shape mismatch: {A.rows}x{A.cols} * {B.rows}x{B.cols}")
        print("\n".join(_grid_lines(mul_naive(A, B))))
        return EXIT_OK
    s = load_scheme(args.scheme)
    if s.n == s.m == s.p and A.rows == A.cols and B.rows == B.cols \
            and A.rows == B.rows:
        plan = RecursionPlan.for_size(s, A.rows, args.cutoff)
        C, counter = multiply_recursive(plan, A, B)
        count = counter.base_multiplications
    elif (A.rows, A.cols) == (s.n, s.m) and (B.rows, B.cols) == (s.m, s.p):
        C = apply_scheme(s, A, B)
        count = s.rank
    else:
        raise ValueError(
            f"shape mismatch: scheme <{s.n},{s.m},{s.p}> cannot multiply "
            f"{A.rows}x{A.cols} by {B.rows}x{B.cols}")
    print("\n".join(_grid_lines(C)))
    if args.count:
        print(f"base_multiplications={count}")
    return EXIT_OK


def cmd_compose(args) -> int:
    s1 = load_scheme(args.scheme1)
    s2 = load_scheme(args.scheme2)
    out = tensor(s1, s2)
    save_scheme(args.out, out, "expr")
    print(f"dims={out.n}x{out.m}x{out.p} rank={out.rank} wrote={args.out}")
    return EXIT_OK


def cmd_search(args) -> int:
    start = load_scheme(args.start)
    result = random_walk(start, budget=args.budget, target_rank=args.target,
                         seed=args.seed, restarts=args.restarts)
    for key, value in result.stats.as_dict().items():
        print(f"{key}={value}")
    if args.out:
        save_scheme(args.out, result.best, "expr")
        print(f"wrote={args.out}")
    if args.target is not None and result.best.rank > args.target:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_convert(args) -> int:
    s = load_scheme(args.infile)
    save_scheme(args.out, s, args.format)
    print(f"dims={s.n}x{s.m}x{s.p} rank={s.rank} format={args.format} wrote={args.out}")
    return EXIT_OK


def cmd_bench(args) -> int:
    s = load_scheme(args.scheme)
    plan = RecursionPlan.for_size(s, args.size, args.cutoff)
    report = bench(plan, args.size, args.repetitions, args.seed)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print("\n".join(report.lines()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bmms",
        description="Bilinear matrix-multiplication schemes over GF(2): "
                    "verify, run, compose, convert, search, bench.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a scheme file against the Brent equations")
    p.add_argument("scheme")
    p.add_argument("--randomized", type=int, metavar="TRIALS", default=0)
    p.add_argument("--ring", choices=sorted(RING_NAMES, key=RING_NAMES.get),
                   default="GF2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mul", help="multiply two 0/1 grid files with a scheme")
    p.add_argument("scheme")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--cutoff", type=int, default=1)
    p.add_argument("--count", action="store_true")
    p.add_argument("--naive", action="store_true",
                   help="classical product (scheme argument is ignored)")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("compose", help="tensor two schemes into a larger one")
    p.add_argument("scheme1")
    p.add_argument("scheme2")
    p.add_argument("out")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("search", help="random flip walk towards lower rank")
    p.add_argument("start")
    p.add_argument("--target", type=int, default=None)
    p.add_argument("--budget", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("convert", help="rewrite a scheme file in another format")
    p.add_argument("infile")
    p.add_argument("out")
    p.add_argument("--format", choices=("expr", "canonical"), required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("bench", help="time recursive multiplication at a size")
    p.add_argument("scheme")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=1)
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bench)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CanonicalFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
