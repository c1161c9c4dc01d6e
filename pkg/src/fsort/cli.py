"""Command line: ``fsort gen | sort | bench | check``.

Exit codes: 0 ok, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import ast
import csv
import json
import logging
import operator
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from math import comb, floor
from typing import Sequence

from fsort import graph as graphs
from fsort.detsort import N_MIN, NodeTrace
from fsort.oracle import HiddenOrder
from fsort.randsort import critical_probability
from fsort.reference import (
    ALGORITHMS,
    CSV_FIELDS,
    RunReport,
    exhaustive_check,
    verify_run,
)
from fsort.rng import derive_seed

log = logging.getLogger("fsort")

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- grid expressions -------------------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.FloorDiv: operator.floordiv,
    ast.Pow: operator.pow,
}


def eval_expr(text: str, n: int) -> float:
    """Evaluate a grid value such as ``4n``, ``n^1.5``, ``n^2/10`` or ``phat``."""
    src = re.sub(r"(\d)\s*(n|phat)\b", r"\1*\2", text.strip()).replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError:
        raise UsageError(f"bad grid expression {text!r}") from None
    names = {"n": n, "phat": critical_probability(n)}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return node.value
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        raise UsageError(f"unsupported grid expression {text!r}")

    return ev(tree)


def parse_grid(tokens: Sequence[str]) -> dict[str, list[str]]:
    grid: dict[str, list[str]] = {}
    for tok in tokens:
        key, sep, vals = tok.partition("=")
        if not sep or key not in ("n", "q", "p") or not vals:
            raise UsageError(f"grid entries look like n=128,256 q=0,n,4n or p=0.1; got {tok!r}")
        grid[key] = [v for v in vals.split(",") if v]
    if "n" not in grid:
        raise UsageError("grid needs n=...")
    if "q" in grid and "p" in grid:
        raise UsageError("grid takes either q=... or p=..., not both")
    return grid


# -- output helpers ---------------------------------------------------------


def _open_out(path: str | None):
    return open(path, "w", newline="") if path else sys.stdout


def _write_reports(reports: list[RunReport], emit: str, path: str | None, single: bool = False) -> None:
    fh = _open_out(path)
    try:
        if emit == "csv":
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_FIELDS)
            for r in reports:
                w.writerow(r.csv_row())
        elif single:
            fh.write(json.dumps(reports[0].to_dict()) + "\n")
        else:
            fh.write(json.dumps([r.to_dict() for r in reports], indent=1) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()


def _load_order(args, n: int) -> HiddenOrder:
    if args.order:
        order = HiddenOrder.load(args.order)
    else:
        order = HiddenOrder.from_seed(n, args.order_seed)
    if order.n != n:
        raise UsageError(f"order has {order.n} entries but graph has {n} vertices")
    return order


# -- commands ---------------------------------------------------------------


def cmd_gen(args) -> int:
    n = args.n
    if args.bipartite:
        a, b = args.bipartite
        g = graphs.gen_complete_bipartite(a, b)
    elif args.p is not None:
        g = graphs.gen_gnp(n, args.p, args.seed)
    else:
        q = floor(eval_expr(args.q, n)) if args.q is not None else 0
        if q > comb(n, 2):
            raise UsageError(f"q={q} exceeds C({n},2)={comb(n, 2)}")
        g = graphs.gen_random_forbidden(n, q, args.seed)
    if args.output:
        graphs.save(g, args.output)
    else:
        sys.stdout.write(graphs.dumps(g))
    if args.order_out:
        seed = args.order_seed if args.order_seed is not None else args.seed
        HiddenOrder.from_seed(g.n, seed).save(args.order_out)
    return EXIT_OK


def cmd_sort(args) -> int:
    g = graphs.load(args.graph)
    order = _load_order(args, g.n)
    trace: list[NodeTrace] | None = [] if args.trace else None
    rep = verify_run(g, order, args.algo, seed=args.seed, p_in=args.p, n_min=args.n_min, trace=trace)
    if args.dump and rep.poset is not None:
        with open(args.dump, "w") as fh:
            fh.write(rep.poset.to_json(covering=args.covering) + "\n")
    if trace is not None:
        with open(args.trace, "w") as fh:
            for node in trace:
                fh.write(json.dumps(node.to_dict()) + "\n")
    _write_reports([rep], args.emit, args.output, single=True)
    if not (rep.correct and rep.forbidden_ok):
        log.error("verification failed: %s", rep.error or "output differs from ground truth")
        return EXIT_VERIFY
    return EXIT_OK


def bench_tasks(algos: Sequence[str], grid: dict[str, list[str]], seeds: int) -> list[tuple]:
    """Expand the grid in a fixed (algo, n, q|p, seed) order."""
    tasks = []
    for algo in algos:
        for n_txt in grid["n"]:
            n = int(eval_expr(n_txt, 0))
            if "p" in grid:
                for i, p_txt in enumerate(grid["p"]):
                    p = float(eval_expr(p_txt, n))
                    if not 0.0 < p <= 1.0:
                        raise UsageError(f"p={p} outside (0, 1]")
                    for s in range(seeds):
                        tasks.append((algo, n, "p", p, i, s))
            else:
                for i, q_txt in enumerate(grid.get("q", ["0"])):
                    q = floor(eval_expr(q_txt, n))
                    if not 0 <= q <= comb(n, 2):
                        raise UsageError(f"q={q} outside [0, C({n},2)]")
                    for s in range(seeds):
                        tasks.append((algo, n, "q", q, i, s))
    return tasks


def run_bench_task(task) -> RunReport:
    algo, n, kind, value, idx, s = task
    if kind == "p":
        g = graphs.gen_gnp(n, value, derive_seed(s, n, idx, 0))
        p_in = value
    else:
        g = graphs.gen_random_forbidden(n, value, derive_seed(s, n, value, 0))
        p_in = None
    order = HiddenOrder.from_seed(n, derive_seed(s, n, idx, 1))
    return verify_run(g, order, algo, seed=s, p_in=p_in)


def cmd_bench(args) -> int:
    algos = [a for item in args.algo for a in item.split(",")]
    for a in algos:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}")
    grid = parse_grid(args.grid)
    tasks = bench_tasks(algos, grid, args.seeds)
    if args.workers > 1:
        with ThreadPoolExecutor(args.workers) as pool:
            reports = list(pool.map(run_bench_task, tasks))
    else:
        reports = [run_bench_task(t) for t in tasks]
    for r in reports:
        if not (r.correct and r.forbidden_ok):
            log.error(
                "verification failed for algo=%s n=%d q=%d seed=%s: %s",
                r.algo, r.n, r.q, r.seed, r.error or "output differs from ground truth",
            )
            return EXIT_VERIFY
    _write_reports(reports, args.emit, args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    algos = [a for item in args.algo for a in item.split(",")] if args.algo else list(ALGORITHMS)
    summary = exhaustive_check(args.n_max, algos=algos, sample=args.sample, sample_seed=args.seed)
    fh = _open_out(args.output)
    try:
        fh.write(json.dumps(summary) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_VERIFY if summary["failures"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fsort", description="Sorting with forbidden comparisons.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a comparison graph")
    p.add_argument("--n", type=int, default=None)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--q", help="forbidden-pair count; may be an expression in n, e.g. 4n")
    src.add_argument("--p", type=float, help="G(n,p) edge probability")
    src.add_argument("--bipartite", type=int, nargs=2, metavar=("A", "B"), help="complete bipartite K(A,B)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.add_argument("--order-out", help="also write a random hidden order to this file")
    p.add_argument("--order-seed", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sort", help="sort one instance and verify it")
    p.add_argument("--algo", choices=ALGORITHMS, required=True)
    p.add_argument("--graph", required=True)
    og = p.add_mutually_exclusive_group()
    og.add_argument("--order")
    og.add_argument("--order-seed", type=int, default=0)
    p.add_argument("--seed", type=int, default=0, help="seed for randomised algorithms")
    p.add_argument("--p", type=float, help="known edge probability for randgraph (default: density)")
    p.add_argument("--n-min", type=int, default=N_MIN)
    p.add_argument("--dump", help="write the recovered order as JSON")
    p.add_argument("--covering", action="store_true", help="dump covering pairs only")
    p.add_argument("--trace", help="write recursion-node records as JSON lines (det only)")
    p.add_argument("--emit", choices=("json", "csv"), default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sort)

    p = sub.add_parser("bench", help="sweep a grid of instances")
    p.add_argument("--algo", action="append", required=True, help="algorithm id(s), comma separated or repeated")
    p.add_argument("--grid", nargs="+", required=True, metavar="K=V[,V...]")
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--emit", choices=("csv", "json"), default="csv")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("check", help="exhaustive correctness check on small graphs")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--sample", type=int, help="sample this many instances instead of enumerating")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algo", action="append")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.command == "gen" and args.n is None and not args.bipartite:
        parser.error("gen needs --n (or --bipartite A B)")
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
