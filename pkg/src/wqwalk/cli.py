"""Command-line experiment runner.

Subcommands::

    wqwalk verify szegedy --graph star.edges --trials 100 --tol 1e-12 --seed 7
    wqwalk reduce-verify --base line --size 101 --k 10 --steps 100
    wqwalk line --l 10 --steps 100 --shift moving --out line.csv
    wqwalk search --n 1024 --l 1 --steps 200 --mode subspace --out search.csv
    wqwalk figures --outdir figs/

Exit status is 0 on success, 1 when a verification fails and 2 on bad
arguments.  ``WQWALK_THREADS`` caps the workers used by ``figures``
(0 or unset means one per CPU).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .errors import AmbiguousRegime, WalkError
from .graph import complete_graph, line_graph, random_weighted_graph, read_edge_list
from .line import peak_velocity, simulate_line
from .reduction import verify_reduction
from .search import (
    SearchParams,
    asymptotic_probability,
    find_peak,
    full_trajectory,
    predict,
    success_curve,
)
from .szegedy import verify_equivalence

# full-space search allocates N^2 arcs per state
MAX_FULL_ARCS = 20_000_000

FIG4A_LOOPS = (0, 0.1, 0.2, 0.4, 0.8)
FIG4B_LOOPS = (1, 2.5, 5, 7.5, 10)


class UsageError(Exception):
    pass


def _emit(text: str, out) -> None:
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(
            f"{v:.17g}" if isinstance(v, float) else str(v) for v in row
        ))
    return "\n".join(lines) + "\n"


def search_csv(params: SearchParams, steps: int, mode: str = "subspace", with_asym: bool = False) -> str:
    if mode == "full":
        traj = full_trajectory(params, steps)
        p = np.abs(traj[:, 0]) ** 2 + np.abs(traj[:, 1]) ** 2
    else:
        p = success_curve(params, steps)
    t = np.arange(steps + 1)
    if with_asym or mode == "asymptotic":
        pa = asymptotic_probability(params, t)
        return _csv(("t", "p", "p_asym"), zip(t.tolist(), p.tolist(), pa.tolist()))
    return _csv(("t", "p"), zip(t.tolist(), p.tolist()))


def search_summary(params: SearchParams, c: float | None = None) -> dict:
    peak = find_peak(params)
    try:
        pred = predict(params, c)
        regime, t_star, p_star = pred.regime, pred.t_star, pred.p_star
    except AmbiguousRegime:
        regime, t_star, p_star = "ambiguous", None, None
    return {
        "N": params.N, "l": params.l, "regime": regime,
        "t_star_pred": t_star, "p_star_pred": p_star,
        "t_peak": peak.t_peak, "p_peak": peak.p_peak, "hump_count": peak.hump_count,
    }


def _parse_range(text: str) -> np.ndarray:
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"--scan-l expects 'a:b:step', got {text!r}") from None
    if step <= 0 or b < a:
        raise UsageError("--scan-l needs a <= b and step > 0")
    n = int(math.floor((b - a) / step + 1e-9)) + 1
    return a + step * np.arange(n)


def _workers() -> int:
    raw = os.environ.get("WQWALK_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"WQWALK_THREADS must be an integer, got {raw!r}") from None
    return n if n > 0 else (os.cpu_count() or 1)


def figure_suite(outdir, steps_line: int = 100, N: int = 1024, steps_search: int = 200) -> list[Path]:
    """Write the line and search curves as CSV files into ``outdir``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = {
        "fig3_loopless.csv": lambda: simulate_line(0, steps_line).to_csv(),
        "fig3_l10_moving.csv": lambda: simulate_line(10, steps_line, "moving").to_csv(),
        "fig3_l10_flipflop.csv": lambda: simulate_line(10, steps_line, "flipflop").to_csv(),
    }
    for tag, loops in (("fig4a", FIG4A_LOOPS), ("fig4b", FIG4B_LOOPS)):
        for l in loops:
            params = SearchParams(N, float(l))
            jobs[f"{tag}_l{l:g}.csv"] = (lambda p=params: search_csv(p, steps_search, with_asym=True))

    def run(item):
        name, job = item
        path = outdir / name
        path.write_text(job())
        return path

    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        return list(pool.map(run, sorted(jobs.items())))


# -- subcommands -------------------------------------------------------------

def _cmd_verify(args) -> int:
    if args.graph is not None:
        g = read_edge_list(args.graph)
    else:
        g = random_weighted_graph(np.random.default_rng(args.seed))
    report = verify_equivalence(g, trials=args.trials, tol=args.tol, kind=args.shift, seed=args.seed)
    _emit(_json(report.to_dict()), args.out)
    return 0 if report.passed else 1


def _cmd_reduce(args) -> int:
    if args.base == "line":
        base = line_graph(args.size, 0.0)
        oracle_vertex = None
    else:
        base = complete_graph(args.size, 0.0)
        oracle_vertex = 0 if args.search else None
    if args.base == "line" and args.size < args.steps + 1:
        raise UsageError("line half-width must be at least steps + 1")
    report = verify_reduction(base, args.k, args.steps, args.tol, oracle_vertex=oracle_vertex)
    _emit(_json(report.to_dict()), args.out)
    return 0 if report.passed else 1


def _cmd_line(args) -> int:
    if args.steps < 0:
        raise UsageError("--steps must be >= 0")
    dist = simulate_line(args.l, args.steps, args.shift, rho=args.rho, loopless_coin=args.loopless_coin)
    _emit(dist.to_csv(), args.out)
    if args.velocity:
        left, right = peak_velocity(dist, args.steps)
        sys.stderr.write(f"peak velocity: left {left:.6f}, right {right:.6f}\n")
    return 0


def _cmd_search(args) -> int:
    if args.n < 2 or args.steps < 0 or args.l < 0:
        raise UsageError("need --n >= 2, --l >= 0 and --steps >= 0")
    if args.scan_l is not None:
        grid = _parse_range(args.scan_l)
        rows = [(float(l), find_peak(SearchParams(args.n, float(l))).p_peak) for l in grid]
        _emit(_csv(("l", "p_peak"), rows), args.out)
        return 0
    if args.mode == "full" and args.n * (args.n + 1) > MAX_FULL_ARCS:
        raise UsageError(f"full mode needs N(N+1) <= {MAX_FULL_ARCS} arcs")
    params = SearchParams(args.n, args.l)
    _emit(search_csv(params, args.steps, args.mode, args.asym), args.out)
    summary = _json(search_summary(params, args.c))
    if args.summary:
        Path(args.summary).write_text(summary)
    elif args.out is not None and str(args.out) != "-":
        sys.stdout.write(summary)
    return 0


def _cmd_figures(args) -> int:
    for path in figure_suite(args.outdir, N=args.n):
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wqwalk", description="Coined quantum walks on weighted graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check U^2 = W against Szegedy's walk")
    p.add_argument("target", choices=["szegedy"])
    p.add_argument("--graph", help="edge-list file (default: a random weighted graph)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--shift", choices=["flipflop", "moving"], default="flipflop")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("reduce-verify", help="compare k loops with one loop of weight k")
    p.add_argument("--base", choices=["line", "complete"], required=True)
    p.add_argument("--size", type=int, required=True, help="line half-width M or complete-graph N")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--no-search", dest="search", action="store_false",
                   help="complete graph: plain walk instead of the search step")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("line", help="position distribution on the line")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--l", type=float)
    g.add_argument("--rho", type=float)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--shift", choices=["moving", "flipflop"], default="moving")
    p.add_argument("--loopless-coin", choices=["hadamard", "grover2"], default="hadamard")
    p.add_argument("--velocity", action="store_true", help="report peak speeds on stderr")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_line)

    p = sub.add_parser("search", help="success probability on the complete graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=float, default=0.0)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--mode", choices=["subspace", "full", "asymptotic"], default="subspace")
    p.add_argument("--asym", action="store_true", help="add the p_asym column")
    p.add_argument("--c", type=float, help="explicit ratio l/N for the linear regime")
    p.add_argument("--scan-l", help="'a:b:step' grid; writes l,p_peak instead")
    p.add_argument("--summary", help="write the JSON summary here")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("figures", help="write every figure curve as CSV")
    p.add_argument("--outdir", required=True)
    p.add_argument("--n", type=int, default=1024)
    p.set_defaults(func=_cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, WalkError, OSError) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"wqwalk: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
