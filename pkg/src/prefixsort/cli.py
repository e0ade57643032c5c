"""Command-line interface: ``prefixsort <subcommand> ...``.

Exit codes: 0 success, 1 verification failure or runtime error, 2 usage error.
The first stdout line of every subcommand is a set of ``key=value`` tokens.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds as bnd
from .errors import InvalidPermutation, PrefixSortError
from .graph import BreakpointGraph
from .harness import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_SIZES,
    BenchConfig,
    read_csv,
    run_bench,
    run_verify,
    write_csv,
)
from .oracle import OpSet, distance_table, exact_distance
from .perm import apply_trace, format_perm, format_trace, is_sorted, parse_perm, parse_trace
from .sorters import Algo, SorterState, breakpoints_for, run_sorter

ALGOS = [a.value for a in Algo]
OPSETS = list(OpSet.NAMES)


def _perm_arg(text: str):
    try:
        return parse_perm(text)
    except (InvalidPermutation, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _algo_list(text: str) -> list[str]:
    names = [t for t in text.replace(",", " ").split()]
    bad = [t for t in names if t not in ALGOS]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown algorithm(s) {bad}; choose from {ALGOS}")
    return names


def _r_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected R or LO..HI, got {text!r}") from None


def _add_perm_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    group = p.add_mutually_exclusive_group(required=required)
    group.add_argument("--perm", type=_perm_arg, help='middle values, e.g. "3 1 2"')
    group.add_argument("--input", type=Path, help="file with one permutation per line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prefixsort", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sort", help="sort a permutation with one of the approximation algorithms")
    p.add_argument("--algo", required=True, choices=ALGOS)
    _add_perm_source(p)
    p.add_argument("--trace", action="store_true", help="print the replayable trace")
    p.add_argument("--dump-graph", action="store_true", help="print the initial breakpoint graph")

    p = sub.add_parser("replay", help="apply a trace file to a permutation")
    p.add_argument("--perm", type=_perm_arg, help="defaults to the trace's '# perm:' header")
    p.add_argument("--trace", required=True, help="trace file, or - for stdin")

    p = sub.add_parser("exact", help="BFS-exact distances")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--perm", type=_perm_arg)
    group.add_argument("--input", type=Path)
    group.add_argument("--table", type=int, metavar="N", help="build the full table for size N")
    p.add_argument("--opset", choices=OPSETS, default="rt")
    p.add_argument("--out", type=Path, help="binary table output (with --table)")

    p = sub.add_parser("bounds", help="closed-form bounds and adaptive ratios")
    p.add_argument("--algo", required=True, choices=ALGOS)
    p.add_argument("--b", type=int, required=True, help="breakpoint count")
    p.add_argument("--r", type=_r_range, default=[0], help="R or LO..HI")

    p = sub.add_parser("verify", help="exhaustive ratio check against exact distances")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--opset", choices=OPSETS, default="rt")
    p.add_argument("--algo", required=True, choices=ALGOS)

    p = sub.add_parser("bench", help="ratio-vs-size experiment on random permutations")
    p.add_argument("--sizes", type=_int_list, default=list(DEFAULT_SIZES))
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--algos", type=_algo_list, default=ALGOS)
    p.add_argument("--out", type=Path, default=Path("bench.csv"))
    p.add_argument("--svg", type=Path, help="also render the ratio plot as SVG")
    p.add_argument("--figure", type=Path, help="also render a matplotlib figure (png, pdf, ...)")
    p.add_argument("--threads", type=int, help="worker processes (env PREFIX_SORT_THREADS)")

    p = sub.add_parser("plot", help="render a bench CSV or the adaptive curves")
    p.add_argument("--mode", choices=["ratio", "adaptive"], default="ratio")
    p.add_argument("--in", dest="csv", type=Path, help="bench CSV (ratio mode)")
    p.add_argument("--out", type=Path, required=True, help="SVG output")
    p.add_argument("--b", type=int, help="breakpoint count (adaptive mode)")
    p.add_argument("--algos", type=_algo_list, default=ALGOS)
    p.add_argument("--figure", type=Path, help="also render a matplotlib figure")
    return parser


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "exact" and args.out and args.table is None:
        parser.error("argument --out: only valid together with --table")
    if args.command == "plot":
        if args.mode == "ratio" and args.csv is None:
            parser.error("argument --in: required in ratio mode")
        if args.mode == "adaptive" and args.b is None:
            parser.error("argument --b: required in adaptive mode")
    if args.command == "bench" and args.samples < 1:
        parser.error("argument --samples: must be >= 1")
    return args


def _read_perms(args):
    if args.perm is not None:
        return [args.perm]
    lines = args.input.read_text(encoding="ascii").splitlines()
    return [parse_perm(line) for line in lines if line.strip()]


def _fmt_ratio(ops: int, lb: int) -> str:
    if ops == 0:
        return "1"
    return f"{ops / lb:.6f}"


def _cmd_sort(args, out) -> int:
    algo = Algo(args.algo)
    for perm in _read_perms(args):
        trace = run_sorter(perm, algo)
        b = breakpoints_for(algo, perm)
        lb = bnd.lower_bound(algo, b)
        print(f"ops={trace.total_ops} b={b} lb={lb} ratio={_fmt_ratio(trace.total_ops, lb)}", file=out)
        if args.dump_graph:
            state = SorterState.start(perm, algo)
            out.write(BreakpointGraph(perm, state.convention, state.cursor).dump())
        if args.trace:
            out.write(format_trace(perm, trace))
    return 0


def _cmd_replay(args, out) -> int:
    text = sys.stdin.read() if args.trace == "-" else Path(args.trace).read_text(encoding="ascii")
    header_perm, ops = parse_trace(text)
    perm = args.perm if args.perm is not None else header_perm
    if perm is None:
        print("error: no --perm given and the trace has no '# perm:' header", file=sys.stderr)
        return 2
    final = apply_trace(perm, ops)
    done = is_sorted(final)
    print(f"sorted={'true' if done else 'false'} ops={len(ops)} final={format_perm(final).replace(' ', ',')}",
          file=out)
    return 0 if done else 1


def _cmd_exact(args, out) -> int:
    opset = OpSet.parse(args.opset)
    if args.table is not None:
        table = distance_table(args.table, opset)
        print(f"n={table.n} opset={opset} states={table.dist.size} diameter={table.diameter}", file=out)
        if args.out:
            table.write(args.out)
        return 0
    for perm in _read_perms(args):
        print(f"dist={exact_distance(perm, opset)} opset={opset} n={perm.n}", file=out)
    return 0


def _cmd_bounds(args, out) -> int:
    algo = Algo(args.algo)
    print(f"algo={algo.value} b={args.b} lower={bnd.lower_bound(algo, args.b)} "
          f"upper={bnd.upper_bound(algo, args.b)}", file=out)
    for r in args.r:
        value: Fraction = bnd.adaptive_ratio(algo, args.b, r)
        print(f"r={r} bound={float(value):.6f} exact={value}", file=out)
    return 0


def _cmd_verify(args, out) -> int:
    report = run_verify(args.n_max, args.opset, args.algo)
    print(report.summary_line(), file=out)
    for v in report.violations:
        print(f"violation {v}", file=out)
    return 1 if report.violations else 0


def _print_summary(report, out) -> None:
    for s in report.summary:
        print(f"size={s.size} algo={s.algo.value} mean={s.mean:.6f} min={s.min:.6f} "
              f"max={s.max:.6f} count={s.count}", file=out)


def _cmd_bench(args, out) -> int:
    config = BenchConfig(tuple(args.sizes), args.samples, args.seed, tuple(args.algos))
    report = run_bench(config, threads=args.threads)
    write_csv(report, args.out)
    print(f"rows={len(report.rows)} out={args.out}", file=out)
    _print_summary(report, out)
    if args.svg or args.figure:
        from . import plotting

        if args.svg:
            plotting.render_svg(report, args.svg)
        if args.figure:
            plotting.render_figure(report, args.figure)
    return 0


def _cmd_plot(args, out) -> int:
    from . import plotting

    if args.mode == "adaptive":
        plotting.render_adaptive_svg(args.algos, args.b, args.out)
        print(f"mode=adaptive b={args.b} out={args.out}", file=out)
        return 0
    report = read_csv(args.csv)
    plotting.render_svg(report, args.out)
    if args.figure:
        plotting.render_figure(report, args.figure)
    print(f"mode=ratio rows={len(report.rows)} out={args.out}", file=out)
    _print_summary(report, out)
    return 0


COMMANDS = {
    "sort": _cmd_sort,
    "replay": _cmd_replay,
    "exact": _cmd_exact,
    "bounds": _cmd_bounds,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
    "plot": _cmd_plot,
}


OUTPUT_FLAGS = ("out", "svg", "figure")


def _make_output_dirs(args: argparse.Namespace) -> None:
    for name in OUTPUT_FLAGS:
        path = getattr(args, name, None)
        if path is not None:
            Path(path).parent.mkdir(parents=True, exist_ok=True)


def execute(args: argparse.Namespace, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        _make_output_dirs(args)
        return COMMANDS[args.command](args, out)
    except (PrefixSortError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    return execute(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
