"""Random instances, the ratio-vs-size benchmark and exhaustive verification."""

from __future__ import annotations

import csv
import io
import itertools
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .bounds import BASE_FACTOR, lower_bound, upper_bound
from .errors import SizeTooLarge
from .oracle import OpSet, distance_table
from .perm import Permutation, SortTrace, apply_trace, is_sorted, make_permutation
from .sorters import Algo, breakpoints_for, run_sorter

MASK64 = (1 << 64) - 1
VERIFY_MAX_N = 8
CSV_HEADER = ["size", "trial", "seed", "algo", "ops", "breakpoints", "lower_bound", "ratio"]
DEFAULT_SIZES = (64, 256, 1024)
DEFAULT_SAMPLES = 50
DEFAULT_SEED = 20090611
ALGO_ORDER = (Algo.RT3, Algo.RT2, Algo.FM3)


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


class XorShift64Star:
    """xorshift64* (shifts 12, 25, 27; multiplier 0x2545F4914F6CDD1D).

    The state is seeded through splitmix64 so that every seed, including 0,
    gives a non-zero state.
    """

    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def below(self, bound: int) -> int:
        """Unbiased integer in ``[0, bound)`` by rejection."""
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound


def random_permutation(n: int, rng: XorShift64Star) -> Permutation:
    middle = list(range(1, n + 1))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        middle[i], middle[j] = middle[j], middle[i]
    return make_permutation(middle)


def trial_seed(seed: int, size: int, trial: int) -> int:
    return (seed ^ splitmix64(((size & 0xFFFFFFFF) << 32) | (trial & 0xFFFFFFFF))) & MASK64


@dataclass
class BenchConfig:
    sizes: tuple[int, ...] = DEFAULT_SIZES
    samples_per_size: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    algos: tuple[Algo, ...] = ALGO_ORDER

    def __post_init__(self):
        self.sizes = tuple(int(s) for s in self.sizes)
        wanted = {Algo(a) for a in self.algos}
        self.algos = tuple(a for a in ALGO_ORDER if a in wanted)
        if not self.algos:
            raise ValueError("at least one algorithm is required")
        if any(s < 2 for s in self.sizes):
            raise ValueError(f"sizes must be >= 2, got {self.sizes}")
        if self.samples_per_size < 1:
            raise ValueError("samples_per_size must be >= 1")


@dataclass(frozen=True)
class BenchRow:
    size: int
    trial: int
    seed: int
    algo: Algo
    ops: int
    breakpoints: int
    lower_bound: int

    @property
    def ratio(self) -> Fraction:
        if self.ops == 0:
            return Fraction(1)
        return Fraction(self.ops, self.lower_bound)


@dataclass(frozen=True)
class SummaryRow:
    size: int
    algo: Algo
    mean: float
    min: float
    max: float
    count: int


@dataclass
class ExperimentReport:
    rows: list[BenchRow] = field(default_factory=list)
    traces: dict[tuple[int, int, Algo], tuple[Permutation, SortTrace]] = field(default_factory=dict)

    @property
    def summary(self) -> list[SummaryRow]:
        groups: dict[tuple[int, Algo], list[float]] = {}
        for row in self.rows:
            groups.setdefault((row.size, row.algo), []).append(float(row.ratio))
        out = []
        for (size, algo), ratios in sorted(groups.items(), key=lambda kv: (kv[0][0], ALGO_ORDER.index(kv[0][1]))):
            out.append(SummaryRow(size, algo, statistics.fmean(ratios), min(ratios), max(ratios), len(ratios)))
        return out

    def mean_ratio(self, size: int, algo: Algo | str) -> float:
        algo = Algo(algo)
        for s in self.summary:
            if s.size == size and s.algo is algo:
                return s.mean
        raise KeyError((size, algo))


def _run_trial(args) -> tuple[list[BenchRow], list[tuple]]:
    size, trial, seed, algos, keep = args
    s = trial_seed(seed, size, trial)
    perm = random_permutation(size, XorShift64Star(s))
    rows, kept = [], []
    for algo in algos:
        trace = run_sorter(perm, algo)
        b = breakpoints_for(algo, perm)
        rows.append(BenchRow(size, trial, s, algo, trace.total_ops, b, lower_bound(algo, b)))
        if keep:
            kept.append(((size, trial, algo), (perm, trace)))
    return rows, kept


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("PREFIX_SORT_THREADS")
        threads = int(env) if env else 1
    return max(1, threads)


def run_bench(config: BenchConfig, threads: int | None = None, keep_traces: bool = False) -> ExperimentReport:
    tasks = [(size, trial, config.seed, config.algos, keep_traces)
             for size in config.sizes for trial in range(config.samples_per_size)]
    threads = resolve_threads(threads)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_trial, tasks, chunksize=max(1, len(tasks) // (4 * threads))))
    else:
        results = [_run_trial(t) for t in tasks]
    report = ExperimentReport()
    for rows, kept in results:
        report.rows.extend(rows)
        report.traces.update(kept)
    report.rows.sort(key=lambda r: (r.size, r.trial, ALGO_ORDER.index(r.algo)))
    return report


def format_csv(report: ExperimentReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in report.rows:
        writer.writerow([r.size, r.trial, r.seed, r.algo.value, r.ops, r.breakpoints,
                         r.lower_bound, f"{float(r.ratio):.6f}"])
    return buf.getvalue()


def write_csv(report: ExperimentReport, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        fh.write(format_csv(report))


def read_csv(path: str | Path) -> ExperimentReport:
    report = ExperimentReport()
    with open(path, newline="", encoding="ascii") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        for rec in reader:
            report.rows.append(BenchRow(int(rec["size"]), int(rec["trial"]), int(rec["seed"]),
                                        Algo(rec["algo"]), int(rec["ops"]), int(rec["breakpoints"]),
                                        int(rec["lower_bound"])))
    return report


@dataclass
class VerifyReport:
    n: int
    opset: OpSet
    algo: Algo
    max_ratio: Fraction
    mean_ratio: float
    checked: int
    violations: list[str] = field(default_factory=list)

    def summary_line(self) -> str:
        return (f"n_max={self.n} opset={self.opset} algo={self.algo.value} checked={self.checked} "
                f"max_ratio={float(self.max_ratio):.6f} mean_ratio={self.mean_ratio:.6f} "
                f"violations={len(self.violations)}")


def run_verify(n_max: int, opset: OpSet | str, algo: Algo | str) -> VerifyReport:
    """Compare the sorter against BFS-exact distances for every n <= n_max."""
    opset = OpSet.parse(opset)
    algo = Algo(algo)
    if n_max > VERIFY_MAX_N:
        raise SizeTooLarge(f"exhaustive verification is limited to n <= {VERIFY_MAX_N}")
    factor = BASE_FACTOR[algo]
    ratios: list[Fraction] = []
    violations: list[str] = []
    for n in range(2, n_max + 1):
        table = distance_table(n, opset)
        for middle in itertools.permutations(range(1, n + 1)):
            perm = Permutation((0, *middle, n + 1))
            d = table.distance(perm)
            if d == 0:
                continue
            trace = run_sorter(perm, algo)
            ratio = Fraction(trace.total_ops, d)
            ratios.append(ratio)
            if ratio > factor:
                violations.append(f"{perm}: ops={trace.total_ops} d={d}")
            if trace.total_ops > upper_bound(algo, breakpoints_for(algo, perm)):
                violations.append(f"{perm}: ops={trace.total_ops} exceeds the upper bound")
            if not is_sorted(apply_trace(perm, trace)):
                violations.append(f"{perm}: trace does not sort")
    max_ratio = max(ratios, default=Fraction(0))
    mean = statistics.fmean(float(r) for r in ratios) if ratios else 0.0
    return VerifyReport(n_max, opset, algo, max_ratio, mean, len(ratios), violations)
