"""Sentinel-framed permutations, the three prefix operations and breakpoints.

A permutation of size ``n`` is stored as ``(0, p1, ..., pn, n+1)``.  Every
operation takes frame-relative 1-based indices: with ``offset = s`` the frame
is anchored at absolute position ``s`` and frame position ``i`` is absolute
position ``s + i``.  All operations return new values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    CursorNotSorted,
    DegenerateMove,
    DuplicateValue,
    IndexOutOfRange,
    OutOfRange,
    TraceError,
)


@dataclass(frozen=True)
class Permutation:
    values: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.values) - 2

    @property
    def middle(self) -> tuple[int, ...]:
        return self.values[1:-1]

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return format_perm(self)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n + 2)))


def make_permutation(middle_values: Iterable[int]) -> Permutation:
    """Frame ``middle_values`` with the sentinels after validating them.

    >>> make_permutation([3, 1, 2]).values
    (0, 3, 1, 2, 4)
    """
    middle = [int(v) for v in middle_values]
    n = len(middle)
    seen: dict[int, int] = {}
    for idx, v in enumerate(middle, start=1):
        if v < 1 or v > n:
            raise OutOfRange(f"value {v} at index {idx} is outside 1..{n}", idx)
        if v in seen:
            raise DuplicateValue(
                f"value {v} at index {idx} already appears at index {seen[v]}", idx
            )
        seen[v] = idx
    return Permutation((0, *middle, n + 1))


def parse_perm(text: str) -> Permutation:
    """Parse the space-separated text form, e.g. ``"3 1 2"``."""
    return make_permutation(int(tok) for tok in text.split())


def format_perm(perm: Permutation) -> str:
    return " ".join(str(v) for v in perm.middle)


def is_sorted(perm: Permutation) -> bool:
    v = perm.values
    return v == tuple(range(len(v)))


class OpKind(enum.Enum):
    REVERSAL = "B"
    TRANSPOSITION = "T"
    TRANSREVERSAL = "BT"


@dataclass(frozen=True)
class PrefixOp:
    kind: OpKind
    j: int
    k: int | None = None
    offset: int = 0

    def __str__(self) -> str:
        if self.kind is OpKind.REVERSAL:
            return f"B {self.offset} {self.j}"
        return f"{self.kind.value} {self.offset} {self.j} {self.k}"

    @classmethod
    def reversal(cls, j: int, offset: int = 0) -> "PrefixOp":
        return cls(OpKind.REVERSAL, j, None, offset)

    @classmethod
    def transposition(cls, j: int, k: int, offset: int = 0) -> "PrefixOp":
        return cls(OpKind.TRANSPOSITION, j, k, offset)

    @classmethod
    def transreversal(cls, j: int, k: int, offset: int = 0) -> "PrefixOp":
        return cls(OpKind.TRANSREVERSAL, j, k, offset)


def _frame_size(perm: Permutation, offset: int) -> int:
    if offset < 0 or offset > perm.n:
        raise IndexOutOfRange(f"offset {offset} outside 0..{perm.n}")
    return perm.n - offset


def _check_reversal(perm: Permutation, j: int, offset: int) -> None:
    size = _frame_size(perm, offset)
    if j == 2:
        raise DegenerateMove("reversal with j=2 moves a single element")
    if not 3 <= j <= size + 1:
        raise IndexOutOfRange(f"reversal j={j} outside 3..{size + 1}")


def _check_cut_paste(perm: Permutation, j: int, k: int, offset: int) -> None:
    size = _frame_size(perm, offset)
    if k == j:
        raise DegenerateMove(f"k=j={j} leaves the permutation unchanged")
    if not 2 <= j <= size:
        raise IndexOutOfRange(f"j={j} outside 2..{size}")
    if not (3 <= k <= size + 1 and k > j):
        raise IndexOutOfRange(f"k={k} outside {max(3, j + 1)}..{size + 1}")


def prefix_reversal(perm: Permutation, j: int, offset: int = 0) -> Permutation:
    _check_reversal(perm, j, offset)
    v = perm.values
    s = offset
    return Permutation(v[: s + 1] + v[s + j - 1 : s : -1] + v[s + j :])


def prefix_transposition(perm: Permutation, j: int, k: int, offset: int = 0) -> Permutation:
    _check_cut_paste(perm, j, k, offset)
    v = perm.values
    s = offset
    return Permutation(v[: s + 1] + v[s + j : s + k] + v[s + 1 : s + j] + v[s + k :])


def prefix_transreversal(perm: Permutation, j: int, k: int, offset: int = 0) -> Permutation:
    _check_cut_paste(perm, j, k, offset)
    v = perm.values
    s = offset
    return Permutation(v[: s + 1] + v[s + j : s + k] + v[s + j - 1 : s : -1] + v[s + k :])


def apply_op(perm: Permutation, op: PrefixOp) -> Permutation:
    if op.kind is OpKind.REVERSAL:
        return prefix_reversal(perm, op.j, op.offset)
    if op.kind is OpKind.TRANSPOSITION:
        return prefix_transposition(perm, op.j, op.k, op.offset)
    return prefix_transreversal(perm, op.j, op.k, op.offset)


def breakpoints_std(perm: Permutation) -> int:
    """Breakpoints with position 1 always counted and the end counted if pn != n."""
    v = perm.values
    n = perm.n
    count = 1
    for i in range(2, n + 1):
        if abs(v[i] - v[i - 1]) != 1:
            count += 1
    if n >= 1 and v[n] != n:
        count += 1
    return count


def sorted_prefix_length(perm: Permutation, start: int = 0) -> int:
    """Largest ``m`` with ``p0..pm == 0..m`` (capped at ``n``).

    ``start`` is a position already known to lie inside the sorted prefix.
    """
    v = perm.values
    n = perm.n
    m = start
    while m < n and v[m + 1] == m + 1:
        m += 1
    return m


def check_cursor(perm: Permutation, cursor: int) -> None:
    if not 0 <= cursor <= perm.n:
        raise CursorNotSorted(f"cursor {cursor} outside 0..{perm.n}")
    if perm.values[: cursor + 1] != tuple(range(cursor + 1)):
        raise CursorNotSorted(f"prefix through position {cursor} is not 0..{cursor}")


def breakpoints_fm(perm: Permutation, cursor: int = 0) -> int:
    """Black edges ``(pi, pi+1)`` with ``|pi - pi+1| != 1`` for i >= cursor."""
    check_cursor(perm, cursor)
    v = perm.values
    return sum(1 for i in range(cursor, perm.n + 1) if abs(v[i] - v[i + 1]) != 1)


def touched_pairs(op: PrefixOp) -> tuple[list[int], list[int]]:
    """Left positions of the pairs an op breaks, and of the pairs it creates.

    Every other adjacent pair keeps its ``|difference|`` (possibly shifted or
    mirrored), so breakpoint changes are confined to these pairs.
    """
    s, j = op.offset, op.j
    if op.kind is OpKind.REVERSAL:
        pairs = [s, s + j - 1]
        return pairs, pairs
    k = op.k
    return [s, s + j - 1, s + k - 1], [s, s + k - j, s + k - 1]


def breakpoint_delta(before: Permutation, after: Permutation, op: PrefixOp, standard: bool = True) -> int:
    """``b(before) - b(after)`` computed from the touched pairs only.

    With ``standard`` the pair at position 0 counts as a breakpoint
    unconditionally; otherwise all pairs use ``|difference| != 1``.
    """
    old, new = touched_pairs(op)

    def black(values, left):
        if standard and left == 0:
            return 1
        return 1 if abs(values[left] - values[left + 1]) != 1 else 0

    return sum(black(before.values, i) for i in old) - sum(black(after.values, i) for i in new)


@dataclass
class SortTrace:
    ops: list[PrefixOp] = field(default_factory=list)
    scenarios: list[str] = field(default_factory=list)
    deltas: list[int] = field(default_factory=list)

    @property
    def total_ops(self) -> int:
        return len(self.ops)

    def append(self, op: PrefixOp, scenario: str, delta: int) -> None:
        self.ops.append(op)
        self.scenarios.append(scenario)
        self.deltas.append(delta)


def apply_trace(perm: Permutation, trace: SortTrace | Sequence[PrefixOp]) -> Permutation:
    ops = trace.ops if isinstance(trace, SortTrace) else trace
    for step, op in enumerate(ops):
        try:
            perm = apply_op(perm, op)
        except (IndexOutOfRange, DegenerateMove) as exc:
            raise TraceError(step, exc) from exc
    return perm


def format_trace(perm: Permutation, trace: SortTrace | Sequence[PrefixOp]) -> str:
    ops = trace.ops if isinstance(trace, SortTrace) else trace
    lines = [f"# perm: {format_perm(perm)}"]
    lines.extend(str(op) for op in ops)
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> tuple[Permutation | None, list[PrefixOp]]:
    """Parse the trace text format.

    Returns the permutation named by the ``# perm:`` header (if any) and the
    ops.  Blank lines, other comments and ``key=value`` summary lines are
    skipped so that ``sort --trace`` output can be replayed directly.
    """
    perm = None
    ops: list[PrefixOp] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("perm:") and perm is None:
                perm = parse_perm(body[len("perm:"):])
            continue
        toks = line.split()
        if "=" in toks[0]:
            continue
        try:
            kind = OpKind(toks[0])
            nums = [int(t) for t in toks[1:]]
        except ValueError as exc:
            raise ValueError(f"line {lineno}: cannot parse {raw!r}") from exc
        expected = 2 if kind is OpKind.REVERSAL else 3
        if len(nums) != expected:
            raise ValueError(f"line {lineno}: expected {expected} integers after {toks[0]}")
        if kind is OpKind.REVERSAL:
            ops.append(PrefixOp(kind, nums[1], None, nums[0]))
        else:
            ops.append(PrefixOp(kind, nums[1], nums[2], nums[0]))
    return perm, ops
