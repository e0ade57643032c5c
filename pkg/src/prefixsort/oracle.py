"""Exact prefix-operation distances by breadth-first search.

Full tables are built by a level-synchronous reverse BFS from the identity
over inverse generators, vectorised with numpy.  Single queries use a
bidirectional search whose backward half inverts the forward generators
generically, so it shares no code with the hand-written inverses.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import SizeTooLarge
from .perm import OpKind, Permutation, PrefixOp, apply_op, make_permutation

TABLE_MAX_N = 9
QUERY_MAX_N = 11
MAGIC = b"PFXD"
VERSION = 1
UNREACHED = 255

_BITS = {OpKind.REVERSAL: 1, OpKind.TRANSPOSITION: 2, OpKind.TRANSREVERSAL: 4}


@dataclass(frozen=True)
class OpSet:
    kinds: frozenset[OpKind]

    NAMES = {
        "r": frozenset({OpKind.REVERSAL}),
        "rt": frozenset({OpKind.REVERSAL, OpKind.TRANSPOSITION}),
        "rtr": frozenset({OpKind.REVERSAL, OpKind.TRANSREVERSAL}),
        "all": frozenset(OpKind),
    }

    def __post_init__(self):
        if not self.kinds:
            raise ValueError("an operation set must not be empty")

    @classmethod
    def parse(cls, name: "str | OpSet") -> "OpSet":
        if isinstance(name, OpSet):
            return name
        try:
            return cls(cls.NAMES[name])
        except KeyError:
            raise ValueError(f"unknown opset {name!r}; expected one of {sorted(cls.NAMES)}") from None

    @property
    def bitmask(self) -> int:
        return sum(_BITS[k] for k in self.kinds)

    @classmethod
    def from_bitmask(cls, mask: int) -> "OpSet":
        return cls(frozenset(k for k, bit in _BITS.items() if mask & bit))

    @property
    def name(self) -> str:
        for name, kinds in self.NAMES.items():
            if kinds == self.kinds:
                return name
        return "+".join(sorted(k.value for k in self.kinds))

    def __str__(self) -> str:
        return self.name


def legal_ops(n: int, opset: OpSet | str) -> list[PrefixOp]:
    """Every legal unit-frame op for size ``n``, in canonical order."""
    opset = OpSet.parse(opset)
    ops = []
    if OpKind.REVERSAL in opset.kinds:
        ops += [PrefixOp.reversal(j) for j in range(3, n + 2)]
    for kind in (OpKind.TRANSPOSITION, OpKind.TRANSREVERSAL):
        if kind in opset.kinds:
            ops += [PrefixOp(kind, j, k) for j in range(2, n + 1) for k in range(j + 1, n + 2)]
    return ops


def inverse_apply(perm: Permutation, op: PrefixOp) -> Permutation:
    """Undo ``op``: returns ``s`` with ``apply_op(s, op) == perm``."""
    if op.kind is OpKind.REVERSAL:
        return apply_op(perm, op)
    if op.kind is OpKind.TRANSPOSITION:
        return apply_op(perm, PrefixOp.transposition(op.k - op.j + 1, op.k, op.offset))
    # cut the block at positions k-j+1..k-1, reverse it, paste it at the front
    v = perm.values
    s, j, k = op.offset, op.j, op.k
    block = v[s + k - j + 1 : s + k]
    return Permutation(v[: s + 1] + block[::-1] + v[s + 1 : s + k - j + 1] + v[s + k :])


def neighbors(perm: Permutation, opset: OpSet | str, inverse: bool = False) -> list[Permutation]:
    step = inverse_apply if inverse else apply_op
    return [step(perm, op) for op in legal_ops(perm.n, opset)]


def rank(middle) -> int:
    """Lexicographic 0-based rank of a sequence of distinct values."""
    middle = list(middle)
    n = len(middle)
    r = 0
    for i, v in enumerate(middle):
        smaller = sum(1 for w in middle[i + 1 :] if w < v)
        r += smaller * math.factorial(n - 1 - i)
    return r


def unrank(r: int, n: int) -> Permutation:
    pool = list(range(1, n + 1))
    out = []
    for i in range(n):
        f = math.factorial(n - 1 - i)
        idx, r = divmod(r, f)
        out.append(pool.pop(idx))
    return make_permutation(out)


def _rank_rows(rows: np.ndarray) -> np.ndarray:
    n = rows.shape[1]
    out = np.zeros(rows.shape[0], dtype=np.int64)
    for i in range(n - 1):
        smaller = (rows[:, i + 1 :] < rows[:, i : i + 1]).sum(axis=1)
        out += smaller * math.factorial(n - 1 - i)
    return out


def _middle_map(n: int, step, op: PrefixOp) -> np.ndarray:
    image = step(Permutation.identity(n), op)
    return np.array(image.middle, dtype=np.int64) - 1


@dataclass
class DistanceTable:
    n: int
    opset: OpSet
    dist: np.ndarray
    r_min: np.ndarray

    def distance(self, perm: Permutation) -> int:
        return int(self.dist[rank(perm.middle)])

    def reversals(self, perm: Permutation) -> int:
        return int(self.r_min[rank(perm.middle)])

    @property
    def diameter(self) -> int:
        return int(self.dist.max())

    def to_bytes(self) -> bytes:
        header = MAGIC + struct.pack("<BBB", VERSION, self.n, self.opset.bitmask)
        header += b"\0" * (16 - len(header))
        return header + self.dist.astype(np.uint8).tobytes()

    def write(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_bytes())


def read_table(path: str | Path) -> tuple[int, OpSet, np.ndarray]:
    """Read a binary distance file; ``r_min`` is not stored on disk."""
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise ValueError(f"{path}: bad magic {data[:4]!r}")
    version, n, mask = struct.unpack("<BBB", data[4:7])
    if version != VERSION:
        raise ValueError(f"{path}: unsupported version {version}")
    dist = np.frombuffer(data[16:], dtype=np.uint8)
    if dist.size != math.factorial(n):
        raise ValueError(f"{path}: expected {math.factorial(n)} entries, found {dist.size}")
    return n, OpSet.from_bitmask(mask), dist


def _build_table(n: int, opset: OpSet) -> DistanceTable:
    size = math.factorial(n)
    dist = np.full(size, UNREACHED, dtype=np.uint8)
    r_min = np.full(size, UNREACHED, dtype=np.uint8)
    dist[0] = 0
    r_min[0] = 0
    ops = legal_ops(n, opset)
    inv_maps = [_middle_map(n, inverse_apply, op) for op in ops]
    costs = [1 if op.kind is OpKind.REVERSAL else 0 for op in ops]
    frontier = np.arange(1, n + 1, dtype=np.int64)[None, :]
    frontier_ranks = np.zeros(1, dtype=np.int64)
    level = 0
    while frontier.shape[0]:
        nxt = []
        base = r_min[frontier_ranks].astype(np.int64)
        for h, cost in zip(inv_maps, costs):
            cand = frontier[:, h]
            ranks = _rank_rows(cand)
            d = dist[ranks]
            fresh = d == UNREACHED
            hit = fresh | (d == level + 1)
            dist[ranks[fresh]] = level + 1
            np.minimum.at(r_min, ranks[hit], (base[hit] + cost).astype(np.uint8))
            if fresh.any():
                nxt.append((cand[fresh], ranks[fresh]))
        level += 1
        if nxt:
            frontier = np.concatenate([rows for rows, _ in nxt])
            frontier_ranks = np.concatenate([r for _, r in nxt])
        else:
            frontier = frontier[:0]
    if (dist == UNREACHED).any():
        raise RuntimeError(f"unreachable states for n={n}, opset {opset}")
    return DistanceTable(n, opset, dist, r_min)


@lru_cache(maxsize=16)
def _cached_table(n: int, opset: OpSet) -> DistanceTable:
    return _build_table(n, opset)


def distance_table(n: int, opset: OpSet | str) -> DistanceTable:
    opset = OpSet.parse(opset)
    if n > TABLE_MAX_N:
        raise SizeTooLarge(f"tables are limited to n <= {TABLE_MAX_N}, got {n}")
    if n < 0:
        raise ValueError("n must be non-negative")
    return _cached_table(n, opset)


def diameter(n: int, opset: OpSet | str) -> int:
    return distance_table(n, opset).diameter


def exact_distance(perm: Permutation, opset: OpSet | str) -> int:
    opset = OpSet.parse(opset)
    n = perm.n
    if n > QUERY_MAX_N:
        raise SizeTooLarge(f"single queries are limited to n <= {QUERY_MAX_N}, got {n}")
    start = perm.middle
    goal = tuple(range(1, n + 1))
    if start == goal:
        return 0
    ops = legal_ops(n, opset)
    fwd_maps = [tuple(_middle_map(n, apply_op, op).tolist()) for op in ops]
    bwd_maps = [tuple(int(x) for x in np.argsort(m)) for m in fwd_maps]

    seen = ({start: 0}, {goal: 0})
    frontiers = ([start], [goal])
    maps = (fwd_maps, bwd_maps)
    depth = [0, 0]
    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, other = seen[side], seen[1 - side]
        best = None
        nxt = []
        for state in frontiers[side]:
            for g in maps[side]:
                s = tuple(state[x] for x in g)
                if s in mine:
                    continue
                mine[s] = depth[side] + 1
                nxt.append(s)
                if s in other:
                    total = depth[side] + 1 + other[s]
                    best = total if best is None else min(best, total)
        if best is not None:
            return best
        depth[side] += 1
        frontiers = (nxt, frontiers[1]) if side == 0 else (frontiers[0], nxt)
    raise RuntimeError(f"{perm} cannot reach the identity with opset {opset}")
