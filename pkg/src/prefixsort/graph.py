"""Breakpoint graphs, grey-edge types and scenario matching.

Positions passed to and returned from :class:`BreakpointGraph` are absolute.
Under the standard convention black edges are reported as breakpoint
positions ``i`` (the pair ``(p[i-1], p[i])``, position 1 always included);
under the forward-march convention a black edge ``i`` is the pair
``(p[i], p[i+1])`` with ``i >= cursor``.  Ops inside a :class:`ScenarioMatch`
are frame-relative and carry the cursor as their offset.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .errors import CursorNotSorted, NoMatch, NoTrappedEdge, Unclassifiable
from .perm import Permutation, PrefixOp, apply_op, check_cursor, is_sorted, sorted_prefix_length


class Convention(enum.Enum):
    STANDARD = "std"
    FORWARD_MARCH = "fm"


class EdgeType(enum.IntEnum):
    TYPE1 = 1
    TYPE2 = 2
    TYPE3 = 3
    TYPE4 = 4


@dataclass(frozen=True)
class ScenarioMatch:
    scenario: str
    op: PrefixOp
    grey_edges_used: tuple[tuple[int, int], ...]
    predicted_delta: int
    forward_march: bool = False


class BreakpointGraph:
    def __init__(self, perm: Permutation, convention: Convention = Convention.STANDARD, cursor: int = 0):
        if convention is Convention.STANDARD and cursor != 0:
            raise CursorNotSorted("the standard convention has no cursor")
        check_cursor(perm, cursor)
        self.perm = perm
        self.convention = convention
        self.cursor = cursor

    def position(self, value: int) -> int:
        return self.perm.values.index(value)

    def __repr__(self) -> str:
        return f"BreakpointGraph({list(self.perm.values)}, {self.convention.name}, cursor={self.cursor})"

    @property
    def n(self) -> int:
        return self.perm.n

    def black_pair(self, left: int) -> bool:
        """Whether the pair ``(p[left], p[left+1])`` carries a black edge."""
        if left < self.cursor or left > self.n:
            return False
        if left == 0 and self.convention is Convention.STANDARD:
            return True
        v = self.perm.values
        return abs(v[left] - v[left + 1]) != 1

    @cached_property
    def black_edges(self) -> frozenset[int]:
        lefts = [i for i in range(self.cursor, self.n + 1) if self.black_pair(i)]
        if self.convention is Convention.STANDARD:
            return frozenset(i + 1 for i in lefts)
        return frozenset(lefts)

    @cached_property
    def grey_edges(self) -> frozenset[tuple[int, int]]:
        edges = set()
        for p in range(self.cursor, self.n + 2):
            for q in self.grey_partners(p):
                if p < q:
                    edges.add((p, q))
        return frozenset(edges)

    def grey_partners(self, p: int) -> list[int]:
        if p < self.cursor or p > self.n + 1:
            return []
        value = self.perm.values[p]
        out = []
        for w in (value - 1, value + 1):
            if 0 <= w <= self.n + 1:
                q = self.position(w)
                if q >= self.cursor and abs(q - p) >= 2:
                    out.append(q)
        return sorted(out)

    def after(self, op: PrefixOp, cursor: int | None = None) -> "BreakpointGraph":
        return BreakpointGraph(apply_op(self.perm, op), self.convention, self.cursor if cursor is None else cursor)

    def dump(self) -> str:
        """Debug listing: ``B i`` and ``G p q`` lines, frame-relative."""
        c = self.cursor
        rows = [("B", i - c) for i in self.black_edges]
        rows += [("G", p - c, q - c) for p, q in self.grey_edges]
        rows.sort()
        return "".join(" ".join(str(x) for x in row) + "\n" for row in rows)


def build_graph(perm: Permutation, convention: Convention = Convention.STANDARD, cursor: int = 0) -> BreakpointGraph:
    return BreakpointGraph(perm, convention, cursor)


def grey_partners(g: BreakpointGraph, p: int) -> list[int]:
    return g.grey_partners(p)


def _left_context(g: BreakpointGraph, p: int) -> bool:
    if g.convention is Convention.FORWARD_MARCH:
        if p == g.cursor + 1:
            return True
        if p == g.cursor:
            return False
    else:
        if p == 1 and g.perm[1] != 1:
            return True
        if p >= 1 and g.perm[1] == 1 and p == sorted_prefix_length(g.perm):
            return False
    raise Unclassifiable(f"position {p} is not a context endpoint")


def classify(g: BreakpointGraph, edge: tuple[int, int]) -> EdgeType:
    """Type of a grey edge ``(p, q)`` seen from its context endpoint ``p``.

    ``p`` is either the first element of the (frame) prefix, whose left black
    edge is the starting one, or the last element of the sorted prefix, whose
    right black edge is.  Type 1 wins over Type 2 and Type 3 over Type 4 when
    both sides of ``q`` carry a black edge.
    """
    p, q = edge
    if q not in g.grey_partners(p):
        raise Unclassifiable(f"{edge} is not a grey edge")
    left_of_q = g.black_pair(q - 1)
    right_of_q = g.black_pair(q)
    if _left_context(g, p):
        if not g.black_pair(p - 1):
            raise Unclassifiable(f"no black edge left of position {p}")
        if right_of_q:
            return EdgeType.TYPE1
        if left_of_q:
            return EdgeType.TYPE2
    else:
        if not g.black_pair(p):
            raise Unclassifiable(f"no black edge right of position {p}")
        if left_of_q:
            return EdgeType.TYPE3
        if right_of_q:
            return EdgeType.TYPE4
    raise Unclassifiable(f"neither side of position {q} carries a black edge")


def trapped_black(g: BreakpointGraph, edge: tuple[int, int]) -> int:
    """Smallest absolute ``i`` in the frame range ``[2, q]`` whose left pair is black."""
    _, q = edge
    for i in range(g.cursor + 2, q + 1):
        if g.black_pair(i - 1):
            return i
    raise NoTrappedEdge(f"no black edge between the endpoints of {edge}")


def match_rt3(g: BreakpointGraph) -> ScenarioMatch:
    if g.convention is not Convention.STANDARD:
        raise NoMatch("match_rt3 needs the standard convention")
    perm = g.perm
    if is_sorted(perm):
        raise NoMatch("permutation is already sorted")
    if perm[1] != 1:
        partners = [q for q in g.grey_partners(1) if q > 1]
        types = {q: classify(g, (1, q)) for q in partners}
        for q in partners:
            if types[q] is EdgeType.TYPE1:
                i = trapped_black(g, (1, q))
                return ScenarioMatch("RT3-S1", PrefixOp.transposition(i, q + 1), ((1, q),), 1)
        for q in partners:
            if types[q] is EdgeType.TYPE2:
                return ScenarioMatch("RT3-S2", PrefixOp.reversal(q), ((1, q),), 1)
        raise NoMatch(f"no Type 1 or Type 2 edge at position 1 of {perm}")
    m = sorted_prefix_length(perm)
    q = g.position(m + 1)
    t = classify(g, (m, q))
    if t is EdgeType.TYPE3:
        return ScenarioMatch("RT3-S3", PrefixOp.transposition(m + 1, q), ((m, q),), 1)
    return ScenarioMatch("RT3-S4", PrefixOp.reversal(q + 1), ((m, q),), 0)


def match_fm(g: BreakpointGraph) -> ScenarioMatch:
    if g.convention is not Convention.FORWARD_MARCH:
        raise NoMatch("match_fm needs the forward-march convention")
    c = g.cursor
    size = g.n - c
    if size < 1 or not g.black_pair(c):
        raise NoMatch("no starting black edge: the suffix is sorted")

    def blk(i: int) -> bool:
        # black edge (pi[i-1], pi[i]) in frame positions
        return 1 <= i <= size + 1 and g.black_pair(c + i - 1)

    def partners(i: int) -> list[int]:
        return [q - c for q in g.grey_partners(c + i)]

    def edge(a: int, b: int) -> tuple[int, int]:
        return (c + min(a, b), c + max(a, b))

    anchor_next = g.position(c + 1) - c
    first_partners = [q for q in partners(1) if q >= 3]

    # S1: (p0, pi) and (p[i-1], pj) grey; march onto p0
    i = anchor_next
    if i >= 2 and blk(i):
        js = sorted(j for j in partners(i - 1) if j > i and blk(j))
        if js:
            j = js[0]
            return ScenarioMatch("S1", PrefixOp.transposition(i, j, c),
                                 (edge(0, i), edge(i - 1, j)), 2, True)

    # S2: (p1, p[j-1]) and (p[i-1], pj) grey
    for q in first_partners:
        j = q + 1
        if not blk(j):
            continue
        rs = sorted(r for r in partners(j) if 1 <= r <= j - 2 and blk(r + 1))
        if rs:
            r = rs[0]
            return ScenarioMatch("S2", PrefixOp.transposition(r + 1, j, c),
                                 (edge(1, q), edge(r, j)), 2, False)

    # S3: (p0, pi) and (p1, p[j-1]) grey; march onto p0
    if i >= 2 and blk(i):
        for q in first_partners:
            j = q + 1
            if i < j and blk(j):
                return ScenarioMatch("S3", PrefixOp.transposition(i, j, c),
                                     (edge(0, i), edge(1, q)), 2, True)

    # S4: (p1, p[j-1]) grey with a trapped black edge inside
    for q in first_partners:
        j = q + 1
        if blk(j):
            t = trapped_black(g, (c + 1, c + q)) - c
            return ScenarioMatch("S4", PrefixOp.transposition(t, j, c), (edge(1, q),), 1)

    # S5: (p1, pj) grey with black edge left of pj
    for q in first_partners:
        if blk(q):
            return ScenarioMatch("S5", PrefixOp.reversal(q, c), (edge(1, q),), 1)

    raise NoMatch(f"no forward-march scenario for {g.perm} at cursor {c}")
