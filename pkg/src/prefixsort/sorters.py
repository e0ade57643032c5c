"""The three approximation sorters as step functions plus full-run drivers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

from .errors import GuardExceeded, NoMatch
from .graph import BreakpointGraph, Convention, ScenarioMatch, match_fm, match_rt3
from .perm import (
    Permutation,
    PrefixOp,
    SortTrace,
    apply_op,
    breakpoint_delta,
    breakpoints_fm,
    breakpoints_std,
    is_sorted,
    sorted_prefix_length,
)


class Algo(str, enum.Enum):
    RT3 = "rt3"
    RT2 = "rt2"
    FM3 = "fm3"

    @property
    def convention(self) -> Convention:
        return Convention.FORWARD_MARCH if self is Algo.FM3 else Convention.STANDARD


def guard_limit(n: int) -> int:
    return 10 * n + 10


@dataclass
class SorterState:
    perm: Permutation
    cursor: int = 0
    convention: Convention = Convention.STANDARD
    steps_taken: int = 0
    guard_limit: int = field(default=-1)
    graph: BreakpointGraph = field(init=False)

    def __post_init__(self):
        if self.guard_limit < 0:
            self.guard_limit = guard_limit(self.perm.n)
        self.graph = BreakpointGraph(self.perm, self.convention, self.cursor)

    @classmethod
    def start(cls, perm: Permutation, algo: Algo | str) -> "SorterState":
        algo = Algo(algo)
        if algo is Algo.FM3:
            # initial forward march emits no op
            return cls(perm, sorted_prefix_length(perm), Convention.FORWARD_MARCH)
        return cls(perm)

    def breakpoints(self) -> int:
        if self.convention is Convention.FORWARD_MARCH:
            return breakpoints_fm(self.perm, self.cursor)
        return breakpoints_std(self.perm)

    def done(self) -> bool:
        return is_sorted(self.perm)

    def _advance(self, op: PrefixOp, cursor: int, perm: Permutation | None = None) -> None:
        self.steps_taken += 1
        if self.steps_taken > self.guard_limit:
            raise GuardExceeded(
                f"{self.steps_taken} steps exceed the guard limit {self.guard_limit}"
            )
        self.perm = apply_op(self.perm, op) if perm is None else perm
        self.cursor = cursor
        self.graph = BreakpointGraph(self.perm, self.convention, cursor)


def transreversal_match(g: BreakpointGraph) -> ScenarioMatch:
    """Transreversal for a Type 4 edge after the sorted prefix 1..m."""
    match = match_rt3(g)
    if match.scenario != "RT3-S4":
        return match
    (m, q), = match.grey_edges_used
    return ScenarioMatch("RT2-S4", PrefixOp.transreversal(m + 1, q + 1), ((m, q),), 1)


def _std_step(state: SorterState, matcher: Callable[[BreakpointGraph], ScenarioMatch]) -> tuple[PrefixOp, str]:
    if state.done():
        raise NoMatch("permutation is already sorted")
    match = matcher(state.graph)
    state._advance(match.op, 0)
    return match.op, match.scenario


def rt3_step(state: SorterState) -> tuple[PrefixOp, str]:
    return _std_step(state, match_rt3)


def rt2_step(state: SorterState) -> tuple[PrefixOp, str]:
    return _std_step(state, transreversal_match)


def fm3_step(state: SorterState) -> tuple[PrefixOp, str]:
    if state.done():
        raise NoMatch("permutation is already sorted")
    match = match_fm(state.graph)
    perm = apply_op(state.perm, match.op)
    # forward march: the old cursor is still inside the sorted prefix
    state._advance(match.op, sorted_prefix_length(perm, state.cursor), perm)
    return match.op, match.scenario


STEPS = {Algo.RT3: rt3_step, Algo.RT2: rt2_step, Algo.FM3: fm3_step}


def run_sorter(perm: Permutation, algo: Algo | str) -> SortTrace:
    algo = Algo(algo)
    step = STEPS[algo]
    state = SorterState.start(perm, algo)
    trace = SortTrace()
    standard = state.convention is Convention.STANDARD
    while not state.done():
        before = state.perm
        op, scenario = step(state)
        trace.append(op, scenario, breakpoint_delta(before, state.perm, op, standard))
    return trace


def sort_rt3(perm: Permutation) -> SortTrace:
    return run_sorter(perm, Algo.RT3)


def sort_rt2(perm: Permutation) -> SortTrace:
    return run_sorter(perm, Algo.RT2)


def sort_fm3(perm: Permutation) -> SortTrace:
    return run_sorter(perm, Algo.FM3)


def breakpoints_for(algo: Algo | str, perm: Permutation) -> int:
    """Breakpoint count under the convention the algorithm's bound uses."""
    if Algo(algo) is Algo.FM3:
        return breakpoints_fm(perm, 0)
    return breakpoints_std(perm)
