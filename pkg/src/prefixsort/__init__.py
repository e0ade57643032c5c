"""Sorting permutations by prefix reversals, prefix transpositions and prefix transreversals."""

from .bounds import adaptive_ratio, lower_bound_fm, lower_bound_std, upper_bound
from .errors import PrefixSortError
from .graph import BreakpointGraph, Convention, EdgeType, build_graph, classify, match_fm, match_rt3
from .oracle import OpSet, diameter, distance_table, exact_distance
from .perm import (
    OpKind,
    Permutation,
    PrefixOp,
    SortTrace,
    apply_trace,
    breakpoints_fm,
    breakpoints_std,
    is_sorted,
    make_permutation,
    prefix_reversal,
    prefix_transposition,
    prefix_transreversal,
)
from .sorters import Algo, sort_fm3, sort_rt2, sort_rt3

__all__ = [
    "Algo", "BreakpointGraph", "Convention", "EdgeType", "OpKind", "OpSet", "Permutation",
    "PrefixOp", "PrefixSortError", "SortTrace", "adaptive_ratio", "apply_trace", "breakpoints_fm",
    "breakpoints_std", "build_graph", "classify", "diameter", "distance_table", "exact_distance",
    "is_sorted", "lower_bound_fm", "lower_bound_std", "make_permutation", "match_fm", "match_rt3",
    "prefix_reversal", "prefix_transposition", "prefix_transreversal", "sort_fm3", "sort_rt2",
    "sort_rt3", "upper_bound",
]
