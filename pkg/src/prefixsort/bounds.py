"""Closed-form lower and upper bounds and the adaptive ratio curves.

All ratios are exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionViolated
from .sorters import Algo

BASE_FACTOR = {Algo.RT3: 3, Algo.RT2: 2, Algo.FM3: 3}


def lower_bound_std(b: int) -> int:
    """Each operation removes at most two standard breakpoints."""
    if b < 1:
        raise PreconditionViolated(f"standard breakpoint count must be >= 1, got {b}")
    return b // 2


def lower_bound_fm(b: int) -> int:
    """Each operation removes at most three forward-march black edges."""
    if b < 0:
        raise PreconditionViolated(f"breakpoint count must be >= 0, got {b}")
    return -(-b // 3)


def lower_bound(algo: Algo | str, b: int) -> int:
    return lower_bound_fm(b) if Algo(algo) is Algo.FM3 else lower_bound_std(b)


def upper_bound(algo: Algo | str, b: int) -> int:
    algo = Algo(algo)
    if algo is Algo.FM3:
        if b < 0:
            raise PreconditionViolated(f"breakpoint count must be >= 0, got {b}")
        return b
    if b < 1:
        raise PreconditionViolated(f"standard breakpoint count must be >= 1, got {b}")
    if algo is Algo.RT3:
        return -(-3 * (b - 1) // 2)
    return b - 1


def adaptive_ratio(algo: Algo | str, b: int, r: int) -> Fraction:
    """Ratio bound when an optimal solution uses ``r`` prefix reversals."""
    algo = Algo(algo)
    if r < 0:
        raise PreconditionViolated(f"r must be >= 0, got {r}")
    factor = BASE_FACTOR[algo]
    if algo is Algo.FM3:
        if b < 2 * r:
            raise PreconditionViolated(f"needs b >= 2r, got b={b}, r={r}")
        denom = b + r
    else:
        if b < r:
            raise PreconditionViolated(f"needs b >= r, got b={b}, r={r}")
        denom = b + r - 1
    if r == 0:
        return Fraction(factor)
    return factor - Fraction(factor * r, denom)


@dataclass(frozen=True)
class AdaptiveCurve:
    algo: Algo
    b: int
    points: tuple[tuple[int, Fraction], ...]


def adaptive_curve(algo: Algo | str, b: int, r_values=None) -> AdaptiveCurve:
    algo = Algo(algo)
    r_max = b // 2 if algo is Algo.FM3 else b
    if r_values is None:
        r_values = range(r_max + 1)
    points = tuple((r, adaptive_ratio(algo, b, r)) for r in r_values)
    return AdaptiveCurve(algo, b, points)
