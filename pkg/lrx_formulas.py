#!/usr/bin/env python3
"""
LRX Formulas
Closed-form values for the reversal lemma, the distance of s*r^(n-i) to the
identity, and the n(n-1)/2 diameter lower bound.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict

from lrx_perm_core import InvalidDegreeError, InvalidPositionError, lee_distance


class CaseTag(str, Enum):
    I_EQ_1 = "I_EQ_1"
    MID = "MID"
    HIGH = "HIGH"


class Branch(str, Enum):
    CEIL_BRANCH = "CEIL_BRANCH"    # m = ceil(floor(n/2)/2) - 1
    FLOOR_BRANCH = "FLOOR_BRANCH"  # m = floor(floor(n/2)/2) - 1


@dataclass(frozen=True)
class TheoremCase:
    n: int
    i: int
    case_tag: CaseTag
    value: int

    def __int__(self) -> int:
        return self.value


def floor_half(x: int) -> int:
    return x // 2


def ceil_half(x: int) -> int:
    return (x + 1) // 2


def _check_lemma_range(n: int, j: int) -> None:
    if n < 3:
        raise InvalidDegreeError(f"the reversal lemma needs n >= 3, got {n}")
    if not 2 <= j <= ceil_half(n):
        raise InvalidPositionError(f"reversal length must be in 2..{ceil_half(n)} at n={n}, got {j}")


def _check_theorem_range(n: int, i: int) -> None:
    if n < 4:
        raise InvalidDegreeError(f"the theorem needs n >= 4, got {n}")
    if not 1 <= i <= n:
        raise InvalidPositionError(f"shift index must be in 1..{n}, got {i}")


def lemma_value(n: int, j: int) -> int:
    """Length of the reversal of the first j entries: j(j-1) - 1."""
    _check_lemma_range(n, j)
    return j * (j - 1) - 1


def base_value(n: int) -> int:
    """Cost of reversing both halves, without shifts."""
    lo, hi = floor_half(n), ceil_half(n)
    return hi * (hi - 1) - 1 + lo * (lo - 1) - 1


def branch_m(n: int, branch: Branch) -> int:
    """Half length reversed first by the branch."""
    half = floor_half(n)
    if Branch(branch) is Branch.CEIL_BRANCH:
        return ceil_half(half) - 1
    return floor_half(half) - 1


def residual_rotation(n: int, branch: Branch) -> int:
    """Exponent c of r reached after both half reversals, starting from s*r^-m."""
    lo, hi = floor_half(n), ceil_half(n)
    if Branch(branch) is Branch.CEIL_BRANCH:
        return ceil_half(lo) - 1 + floor_half(hi) - 1
    return floor_half(lo) - 1 + ceil_half(hi) - 1


def lee_tail(n: int, i: int, branch: Branch) -> int:
    """Length of the closing shift word of a branch."""
    return lee_distance(n, residual_rotation(n, branch) - n + i, 0)


def theorem_branch_lengths(n: int, i: int) -> Dict[Branch, int]:
    """Word length of each branch before taking the minimum."""
    _check_theorem_range(n, i)
    return {b: base_value(n) + 2 + lee_tail(n, i, b) for b in Branch}


def theorem_value(n: int, i: int) -> TheoremCase:
    """Piecewise value of dist(s*r^(n-i), ())."""
    _check_theorem_range(n, i)
    lo, hi = floor_half(n), ceil_half(n)
    if i == 1:
        tag, term = CaseTag.I_EQ_1, lo + 1
    elif i <= lo + 2:
        tag, term = CaseTag.MID, lo - i + 4
    else:
        # i >= hi + 2 here: for odd n the ranges meet, for even n they overlap
        tag, term = CaseTag.HIGH, i - hi
    return TheoremCase(n, i, tag, base_value(n) + term)


def theorem_value_unsimplified(n: int, i: int, normalize: bool = True) -> int:
    """
    Base terms + 2 + the minimum of the four displayed tail expressions.

    With normalize=True every expression is read as a circular distance on
    Z_n. normalize=False keeps the literal absolute values, which does not
    agree with the piecewise value (e.g. n=4, i=1 gives 7 instead of 5).
    """
    _check_theorem_range(n, i)
    lo, hi = floor_half(n), ceil_half(n)
    c_ceil = ceil_half(lo) - 1 + floor_half(hi) - 1
    c_floor = floor_half(lo) - 1 + ceil_half(hi) - 1
    c_floor_alt = ceil_half(hi) - 1 + floor_half(lo) - 1
    displayed = [
        c_ceil - n + i,
        n - (c_ceil - n + i),
        c_floor - n + i,
        n - (c_floor_alt - n + i),
    ]
    if normalize:
        tail = min(lee_distance(n, e, 0) for e in displayed)
    else:
        tail = min(abs(e) for e in displayed)
    return base_value(n) + 2 + tail


def lower_bound(n: int) -> int:
    """Diameter lower bound n(n-1)/2."""
    if n < 4:
        raise InvalidDegreeError(f"the bound is stated for n >= 4, got {n}")
    return n * (n - 1) // 2
