#!/usr/bin/env python3
"""
Tests for lrx_formulas: reversal lemma, the piecewise distance of s*r^(n-i)
and the n(n-1)/2 bound.
"""

import sys

import pytest

from lrx_formulas import (
    Branch,
    CaseTag,
    lee_tail,
    lemma_value,
    lower_bound,
    residual_rotation,
    theorem_branch_lengths,
    theorem_value,
    theorem_value_unsimplified,
)
from lrx_perm_core import InvalidDegreeError, InvalidPositionError, full_reversal, parity, rotate


def test_lemma_value_known_values():
    assert lemma_value(7, 3) == 5
    assert lemma_value(4, 2) == 1
    assert lemma_value(10, 5) == 19


def test_lemma_value_range():
    with pytest.raises(InvalidPositionError):
        lemma_value(10, 6)
    with pytest.raises(InvalidPositionError):
        lemma_value(10, 1)
    with pytest.raises(InvalidDegreeError):
        lemma_value(2, 2)
    assert lemma_value(3, 2) == 1


def test_theorem_value_known_values():
    assert theorem_value(6, 2).value == 15
    assert theorem_value(5, 1).value == 9
    assert theorem_value(4, 4).value == 4
    assert int(theorem_value(6, 2)) == 15


def test_theorem_case_tags():
    assert theorem_value(5, 1).case_tag is CaseTag.I_EQ_1
    assert theorem_value(6, 2).case_tag is CaseTag.MID
    assert theorem_value(8, 8).case_tag is CaseTag.HIGH
    # even n: i = n/2 + 2 satisfies both middle and high ranges; MID is reported
    assert theorem_value(8, 6).case_tag is CaseTag.MID


def test_theorem_value_range():
    with pytest.raises(InvalidDegreeError):
        theorem_value(3, 1)
    with pytest.raises(InvalidPositionError):
        theorem_value(6, 0)
    with pytest.raises(InvalidPositionError):
        theorem_value(6, 7)


def test_piecewise_value_is_the_better_branch():
    for n in range(4, 61):
        for i in range(1, n + 1):
            lengths = theorem_branch_lengths(n, i)
            assert min(lengths.values()) == theorem_value(n, i).value


def test_branch_tail_is_a_circular_distance():
    assert residual_rotation(5, Branch.CEIL_BRANCH) == 0
    assert residual_rotation(5, Branch.FLOOR_BRANCH) == 1
    assert lee_tail(5, 1, Branch.CEIL_BRANCH) == 1
    assert lee_tail(5, 1, Branch.FLOOR_BRANCH) == 2
    for n in range(4, 20):
        for i in range(1, n + 1):
            for branch in Branch:
                assert 0 <= lee_tail(n, i, branch) <= n // 2


def test_unsimplified_value_matches_piecewise():
    assert theorem_value_unsimplified(6, 2) == 15
    for n in range(4, 201):
        for i in range(1, n + 1):
            assert theorem_value_unsimplified(n, i) == theorem_value(n, i).value


def test_literal_absolute_values_disagree():
    assert theorem_value_unsimplified(4, 1, normalize=False) == 7
    assert theorem_value(4, 1).value == 5


def test_lower_bound():
    assert lower_bound(10) == 45
    assert lower_bound(4) == 6
    assert lower_bound(6) == 15
    with pytest.raises(InvalidDegreeError):
        lower_bound(3)


def test_bound_equals_theorem_at_i_two():
    for n in range(4, 1001):
        assert theorem_value(n, 2).value == lower_bound(n)


def test_theorem_value_parity_for_even_degrees():
    # with n even every generator is odd, so word length parity is the sign
    for n in range(4, 21, 2):
        for i in range(1, n + 1):
            assert theorem_value(n, i).value % 2 == parity(rotate(full_reversal(n), n - i))


if __name__ == "__main__":
    print("🧪 Testing LRX closed forms")
    print("=" * 40)
    code = pytest.main([__file__, "-q"])
    print("🎉 All formula tests passed!" if code == 0 else "❌ Some formula tests failed")
    sys.exit(code)
