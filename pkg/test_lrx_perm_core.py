#!/usr/bin/env python3
"""
Tests for lrx_perm_core: permutations, generators, orders, rank/unrank and
the dihedral subgroup.
"""

import itertools
import random
import sys

import numpy as np
import pytest

from lrx_perm_core import (
    DegreeMismatchError,
    DihedralElement,
    Generator,
    InvalidDegreeError,
    InvalidPositionError,
    LRXError,
    OrbitView,
    ParseError,
    Permutation,
    all_permutations,
    apply_generator,
    as_permutation,
    compose,
    dihedral_from_permutation,
    dihedral_multiply,
    dihedral_to_permutation,
    format_permutation,
    full_reversal,
    identity,
    in_cyclic_order,
    inverse,
    lee_distance,
    less_z,
    parity,
    parse_permutation,
    rank,
    rank_batch,
    reversal,
    rotate,
    rotation_offset,
    shift,
    unrank,
    unrank_batch,
    window_inversions,
)


def P(*values):
    return as_permutation(values)


def test_permutation_rejects_non_bijections():
    with pytest.raises(LRXError):
        P(1, 1, 2)
    with pytest.raises(LRXError):
        P(0, 1, 2)
    with pytest.raises(InvalidDegreeError):
        identity(65)
    with pytest.raises(InvalidDegreeError):
        identity(0)


def test_one_based_access():
    pi = P(3, 1, 2)
    assert pi[1] == 3 and pi[3] == 2
    with pytest.raises(InvalidPositionError):
        pi[0]
    with pytest.raises(InvalidPositionError):
        pi[4]


def test_generators_act_on_the_right():
    pi = identity(4)
    assert apply_generator(pi, Generator.X) == P(2, 1, 3, 4)
    assert apply_generator(pi, Generator.L) == P(2, 3, 4, 1)
    assert apply_generator(pi, Generator.R) == P(4, 1, 2, 3)
    assert apply_generator(P(1), Generator.L) == P(1)
    with pytest.raises(InvalidDegreeError):
        apply_generator(P(1), Generator.X)


def test_generator_inverse():
    assert Generator.L.inverse is Generator.R
    assert Generator.R.inverse is Generator.L
    assert Generator.X.inverse is Generator.X
    pi = P(3, 5, 1, 4, 2)
    for g in Generator:
        assert apply_generator(apply_generator(pi, g), g.inverse) == pi


def test_compose_and_inverse():
    a, b = P(2, 3, 1), P(1, 3, 2)
    # (a*b)(i) = a(b(i))
    assert compose(a, b) == P(2, 1, 3)
    assert a * b == compose(a, b)
    for pi in all_permutations(4):
        assert compose(pi, inverse(pi)) == identity(4)
        assert compose(inverse(pi), pi) == identity(4)
    with pytest.raises(DegreeMismatchError):
        compose(identity(3), identity(4))


def test_right_multiplication_by_generators_matches_apply():
    r = shift(5, 1)
    pi = P(4, 2, 5, 1, 3)
    assert compose(pi, r) == apply_generator(pi, Generator.L)
    assert compose(pi, inverse(r)) == apply_generator(pi, Generator.R)
    assert compose(pi, P(2, 1, 3, 4, 5)) == apply_generator(pi, Generator.X)


def test_rotate_is_additive_and_orbits_have_n_members():
    pi = P(3, 1, 4, 5, 2)
    for a, b in itertools.product(range(-6, 7), repeat=2):
        assert rotate(pi, a + b) == rotate(rotate(pi, a), b)
    for n in range(1, 7):
        for base in (identity(n), full_reversal(n)):
            assert len(set(OrbitView(base).members)) == n


def test_orbit_membership_and_offset():
    s = full_reversal(5)
    assert rotate(s, 3) in OrbitView(s)
    assert identity(5) not in OrbitView(s)
    assert rotation_offset(s, rotate(s, 3)) == 3
    assert rotation_offset(identity(5), s) is None


def test_reversal_is_an_involution():
    pi = P(5, 3, 1, 2, 6, 4)
    for i in range(1, 6):
        for j in range(i + 1, 7):
            assert reversal(reversal(pi, i, j), i, j) == pi
    assert reversal(identity(5), 1, 3) == P(3, 2, 1, 4, 5)
    with pytest.raises(InvalidPositionError):
        reversal(pi, 3, 3)


def test_parity():
    assert parity(identity(5)) == 0
    assert parity(P(2, 1, 3)) == 1
    # an n-cycle has sign (-1)^(n-1)
    assert parity(shift(4, 1)) == 1
    assert parity(shift(5, 1)) == 0


def test_lee_distance_known_values():
    assert lee_distance(10, 9, 2) == 3
    assert lee_distance(8, 0, 4) == 4
    assert lee_distance(7, 3, 3) == 0
    assert lee_distance(5, -3, 0) == 2


def test_lee_distance_is_a_metric():
    for n in range(1, 13):
        for a, b, c in itertools.product(range(n), repeat=3):
            assert lee_distance(n, a, b) == lee_distance(n, b, a)
            assert (lee_distance(n, a, b) == 0) == (a == b)
            assert lee_distance(n, a, c) <= lee_distance(n, a, b) + lee_distance(n, b, c)


def test_cyclic_order_known_values():
    pi = identity(5)
    assert in_cyclic_order(pi, 1, 2, 3)
    assert in_cyclic_order(pi, 3, 1, 2)
    assert not in_cyclic_order(pi, 2, 1, 3)
    with pytest.raises(InvalidPositionError):
        in_cyclic_order(pi, 1, 1, 2)


def test_less_z_is_a_strict_total_order():
    pi = identity(6)
    assert less_z(pi, 1, 2, 3)
    assert less_z(pi, 3, 4, 1)
    for z, a, b in itertools.permutations(range(1, 7), 3):
        assert less_z(pi, z, a, b) != less_z(pi, z, b, a)
    with pytest.raises(InvalidPositionError):
        less_z(pi, 2, 2, 3)


def test_window_inversions():
    assert window_inversions(identity(5), 5, 1, 4) == 0
    assert window_inversions(P(4, 3, 2, 1, 5), 5, 1, 4) == 6
    # the reference value wraps the order: after 3 come 4, 5, 1, 2
    assert window_inversions(P(4, 5, 1, 2, 3), 3, 1, 4) == 0
    assert window_inversions(P(2, 1, 5, 4, 3), 3, 1, 4) == 6
    assert window_inversions(identity(5), 5, 2, 2) == 0
    with pytest.raises(InvalidPositionError):
        window_inversions(identity(5), 2, 1, 4)


def test_adjacent_swap_changes_inversions_by_one():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(4, 9)
        pi = Permutation(tuple(rng.sample(range(1, n + 1), n)))
        z = pi[n]
        swapped = apply_generator(pi, Generator.X)
        diff = window_inversions(swapped, z, 1, n - 1) - window_inversions(pi, z, 1, n - 1)
        assert abs(diff) == 1


def test_rank_known_values():
    assert rank(P(2, 1, 3)) == 2
    assert rank(identity(6)) == 0
    assert rank(full_reversal(6)) == 719
    with pytest.raises(LRXError):
        unrank(3, 6)
    with pytest.raises(LRXError):
        unrank(3, -1)


def test_rank_unrank_round_trip_is_exhaustive_and_lexicographic():
    for n in range(1, 7):
        words = [tuple(p) for p in itertools.permutations(range(1, n + 1))]
        for idx, word in enumerate(words):
            assert rank(Permutation(word)) == idx
            assert unrank(n, idx).word == word


def test_rank_unrank_random_samples_up_to_twelve():
    rng = random.Random(11)
    for n in range(7, 13):
        for _ in range(50):
            pi = Permutation(tuple(rng.sample(range(1, n + 1), n)))
            assert unrank(n, rank(pi)) == pi


def test_batch_rank_matches_scalar():
    n = 6
    ranks = np.arange(720, dtype=np.int64)
    words = unrank_batch(n, ranks)
    assert words.shape == (720, 6)
    for idx in (0, 1, 2, 100, 359, 719):
        assert tuple(int(v) for v in words[idx]) == unrank(n, idx).word
    assert np.array_equal(rank_batch(words), ranks)


def test_dihedral_known_values():
    s_r2 = DihedralElement(4, True, 2)
    assert dihedral_to_permutation(s_r2) == P(2, 1, 4, 3)
    s = DihedralElement(6, True, 0)
    assert dihedral_multiply(s, s) == DihedralElement(6, False, 0)
    for a, b in itertools.product(range(6), repeat=2):
        product = DihedralElement(6, True, a) * DihedralElement(6, True, b)
        assert product == DihedralElement(6, False, b - a)


def test_dihedral_map_is_a_homomorphism():
    for n in range(3, 17):
        elements = [DihedralElement(n, e, k) for e in (False, True) for k in range(n)]
        for a, b in itertools.product(elements, repeat=2):
            assert dihedral_to_permutation(a * b) == compose(dihedral_to_permutation(a),
                                                             dihedral_to_permutation(b))
        for a in elements:
            assert dihedral_from_permutation(dihedral_to_permutation(a)) == a
    assert dihedral_from_permutation(P(2, 1, 3, 4)) is None
    with pytest.raises(DegreeMismatchError):
        dihedral_multiply(DihedralElement(4, False, 1), DihedralElement(5, False, 1))


def test_parse_and_format_permutation():
    assert parse_permutation("s*r^2", 4) == P(2, 1, 4, 3)
    assert parse_permutation("r^-1", 4) == P(4, 1, 2, 3)
    assert parse_permutation("id", 3) == identity(3)
    assert parse_permutation("s", 3) == P(3, 2, 1)
    assert parse_permutation("2,1,4,3", 4) == P(2, 1, 4, 3)
    assert format_permutation(P(2, 1, 4, 3)) == "2 1 4 3"
    assert str(P(3, 1, 2)) == "3 1 2"
    for bad in ("2 1 x", "1 2 3", "1 1 2 3"):
        with pytest.raises(ParseError):
            parse_permutation(bad, 4)


if __name__ == "__main__":
    print("🧪 Testing LRX permutation core")
    print("=" * 40)
    code = pytest.main([__file__, "-q"])
    print("🎉 All permutation tests passed!" if code == 0 else "❌ Some permutation tests failed")
    sys.exit(code)
