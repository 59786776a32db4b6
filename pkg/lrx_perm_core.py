#!/usr/bin/env python3
"""
LRX Permutation Core
Permutation arithmetic for the Cayley graph of S_n generated by
delta = (12), the left shift r and the right shift r^-1.

Permutations are written in one-line notation with 1-based positions:
position p of the word holds pi_p. Generators multiply on the RIGHT, so
X swaps the first two entries, L rotates the word left and R rotates it
right.
"""

import re
from dataclasses import dataclass
from enum import Enum
from math import factorial
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np


MAX_DEGREE = 64
MAX_RANK_DEGREE = 20  # 20! < 2**63


class LRXError(ValueError):
    """Base class for every invalid-input condition in the toolkit."""


class InvalidDegreeError(LRXError):
    pass


class InvalidPositionError(LRXError):
    pass


class DegreeMismatchError(LRXError):
    pass


class ParseError(LRXError):
    pass


class ConstructionError(LRXError):
    """A word builder failed its own validation. Always a bug, never data."""


class ResourceLimitError(LRXError):
    """A search would exceed a degree cap or the memory budget."""


class Generator(str, Enum):
    X = "X"  # delta = (12)
    L = "L"  # r, left shift
    R = "R"  # r^-1, right shift

    @property
    def inverse(self) -> "Generator":
        if self is Generator.L:
            return Generator.R
        if self is Generator.R:
            return Generator.L
        return Generator.X


def _check_degree(n: int, cap: int = MAX_DEGREE) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1 or n > cap:
        raise InvalidDegreeError(f"degree must be in 1..{cap}, got {n!r}")


@dataclass(frozen=True)
class Permutation:
    """A bijection on {1..n} in one-line notation."""

    word: Tuple[int, ...]

    def __post_init__(self):
        word = tuple(int(v) for v in self.word)
        object.__setattr__(self, "word", word)
        _check_degree(len(word))
        if sorted(word) != list(range(1, len(word) + 1)):
            raise LRXError(f"not a permutation of 1..{len(word)}: {list(word)}")

    @property
    def n(self) -> int:
        return len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __getitem__(self, position: int) -> int:
        """1-based access: pi[p] is pi_p."""
        if position < 1 or position > self.n:
            raise InvalidPositionError(f"position {position} outside 1..{self.n}")
        return self.word[position - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __str__(self) -> str:
        return format_permutation(self)


@dataclass(frozen=True)
class DihedralElement:
    """s^reflect * r^shift inside H_n."""

    n: int
    reflect: bool
    shift: int

    def __post_init__(self):
        _check_degree(self.n)
        object.__setattr__(self, "shift", self.shift % self.n)
        object.__setattr__(self, "reflect", bool(self.reflect))

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        return dihedral_multiply(self, other)


@dataclass(frozen=True)
class OrbitView:
    """Orb(base): the n rotations base * r^k, k = 0..n-1."""

    base: Permutation

    @property
    def members(self) -> List[Permutation]:
        return [rotate(self.base, k) for k in range(self.base.n)]

    def __contains__(self, other: Permutation) -> bool:
        return rotation_offset(self.base, other) is not None


# -- Construction -----------------------------------------------------------

def identity(n: int) -> Permutation:
    """The identity [1 2 ... n]."""
    _check_degree(n)
    return Permutation(tuple(range(1, n + 1)))


def full_reversal(n: int) -> Permutation:
    """s = [n n-1 ... 1]."""
    _check_degree(n)
    return Permutation(tuple(range(n, 0, -1)))


def shift(n: int, k: int) -> Permutation:
    """r^k."""
    return rotate(identity(n), k)


# -- Group operations -------------------------------------------------------

def apply_generator(pi: Permutation, g: Generator) -> Permutation:
    """Multiply pi on the right by one generator."""
    g = Generator(g)
    w = pi.word
    if g is Generator.X:
        if pi.n < 2:
            raise InvalidDegreeError("X needs degree >= 2")
        return Permutation((w[1], w[0]) + w[2:])
    if g is Generator.L:
        return Permutation(w[1:] + w[:1])
    return Permutation(w[-1:] + w[:-1])


def _same_degree(a: Permutation, b: Permutation) -> None:
    if a.n != b.n:
        raise DegreeMismatchError(f"degrees differ: {a.n} vs {b.n}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """(a*b)(i) = a(b(i))."""
    _same_degree(a, b)
    return Permutation(tuple(a.word[v - 1] for v in b.word))


def inverse(a: Permutation) -> Permutation:
    """The inverse permutation."""
    out = [0] * a.n
    for position, value in enumerate(a.word, 1):
        out[value - 1] = position
    return Permutation(tuple(out))


def rotate(pi: Permutation, k: int) -> Permutation:
    """pi * r^k; k is reduced mod n."""
    k %= pi.n
    return Permutation(pi.word[k:] + pi.word[:k])


def reversal(pi: Permutation, i: int, j: int) -> Permutation:
    """Reverse the segment pi_i..pi_j in place (zero-rotation representative)."""
    if not 1 <= i < j <= pi.n:
        raise InvalidPositionError(f"need 1 <= i < j <= {pi.n}, got i={i}, j={j}")
    w = pi.word
    return Permutation(w[:i - 1] + w[i - 1:j][::-1] + w[j:])


def rotation_offset(pi: Permutation, xi: Permutation) -> Optional[int]:
    """k with xi = pi * r^k, or None when xi is not in Orb(pi)."""
    _same_degree(pi, xi)
    first = xi.word[0]
    k = pi.word.index(first)
    return k if rotate(pi, k) == xi else None


def parity(pi: Permutation) -> int:
    """0 for even, 1 for odd permutations."""
    seen = [False] * pi.n
    transpositions = 0
    for start in range(pi.n):
        if seen[start]:
            continue
        length = 0
        p = start
        while not seen[p]:
            seen[p] = True
            p = pi.word[p] - 1
            length += 1
        transpositions += length - 1
    return transpositions % 2


# -- Order-theoretic predicates ---------------------------------------------

def lee_distance(n: int, i: int, j: int) -> int:
    """Circular distance on Z_n: min(d, n-d) with d = (i-j) mod n."""
    if n < 1:
        raise InvalidDegreeError(f"degree must be >= 1, got {n}")
    d = (i - j) % n
    return min(d, n - d)


def _check_positions(pi: Permutation, *positions: int) -> None:
    for p in positions:
        if not 1 <= p <= pi.n:
            raise InvalidPositionError(f"position {p} outside 1..{pi.n}")
    if len(set(positions)) != len(positions):
        raise InvalidPositionError(f"positions must be distinct: {positions}")


def in_cyclic_order(pi: Permutation, a: int, b: int, c: int) -> bool:
    """pi_a, pi_b, pi_c are in <_cycle: a<b<c, b<c<a or c<a<b."""
    _check_positions(pi, a, b, c)
    return a < b < c or b < c < a or c < a < b


def less_z(pi: Permutation, z: int, a: int, b: int) -> bool:
    """pi_a <_z pi_b, the linear order on positions != z induced by pi_z."""
    return in_cyclic_order(pi, z, a, b)


def window_inversions(pi: Permutation, z: int, lo: int, hi: int) -> int:
    """
    Count pairs lo <= p < q <= hi with pi_p not <_z pi_q.

    Values are ordered by the cyclic sequence of the sorted target
    (1, 2, ..., n) read from the value following z, so the reference z is
    a value and survives rotations of pi.
    """
    if not 1 <= lo <= hi <= pi.n:
        raise InvalidPositionError(f"need 1 <= lo <= hi <= {pi.n}, got {lo}..{hi}")
    window = pi.word[lo - 1:hi]
    if z in window:
        raise InvalidPositionError(f"reference value {z} lies inside the window")
    keys = [(v - z) % pi.n for v in window]
    return sum(1 for p in range(len(keys)) for q in range(p + 1, len(keys)) if keys[p] > keys[q])


# -- Rank / unrank ----------------------------------------------------------

def rank(pi: Permutation) -> int:
    """Lexicographic rank of the one-line word (Lehmer code)."""
    _check_degree(pi.n, MAX_RANK_DEGREE)
    n = pi.n
    idx = 0
    for i, v in enumerate(pi.word):
        smaller = sum(1 for u in pi.word[i + 1:] if u < v)
        idx += smaller * factorial(n - 1 - i)
    return idx


def unrank(n: int, idx: int) -> Permutation:
    """Permutation with lexicographic rank idx."""
    _check_degree(n, MAX_RANK_DEGREE)
    if not 0 <= idx < factorial(n):
        raise LRXError(f"rank {idx} outside 0..{factorial(n) - 1}")
    available = list(range(1, n + 1))
    word = []
    for i in range(n):
        digit, idx = divmod(idx, factorial(n - 1 - i))
        word.append(available.pop(digit))
    return Permutation(tuple(word))


def factorials(n: int) -> np.ndarray:
    """[ (n-1)!, (n-2)!, ..., 0! ] as int64."""
    return np.array([factorial(n - 1 - i) for i in range(n)], dtype=np.int64)


def rank_batch(words: np.ndarray) -> np.ndarray:
    """Vectorized rank of an (m, n) array of 1-based one-line words."""
    m, n = words.shape
    codes = np.zeros((m, n), dtype=np.int64)
    for i in range(n - 1):
        codes[:, i] = np.count_nonzero(words[:, i + 1:] < words[:, i:i + 1], axis=1)
    return codes @ factorials(n)


def unrank_batch(n: int, ranks: np.ndarray) -> np.ndarray:
    """Vectorized unrank: (m,) int64 ranks -> (m, n) int8 one-line words."""
    ranks = np.asarray(ranks, dtype=np.int64)
    words = np.empty((ranks.size, n), dtype=np.int8)
    rest = ranks.copy()
    for i, f in enumerate(factorials(n)):
        words[:, i], rest = np.divmod(rest, f)
    # Lehmer digits -> values: bump every later entry that is >= an earlier pick
    for j in range(n - 2, -1, -1):
        words[:, j + 1:] += words[:, j + 1:] >= words[:, j:j + 1]
    return words + 1


# -- Dihedral bookkeeping ---------------------------------------------------

def dihedral_multiply(a: DihedralElement, b: DihedralElement) -> DihedralElement:
    """Uses s r^k s = r^-k: (s^e r^x)(s^f r^y) = s^(e+f) r^((-1)^f x + y)."""
    if a.n != b.n:
        raise DegreeMismatchError(f"degrees differ: {a.n} vs {b.n}")
    x = -a.shift if b.reflect else a.shift
    return DihedralElement(a.n, a.reflect != b.reflect, x + b.shift)


def dihedral_to_permutation(a: DihedralElement) -> Permutation:
    """One-line word of a dihedral element."""
    base = full_reversal(a.n) if a.reflect else identity(a.n)
    return rotate(base, a.shift)


def dihedral_from_permutation(pi: Permutation) -> Optional[DihedralElement]:
    """Dihedral element equal to pi, or None when pi is outside H_n."""
    k = rotation_offset(identity(pi.n), pi)
    if k is not None:
        return DihedralElement(pi.n, False, k)
    k = rotation_offset(full_reversal(pi.n), pi)
    if k is not None:
        return DihedralElement(pi.n, True, k)
    return None


# -- Text forms -------------------------------------------------------------

_SHIFT_FORM = re.compile(r"^(s\*)?r\^(-?\d+)$")


def parse_permutation(text: str, n: int) -> Permutation:
    """Parse "2 1 4 3", "id", "s", "r^k" or "s*r^k" at degree n."""
    _check_degree(n)
    text = text.strip()
    if text == "id":
        return identity(n)
    if text == "s":
        return full_reversal(n)
    match = _SHIFT_FORM.match(text.replace(" ", ""))
    if match:
        base = full_reversal(n) if match.group(1) else identity(n)
        return rotate(base, int(match.group(2)))
    try:
        values = [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"cannot read permutation {text!r}") from None
    if len(values) != n:
        raise ParseError(f"expected {n} values, got {len(values)} in {text!r}")
    try:
        return Permutation(tuple(values))
    except LRXError as e:
        raise ParseError(str(e)) from None


def format_permutation(pi: Permutation) -> str:
    """Space-separated one-line notation."""
    return " ".join(str(v) for v in pi.word)


def all_permutations(n: int) -> Iterable[Permutation]:
    """Every element of S_n in rank order."""
    for idx in range(factorial(n)):
        yield unrank(n, idx)


def as_permutation(values: Sequence[int]) -> Permutation:
    return Permutation(tuple(values))
