#!/usr/bin/env python3
"""
LRX Generator Words
Words over {X, L, R} as paths in the Cayley graph, plus the constructive
builders: the two single-pair swap decompositions (A) and (B), the four
reversal-lemma words and the two-phase word sorting s*r^(n-i).

Every builder applies its own output before returning it and raises
ConstructionError when the result is not the documented endpoint.
"""

import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from lrx_formulas import (
    Branch,
    base_value,
    branch_m,
    ceil_half,
    floor_half,
    lemma_value,
    residual_rotation,
)
from lrx_perm_core import (
    ConstructionError,
    DegreeMismatchError,
    Generator,
    InvalidDegreeError,
    InvalidPositionError,
    ParseError,
    Permutation,
    full_reversal,
    identity,
    lee_distance,
    parity,
    rotation_offset,
)


MAX_BUILDER_DEGREE = 10_000

X, L, R = Generator.X, Generator.L, Generator.R

_TOKEN = re.compile(r"^([XLR])(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class GenWord:
    degree: int
    tokens: Tuple[Generator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(Generator(t) for t in self.tokens))

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def length(self) -> int:
        return len(self.tokens)

    def __add__(self, other: "GenWord") -> "GenWord":
        if self.degree != other.degree:
            raise DegreeMismatchError(f"degrees differ: {self.degree} vs {other.degree}")
        return GenWord(self.degree, self.tokens + other.tokens)

    def count(self, g: Generator) -> int:
        return self.tokens.count(Generator(g))

    def __str__(self) -> str:
        return word_to_text(self)


def _word(n: int, tokens: Iterable[Generator]) -> GenWord:
    return GenWord(n, tuple(tokens))


# -- Text form ---------------------------------------------------------------

def parse_word(text: str, n: int) -> GenWord:
    """Whitespace-separated X/L/R tokens; T^k expands to k copies of T."""
    tokens: List[Generator] = []
    for raw in text.split():
        match = _TOKEN.match(raw)
        if not match:
            raise ParseError(f"unknown token {raw!r}")
        count = 1 if match.group(2) is None else int(match.group(2))
        if count < 0:
            raise ParseError(f"negative run length in {raw!r}")
        tokens.extend([Generator(match.group(1))] * count)
    return _word(n, tokens)


def word_to_text(w: GenWord) -> str:
    """Space-separated tokens, no run-length compression."""
    return " ".join(t.value for t in w.tokens)


# -- Application and reduction ----------------------------------------------

def trace_word(cells: Sequence[int], w: GenWord) -> Tuple[int, ...]:
    """apply_word on a bare one-line word, for degrees past the Permutation cap."""
    if len(cells) != w.degree:
        raise DegreeMismatchError(f"word of degree {w.degree} applied to degree {len(cells)}")
    state = deque(cells)
    for t in w.tokens:
        if t is X:
            if len(state) < 2:
                raise InvalidDegreeError("X needs degree >= 2")
            state[0], state[1] = state[1], state[0]
        elif t is L:
            state.rotate(-1)
        else:
            state.rotate(1)
    return tuple(state)


def apply_word(pi: Permutation, w: GenWord) -> Permutation:
    """Left-to-right application of every token."""
    return Permutation(trace_word(pi.word, w))


def rotated(cells: Sequence[int], k: int) -> Tuple[int, ...]:
    """cells * r^k on a bare one-line word."""
    cells = tuple(cells)
    k %= len(cells)
    return cells[k:] + cells[:k]


def reversed_prefix(cells: Sequence[int], j: int) -> Tuple[int, ...]:
    """Reverse the first j entries of a bare one-line word."""
    cells = tuple(cells)
    return cells[:j][::-1] + cells[j:]


def theorem_start(n: int, i: int) -> Tuple[int, ...]:
    """One-line word of s * r^(n-i)."""
    return rotated(range(n, 0, -1), n - i)


def reduce_word(w: GenWord) -> GenWord:
    """Free reduction under X X = L R = R L = ()."""
    stack: List[Generator] = []
    for t in w.tokens:
        if stack and stack[-1] is t.inverse:
            stack.pop()
        else:
            stack.append(t)
    return _word(w.degree, stack)


def word_parity_consistent(w: GenWord) -> bool:
    """Sign of the word's element equals #X + (n-1) * #shifts mod 2."""
    shifts = w.count(L) + w.count(R)
    expected = (w.count(X) + (w.degree - 1) * shifts) % 2
    return parity(apply_word(identity(w.degree), w)) == expected


def shift_word(n: int, d: int) -> GenWord:
    """Shortest shift word taking r^d back to the identity; ties use L."""
    d %= n
    if d == 0:
        return _word(n, ())
    if d < n - d:
        return _word(n, [R] * d)
    return _word(n, [L] * (n - d))


# -- Single pair swaps --------------------------------------------------------

def _check_builder_degree(n: int, minimum: int) -> None:
    if n < minimum or n > MAX_BUILDER_DEGREE:
        raise InvalidDegreeError(f"builders need degree in {minimum}..{MAX_BUILDER_DEGREE}, got {n}")


def _check_pair(n: int, k: int, l: int) -> None:
    if not 1 <= k < l <= n:
        raise InvalidPositionError(f"need 1 <= k < l <= {n}, got k={k}, l={l}")


def decomposition_a(n: int, k: int, l: int) -> GenWord:
    """(X L)^t X (R X)^t with t = l-k-1, applied in frame r^(k-1)."""
    _check_builder_degree(n, 3)
    _check_pair(n, k, l)
    t = l - k - 1
    return _word(n, [X, L] * t + [X] + [R, X] * t)


def decomposition_b(n: int, k: int, l: int) -> GenWord:
    """(X R)^t X (L X)^t with t = l-k-1, applied in frame r^(l-2)."""
    _check_builder_degree(n, 2)
    _check_pair(n, k, l)
    if l < 2:
        raise InvalidPositionError(f"decomposition (B) needs l >= 2, got {l}")
    t = l - k - 1
    return _word(n, [X, R] * t + [X] + [L, X] * t)


def swap_frame(k: int, l: int, scheme: str) -> int:
    """Rotation frame a swap decomposition must be applied in."""
    return k - 1 if scheme.upper() == "A" else l - 2


def swap_values(pi: Permutation, k: int, l: int) -> Permutation:
    """Exchange the entries at positions k and l."""
    w = list(pi.word)
    w[k - 1], w[l - 1] = w[l - 1], w[k - 1]
    return Permutation(tuple(w))


def greedy_pair_word(pi: Permutation, k: int, l: int, scheme: str = "A") -> GenWord:
    """Positioning prefix L^frame followed by decomposition A or B."""
    _check_pair(pi.n, k, l)
    scheme = scheme.upper()
    if scheme not in ("A", "B"):
        raise ParseError(f"unknown swap scheme {scheme!r}")
    body = decomposition_a(pi.n, k, l) if scheme == "A" else decomposition_b(pi.n, k, l)
    frame = swap_frame(k, l, scheme)
    word = _word(pi.n, [L] * frame) + body
    if trace_word(pi.word, word) != rotated(swap_values(pi, k, l).word, frame):
        raise ConstructionError(f"pair word {scheme} for ({k},{l}) does not swap the pair")
    return word


# -- Reversal lemma -----------------------------------------------------------

class LemmaVariant(str, Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"

    def start_rotation(self, j: int) -> int:
        return {
            LemmaVariant.I: 0,
            LemmaVariant.II: j - 2,
            LemmaVariant.III: floor_half(j) - 1,
            LemmaVariant.IV: ceil_half(j) - 1,
        }[self]

    def end_rotation(self, j: int) -> int:
        return {
            LemmaVariant.I: floor_half(j) - 1,
            LemmaVariant.II: ceil_half(j) - 1,
            LemmaVariant.III: 0,
            LemmaVariant.IV: j - 2,
        }[self]


class LemmaWord(NamedTuple):
    word: GenWord
    start_rotation: int
    end_rotation: int


def lemma_word(n: int, j: int, variant: LemmaVariant) -> LemmaWord:
    """
    Word of length j(j-1)-1 reversing the first j entries.

    For every pi: apply_word(pi * r^start, word) == reversal(pi, 1, j) * r^end.
    Pairs (k, j+1-k) are swapped one after the other; since both swap
    decompositions keep their frame, a single shift moves to the next pair.
    """
    _check_builder_degree(n, 3)
    variant = LemmaVariant(variant)
    expected_length = lemma_value(n, j)
    pairs = [(k, j + 1 - k) for k in range(1, floor_half(j) + 1)]
    if variant in (LemmaVariant.III, LemmaVariant.IV):
        pairs.reverse()
    use_a = variant in (LemmaVariant.I, LemmaVariant.III)
    step = L if variant in (LemmaVariant.I, LemmaVariant.IV) else R

    tokens: List[Generator] = []
    for index, (k, l) in enumerate(pairs):
        if index:
            tokens.append(step)
        body = decomposition_a(n, k, l) if use_a else decomposition_b(n, k, l)
        tokens.extend(body.tokens)
    word = _word(n, tokens)

    start, end = variant.start_rotation(j), variant.end_rotation(j)
    base = tuple(range(1, n + 1))
    if word.length != expected_length:
        raise ConstructionError(f"lemma word {variant.value} at n={n}, j={j} has length "
                                f"{word.length}, expected {expected_length}")
    if trace_word(rotated(base, start), word) != rotated(reversed_prefix(base, j), end):
        raise ConstructionError(f"lemma word {variant.value} at n={n}, j={j} fails validation")
    return LemmaWord(word, start, end)


# -- Two-phase sorting word for s * r^(n-i) ----------------------------------

_PHASES = {
    # branch: (first-half variant, transition token, second-half variant)
    Branch.CEIL_BRANCH: (LemmaVariant.IV, L, LemmaVariant.I),
    Branch.FLOOR_BRANCH: (LemmaVariant.III, R, LemmaVariant.II),
}


@dataclass(frozen=True)
class ReversalPlan:
    n: int
    j1: int
    j2: int
    m: int
    branch: Branch
    predicted_length: int
    residual_rotation: int
    observed_rotation: int
    tail: str


def _build_branch(n: int, i: int, branch: Branch) -> Tuple[GenWord, ReversalPlan]:
    j1, j2 = floor_half(n), ceil_half(n)
    first, step, second = _PHASES[branch]
    phase1 = lemma_word(n, j1, first).word
    transition = _word(n, [step, step])
    phase2 = lemma_word(n, j2, second).word
    body = phase1 + transition + phase2

    start = theorem_start(n, i)
    reached = trace_word(start, body)
    ident = tuple(range(1, n + 1))
    # id * r^k starts with k+1
    observed = reached[0] - 1
    if reached != rotated(ident, observed):
        raise ConstructionError(f"{branch.value} at n={n}, i={i}: halves do not land in Orb(id)")
    c = residual_rotation(n, branch)
    if observed != (c + i) % n:
        raise ConstructionError(f"{branch.value} at n={n}, i={i}: reached r^{observed}, "
                                f"expected r^{(c + i) % n}")

    tail = shift_word(n, observed)
    word = body + tail
    predicted = base_value(n) + 2 + lee_distance(n, c - n + i, 0)
    if word.length != predicted or trace_word(start, word) != ident:
        raise ConstructionError(f"{branch.value} at n={n}, i={i}: word fails validation")

    plan = ReversalPlan(
        n=n, j1=j1, j2=j2, m=branch_m(n, branch), branch=branch,
        predicted_length=predicted, residual_rotation=c,
        observed_rotation=observed, tail=word_to_text(tail),
    )
    return word, plan


def theorem_word(n: int, i: int) -> Tuple[GenWord, ReversalPlan]:
    """Shortest of the two branch words taking s*r^(n-i) to the identity."""
    if n < 4:
        raise InvalidDegreeError(f"the sorting word needs n >= 4, got {n}")
    _check_builder_degree(n, 4)
    if not 1 <= i <= n:
        raise InvalidPositionError(f"shift index must be in 1..{n}, got {i}")

    built = []
    failures = []
    for branch in (Branch.CEIL_BRANCH, Branch.FLOOR_BRANCH):
        try:
            built.append(_build_branch(n, i, branch))
        except ConstructionError as e:
            failures.append(str(e))
    if not built:
        raise ConstructionError("; ".join(failures))
    # min keeps the first on ties, i.e. CEIL_BRANCH
    return min(built, key=lambda pair: pair[0].length)


def element_word(pi: Permutation) -> Optional[GenWord]:
    """Builder word taking pi to the identity when pi is in Orb(s) or Orb(id)."""
    n = pi.n
    k = rotation_offset(identity(n), pi)
    if k is not None:
        return shift_word(n, k)
    k = rotation_offset(full_reversal(n), pi)
    if k is not None and n >= 4:
        i = (n - k) % n or n
        return theorem_word(n, i)[0]
    return None
