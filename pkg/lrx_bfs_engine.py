#!/usr/bin/env python3
"""
LRX BFS Engine
Exact breadth-first search over S_n as an implicit graph under {X, L, R}.

States are indexed by lexicographic rank; a table holds one byte per state.
Levels are expanded synchronously: the current level is found by scanning
rank space, split into batches, and the batches are expanded by a thread
pool. Only the calling thread writes to the table, and every state found at
level d+1 gets the same value whichever batch finds it first, so the table
is identical for any thread count.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import factorial
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from lrx_perm_core import (
    DegreeMismatchError,
    Generator,
    InvalidDegreeError,
    LRXError,
    Permutation,
    ResourceLimitError,
    apply_generator,
    compose,
    identity,
    inverse,
    rank,
    rank_batch,
    rotate,
    unrank,
    unrank_batch,
)
from lrx_words import GenWord


MAX_BFS_DEGREE = 12
MAX_BIDIR_DEGREE = 13
DEFAULT_MEMORY_BUDGET = 2 * 1024 ** 3
MIN_MEMORY_BUDGET = 64 * 1024 ** 2
UNREACHED = 255
BATCH_SIZE = 1 << 18
MAX_WORKERS = 8
SCAN_BLOCK = 1 << 22

DUMP_MAGIC = b"LRXD"
DUMP_VERSION = 1
DUMP_HEADER = np.dtype([("magic", "S4"), ("version", "<u4"), ("n", "<u4"), ("source", "<u8")])

ProgressCallback = Optional[Callable[[str], None]]


# -- Resource accounting ------------------------------------------------------

def _default_threads() -> int:
    return max(1, min(MAX_WORKERS, os.cpu_count() or 1))


def _batch_bytes(n: int) -> int:
    # unranked words, three neighbour copies, Lehmer codes and the rank arrays
    return BATCH_SIZE * (4 * n + 8 * n + 4 * 8)


def estimate_memory(n: int, method: str = "full_bfs", threads: int = 1) -> int:
    """Bytes needed by a full table search (table + visited bitset + batches)."""
    if method == "bidirectional":
        # batch space only; frontier growth is checked while the search runs
        return 2 * _batch_bytes(n)
    states = factorial(n)
    return states + states // 8 + 2 * max(1, threads) * _batch_bytes(n)


def _check_full_search(n: int, memory_budget: int, threads: int) -> None:
    if n < 1:
        raise InvalidDegreeError(f"degree must be >= 1, got {n}")
    if n > MAX_BFS_DEGREE:
        raise ResourceLimitError(f"full search is capped at n={MAX_BFS_DEGREE}, got n={n}")
    needed = estimate_memory(n, "full_bfs", threads)
    if needed > memory_budget:
        raise ResourceLimitError(f"n={n} needs about {needed / 2**20:.0f} MiB, "
                                 f"budget is {memory_budget / 2**20:.0f} MiB")


# -- Distance table -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DistanceTable:
    n: int
    source: Permutation
    dist: np.ndarray
    max_distance: int
    witnesses: np.ndarray

    @classmethod
    def from_array(cls, n: int, source: Permutation, dist: np.ndarray) -> "DistanceTable":
        dist.setflags(write=False)
        top = int(dist.max())
        witnesses = np.flatnonzero(dist == top)
        witnesses.setflags(write=False)
        return cls(n, source, dist, top, witnesses)

    def distance_of(self, pi: Permutation) -> int:
        """Distance from the table source to pi."""
        if pi.n != self.n:
            raise DegreeMismatchError(f"table degree {self.n}, permutation degree {pi.n}")
        return int(self.dist[rank(pi)])

    def histogram(self) -> np.ndarray:
        """Number of states at each distance 0..max_distance."""
        return np.bincount(self.dist, minlength=self.max_distance + 1)

    def save(self, path) -> None:
        """Binary dump: LRXD header (little-endian) followed by n! distance bytes."""
        header = np.array([(DUMP_MAGIC, DUMP_VERSION, self.n, rank(self.source))], dtype=DUMP_HEADER)
        try:
            with open(path, "wb") as f:
                f.write(header.tobytes())
                f.write(np.ascontiguousarray(self.dist).tobytes())
        except OSError as e:
            raise OSError(f"cannot write distance table to {path}: {e}") from e

    @classmethod
    def load(cls, path) -> "DistanceTable":
        data = Path(path).read_bytes()
        if len(data) < DUMP_HEADER.itemsize:
            raise LRXError(f"{path}: too short for a distance table header")
        header = np.frombuffer(data, dtype=DUMP_HEADER, count=1)[0]
        if bytes(header["magic"]) != DUMP_MAGIC:
            raise LRXError(f"{path}: bad magic {bytes(header['magic'])!r}")
        if int(header["version"]) != DUMP_VERSION:
            raise LRXError(f"{path}: unsupported version {int(header['version'])}")
        n = int(header["n"])
        if not 1 <= n <= MAX_BFS_DEGREE:
            raise LRXError(f"{path}: degree {n} outside 1..{MAX_BFS_DEGREE}")
        states = factorial(n)
        if len(data) != DUMP_HEADER.itemsize + states:
            raise LRXError(f"{path}: expected {states} distance bytes, "
                           f"found {len(data) - DUMP_HEADER.itemsize}")
        source_rank = int(header["source"])
        if source_rank >= states:
            raise LRXError(f"{path}: source rank {source_rank} out of range")
        dist = np.frombuffer(data, dtype=np.uint8, offset=DUMP_HEADER.itemsize).copy()
        return cls.from_array(n, unrank(n, source_rank), dist)


# -- Neighbourhoods -----------------------------------------------------------

def _neighbor_words(words: np.ndarray) -> List[np.ndarray]:
    """The X, L and R images of every row (one-line words)."""
    swapped = words.copy()
    swapped[:, [0, 1]] = words[:, [1, 0]]
    return [swapped, np.roll(words, -1, axis=1), np.roll(words, 1, axis=1)]


def _neighbor_ranks(n: int, ranks: np.ndarray) -> np.ndarray:
    words = unrank_batch(n, ranks)
    return np.concatenate([rank_batch(w) for w in _neighbor_words(words)])


def _batches(ranks: np.ndarray) -> Iterator[np.ndarray]:
    for lo in range(0, ranks.size, BATCH_SIZE):
        yield ranks[lo:lo + BATCH_SIZE]


def _level_batches(dist: np.ndarray, level: int) -> Iterator[np.ndarray]:
    for lo in range(0, dist.size, SCAN_BLOCK):
        found = np.flatnonzero(dist[lo:lo + SCAN_BLOCK] == level)
        if found.size:
            yield from _batches(found + lo)


def _ordered_map(pool: ThreadPoolExecutor, fn, items: Iterator, window: int) -> Iterator:
    """pool.map with at most `window` batches in flight, results in submission order."""
    pending = []
    for item in items:
        pending.append(pool.submit(fn, item))
        if len(pending) >= window:
            yield pending.pop(0).result()
    for future in pending:
        yield future.result()


# -- Searches -----------------------------------------------------------------

def bfs_all_distances(n: int, source: Optional[Permutation] = None, threads: Optional[int] = None,
                      memory_budget: int = DEFAULT_MEMORY_BUDGET,
                      progress_callback: ProgressCallback = None) -> DistanceTable:
    """Exact single-source distances to every permutation of degree n."""
    threads = min(threads or _default_threads(), MAX_WORKERS)
    _check_full_search(n, memory_budget, threads)
    source = source or identity(n)
    if source.n != n:
        raise DegreeMismatchError(f"source has degree {source.n}, search degree is {n}")
    if n == 1:
        return DistanceTable.from_array(1, source, np.zeros(1, dtype=np.uint8))

    dist = np.full(factorial(n), UNREACHED, dtype=np.uint8)
    dist[rank(source)] = 0
    reached = 1

    def expand(batch: np.ndarray) -> np.ndarray:
        nbrs = _neighbor_ranks(n, batch)
        return nbrs[dist[nbrs] == UNREACHED]

    level = 0
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while True:
            if level + 1 >= UNREACHED:
                raise ResourceLimitError(f"distances at n={n} do not fit one byte")
            found = 0
            for candidates in _ordered_map(pool, expand, _level_batches(dist, level), 2 * threads):
                fresh = np.unique(candidates[dist[candidates] == UNREACHED])
                dist[fresh] = level + 1
                found += fresh.size
            if not found:
                break
            level += 1
            reached += found
            if progress_callback:
                progress_callback(f"level {level}: {found} states ({reached}/{dist.size})")

    if reached != dist.size:
        raise LRXError(f"search at n={n} reached {reached} of {dist.size} states")
    return DistanceTable.from_array(n, source, dist)


class DistanceOracle:
    """Identity-sourced tables, built once per degree and reused."""

    def __init__(self, memory_budget: int = DEFAULT_MEMORY_BUDGET, threads: Optional[int] = None,
                 progress_callback: ProgressCallback = None):
        self.memory_budget = memory_budget
        self.threads = threads
        self.progress_callback = progress_callback
        self._tables: Dict[int, DistanceTable] = {}

    def table(self, n: int) -> DistanceTable:
        if n not in self._tables:
            if self.progress_callback:
                self.progress_callback(f"building distance table for n={n} ({factorial(n)} states)")
            self._tables[n] = bfs_all_distances(n, threads=self.threads, memory_budget=self.memory_budget,
                                                progress_callback=self.progress_callback)
        return self._tables[n]

    def distance(self, a: Permutation, b: Permutation) -> int:
        """dist(a, b) = dist(id, a^-1 * b)."""
        if a.n != b.n:
            raise DegreeMismatchError(f"degrees differ: {a.n} vs {b.n}")
        return self.table(a.n).distance_of(compose(inverse(a), b))


def diameter(n: int, oracle: Optional[DistanceOracle] = None) -> Tuple[int, Permutation]:
    """Eccentricity of the identity; equals the diameter since Cayley graphs are vertex-transitive."""
    oracle = oracle or DistanceOracle()
    table = oracle.table(n)
    return table.max_distance, unrank(n, int(table.witnesses[0]))


def _bidirectional(a: Permutation, b: Permutation, memory_budget: int) -> int:
    if a == b:
        return 0
    n = a.n
    seen = [np.array([rank(a)], dtype=np.int64), np.array([rank(b)], dtype=np.int64)]
    frontier = [seen[0], seen[1]]
    depth = [0, 0]
    while True:
        side = 0 if frontier[0].size <= frontier[1].size else 1
        other = 1 - side
        nbrs = np.unique(np.concatenate([_neighbor_ranks(n, batch) for batch in _batches(frontier[side])]))
        fresh = np.setdiff1d(nbrs, seen[side], assume_unique=True)
        depth[side] += 1
        if np.intersect1d(fresh, seen[other], assume_unique=True).size:
            return depth[0] + depth[1]
        if not fresh.size:
            raise LRXError(f"no path between {a} and {b}")
        seen[side] = np.union1d(seen[side], fresh)
        frontier[side] = fresh
        # seen sets, the new frontier and the union temporaries are int64 ranks
        if 3 * 8 * (seen[0].size + seen[1].size) > memory_budget:
            raise ResourceLimitError(f"bidirectional search at n={n} exceeded the memory budget")


def pair_distance(a: Permutation, b: Permutation, method: str = "full_bfs",
                  oracle: Optional[DistanceOracle] = None,
                  memory_budget: int = DEFAULT_MEMORY_BUDGET) -> int:
    """Exact dist(a, b) by a cached full table or a bidirectional search."""
    if a.n != b.n:
        raise DegreeMismatchError(f"degrees differ: {a.n} vs {b.n}")
    if method in ("full_bfs", "bfs"):
        oracle = oracle or DistanceOracle(memory_budget=memory_budget)
        return oracle.distance(a, b)
    if method in ("bidirectional", "bidir"):
        if a.n > MAX_BIDIR_DEGREE:
            raise ResourceLimitError(f"bidirectional search is capped at n={MAX_BIDIR_DEGREE}")
        if oracle is not None:
            memory_budget = oracle.memory_budget
        needed = estimate_memory(a.n, "bidirectional")
        if needed > memory_budget:
            raise ResourceLimitError(f"bidirectional search at n={a.n} needs about {needed / 2**20:.0f} MiB "
                                     f"of batch space, budget is {memory_budget / 2**20:.0f} MiB")
        return _bidirectional(a, b, memory_budget)
    raise LRXError(f"unknown search method {method!r}")


def dist_to_orbit(pi: Permutation, xi: Permutation,
                  oracle: Optional[DistanceOracle] = None) -> Tuple[int, int]:
    """min over k of dist(pi, xi * r^k), with the smallest minimizing k."""
    if pi.n != xi.n:
        raise DegreeMismatchError(f"degrees differ: {pi.n} vs {xi.n}")
    oracle = oracle or DistanceOracle()
    values = [oracle.distance(pi, rotate(xi, k)) for k in range(pi.n)]
    best = min(values)
    return best, values.index(best)


def shortest_word(pi: Permutation, oracle: Optional[DistanceOracle] = None) -> GenWord:
    """An optimal word taking pi to the identity, walking down the distance table."""
    oracle = oracle or DistanceOracle()
    table = oracle.table(pi.n)
    generators = [Generator.X, Generator.L, Generator.R] if pi.n >= 2 else []
    tokens = []
    current = pi
    d = table.distance_of(current)
    while d:
        for g in generators:
            step = apply_generator(current, g)
            if table.distance_of(step) == d - 1:
                tokens.append(g)
                current, d = step, d - 1
                break
        else:
            raise LRXError(f"distance table for n={pi.n} is inconsistent at {current}")
    return GenWord(pi.n, tuple(tokens))
