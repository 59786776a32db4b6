#!/usr/bin/env python3
"""
LRX Verifier
Runs the builders, the closed forms and the BFS oracle side by side and
collects one row per parameter tuple.

A row passes when the builder word is valid and, where the oracle ran,
oracle <= builder length (any valid word is an upper bound). Rows where the
oracle is strictly below the closed form are discrepancies: they are marked
equal=false and listed in the summary, never auto-passed.
"""

import csv
import io
import json
import random
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from lrx_bfs_engine import MAX_BFS_DEGREE, DistanceOracle, diameter
from lrx_formulas import ceil_half, lemma_value, lower_bound, theorem_value
from lrx_perm_core import (
    ConstructionError,
    Generator,
    InvalidDegreeError,
    LRXError,
    Permutation,
    identity,
    rotate,
)
from lrx_words import (
    MAX_BUILDER_DEGREE,
    LemmaVariant,
    apply_word,
    decomposition_a,
    decomposition_b,
    lemma_word,
    reversed_prefix,
    rotated,
    swap_frame,
    swap_values,
    theorem_start,
    theorem_word,
    trace_word,
)


SCOPES = ("lemma", "theorem", "bound", "decompositions")
ROW_FIELDS = ("n", "params", "formula", "builder_len", "builder_valid", "oracle", "equal")
SPOT_CHECK_BASES = 10

ProgressCallback = Optional[Callable[[str], None]]


@dataclass
class VerificationRow:
    n: int
    params: Dict[str, Any]
    formula: int
    builder_len: int
    builder_valid: bool
    oracle: Optional[int] = None
    equal: Optional[bool] = None

    @property
    def passed(self) -> bool:
        ok = self.builder_valid and (self.oracle is None or self.oracle <= self.builder_len)
        diam = self.params.get("diameter")
        if diam is not None:
            ok = ok and diam >= self.formula
        return ok

    def to_dict(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in ROW_FIELDS}


@dataclass
class VerificationReport:
    scope: str
    n_range: Tuple[int, int]
    rows: List[VerificationRow] = field(default_factory=list)

    @property
    def summary(self) -> Dict[str, Any]:
        return {
            "pass": sum(1 for r in self.rows if r.passed),
            "fail": sum(1 for r in self.rows if not r.passed),
            "oracle_skipped": sum(1 for r in self.rows if r.oracle is None),
            "discrepancies": [idx for idx, r in enumerate(self.rows) if r.equal is False],
        }

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    @property
    def faithful(self) -> bool:
        """True when no row contradicts a stated equality."""
        return not self.summary["discrepancies"]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scope": self.scope,
            "n_range": list(self.n_range),
            "rows": [r.to_dict() for r in self.rows],
            "summary": self.summary,
        }


def report_from_dict(data: Dict[str, Any]) -> VerificationReport:
    """Rebuild a report from its JSON form, with or without the envelope."""
    if "report" in data and "scope" not in data:
        data = data["report"]
    try:
        rows = [VerificationRow(**{name: row[name] for name in ROW_FIELDS}) for row in data["rows"]]
        return VerificationReport(data["scope"], tuple(data["n_range"]), rows)
    except (KeyError, TypeError) as e:
        raise LRXError(f"malformed verification report: {e}") from None


def load_report(path) -> VerificationReport:
    """Read a JSON report from disk."""
    return report_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


# -- Rendering ----------------------------------------------------------------

def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, dict):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def render_report(rep: VerificationReport, fmt: str = "json", envelope: bool = False) -> str:
    """JSON, CSV or a human-readable text summary. Only JSON/CSV are stable."""
    if fmt == "json":
        body: Dict[str, Any] = rep.to_dict()
        if envelope:
            body = {"generated_at": datetime.now().isoformat(timespec="seconds"), "report": body}
        return json.dumps(body, indent=2) + "\n"
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(ROW_FIELDS)
        for row in rep.rows:
            writer.writerow([_csv_cell(row.to_dict()[name]) for name in ROW_FIELDS])
        return buffer.getvalue()
    if fmt == "text":
        return _render_text(rep)
    raise LRXError(f"unknown report format {fmt!r}")


def _render_text(rep: VerificationReport) -> str:
    summary = rep.summary
    lines = ["=" * 60,
             f"📊 VERIFICATION: {rep.scope} (n = {rep.n_range[0]}..{rep.n_range[1]})",
             "=" * 60]
    for idx, row in enumerate(rep.rows):
        params = " ".join(f"{k}={v}" for k, v in row.params.items())
        oracle = "-" if row.oracle is None else str(row.oracle)
        mark = "✅" if row.passed else "❌"
        if row.equal is False:
            mark = "⚠️ "
        lines.append(f"{mark} n={row.n:<3} {params:<28} formula={row.formula:<5} "
                     f"builder={row.builder_len:<5} oracle={oracle}")
    lines.append("-" * 60)
    lines.append(f"Rows passed: {summary['pass']}")
    lines.append(f"Rows failed: {summary['fail']}")
    lines.append(f"Oracle skipped: {summary['oracle_skipped']}")
    lines.append(f"Discrepancies: {len(summary['discrepancies'])}")
    lines.append("=" * 60)
    return "\n".join(lines) + "\n"


def write_report(rep: VerificationReport, fmt: str, path) -> None:
    """Render and write a report; OSError names the destination."""
    text = render_report(rep, fmt)
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise OSError(f"cannot write {fmt} report to {path}: {e}") from e


# -- Shared helpers -----------------------------------------------------------

def _oracle_distance(oracle: Optional[DistanceOracle], a: Sequence[int],
                     b: Sequence[int]) -> Optional[int]:
    if oracle is None or len(a) > MAX_BFS_DEGREE:
        return None
    return oracle.distance(Permutation(tuple(a)), Permutation(tuple(b)))


def _row(n: int, params: Dict[str, Any], formula: int, builder_len: int, valid: bool,
         oracle: Optional[int]) -> VerificationRow:
    equal = None if oracle is None else oracle == formula
    return VerificationRow(n, params, formula, builder_len, valid, oracle, equal)


def _make_oracle(with_oracle: bool, oracle: Optional[DistanceOracle],
                 progress_callback: ProgressCallback) -> Optional[DistanceOracle]:
    if not with_oracle:
        return None
    return oracle or DistanceOracle(progress_callback=progress_callback)


def _random_base(rng: random.Random, n: int) -> Tuple[int, ...]:
    return tuple(rng.sample(range(1, n + 1), n))


# -- Verifications ------------------------------------------------------------

def verify_decompositions(n_max: int, with_oracle: bool = False, oracle: Optional[DistanceOracle] = None,
                          progress_callback: ProgressCallback = None) -> VerificationReport:
    """Every pair swap (A) in frame r^(k-1) and (B) in frame r^(l-2), n = 3..n_max."""
    if not 3 <= n_max <= MAX_BFS_DEGREE:
        raise InvalidDegreeError(f"n_max must be in 3..{MAX_BFS_DEGREE}, got {n_max}")
    oracle = _make_oracle(with_oracle, oracle, progress_callback)
    rep = VerificationReport("decompositions", (3, n_max))
    for n in range(3, n_max + 1):
        if progress_callback:
            progress_callback(f"decompositions at n={n}")
        base = identity(n)
        for k in range(1, n):
            for l in range(k + 1, n + 1):
                for scheme, build in (("A", decomposition_a), ("B", decomposition_b)):
                    word = build(n, k, l)
                    frame = swap_frame(k, l, scheme)
                    start = rotate(base, frame)
                    target = rotate(swap_values(base, k, l), frame)
                    formula = 4 * (l - k - 1) + 1
                    valid = (apply_word(start, word) == target
                             and word.count(Generator.L) == word.count(Generator.R)
                             and word.length == formula)
                    rep.rows.append(_row(n, {"k": k, "l": l, "scheme": scheme}, formula,
                                         word.length, valid, _oracle_distance(oracle, start.word, target.word)))
    return rep


def verify_lemma(n_max: int, with_oracle: bool = False, oracle: Optional[DistanceOracle] = None,
                 seed: int = 0, progress_callback: ProgressCallback = None) -> VerificationReport:
    """All four reversal words for every n = 3..n_max and j = 2..ceil(n/2)."""
    if not 3 <= n_max <= MAX_BUILDER_DEGREE:
        raise InvalidDegreeError(f"n_max must be in 3..{MAX_BUILDER_DEGREE}, got {n_max}")
    oracle = _make_oracle(with_oracle, oracle, progress_callback)
    rng = random.Random(seed)
    rep = VerificationReport("lemma", (3, n_max))
    for n in range(3, n_max + 1):
        if progress_callback:
            progress_callback(f"lemma at n={n}")
        base = tuple(range(1, n + 1))
        for j in range(2, ceil_half(n) + 1):
            formula = lemma_value(n, j)
            for variant in LemmaVariant:
                start, end = variant.start_rotation(j), variant.end_rotation(j)
                try:
                    word, start, end = lemma_word(n, j, variant)
                    valid = word.length == formula
                    length = word.length
                except ConstructionError:
                    valid, length = False, 0
                if valid:
                    for _ in range(SPOT_CHECK_BASES):
                        pi = _random_base(rng, n)
                        if trace_word(rotated(pi, start), word) != rotated(reversed_prefix(pi, j), end):
                            valid = False
                            break
                a = rotated(base, start)
                b = rotated(reversed_prefix(base, j), end)
                rep.rows.append(_row(n, {"j": j, "variant": variant.value}, formula, length, valid,
                                     _oracle_distance(oracle, a, b)))
    return rep


def _theorem_row(n: int, i: int, oracle: Optional[DistanceOracle]) -> VerificationRow:
    formula = theorem_value(n, i).value
    start = theorem_start(n, i)
    ident = tuple(range(1, n + 1))
    try:
        word, plan = theorem_word(n, i)
        valid = word.length == formula and trace_word(start, word) == ident
        length = word.length
        params = {"i": i, "branch": plan.branch.value}
    except ConstructionError:
        valid, length, params = False, 0, {"i": i, "branch": None}
    return _row(n, params, formula, length, valid, _oracle_distance(oracle, start, ident))


def _bound_row(n: int, oracle: Optional[DistanceOracle]) -> VerificationRow:
    row = _theorem_row(n, 2, oracle)
    formula = lower_bound(n)
    diam = None
    if oracle is not None and n <= MAX_BFS_DEGREE:
        diam = diameter(n, oracle)[0]
    valid = row.builder_valid and theorem_value(n, 2).value == formula
    params = {"check": "lower_bound", "i": 2, "diameter": diam}
    return _row(n, params, formula, row.builder_len, valid, row.oracle)


def verify_theorem(n_max: int, with_oracle: bool = False, oracle: Optional[DistanceOracle] = None,
                   progress_callback: ProgressCallback = None) -> VerificationReport:
    """Sorting words for s*r^(n-i), every n = 4..n_max and i = 1..n, plus the bound per n."""
    if not 4 <= n_max <= MAX_BUILDER_DEGREE:
        raise InvalidDegreeError(f"n_max must be in 4..{MAX_BUILDER_DEGREE}, got {n_max}")
    oracle = _make_oracle(with_oracle, oracle, progress_callback)
    rep = VerificationReport("theorem", (4, n_max))
    for n in range(4, n_max + 1):
        if progress_callback:
            progress_callback(f"theorem at n={n}")
        for i in range(1, n + 1):
            rep.rows.append(_theorem_row(n, i, oracle))
        rep.rows.append(_bound_row(n, oracle))
    return rep


def verify_bound(n_max: int, with_oracle: bool = False, oracle: Optional[DistanceOracle] = None,
                 progress_callback: ProgressCallback = None) -> VerificationReport:
    """theorem_value(n, 2) = n(n-1)/2 and, with the oracle, diameter(n) >= n(n-1)/2."""
    if not 4 <= n_max <= MAX_BUILDER_DEGREE:
        raise InvalidDegreeError(f"n_max must be in 4..{MAX_BUILDER_DEGREE}, got {n_max}")
    oracle = _make_oracle(with_oracle, oracle, progress_callback)
    rep = VerificationReport("bound", (4, n_max))
    for n in range(4, n_max + 1):
        if progress_callback:
            progress_callback(f"bound at n={n}")
        rep.rows.append(_bound_row(n, oracle))
    return rep


VERIFIERS = {
    "lemma": verify_lemma,
    "theorem": verify_theorem,
    "bound": verify_bound,
    "decompositions": verify_decompositions,
}
