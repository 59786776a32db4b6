#!/usr/bin/env python3
"""
LRX Checker - Command Line Version
Diameters, distances, sorting words and verification reports for the
LRX Cayley graph of S_n.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 refused for exceeding resource limits.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Optional, Tuple

from lrx_bfs_engine import (
    DEFAULT_MEMORY_BUDGET,
    MIN_MEMORY_BUDGET,
    DistanceOracle,
    bfs_all_distances,
    diameter,
    pair_distance,
    shortest_word,
)
from lrx_formulas import lemma_value, lower_bound, theorem_value
from lrx_perm_core import (
    LRXError,
    ResourceLimitError,
    format_permutation,
    parse_permutation,
    rank,
    unrank,
)
from lrx_verifier import SCOPES, VERIFIERS, render_report
from lrx_words import element_word, theorem_start, theorem_word


EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

ENV_MEMORY_BUDGET = "LRX_MEMORY_BUDGET"
ENV_THREADS = "LRX_THREADS"
FORMATS = ("text", "json", "csv")
_SIZE_SUFFIXES = {"K": 1024, "M": 1024 ** 2, "G": 1024 ** 3}


def parse_size(text: str) -> int:
    """Byte count with an optional K/M/G suffix, e.g. "512M"."""
    text = str(text).strip().upper().rstrip("B")
    scale = 1
    if text and text[-1] in _SIZE_SUFFIXES:
        scale = _SIZE_SUFFIXES[text[-1]]
        text = text[:-1]
    try:
        value = int(text) * scale
    except ValueError:
        raise LRXError(f"cannot read memory budget {text!r}") from None
    if value < MIN_MEMORY_BUDGET:
        raise LRXError(f"memory budget must be at least {MIN_MEMORY_BUDGET // 1024 ** 2}M")
    return value


def _parse_threads(value: Any) -> Optional[int]:
    """Explicit worker count, or None for "auto"."""
    if str(value).strip().lower() == "auto":
        return None
    try:
        threads = int(value)
    except (TypeError, ValueError):
        raise LRXError(f"thread count must be an integer or 'auto', got {value!r}") from None
    if threads < 1:
        raise LRXError(f"thread count must be >= 1, got {threads}")
    return threads


@dataclass(frozen=True)
class CliConfig:
    memory_budget: int = DEFAULT_MEMORY_BUDGET
    threads: Optional[int] = None
    output_format: str = "text"
    output_path: Optional[str] = None
    quiet: bool = False

    @classmethod
    def from_sources(cls, args: argparse.Namespace, environ: Mapping[str, str] = os.environ) -> "CliConfig":
        """Flags win over environment variables, which win over defaults."""
        budget = getattr(args, "memory_budget", None) or environ.get(ENV_MEMORY_BUDGET)
        threads = getattr(args, "threads", None) or environ.get(ENV_THREADS)
        return cls(
            memory_budget=parse_size(budget) if budget else DEFAULT_MEMORY_BUDGET,
            threads=_parse_threads(threads) if threads else None,
            output_format=getattr(args, "format", None) or "text",
            output_path=getattr(args, "output", None),
            quiet=bool(getattr(args, "quiet", False)),
        )

    def status(self, message: str) -> None:
        if not self.quiet:
            print(message, file=sys.stderr)

    def oracle(self) -> DistanceOracle:
        return DistanceOracle(memory_budget=self.memory_budget, threads=self.threads,
                              progress_callback=lambda msg: self.status(f"📊 {msg}"))


# -- Commands -----------------------------------------------------------------
# Each command returns (record, text): record feeds json/csv, text is the plain output.

def cmd_diameter(args, config: CliConfig) -> Tuple[Dict[str, Any], str]:
    """Diameter of the graph plus the lowest-rank witness."""
    config.status(f"🔍 Computing the diameter of the LRX graph at n={args.n}...")
    value, witness = diameter(args.n, config.oracle())
    return {"n": args.n, "diameter": value, "witness": format_permutation(witness)}, str(value)


def cmd_distance(args, config: CliConfig) -> Tuple[Dict[str, Any], str]:
    """Exact distance between two permutations."""
    a = parse_permutation(args.source, args.n)
    b = parse_permutation(args.target, args.n)
    config.status(f"🔍 Distance from ({a}) to ({b}) using {args.method}...")
    oracle = config.oracle() if args.method == "bfs" else None
    value = pair_distance(a, b, method=args.method, oracle=oracle, memory_budget=config.memory_budget)
    record = {"n": args.n, "from": format_permutation(a), "to": format_permutation(b),
              "method": args.method, "distance": value}
    return record, str(value)


def cmd_decompose(args, config: CliConfig) -> Tuple[Dict[str, Any], str]:
    """Sorting word from the builders, or from the BFS table as fallback."""
    if args.theorem_i is not None:
        word, plan = theorem_word(args.n, args.theorem_i)
        source = f"builder ({plan.branch.value})"
        start = " ".join(str(v) for v in theorem_start(args.n, args.theorem_i))
    else:
        pi = parse_permutation(args.element, args.n)
        start = format_permutation(pi)
        word = element_word(pi)
        source = "builder"
        if word is None:
            config.status("🤖 Element outside Orb(id) and Orb(s), walking the BFS table...")
            word = shortest_word(pi, config.oracle())
            source = "bfs"
    record = {"n": args.n, "element": start, "word": str(word), "length": word.length, "source": source}
    return record, f"{word}\n{word.length}"


def cmd_rank(args, config: CliConfig) -> Tuple[Dict[str, Any], str]:
    pi = parse_permutation(args.perm, args.n)
    value = rank(pi)
    return {"n": args.n, "perm": format_permutation(pi), "rank": value}, str(value)


def cmd_unrank(args, config: CliConfig) -> Tuple[Dict[str, Any], str]:
    pi = unrank(args.n, args.index)
    return {"n": args.n, "index": args.index, "perm": format_permutation(pi)}, format_permutation(pi)


def cmd_formula(args, config: CliConfig) -> Tuple[Dict[str, Any], str]:
    if args.kind == "lemma":
        value = lemma_value(args.n, args.j)
        return {"kind": "lemma", "n": args.n, "j": args.j, "value": value}, str(value)
    if args.kind == "theorem":
        case = theorem_value(args.n, args.i)
        record = {"kind": "theorem", "n": args.n, "i": args.i, "case": case.case_tag.value, "value": case.value}
        return record, str(case.value)
    value = lower_bound(args.n)
    return {"kind": "bound", "n": args.n, "value": value}, str(value)


def cmd_dump(args, config: CliConfig) -> Tuple[Dict[str, Any], str]:
    """Write the binary distance table and summarize it."""
    config.status(f"🔍 Building the distance table for n={args.n}...")
    table = bfs_all_distances(args.n, threads=config.threads, memory_budget=config.memory_budget,
                              progress_callback=lambda msg: config.status(f"📊 {msg}"))
    table.save(args.dump_path)
    config.status(f"✅ Distance table saved to: {args.dump_path}")
    histogram = [int(c) for c in table.histogram()]
    record = {"n": args.n, "path": args.dump_path, "diameter": table.max_distance, "histogram": histogram}
    return record, "\n".join(f"{d}\t{c}" for d, c in enumerate(histogram))


def cmd_verify(args, config: CliConfig) -> int:
    """Run one verification scope and turn its summary into an exit code."""
    config.status(f"🧪 Verifying {args.scope} for n up to {args.n_max}"
                  f"{' with the BFS oracle' if args.oracle else ''}...")
    kwargs: Dict[str, Any] = {"with_oracle": args.oracle}
    if args.oracle:
        kwargs["oracle"] = config.oracle()
    if args.scope == "lemma":
        kwargs["seed"] = args.seed
    report = VERIFIERS[args.scope](args.n_max, progress_callback=lambda msg: config.status(f"📊 {msg}"),
                                   **kwargs)
    _write_output(config, render_report(report, config.output_format))

    summary = report.summary
    if summary["fail"]:
        config.status(f"❌ {summary['fail']} rows failed")
        return EXIT_VERIFY_FAILED
    if summary["discrepancies"]:
        config.status(f"⚠️  {len(summary['discrepancies'])} rows where the BFS distance is below the formula")
        if args.strict:
            return EXIT_VERIFY_FAILED
    config.status(f"🎉 All {summary['pass']} rows passed")
    return EXIT_OK


# -- Output -------------------------------------------------------------------

def _render_record(record: Dict[str, Any], text: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(record, indent=2) + "\n"
    if fmt == "csv":
        header = ",".join(record)
        row = ",".join(json.dumps(v, separators=(",", ":")) if isinstance(v, list) else str(v)
                       for v in record.values())
        return f"{header}\n{row}\n"
    return text + "\n"


def _write_output(config: CliConfig, text: str) -> None:
    if config.output_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(config.output_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise OSError(f"cannot write {config.output_format} output to {config.output_path}: {e}") from e
    config.status(f"✅ Output written to: {config.output_path}")


# -- Parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', '-f', choices=FORMATS, help='Output format (default: text)')
    common.add_argument('--output', '-o', help='Write output to this file instead of stdout')
    common.add_argument('--threads', '-t', help=f'Worker threads for BFS expansion, an integer or auto (env: {ENV_THREADS})')
    common.add_argument('--memory-budget', '-m',
                        help=f'Memory budget, e.g. 512M or 4G (env: {ENV_MEMORY_BUDGET}, default: 2G)')
    common.add_argument('--quiet', '-q', action='store_true', help='Suppress status lines on stderr')

    parser = argparse.ArgumentParser(description='LRX Cayley Graph Checker')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('diameter', parents=[common], help='Exact diameter by full BFS')
    p.add_argument('--n', type=int, required=True, help='Degree of the symmetric group')
    p.set_defaults(handler=cmd_diameter)

    p = sub.add_parser('distance', parents=[common], help='Distance between two permutations')
    p.add_argument('--n', type=int, required=True, help='Degree of the symmetric group')
    p.add_argument('--from', dest='source', required=True, help='Start: "2 1 4 3", id, s, r^k or s*r^k')
    p.add_argument('--to', dest='target', required=True, help='Target, same forms as --from')
    p.add_argument('--method', choices=('bfs', 'bidir'), default='bfs', help='Search method (default: bfs)')
    p.set_defaults(handler=cmd_distance)

    p = sub.add_parser('decompose', parents=[common], help='Sorting word for an element')
    p.add_argument('--n', type=int, required=True, help='Degree of the symmetric group')
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument('--element', help='Element to sort')
    target.add_argument('--theorem-i', type=int, help='Sort s*r^(n-i) with the two-phase builder')
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser('verify', parents=[common], help='Verify builders and formulas')
    p.add_argument('scope', choices=SCOPES, help='What to verify')
    p.add_argument('--n-max', type=int, required=True, help='Largest degree to check')
    p.add_argument('--oracle', action='store_true', help='Compare against BFS distances')
    p.add_argument('--strict', action='store_true', help='Exit 1 when a BFS distance is below the formula')
    p.add_argument('--seed', type=int, default=0, help='Seed for the random lemma spot checks')
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser('rank', parents=[common], help='Lexicographic rank of a permutation')
    p.add_argument('--n', type=int, required=True, help='Degree of the symmetric group')
    p.add_argument('--perm', required=True, help='Permutation to rank')
    p.set_defaults(handler=cmd_rank)

    p = sub.add_parser('unrank', parents=[common], help='Permutation with a given rank')
    p.add_argument('--n', type=int, required=True, help='Degree of the symmetric group')
    p.add_argument('--index', type=int, required=True, help='Rank in 0..n!-1')
    p.set_defaults(handler=cmd_unrank)

    p = sub.add_parser('formula', parents=[common], help='Evaluate a closed form')
    p.add_argument('kind', choices=('lemma', 'theorem', 'bound'), help='Which closed form')
    p.add_argument('--n', type=int, required=True, help='Degree of the symmetric group')
    p.add_argument('--j', type=int, help='Reversal length (lemma)')
    p.add_argument('--i', type=int, help='Shift index (theorem)')
    p.set_defaults(handler=cmd_formula)

    p = sub.add_parser('dump', parents=[common], help='Save the distance table from the identity')
    p.add_argument('--n', type=int, required=True, help='Degree of the symmetric group')
    p.add_argument('--table', dest='dump_path', required=True, help='Destination of the binary table')
    p.set_defaults(handler=cmd_dump)

    return parser


def _check_formula_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.command != 'formula':
        return
    if args.kind == 'lemma' and args.j is None:
        parser.error("formula lemma requires --j")
    if args.kind == 'theorem' and args.i is None:
        parser.error("formula theorem requires --i")


def run(argv: Optional[List[str]] = None, environ: Mapping[str, str] = os.environ) -> int:
    """Parse arguments, dispatch and map errors to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _check_formula_args(parser, args)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        config = CliConfig.from_sources(args, environ)
        if args.command == 'verify':
            return cmd_verify(args, config)
        record, text = args.handler(args, config)
        _write_output(config, _render_record(record, text, config.output_format))
        return EXIT_OK
    except ResourceLimitError as e:
        print(f"❌ Refused: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except LRXError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
