"""Command line front end: ``prove``, ``check`` and ``sweep``.

Exit codes: 0 success (proved / valid / no disagreement), 1 the negative
outcome, 2 bad input or usage.  Diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import csv
import os
import random
import sys
import time
from dataclasses import dataclass
from typing import Sequence, TextIO

from .corpus import enumerate_mll, random_mll_sequent
from .extract import ExtractionError, extract
from .formula import FormulaError, Logic, format_sequent, parse_sequent
from .proofio import (
    ProofFormatError, document_logic, dumps, goal_of, is_resource_document, load_document,
    plain_from_dict, plain_to_dict, resource_constraints, resource_to_dict,
)
from .search import SearchLimits, Strategy, prove
from .verify import BoundExceeded, brute_force_prove, check_proof, find_error

MAX_SWEEP_SIZE = 8
MAX_SWEEP_ATOMS = 3
MAX_RANDOM_CONNECTIVES = 12
RANDOM_ORACLE_BOUND = 26


class UsageError(Exception):
    pass


def _read_arg(text: str) -> str:
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                return fh.read().strip()
        except OSError as err:
            raise UsageError(f"cannot read {text[1:]}: {err.strerror}") from None
    return text


def _strategy(text: str) -> Strategy:
    try:
        return Strategy.parse(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _logic(text: str) -> Logic:
    try:
        return Logic.parse(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _report_parse_error(text: str, err: FormulaError, err_out: TextIO) -> None:
    print(f"error: {err}", file=err_out)
    if err.pos is not None:
        print(f"  {text}", file=err_out)
        print(f"  {' ' * err.pos}^", file=err_out)


# --------------------------------------------------------------------------
# prove

def cmd_prove(args, out: TextIO | None = None, err_out: TextIO | None = None) -> int:
    out, err_out = out or sys.stdout, err_out or sys.stderr
    text = _read_arg(args.sequent)
    try:
        ante, succ = parse_sequent(text, args.logic)
    except FormulaError as err:
        _report_parse_error(text, err, err_out)
        return 2
    limits = SearchLimits(max_depth=args.max_depth, contraction_bound=args.contraction_bound,
                          node_budget=args.budget)
    trace = (lambda line: print(line, file=err_out)) if args.trace else None
    try:
        result = prove(ante, succ, args.logic, args.strategy, limits, trace=trace)
    except FormulaError as err:
        _report_parse_error(text, err, err_out)
        return 2
    goal_text = format_sequent(ante, succ)
    if not result.proved:
        if args.output == "json":
            print(dumps({"logic": args.logic.name, "endsequent": goal_text, "proved": False,
                         "reason": result.reason}), file=out)
        else:
            print(f"not proved ({result.reason}): {goal_text}", file=out)
        print(f"nodes={result.stats.nodes} solver_calls={result.stats.solver_calls}", file=err_out)
        return 1
    try:
        plain = extract(result)
    except ExtractionError as err:
        print(f"error: extraction failed: {err}", file=err_out)
        return 2
    if args.output == "json":
        doc = resource_to_dict(result, goal_text) if args.resource else plain_to_dict(plain, goal_text, result.assignment)
        print(dumps(doc), file=out)
    else:
        print(plain.render(), file=out)
        if args.resource:
            print(file=out)
            print(result.derivation.root.render(), file=out)
        values = " ".join(f"x{v}={result.assignment[v]}" for v in sorted(result.assignment))
        print(f"assignment: {values}", file=out)
    print(f"nodes={result.stats.nodes} solver_calls={result.stats.solver_calls}", file=err_out)
    return 0


# --------------------------------------------------------------------------
# check

def cmd_check(args, out: TextIO | None = None, err_out: TextIO | None = None) -> int:
    out, err_out = out or sys.stdout, err_out or sys.stderr
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as err:
        print(f"error: cannot read {args.file}: {err.strerror}", file=err_out)
        return 2
    try:
        doc = load_document(text)
        logic = args.logic or document_logic(doc)
        if is_resource_document(doc):
            constraints, assignment = resource_constraints(doc)
            bad = [c for c in constraints if not _holds(c, assignment)]
            if bad:
                print(f"invalid: constraint {bad[0]} fails", file=out)
                return 1
            print("valid", file=out)
            return 0
        proof = plain_from_dict(doc, logic)
        goal = goal_of(doc, logic)
    except ProofFormatError as err:
        print(f"error: {err}", file=err_out)
        return 2
    problem = find_error(proof, logic)
    if problem is None and goal is not None and not check_proof(proof, logic, goal):
        problem = "the root does not conclude the endsequent"
    if problem:
        print(f"invalid: {problem}", file=out)
        return 1
    print("valid", file=out)
    return 0


def _holds(c, assignment) -> bool:
    try:
        return c.holds(assignment)
    except KeyError:
        return False


# --------------------------------------------------------------------------
# sweep

@dataclass
class SweepRow:
    sequent: str
    provable: dict[str, bool]
    oracle: bool | None
    nodes: dict[str, int]
    solver_calls: dict[str, int]

    @property
    def agree(self) -> bool:
        values = set(self.provable.values())
        if self.oracle is not None:
            values.add(self.oracle)
        return len(values) == 1


def sweep_rows(sequents, strategies: Sequence[str], limits: SearchLimits = SearchLimits(),
               oracle: bool = True, oracle_bound: int = 14) -> list[SweepRow]:
    rows = []
    for ante, succ in sequents:
        provable, nodes, calls = {}, {}, {}
        for name in strategies:
            r = prove(ante, succ, Logic.MLL, Strategy.parse(name), limits)
            provable[name] = r.proved
            nodes[name] = r.stats.nodes
            calls[name] = r.stats.solver_calls
        truth = brute_force_prove(ante, succ, bound=oracle_bound) if oracle else None
        rows.append(SweepRow(format_sequent(ante, succ), provable, truth, nodes, calls))
    return rows


def write_csv(rows: list[SweepRow], strategies: Sequence[str], fh: TextIO) -> None:
    w = csv.writer(fh)
    header = ["sequent"] + [f"proved_{s}" for s in strategies] + ["oracle"]
    header += [f"nodes_{s}" for s in strategies] + [f"solver_calls_{s}" for s in strategies] + ["agree"]
    w.writerow(header)
    for r in rows:
        oracle = "" if r.oracle is None else int(r.oracle)
        w.writerow([r.sequent] + [int(r.provable[s]) for s in strategies] + [oracle]
                   + [r.nodes[s] for s in strategies] + [r.solver_calls[s] for s in strategies]
                   + [int(r.agree)])


def cmd_sweep(args, out: TextIO | None = None, err_out: TextIO | None = None) -> int:
    out, err_out = out or sys.stdout, err_out or sys.stderr
    if args.logic is not Logic.MLL:
        print("error: sweep compares against the MLL oracle; use --logic mll", file=err_out)
        return 2
    if not 1 <= args.atoms <= MAX_SWEEP_ATOMS:
        print(f"error: --atoms must be between 1 and {MAX_SWEEP_ATOMS}", file=err_out)
        return 2
    if not 1 <= args.max_size <= MAX_SWEEP_SIZE:
        print(f"error: --max-size must be between 1 and {MAX_SWEEP_SIZE}", file=err_out)
        return 2
    if not 0 <= args.max_connectives <= MAX_RANDOM_CONNECTIVES:
        print(f"error: --max-connectives must be at most {MAX_RANDOM_CONNECTIVES}", file=err_out)
        return 2
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    try:
        for s in strategies:
            Strategy.parse(s)
    except ValueError as err:
        print(f"error: {err}", file=err_out)
        return 2
    seed = int(os.environ.get("RESOURCE_PROVER_SEED", args.seed))
    names = tuple("pqr"[:args.atoms])
    started = time.time()
    rows = sweep_rows(list(enumerate_mll(args.max_size, args.atoms)), strategies)
    if args.random:
        rng = random.Random(seed)
        sample = [random_mll_sequent(rng, args.max_connectives, names) for _ in range(args.random)]
        try:
            rows += sweep_rows(sample, strategies, oracle_bound=RANDOM_ORACLE_BOUND)
        except BoundExceeded as err:
            print(f"error: {err}", file=err_out)
            return 2
    if args.report:
        with open(args.report, "w", newline="", encoding="utf-8") as fh:
            write_csv(rows, strategies, fh)
    else:
        write_csv(rows, strategies, out)
    bad = [r for r in rows if not r.agree]
    proved = sum(1 for r in rows if r.oracle)
    print(f"{len(rows)} sequents, {proved} provable, {len(bad)} disagreements, "
          f"{time.time() - started:.1f}s", file=err_out)
    for r in bad[:10]:
        print(f"disagreement: {r.sequent} {r.provable} oracle={r.oracle}", file=err_out)
    return 0 if not bad else 1


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="resource-prover",
                                     description="Proof search for MLL, PLL and BI with Boolean resource constraints.")
    sub = parser.add_subparsers(dest="command", required=True)

    defaults = SearchLimits()
    p = sub.add_parser("prove", help="search for a proof of a sequent")
    p.add_argument("sequent", help="the sequent, e.g. 'p, q |- p * q', or @file")
    p.add_argument("--logic", type=_logic, default=Logic.MLL)
    p.add_argument("--strategy", type=_strategy, default=Strategy.lazy(),
                   help="lazy, eager, fact-first, n=<k> or n=<k>:root (default lazy)")
    p.add_argument("--max-depth", type=int, default=defaults.max_depth)
    p.add_argument("--contraction-bound", type=int, default=defaults.contraction_bound)
    p.add_argument("--budget", type=int, default=defaults.node_budget, help="node budget")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--resource", action="store_true", help="show the resource derivation instead of only the plain proof")
    p.add_argument("--trace", action="store_true", help="log search steps to standard error")
    p.set_defaults(func=cmd_prove)

    c = sub.add_parser("check", help="check a JSON proof")
    c.add_argument("file", help="JSON proof file, or - for standard input")
    c.add_argument("--logic", type=_logic, default=None)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("sweep", help="compare strategies and the brute-force oracle on many MLL sequents")
    s.add_argument("--logic", type=_logic, default=Logic.MLL)
    s.add_argument("--atoms", type=int, default=2)
    s.add_argument("--max-size", type=int, default=5, help="symbols (atoms plus connectives) per sequent")
    s.add_argument("--strategies", default="lazy,eager,n=2,fact-first")
    s.add_argument("--random", type=int, default=0, help="extra randomly sampled sequents")
    s.add_argument("--max-connectives", type=int, default=10, help="connectives per random sequent")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--report", help="write the CSV here instead of standard output")
    s.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
