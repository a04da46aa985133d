"""Command line interface.

Subcommands:
  reduce        minimal support in  -> blow-up trace + per-corner certificate out
  principalize  generator exponents in -> blow-up trace out
  validate      check a manifold file, print violations
  replay        rebuild a trace and verify it bit for bit

Exit codes: 0 success, 1 bad input, 2 validation violations, 3 step
budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .dot import export_dot_star
from .errors import BudgetExceededError, MonoresError
from .ideals import DEFAULT_STEP_BUDGET, principalize_generators
from .jsonio import (
    canonical_dumps,
    final_corners_json,
    ideal_from_json,
    manifold_from_json,
    problem_from_json,
    replay_trace,
    report_to_json,
    star_to_json,
)
from .oracle import numeric_oracle
from .reduction import reduce_problem

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MonoresError(f"cannot read {path}: {exc}") from exc


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _maybe_check_numeric(star, args) -> None:
    if args.check_numeric:
        err = numeric_oracle(star, samples=args.samples, seed=args.seed)
        print(f"numeric oracle: max relative error {err:.3e} "
              f"({args.samples} samples, seed {args.seed})")


def _budget_bailout(exc: BudgetExceededError, trace_path: str) -> int:
    print(f"error: {exc}", file=sys.stderr)
    if exc.star is not None:
        _write_text(trace_path, canonical_dumps(star_to_json(exc.star)))
        print(f"partial trace written to {trace_path}", file=sys.stderr)
    return EXIT_BUDGET


def cmd_reduce(args) -> int:
    problem = problem_from_json(_load_json(args.input), stratum_dim=args.stratum_dim)
    try:
        report = reduce_problem(problem, max_steps=args.max_steps)
    except BudgetExceededError as exc:
        return _budget_bailout(exc, args.trace)
    _write_text(args.trace, canonical_dumps(report_to_json(report)))
    if args.dot:
        _write_text(args.dot, export_dot_star(report.star))
    print(
        f"reduced: age {report.age}, {len(report.corners)} final corners, "
        f"trace -> {args.trace}"
    )
    for c in report.centers:
        print(f"  center {{{','.join(c.pair)}}} -> {c.new_label}   [{c.annotation}]")
    _maybe_check_numeric(report.star, args)
    return EXIT_OK


def cmd_principalize(args) -> int:
    ideal = ideal_from_json(_load_json(args.input))
    try:
        run = principalize_generators(
            ideal.manifold, ideal.generators, max_steps=args.max_steps
        )
    except BudgetExceededError as exc:
        return _budget_bailout(exc, args.trace)
    doc = star_to_json(run.star)
    doc["final_corners"] = final_corners_json(run.star.end, run.final_generators)
    doc["stats"] = {
        "age": run.star.age,
        "final_corner_count": len(run.star.end.corners),
        "pair_invariants": [list(t) for t in run.pair_invariants],
        "new_uncoupled_counts": list(run.new_uncoupled_counts),
    }
    _write_text(args.trace, canonical_dumps(doc))
    if args.dot:
        _write_text(args.dot, export_dot_star(run.star))
    print(f"principalized: age {run.star.age}, trace -> {args.trace}")
    _maybe_check_numeric(run.star, args)
    return EXIT_OK


def cmd_validate(args) -> int:
    m = manifold_from_json(_load_json(args.input))
    violations = m.validate()
    if violations:
        for v in violations:
            print(f"violation: {v}")
        return EXIT_INVALID
    print(f"valid: {len(m.corners)} corners, {len(m.edges)} edges")
    return EXIT_OK


def cmd_replay(args) -> int:
    doc = _load_json(args.trace)
    star = replay_trace(doc)
    violations = star.end.validate()
    if violations:
        for v in violations:
            print(f"violation: {v}")
        return EXIT_INVALID
    print(
        f"replayed: age {star.age}, end manifold has {len(star.end.corners)} corners; "
        "all recorded matrices reproduced exactly"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monores",
        description="Reduce finite minimal supports to monomial type by "
        "codimension-two combinatorial blow-ups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_trace=True):
        if with_trace:
            p.add_argument("--trace", required=True, help="output trace JSON path")
            p.add_argument("--dot", help="optional DOT output path")
            p.add_argument("--max-steps", type=int, default=DEFAULT_STEP_BUDGET)
            p.add_argument("--check-numeric", action="store_true")
            p.add_argument("--samples", type=int, default=100)
            p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("reduce", help="reduce a support file to monomial type")
    p.add_argument("--input", required=True, help="problem JSON (variables, points)")
    p.add_argument("--stratum-dim", type=int, default=None,
                   help="ambient stratum dimension (overrides the file)")
    add_common(p)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("principalize", help="principalize a generator list")
    p.add_argument("--input", required=True, help="ideal JSON (dimension, labels, generators)")
    add_common(p)
    p.set_defaults(fn=cmd_principalize)

    p = sub.add_parser("validate", help="validate a manifold file")
    p.add_argument("--input", required=True, help="manifold JSON")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("replay", help="rebuild a trace and verify it")
    p.add_argument("--trace", required=True, help="trace JSON produced by reduce/principalize")
    p.set_defaults(fn=cmd_replay)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except MonoresError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
