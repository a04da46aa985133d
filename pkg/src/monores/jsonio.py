"""JSON schemas for every on-disk artifact, plus trace replay.

All rationals travel as strings ("p/q" or "n"); label arrays fix the
entry order inside each file; objects are dumped with sorted keys so a
given run always produces byte-identical files.

The trace format is versioned ("monores-trace/1").  A trace records the
root manifold and, per blow-up, the center pair, the weights at the
corners of the center, the fresh label, and every morphism matrix;
`replay_trace` rebuilds the tower from that and insists the rebuilt
matrices agree bit for bit.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .blowup import Star, apply_center
from .errors import StructuralError
from .ideals import MFunction, MIdeal
from .linalg import (
    ExponentMatrix,
    ExponentVector,
    format_rational,
    minimal_elements,
    parse_rational,
)
from .manifold import Corner, Edge, MonomialManifold
from .reduction import ReductionProblem, ReductionReport, root_corner_for
from .standardization import GlobalStandardization
from .supports import SupportSet, support_from_rows

TRACE_VERSION = "monores-trace/1"


def canonical_dumps(doc: Any) -> str:
    """Deterministic rendering: sorted keys, fixed separators, UTF-8 text."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- vectors and matrices -------------------------------------------------


def vector_to_json(vec: ExponentVector) -> dict[str, str]:
    return {lab: format_rational(val) for lab, val in vec.items()}


def vector_from_json(doc: Mapping[str, Any]) -> ExponentVector:
    return ExponentVector({lab: parse_rational(val) for lab, val in doc.items()})


def matrix_to_json(mat: ExponentMatrix) -> dict[str, Any]:
    rows = list(mat.sorted_rows)
    cols = list(mat.sorted_cols)
    return {
        "rows": rows,
        "cols": cols,
        "entries": [[format_rational(mat.entry(r, c)) for c in cols] for r in rows],
    }


def matrix_from_json(doc: Mapping[str, Any]) -> ExponentMatrix:
    try:
        rows, cols, entries = doc["rows"], doc["cols"], doc["entries"]
    except KeyError as exc:
        raise StructuralError(f"matrix object is missing {exc}") from None
    return ExponentMatrix.from_row_table(rows, cols, entries)


# -- supports --------------------------------------------------------------


def support_to_json(s: SupportSet) -> dict[str, Any]:
    ordered = list(s.variables)
    return {
        "variables": ordered,
        "points": sorted(
            [[format_rational(p[v]) for v in ordered] for p in s.points]
        ),
    }


def support_from_json(doc: Mapping[str, Any]) -> SupportSet:
    try:
        variables, points = doc["variables"], doc["points"]
    except KeyError as exc:
        raise StructuralError(f"support object is missing {exc}") from None
    return support_from_rows(variables, points)


# -- manifolds ---------------------------------------------------------------


def manifold_to_json(m: MonomialManifold) -> dict[str, Any]:
    return {
        "dimension": m.dimension,
        "components": sorted(m.components),
        "corners": [
            {"id": cid, "index_set": sorted(c.index_set)} for cid, c in m.corners.items()
        ],
        "edges": [
            {"from": e.p, "to": e.q, "matrix": matrix_to_json(e.matrix)} for e in m.edges
        ],
    }


def manifold_from_json(doc: Mapping[str, Any]) -> MonomialManifold:
    try:
        dimension = doc["dimension"]
        components = doc["components"]
        corners_doc = doc["corners"]
        edges_doc = doc.get("edges", [])
    except KeyError as exc:
        raise StructuralError(f"manifold object is missing {exc}") from None
    corners = {c["id"]: Corner(c["id"], frozenset(c["index_set"])) for c in corners_doc}
    edges = []
    for e in edges_doc:
        p, q = e["from"], e["to"]
        if p not in corners or q not in corners:
            raise StructuralError(f"edge {p!r}->{q!r} references a missing corner")
        shared = corners[p].index_set & corners[q].index_set
        edges.append(Edge(p, q, shared, matrix_from_json(e["matrix"])))
    return MonomialManifold(dimension, components, corners.values(), edges)


# -- standardizations --------------------------------------------------------


def standardization_to_json(family: GlobalStandardization) -> list[dict[str, Any]]:
    return [
        {"corner": cid, "alpha": vector_to_json(alpha)} for cid, alpha in family.items()
    ]


def standardization_from_json(doc) -> GlobalStandardization:
    return GlobalStandardization(
        {entry["corner"]: vector_from_json(entry["alpha"]) for entry in doc}
    )


# -- ideals ------------------------------------------------------------------


def ideal_from_json(doc: Mapping[str, Any]) -> MIdeal:
    """An ideal presented by generator exponent rows on a fresh corner chart."""
    try:
        dimension = doc["dimension"]
        labels = list(doc["labels"])
        rows = doc["generators"]
    except KeyError as exc:
        raise StructuralError(f"ideal object is missing {exc}") from None
    if len(labels) != dimension:
        raise StructuralError("label count does not match the dimension")
    support = support_from_rows(labels, rows)
    m = root_corner_for(support)
    (cid,) = m.corner_ids()
    gens = [MFunction(m, {cid: p}) for p in support.sorted_points()]
    return MIdeal(m, gens)


# -- traces -------------------------------------------------------------------


def star_to_json(star: Star) -> dict[str, Any]:
    steps = []
    for step in star.steps:
        steps.append(
            {
                "center": sorted(step.center_pair),
                "alpha_at_centers": {
                    cid: vector_to_json(alpha)
                    for cid, alpha in step.alpha_at_center.items()
                },
                "new_label": step.new_label,
                "B": {
                    cid: matrix_to_json(mat) for cid, mat in sorted(step.morphism.items())
                },
            }
        )
    return {
        "version": TRACE_VERSION,
        "root": manifold_to_json(star.root),
        "steps": steps,
    }


def replay_trace(doc: Mapping[str, Any]) -> Star:
    """Rebuild the tower from a trace, verifying the recorded matrices exactly."""
    version = doc.get("version")
    if version != TRACE_VERSION:
        raise StructuralError(f"unsupported trace version {version!r}")
    root = manifold_from_json(doc["root"])
    violations = root.validate()
    if violations:
        raise StructuralError("trace root manifold is invalid: " + "; ".join(violations))
    star = Star(root=root)
    for k, step_doc in enumerate(doc.get("steps", [])):
        pair = frozenset(step_doc["center"])
        alphas = {
            cid: vector_from_json(v)
            for cid, v in step_doc["alpha_at_centers"].items()
        }
        step = apply_center(star.end, pair, alphas, step_doc["new_label"])
        recorded = {cid: matrix_from_json(m) for cid, m in step_doc["B"].items()}
        rebuilt = dict(step.morphism)
        if recorded != rebuilt:
            raise StructuralError(f"step {k}: rebuilt morphism matrices differ from the trace")
        star = star.extended(step)
    return star


def final_corners_json(end, generators) -> list[dict[str, Any]]:
    """Per-corner certification block: every generator's exponents plus the
    single minimal one (the ideal is locally principal by the time this runs)."""
    out = []
    for cid in end.corner_ids():
        index_set = sorted(end.corner(cid).index_set)
        exps = [g.at(cid) for g in generators]
        mins = minimal_elements(exps)
        if len(mins) != 1:
            raise StructuralError(f"minimal data at {cid!r} is not a singleton")
        (principal,) = mins
        out.append(
            {
                "corner": cid,
                "index_set": index_set,
                "principal_exponent": [format_rational(principal[lab]) for lab in index_set],
                "all_generator_exponents": [
                    [format_rational(g[lab]) for lab in index_set] for g in exps
                ],
            }
        )
    return out


def report_to_json(report: ReductionReport) -> dict[str, Any]:
    """Trace plus the certification data for the end manifold."""
    doc = star_to_json(report.star)
    doc["problem"] = support_to_json(report.problem.support)
    doc["problem"]["stratum_dim"] = report.problem.stratum_dim
    doc["centers"] = [
        {"pair": list(c.pair), "new_label": c.new_label, "annotation": c.annotation}
        for c in report.centers
    ]
    doc["final_corners"] = [
        {
            "corner": c.corner,
            "index_set": list(c.index_set),
            "principal_exponent": [
                format_rational(c.principal_exponent[lab]) for lab in c.index_set
            ],
            "all_generator_exponents": [
                [format_rational(g[lab]) for lab in c.index_set]
                for g in c.generator_exponents
            ],
        }
        for c in report.corners
    ]
    doc["stats"] = {
        "age": report.age,
        "final_corner_count": len(report.star.end.corners),
        "pair_invariants": [list(t) for t in report.pair_invariants],
        "new_uncoupled_counts": list(report.new_uncoupled_counts),
    }
    return doc


def problem_from_json(doc: Mapping[str, Any], stratum_dim: int | None = None) -> ReductionProblem:
    support = support_from_json(doc)
    k = doc.get("stratum_dim", 0) if stratum_dim is None else stratum_dim
    return ReductionProblem(support=support, stratum_dim=int(k))
