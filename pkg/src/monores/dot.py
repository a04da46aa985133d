"""DOT rendering of corner-adjacency graphs and blow-up towers."""

from __future__ import annotations

from .blowup import Star
from .manifold import MonomialManifold


def _node_label(cid: str, index_set) -> str:
    return f"{cid}\\n{{{','.join(sorted(index_set))}}}"


def _manifold_body(m: MonomialManifold, prefix: str = "", indent: str = "  ") -> list[str]:
    lines = []
    for cid, corner in m.corners.items():
        lines.append(f'{indent}"{prefix}{cid}" [label="{_node_label(cid, corner.index_set)}"];')
    for e in m.edges:
        shared = ",".join(sorted(e.shared))
        lines.append(f'{indent}"{prefix}{e.p}" -- "{prefix}{e.q}" [label="{shared}"];')
    return lines


def export_dot(m: MonomialManifold) -> str:
    """Corner graph: nodes carry index sets, edges their shared labels."""
    lines = ["graph corners {", "  node [shape=box];"]
    lines += _manifold_body(m)
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot_star(star: Star) -> str:
    """One cluster per tower stage, from the root up to the end manifold."""
    lines = ["graph star {", "  node [shape=box];"]
    stages = [("root", star.root)] + [
        (f"step{k + 1}", s.after) for k, s in enumerate(star.steps)
    ]
    for k, (name, m) in enumerate(stages):
        title = name if name == "root" else f"{name}: blow up {{{','.join(sorted(star.steps[k - 1].center_pair))}}}"
        lines.append(f"  subgraph cluster_{k} {{")
        lines.append(f'    label="{title}";')
        lines += _manifold_body(m, prefix=f"{k}:", indent="    ")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
