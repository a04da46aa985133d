"""Weighted blow-up of a codimension-two boundary stratum.

The center is an unordered pair of boundary components together with a
realizable standardizing weight family.  Every corner containing the pair
splits into two new corners, each with an exact morphism matrix built
from the weight quotients; all other corners persist with the identity
matrix.  Edge matrices upstairs are obtained by conjugating the old ones
with the morphism matrices, which keeps the whole tower exactly
consistent (checked by `validate` after every step and, numerically, by
the sampling oracle).

A `Star` is the append-only record of a finite sequence of such blow-ups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import AlgorithmInvariantViolation, DomainError, StructuralError
from .linalg import ExponentMatrix, ExponentVector, mat_inverse, mat_mul, vec_apply
from .manifold import Corner, Edge, MonomialManifold, next_exceptional_label
from .standardization import GlobalStandardization, validate_realizable


@dataclass(frozen=True)
class BlowupCenter:
    """A realized label pair plus the weight family used to blow it up."""

    pair: frozenset[str]
    standardization: GlobalStandardization

    def __post_init__(self):
        if len(self.pair) != 2:
            raise DomainError("blow-up centers are unordered pairs of components")


@dataclass(frozen=True)
class BlowupStep:
    """One blow-up: what was blown up, and the exact morphism data.

    `morphism` maps every corner id of the new manifold to the matrix
    expressing the old coordinates at its image corner as monomials in
    the new ones (rows = image labels, columns = new labels).  `lineage`
    maps each new corner to its image corner downstairs.
    """

    center_pair: frozenset[str]
    alpha_at_center: Mapping[str, ExponentVector]
    new_label: str
    before: MonomialManifold
    after: MonomialManifold
    morphism: Mapping[str, ExponentMatrix]
    lineage: Mapping[str, str]


@dataclass(frozen=True)
class Star:
    """A finite tower of blow-ups over a root manifold (append-only)."""

    root: MonomialManifold
    steps: tuple[BlowupStep, ...] = ()

    @property
    def age(self) -> int:
        return len(self.steps)

    @property
    def end(self) -> MonomialManifold:
        return self.steps[-1].after if self.steps else self.root

    def extended(self, step: BlowupStep) -> "Star":
        if step.before is not self.end:
            raise StructuralError("step does not start at the end of the star")
        return Star(self.root, self.steps + (step,))


def blow_up(m: MonomialManifold, center: BlowupCenter) -> BlowupStep:
    """Blow up a codimension-two center with a validated weight family."""
    if not center.pair <= m.components:
        raise DomainError(f"center {sorted(center.pair)} uses unknown components")
    holders = m.corners_with(center.pair)
    if not holders:
        raise DomainError(f"center {sorted(center.pair)} is realized by no corner")
    if not validate_realizable(m, center.standardization):
        raise DomainError("the weight family is not realizable on this manifold")
    alpha_at_center = {cid: center.standardization.alpha_at(cid) for cid in holders}
    return apply_center(m, center.pair, alpha_at_center)


def apply_center(
    m: MonomialManifold,
    pair: frozenset[str],
    alpha_at_center: Mapping[str, ExponentVector],
    new_label: str | None = None,
) -> BlowupStep:
    """Blow up from weights given only at the corners of the center.

    This is the replay entry point: the morphism matrices depend on the
    weights only at the blown-up corners, so a recorded trace carries just
    those.  The result is still validated in full.
    """
    pair = frozenset(pair)
    if len(pair) != 2:
        raise DomainError("blow-up centers are unordered pairs of components")
    holders = m.corners_with(pair)
    if not holders:
        raise DomainError(f"center {sorted(pair)} is realized by no corner")
    if set(alpha_at_center) != set(holders):
        raise StructuralError("weights must be given exactly at the corners of the center")
    for cid, alpha in alpha_at_center.items():
        if alpha.labels != m.corner(cid).index_set or not alpha.is_positive():
            raise DomainError(f"bad weight vector at corner {cid!r}")
    if new_label is None:
        new_label = next_exceptional_label(m.components)
    if new_label in m.components:
        raise StructuralError(f"exceptional label {new_label!r} already in use")

    blown = set(holders)
    corners: list[Corner] = []
    morphism: dict[str, ExponentMatrix] = {}
    lineage: dict[str, str] = {}

    def child_id(parent: str, removed: str) -> str:
        return f"{parent}.{removed}"

    for cid, corner in m.corners.items():
        if cid not in blown:
            corners.append(corner)
            morphism[cid] = ExponentMatrix.identity(corner.index_set)
            lineage[cid] = cid
            continue
        alpha = alpha_at_center[cid]
        for removed in sorted(pair):
            new_index = (corner.index_set - {removed}) | {new_label}
            nid = child_id(cid, removed)
            corners.append(Corner(nid, frozenset(new_index)))
            lineage[nid] = cid
            entries = {}
            for r in corner.index_set:
                for s in new_index:
                    if s == new_label:
                        val = alpha[removed] / alpha[r] if r in pair else Fraction(0)
                    else:
                        val = Fraction(r == s)
                    entries[(r, s)] = val
            morphism[nid] = ExponentMatrix(corner.index_set, new_index, entries)

    def lifted_matrix(old: ExponentMatrix, new_p: str, new_q: str) -> ExponentMatrix:
        b_p = morphism[new_p]
        b_q = morphism[new_q]
        return mat_mul(mat_inverse(b_q), mat_mul(old, b_p))

    edges: list[Edge] = []
    for e in m.edges:
        p_blown = e.p in blown
        q_blown = e.q in blown
        if not p_blown and not q_blown:
            edges.append(e)
            continue
        if p_blown and q_blown:
            for removed in sorted(pair):
                np_, nq = child_id(e.p, removed), child_id(e.q, removed)
                shared = (e.shared - {removed}) | {new_label}
                edges.append(Edge(np_, nq, shared, lifted_matrix(e.matrix, np_, nq)))
            continue
        # exactly one endpoint splits: the lift removes the pair label that
        # is not shared with the untouched side
        blown_id, other_id = (e.p, e.q) if p_blown else (e.q, e.p)
        outside = pair - e.shared
        if len(outside) != 1:
            raise AlgorithmInvariantViolation(
                f"edge {e.p}->{e.q}: expected exactly one center label off the edge"
            )
        (removed,) = outside
        nb = child_id(blown_id, removed)
        if p_blown:
            edges.append(Edge(nb, other_id, e.shared, lifted_matrix(e.matrix, nb, other_id)))
        else:
            edges.append(Edge(other_id, nb, e.shared, lifted_matrix(e.matrix, other_id, nb)))

    lo, hi = sorted(pair)
    for cid in sorted(blown):
        a, b = child_id(cid, lo), child_id(cid, hi)
        shared = (m.corner(cid).index_set - pair) | {new_label}
        identity = ExponentMatrix.identity(m.corner(cid).index_set)
        edges.append(Edge(a, b, shared, lifted_matrix(identity, a, b)))

    after = MonomialManifold(
        m.dimension,
        m.components | {new_label},
        corners,
        edges,
        provenance=f"blowup({','.join(sorted(pair))};{new_label})",
    )
    violations = after.validate()
    if violations:
        raise AlgorithmInvariantViolation(
            "blow-up produced an invalid manifold: " + "; ".join(violations)
        )
    return BlowupStep(
        center_pair=pair,
        alpha_at_center=dict(sorted(alpha_at_center.items())),
        new_label=new_label,
        before=m,
        after=after,
        morphism=morphism,
        lineage=lineage,
    )


def pullback_vector(vec: ExponentVector, step: BlowupStep, new_corner: str) -> ExponentVector:
    """Transform exponent data at the image corner to the new corner."""
    if new_corner not in step.morphism:
        raise StructuralError(f"{new_corner!r} is not a corner of the blown-up manifold")
    b = step.morphism[new_corner]
    if vec.labels != b.row_labels:
        raise StructuralError("vector labels do not match the image corner")
    return vec_apply(vec, b)


def compose_star(star: Star, corner_id: str) -> ExponentMatrix:
    """Composite morphism matrix at an end-manifold corner.

    Equals the product of the per-step matrices along the corner's lineage,
    so pulling a vector through it matches the step-by-step pullback.
    """
    if corner_id not in star.end.corners:
        raise StructuralError(f"{corner_id!r} is not a corner of the end manifold")
    chain = []
    cur = corner_id
    for step in reversed(star.steps):
        chain.append((step, cur))
        cur = step.lineage[cur]
    chain.reverse()
    acc = None
    for step, cid in chain:
        b = step.morphism[cid]
        acc = b if acc is None else mat_mul(acc, b)
    if acc is None:
        acc = ExponentMatrix.identity(star.root.corner(corner_id).index_set)
    return acc
