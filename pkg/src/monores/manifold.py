"""Combinatorial model of a monomial manifold.

A manifold is stored as its corner points (each carrying the index set of
boundary components through it) together with its compact edges, each
annotated by the exact exponent matrix of the coordinate change between
the two corner charts.  Everything else (chart changes between arbitrary
corners, diagonal weight functions, codimension-two centers) is derived
from that data, and `validate` checks the structural constraints that
make the derivations consistent: triangular edge matrices, exact mutual
inverses, identity products around cycles, and connectivity of every
realized boundary intersection.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .errors import (
    ConnectivityError,
    DomainError,
    SingularMatrixError,
    StructuralError,
)
from .linalg import ExponentMatrix, ExponentVector, mat_inverse, mat_mul

_EXC_LABEL = re.compile(r"E∞(\d+)\Z")


@dataclass(frozen=True)
class Corner:
    """A corner point: an id and the boundary components through it."""

    id: str
    index_set: frozenset[str]


class Edge:
    """A compact edge between two corners, with its chart-change matrix.

    The stored matrix codifies the coordinates of `q` as monomials in the
    coordinates of `p` (rows indexed by the labels of `q`, columns by the
    labels of `p`).  The reverse direction is the exact inverse, computed
    once and cached.
    """

    __slots__ = ("p", "q", "shared", "matrix", "__dict__")

    def __init__(self, p: str, q: str, shared: frozenset[str], matrix: ExponentMatrix):
        self.p = p
        self.q = q
        self.shared = frozenset(shared)
        self.matrix = matrix

    @cached_property
    def inverse(self) -> ExponentMatrix:
        return mat_inverse(self.matrix)

    def key(self) -> tuple[str, str]:
        return (self.p, self.q)

    def __repr__(self) -> str:
        return f"Edge({self.p!r} -> {self.q!r}, shared={sorted(self.shared)})"


class MonomialManifold:
    """Corners plus edges; immutable once constructed.

    Blow-ups build new manifolds rather than mutating; `provenance` is a
    human-readable note about where the manifold came from.
    """

    def __init__(
        self,
        dimension: int,
        components: Iterable[str],
        corners: Iterable[Corner],
        edges: Iterable[Edge] = (),
        provenance: str | None = None,
    ):
        if dimension < 1:
            raise StructuralError("dimension must be at least 1")
        self.dimension = int(dimension)
        self.components = frozenset(components)
        self.corners: dict[str, Corner] = {}
        for c in sorted(corners, key=lambda c: c.id):
            if c.id in self.corners:
                raise StructuralError(f"duplicate corner id {c.id!r}")
            self.corners[c.id] = c
        self.edges = tuple(sorted(edges, key=Edge.key))
        self.provenance = provenance

    # -- basic accessors ------------------------------------------------

    def corner(self, corner_id: str) -> Corner:
        try:
            return self.corners[corner_id]
        except KeyError:
            raise StructuralError(f"no corner {corner_id!r}") from None

    def corner_ids(self) -> list[str]:
        return list(self.corners)

    def corners_with(self, labels: Iterable[str]) -> list[str]:
        """Ids of corners whose index set contains all given labels, sorted."""
        need = frozenset(labels)
        return [cid for cid, c in self.corners.items() if need <= c.index_set]

    @cached_property
    def _adjacency(self) -> dict[str, list[tuple[str, Edge, bool]]]:
        adj: dict[str, list[tuple[str, Edge, bool]]] = {cid: [] for cid in self.corners}
        for e in self.edges:
            adj[e.p].append((e.q, e, True))
            adj[e.q].append((e.p, e, False))
        for lst in adj.values():
            lst.sort(key=lambda t: t[0])
        return adj

    # -- derived chart data ----------------------------------------------

    def change_matrix(self, p: str, q: str) -> ExponentMatrix:
        """Chart change from the chart at `p` to the chart at `q`.

        Computed as the product of edge matrices along a path that stays
        inside the intersection of the components shared by `p` and `q`;
        the validated cycle identities make the result path independent.
        """
        cp = self.corner(p)
        cq = self.corner(q)
        if p == q:
            return ExponentMatrix.identity(cp.index_set)
        needed = cp.index_set & cq.index_set
        path = self._edge_path(p, q, needed)
        acc = ExponentMatrix.identity(cp.index_set)
        for edge, forward in path:
            step = edge.matrix if forward else edge.inverse
            acc = mat_mul(step, acc)
        return acc

    def _edge_path(
        self, start: str, goal: str, inside: frozenset[str]
    ) -> list[tuple[Edge, bool]]:
        """Breadth-first edge path from `start` to `goal` along edges whose
        shared set contains `inside`; smallest-id neighbors win ties."""
        prev: dict[str, tuple[str, Edge, bool]] = {}
        seen = {start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            if cur == goal:
                break
            for nxt, edge, forward in self._adjacency[cur]:
                if nxt in seen or not inside <= edge.shared:
                    continue
                seen.add(nxt)
                prev[nxt] = (cur, edge, forward)
                queue.append(nxt)
        if goal not in seen:
            raise ConnectivityError(
                f"no edge path from {start!r} to {goal!r} inside E_{sorted(inside)}"
            )
        path = []
        cur = goal
        while cur != start:
            before, edge, forward = prev[cur]
            path.append((edge, forward))
            cur = before
        path.reverse()
        return path

    def weight_connexion(self, p: str, q: str) -> ExponentVector:
        """Diagonal of the chart change on the shared labels; all entries > 0."""
        shared = self.corner(p).index_set & self.corner(q).index_set
        if not shared:
            raise DomainError(f"corners {p!r} and {q!r} share no boundary component")
        if p == q:
            return ExponentVector.ones(shared)
        c = self.change_matrix(p, q)
        gamma = ExponentVector({lab: c.entry(lab, lab) for lab in shared})
        if not gamma.is_positive():
            raise StructuralError(
                f"nonpositive diagonal between {p!r} and {q!r}: corrupt chart data"
            )
        return gamma

    def codim2_centers(self) -> set[frozenset[str]]:
        """All unordered label pairs realized by at least one corner."""
        out: set[frozenset[str]] = set()
        for c in self.corners.values():
            for pair in combinations(sorted(c.index_set), 2):
                out.add(frozenset(pair))
        return out

    # -- validation -------------------------------------------------------

    def validate(self) -> list[str]:
        """Check every structural constraint; returns violations, empty if valid."""
        bad: list[str] = []
        n = self.dimension

        seen_index_sets: dict[frozenset[str], str] = {}
        for cid, c in self.corners.items():
            if len(c.index_set) != n:
                bad.append(f"corner {cid}: index set size {len(c.index_set)} != dimension {n}")
            if not c.index_set <= self.components:
                bad.append(f"corner {cid}: labels outside the component set")
            if c.index_set in seen_index_sets:
                bad.append(
                    f"corners {seen_index_sets[c.index_set]} and {cid} share one index set"
                )
            else:
                seen_index_sets[c.index_set] = cid
        covered = frozenset().union(*(c.index_set for c in self.corners.values())) if self.corners else frozenset()
        for lab in sorted(self.components - covered):
            bad.append(f"component {lab} lies on no corner")

        seen_pairs: set[frozenset[str]] = set()
        for e in self.edges:
            tag = f"edge {e.p}->{e.q}"
            if e.p not in self.corners or e.q not in self.corners:
                bad.append(f"{tag}: endpoint is not a corner")
                continue
            ip = self.corners[e.p].index_set
            iq = self.corners[e.q].index_set
            pair = frozenset((e.p, e.q))
            if pair in seen_pairs or e.p == e.q:
                bad.append(f"{tag}: duplicate or degenerate edge")
            seen_pairs.add(pair)
            if e.shared != ip & iq:
                bad.append(f"{tag}: stored shared set differs from the index intersection")
            if len(e.shared) != n - 1:
                bad.append(f"{tag}: shared set has size {len(e.shared)}, expected {n - 1}")
                continue
            if e.matrix.row_labels != iq or e.matrix.col_labels != ip:
                bad.append(f"{tag}: matrix is not indexed by (rows=q labels, cols=p labels)")
                continue
            (i_q,) = iq - e.shared
            for ell in e.shared:
                if e.matrix.entry(ell, ell) <= 0:
                    bad.append(f"{tag}: diagonal entry at {ell} is not positive")
                for m in e.shared:
                    if m != ell and e.matrix.entry(ell, m) != 0:
                        bad.append(f"{tag}: off-diagonal entry ({ell},{m}) on shared labels")
                if e.matrix.entry(i_q, ell) != 0:
                    bad.append(f"{tag}: new-label row has entry at shared column {ell}")
            try:
                prod = mat_mul(e.inverse, e.matrix)
                if prod != ExponentMatrix.identity(ip):
                    bad.append(f"{tag}: cached inverse is not an exact inverse")
            except SingularMatrixError:
                bad.append(f"{tag}: matrix is singular")

        if bad:
            return bad

        bad.extend(self._cycle_violations())
        bad.extend(self._connectivity_violations())
        return bad

    def _cycle_violations(self) -> list[str]:
        """Spanning-tree check: every non-tree edge must equal the tree path product."""
        bad: list[str] = []
        if not self.corners:
            return bad
        root = next(iter(self.corners))
        tree: dict[str, tuple[str, Edge, bool]] = {}
        seen = {root}
        queue = deque([root])
        tree_edges: set[tuple[str, str]] = set()
        while queue:
            cur = queue.popleft()
            for nxt, edge, forward in self._adjacency[cur]:
                if nxt in seen:
                    continue
                seen.add(nxt)
                tree[nxt] = (cur, edge, forward)
                tree_edges.add(edge.key())
                queue.append(nxt)
        if len(seen) != len(self.corners):
            bad.append("corner graph is not connected")
            return bad

        def tree_change(p: str, q: str) -> ExponentMatrix:
            def hops_to_root(x: str) -> list[tuple[str, str, Edge]]:
                hops = []
                while x != root:
                    before, edge, _ = tree[x]
                    hops.append((x, before, edge))
                    x = before
                return hops

            up = hops_to_root(p)
            down = hops_to_root(q)
            while up and down and up[-1][2] is down[-1][2]:
                up.pop()
                down.pop()
            hops = up + [(b, a, e) for (a, b, e) in reversed(down)]
            acc = ExponentMatrix.identity(self.corners[p].index_set)
            for a, b, edge in hops:
                step = edge.matrix if (edge.p, edge.q) == (a, b) else edge.inverse
                acc = mat_mul(step, acc)
            return acc

        for e in self.edges:
            if e.key() in tree_edges:
                continue
            if tree_change(e.p, e.q) != e.matrix:
                bad.append(
                    f"cycle through edge {e.p}->{e.q}: product around the cycle is not the identity"
                )
        return bad

    def _connectivity_violations(self) -> list[str]:
        """Every realized nonempty label set J must have a connected corner graph
        along edges whose shared set contains J (sizes below the dimension;
        full-size sets are single corners by the uniqueness check)."""
        bad: list[str] = []
        realized: set[frozenset[str]] = set()
        for c in self.corners.values():
            labs = sorted(c.index_set)
            for size in range(1, self.dimension):
                realized.update(frozenset(s) for s in combinations(labs, size))
        for j in sorted(realized, key=sorted):
            holders = [cid for cid, c in self.corners.items() if j <= c.index_set]
            if len(holders) <= 1:
                continue
            seen = {holders[0]}
            queue = deque([holders[0]])
            while queue:
                cur = queue.popleft()
                for nxt, edge, _ in self._adjacency[cur]:
                    if nxt in seen or not j <= edge.shared:
                        continue
                    seen.add(nxt)
                    queue.append(nxt)
            missing = [cid for cid in holders if cid not in seen]
            if missing:
                bad.append(
                    f"E_{sorted(j)} is disconnected: {missing} unreachable from {holders[0]}"
                )
        return bad

    def __repr__(self) -> str:
        return (
            f"MonomialManifold(dim={self.dimension}, corners={len(self.corners)}, "
            f"edges={len(self.edges)}, components={sorted(self.components)})"
        )


def make_corner(labels: Iterable[str], corner_id: str = "c0") -> MonomialManifold:
    """The local model: a single corner chart, no edges."""
    labs = list(labels)
    if len(set(labs)) != len(labs):
        raise StructuralError("corner labels must be distinct")
    corner = Corner(corner_id, frozenset(labs))
    return MonomialManifold(len(labs), labs, [corner], provenance="corner")


def next_exceptional_label(components: Iterable[str]) -> str:
    """Fresh label E∞k with k one past the largest exceptional index in use."""
    top = 0
    for lab in components:
        m = _EXC_LABEL.match(lab)
        if m:
            top = max(top, int(m.group(1)))
    return f"E∞{top + 1}"
