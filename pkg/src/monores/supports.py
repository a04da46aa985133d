"""Finite support combinatorics for series with rational exponents.

A series enters the algorithm only through its finite set of exponent
tuples.  This module knows how to reduce a support to its minimal
elements, count the monomial complexity, forget variables, rescale by
positive weights, and push a support through a nonnegative exponent
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import DomainError, StructuralError, ZeroSeriesError
from .linalg import (
    ExponentMatrix,
    ExponentVector,
    hadamard,
    minimal_elements,
    vec_apply,
)


class SupportSet:
    """A finite set of nonnegative exponent vectors over named variables.

    `variables` is an ordered tuple (it fixes column order in files); the
    points themselves are an unordered set.  `minimal=True` records that
    the set is known to be pairwise incomparable.
    """

    __slots__ = ("variables", "points", "minimal")

    def __init__(
        self,
        variables: Iterable[str],
        points: Iterable[ExponentVector],
        minimal: bool = False,
    ):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise StructuralError("duplicate variable names")
        labels = frozenset(self.variables)
        pts = frozenset(points)
        for p in pts:
            if p.labels != labels:
                raise StructuralError(
                    f"point over {sorted(p.labels)} does not match variables {sorted(labels)}"
                )
            if not p.is_nonnegative():
                raise DomainError(f"support point with a negative entry: {p!r}")
        self.points = pts
        self.minimal = bool(minimal)

    @property
    def index_set(self) -> frozenset[str]:
        return frozenset(self.variables)

    def sorted_points(self) -> list[ExponentVector]:
        return sorted(self.points, key=lambda v: tuple(x for _, x in v.items()))

    def __len__(self) -> int:
        return len(self.points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SupportSet):
            return NotImplemented
        return self.index_set == other.index_set and self.points == other.points

    def __hash__(self) -> int:
        return hash((self.index_set, self.points))

    def __repr__(self) -> str:
        pts = ", ".join(repr(tuple(str(x) for _, x in p.items())) for p in self.sorted_points())
        return f"SupportSet(vars={list(self.variables)}, points=[{pts}], minimal={self.minimal})"


def support_from_rows(variables: Iterable[str], rows: Iterable[Iterable]) -> SupportSet:
    """Build a support set from per-point entry rows aligned with `variables`."""
    varlist = list(variables)
    pts = []
    for row in rows:
        row = list(row)
        if len(row) != len(varlist):
            raise StructuralError("support row length does not match variable count")
        pts.append(ExponentVector(dict(zip(varlist, row))))
    return SupportSet(varlist, pts)


def minimal_support(s: SupportSet) -> SupportSet:
    """Keep only the points not strictly dominated in the division order."""
    return SupportSet(s.variables, minimal_elements(s.points), minimal=True)


def monomial_complexity(s: SupportSet) -> int:
    """Number of minimal points; 1 means the series is of monomial type."""
    if not s.points:
        raise ZeroSeriesError("the zero series has no monomial complexity")
    return len(minimal_elements(s.points))


def project_support(s: SupportSet, keep: Iterable[str]) -> SupportSet:
    """Forget the variables outside `keep`; duplicates collapse.

    Projection never increases monomial complexity, which is asserted.
    """
    keep_list = [v for v in s.variables if v in set(keep)]
    extra = set(keep) - s.index_set
    if extra:
        raise StructuralError(f"cannot keep unknown variables {sorted(extra)}")
    out = SupportSet(keep_list, (p.restrict(keep_list) for p in s.points))
    if s.points:
        assert monomial_complexity(out) <= monomial_complexity(s)
    return out


def rescale_support(s: SupportSet, gamma: ExponentVector) -> SupportSet:
    """Entrywise rescale every point by a strictly positive weight vector.

    Positive rescaling preserves comparability and incomparability, so a
    minimal support stays minimal.
    """
    if gamma.labels != s.index_set:
        raise StructuralError("weight vector labels do not match the support variables")
    if not gamma.is_positive():
        raise DomainError("rescaling weights must be strictly positive")
    return SupportSet(s.variables, (hadamard(gamma, p) for p in s.points), minimal=s.minimal)


def pullback_support(s: SupportSet, b: ExponentMatrix, minimize: bool = False) -> SupportSet:
    """Push every point through a nonnegative exponent matrix (row-vector side).

    With `minimize` the image is reduced to its minimal elements.  When `b`
    is invertible the raw image has the same cardinality as the input.
    """
    if s.index_set != b.row_labels:
        raise StructuralError("support variables do not match the matrix rows")
    if not b.is_nonnegative():
        raise DomainError("pullback matrices must be entrywise nonnegative")
    image = [vec_apply(p, b) for p in s.points]
    if minimize:
        image = minimal_elements(image)
    return SupportSet(sorted(b.col_labels), image, minimal=minimize)


@dataclass(frozen=True)
class FiniteSeries:
    """A monomial presentation: support points with opaque unit tags.

    Each tag stands for a factor that does not vanish at the origin; the
    units are never expanded, so the tag is the only thing kept.
    """

    support: SupportSet
    unit_tags: Mapping[ExponentVector, str] = field(default_factory=dict)

    def __post_init__(self):
        tags = dict(self.unit_tags)
        if not tags:
            tags = {
                p: f"U{k}" for k, p in enumerate(self.support.sorted_points(), start=1)
            }
            object.__setattr__(self, "unit_tags", tags)
        if set(tags) != set(self.support.points):
            raise StructuralError("unit tags must cover exactly the support points")

    def complexity(self) -> int:
        return monomial_complexity(self.support)
