"""End-to-end driver: from a finite minimal support to a blow-up tower.

The input is the minimal support of a series in `e` generalized variables
at a corner, plus the dimension `k` of the ambient stratum (carried as
metadata only: the combinatorics happens entirely in the generalized
variables, and each center is reported as a product with the stratum
factor when k > 0).  The driver builds one monomial-function generator
per support point on the corner chart, principalizes the ideal they
generate, and certifies that the pulled-back support is a singleton at
every corner of the end manifold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blowup import Star, compose_star
from .errors import AlgorithmInvariantViolation, DomainError, StructuralError, ZeroSeriesError
from .ideals import (
    DEFAULT_STEP_BUDGET,
    MFunction,
    MIdeal,
    PrincipalizationRun,
    principalize_generators,
)
from .linalg import ExponentVector
from .manifold import MonomialManifold, make_corner
from .supports import SupportSet, minimal_support, pullback_support

ROOT_CORNER_ID = "c0"


@dataclass(frozen=True)
class ReductionProblem:
    """A nonempty support in the generalized variables, plus stratum metadata."""

    support: SupportSet
    stratum_dim: int = 0

    def __post_init__(self):
        if not self.support.points:
            raise ZeroSeriesError("cannot reduce the zero series")
        if self.stratum_dim < 0:
            raise DomainError("the stratum dimension must be nonnegative")


@dataclass(frozen=True)
class CenterRecord:
    """One blown-up center with its ambient-product annotation."""

    pair: tuple[str, ...]
    new_label: str
    annotation: str


@dataclass(frozen=True)
class CornerReport:
    """Final data at one end-manifold corner: a singleton minimal support."""

    corner: str
    index_set: tuple[str, ...]
    principal_exponent: ExponentVector
    generator_exponents: tuple[ExponentVector, ...]


@dataclass
class ReductionReport:
    """The tower plus per-corner certification and run statistics."""

    problem: ReductionProblem
    star: Star
    corners: list[CornerReport]
    centers: list[CenterRecord]
    pair_invariants: list[tuple[int, int, int]] = field(default_factory=list)
    new_uncoupled_counts: list[int] = field(default_factory=list)

    @property
    def age(self) -> int:
        return self.star.age


def root_corner_for(support: SupportSet) -> MonomialManifold:
    """The corner chart whose boundary components are the support variables."""
    return make_corner(support.variables, ROOT_CORNER_ID)


def build_ideal_from_support(support: SupportSet, m: MonomialManifold) -> MIdeal:
    """One generator per minimal support point, seeded at the single corner."""
    if not support.points:
        raise ZeroSeriesError("empty support")
    if len(m.corners) != 1:
        raise StructuralError("the ideal is seeded on a single-corner chart")
    (cid,) = m.corner_ids()
    if m.corner(cid).index_set != support.index_set:
        raise StructuralError("support variables do not match the corner chart")
    reduced = minimal_support(support)
    gens = [MFunction(m, {cid: point}) for point in reduced.sorted_points()]
    return MIdeal(m, gens)


def reduce_problem(
    problem: ReductionProblem, max_steps: int = DEFAULT_STEP_BUDGET
) -> ReductionReport:
    """Principalize the support ideal and certify singleton supports at the end."""
    root = root_corner_for(problem.support)
    delta0 = minimal_support(problem.support)
    ideal = build_ideal_from_support(delta0, root)
    run: PrincipalizationRun = principalize_generators(
        root, ideal.generators, max_steps=max_steps
    )
    star = run.star
    if star.age != sum(inv for _, _, inv in run.pair_invariants):
        raise AlgorithmInvariantViolation(
            "tower age does not equal the sum of the pair obstruction counts"
        )

    corners: list[CornerReport] = []
    for cid in star.end.corner_ids():
        composite = compose_star(star, cid)
        pulled = pullback_support(delta0, composite, minimize=True)
        if len(pulled) != 1:
            raise AlgorithmInvariantViolation(
                f"pulled-back support at corner {cid!r} is not a singleton"
            )
        (principal,) = pulled.points
        corners.append(
            CornerReport(
                corner=cid,
                index_set=tuple(sorted(star.end.corner(cid).index_set)),
                principal_exponent=principal,
                generator_exponents=tuple(g.at(cid) for g in run.final_generators),
            )
        )

    k = problem.stratum_dim
    centers = [
        CenterRecord(
            pair=tuple(sorted(step.center_pair)),
            new_label=step.new_label,
            annotation=(f"ℝ^{k} × Z̄" if k > 0 else "Z̄"),
        )
        for step in star.steps
    ]
    return ReductionReport(
        problem=problem,
        star=star,
        corners=corners,
        centers=centers,
        pair_invariants=run.pair_invariants,
        new_uncoupled_counts=run.new_uncoupled_counts,
    )
