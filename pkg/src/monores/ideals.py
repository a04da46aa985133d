"""Monomial functions, finitely generated monomial ideals, and principalization.

A monomial function is a chart-consistent family of nonnegative exponent
vectors, one per corner.  An ideal is a finite list of such generators.
The obstruction to local principality of a two-generator ideal is the set
of codimension-two centers where the two exponent differences have
opposite signs; blowing such a center up with a weight family tuned to
cancel the difference removes it and creates no new one, so the count of
obstructed centers drops by exactly one per step.  Ideals with more
generators reduce to sweeping the generator pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    AlgorithmInvariantViolation,
    BudgetExceededError,
    DomainError,
    NotEffectiveError,
    StructuralError,
)
from .linalg import ExponentVector, minimal_elements, vec_apply
from .manifold import MonomialManifold
from .standardization import GlobalStandardization, LocalStandardization, extend
from .blowup import BlowupCenter, BlowupStep, Star, blow_up, pullback_vector

DEFAULT_STEP_BUDGET = 10_000


class MFunction:
    """A global monomial function: one nonnegative exponent vector per corner.

    Construction checks chart consistency on every edge (which propagates
    to every corner pair) and nonnegativity everywhere.
    """

    __slots__ = ("manifold", "_data")

    def __init__(self, manifold: MonomialManifold, data: Mapping[str, ExponentVector]):
        if set(data) != set(manifold.corner_ids()):
            raise StructuralError("exponent data must cover exactly the corners")
        for cid, vec in data.items():
            if vec.labels != manifold.corner(cid).index_set:
                raise StructuralError(f"exponent labels at {cid!r} do not match its index set")
            if not vec.is_nonnegative():
                raise NotEffectiveError(f"negative exponent at corner {cid!r}")
        for e in manifold.edges:
            if vec_apply(data[e.q], e.matrix) != data[e.p]:
                raise StructuralError(
                    f"exponent data is not chart consistent across edge {e.p}->{e.q}"
                )
        self.manifold = manifold
        self._data = {cid: data[cid] for cid in manifold.corner_ids()}

    def at(self, corner_id: str) -> ExponentVector:
        try:
            return self._data[corner_id]
        except KeyError:
            raise StructuralError(f"no corner {corner_id!r}") from None

    def items(self):
        return self._data.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MFunction):
            return NotImplemented
        return self.manifold is other.manifold and self._data == other._data

    def __repr__(self) -> str:
        return f"MFunction({self._data!r})"


def mfunction_from_corner(
    m: MonomialManifold, corner_id: str, vec: ExponentVector
) -> MFunction:
    """Propagate exponent data from one corner to the whole manifold.

    Fails with NotEffectiveError when the propagated data turns negative
    somewhere (the seed does not extend to an effective monomial function).
    """
    base = m.corner(corner_id)
    if vec.labels != base.index_set:
        raise StructuralError("seed labels do not match the corner's index set")
    if not vec.is_nonnegative():
        raise NotEffectiveError("seed exponents must be nonnegative")
    data = {}
    for cid in m.corner_ids():
        data[cid] = vec_apply(vec, m.change_matrix(cid, corner_id))
    return MFunction(m, data)


class MIdeal:
    """A nonempty finite list of monomial-function generators on one manifold."""

    __slots__ = ("manifold", "generators")

    def __init__(self, manifold: MonomialManifold, generators: Sequence[MFunction]):
        gens = tuple(generators)
        if not gens:
            raise StructuralError("an ideal needs at least one generator")
        for g in gens:
            if g.manifold is not manifold:
                raise StructuralError("all generators must live on the same manifold")
        self.manifold = manifold
        self.generators = gens


def local_min_data(ideal: MIdeal, corner_id: str) -> list[ExponentVector]:
    """Minimal exponents of the generators at one corner."""
    return minimal_elements(g.at(corner_id) for g in ideal.generators)


def is_locally_principal(ideal: MIdeal) -> bool:
    """True iff one generator divides the others at every corner."""
    return all(
        len(local_min_data(ideal, cid)) == 1 for cid in ideal.manifold.corner_ids()
    )


def center_is_uncoupled_at(
    lam: MFunction, mu: MFunction, pair: frozenset[str], corner_id: str
) -> bool:
    """Sign test at one corner: the two differences point in opposite directions."""
    i, j = sorted(pair)
    lv, mv = lam.at(corner_id), mu.at(corner_id)
    return (lv[i] - mv[i]) * (lv[j] - mv[j]) < 0


def uncoupled_centers(lam: MFunction, mu: MFunction) -> set[frozenset[str]]:
    """All codimension-two centers obstructing principality of the pair.

    One witness corner per center suffices: the sign condition transports
    across charts by positive diagonal factors.
    """
    m = lam.manifold
    if mu.manifold is not m:
        raise StructuralError("the two functions must live on the same manifold")
    out = set()
    for pair in m.codim2_centers():
        witness = m.corners_with(pair)[0]
        if center_is_uncoupled_at(lam, mu, pair, witness):
            out.add(pair)
    return out


def adapted_standardization(
    lam: MFunction, mu: MFunction, pair: frozenset[str]
) -> GlobalStandardization:
    """Weight family that kills the given obstructed center in one blow-up.

    At the smallest-id corner of the center, the weights on the center pair
    are taken to be the absolute exponent differences (oriented so both are
    positive); every other weight is 1, extended to a realizable family.
    The defining balance  alpha_j*(lam_i - mu_i) + alpha_i*(lam_j - mu_j) = 0
    is then re-checked at every corner of the center.
    """
    m = lam.manifold
    holders = m.corners_with(pair)
    if not holders:
        raise DomainError(f"center {sorted(pair)} is realized by no corner")
    p = holders[0]
    i, j = sorted(pair)
    lv, mv = lam.at(p), mu.at(p)
    di, dj = lv[i] - mv[i], lv[j] - mv[j]
    if not di * dj < 0:
        raise DomainError(f"center {sorted(pair)} is not uncoupled for the pair")
    if di < 0:
        i, j, di, dj = j, i, dj, di
    entries = {lab: 1 for lab in m.corner(p).index_set}
    entries[i] = di
    entries[j] = -dj
    family = extend(m, LocalStandardization(p, ExponentVector(entries)))
    for q in holders:
        a, lq, mq = family.alpha_at(q), lam.at(q), mu.at(q)
        if a[j] * (lq[i] - mq[i]) + a[i] * (lq[j] - mq[j]) != 0:
            raise AlgorithmInvariantViolation(
                f"adapted weights fail the balance equation at corner {q!r}"
            )
    return family


@dataclass(frozen=True)
class PairState:
    """Snapshot of a generator pair: its obstructed centers and their count."""

    lam: MFunction
    mu: MFunction
    omega: frozenset[frozenset[str]]
    inv: int

    @classmethod
    def measure(cls, lam: MFunction, mu: MFunction) -> "PairState":
        omega = frozenset(uncoupled_centers(lam, mu))
        return cls(lam, mu, omega, len(omega))


def pull_back_mfunction(fn: MFunction, step: BlowupStep) -> MFunction:
    """Total transform of a monomial function through one blow-up."""
    data = {
        cid: pullback_vector(fn.at(step.lineage[cid]), step, cid)
        for cid in step.after.corner_ids()
    }
    return MFunction(step.after, data)


@dataclass
class PrincipalizationRun:
    """Everything a principalization sweep produced, for reporting."""

    star: Star
    final_generators: list[MFunction]
    pair_invariants: list[tuple[int, int, int]] = field(default_factory=list)
    new_uncoupled_counts: list[int] = field(default_factory=list)

    @property
    def final_ideal(self) -> MIdeal:
        return MIdeal(self.star.end, self.final_generators)


def _smallest_pair(pairs: Iterable[frozenset[str]]) -> frozenset[str]:
    return min(pairs, key=lambda p: tuple(sorted(p)))


def principalize_generators(
    m: MonomialManifold,
    generators: Sequence[MFunction],
    max_steps: int = DEFAULT_STEP_BUDGET,
) -> PrincipalizationRun:
    """Sweep generator pairs in index order, blowing up obstructed centers.

    Each blow-up uses the adapted weights for the lexicographically
    smallest obstructed center of the active pair and must reduce that
    pair's count by exactly one; pairs already made comparable stay
    comparable because the morphism matrices are nonnegative.  The sweep
    restarts after finishing a pair and stops when a full scan finds no
    obstructed pair.  A step budget guards the multi-generator recursion.
    """
    gens = list(generators)
    for g in gens:
        if g.manifold is not m:
            raise StructuralError("generators must live on the given manifold")
    star = Star(root=m)
    run = PrincipalizationRun(star=star, final_generators=gens)
    k = len(gens)
    while True:
        active = None
        for a in range(k):
            for b in range(a + 1, k):
                state = PairState.measure(gens[a], gens[b])
                if state.inv > 0:
                    active = (a, b, state)
                    break
            if active:
                break
        if active is None:
            break
        a, b, state = active
        run.pair_invariants.append((a, b, state.inv))
        while state.inv > 0:
            if star.age >= max_steps:
                run.star = star
                run.final_generators = gens
                raise BudgetExceededError(
                    f"stopped after {star.age} blow-ups (budget {max_steps})", star=star
                )
            pair = _smallest_pair(state.omega)
            family = adapted_standardization(gens[a], gens[b], pair)
            step = blow_up(star.end, BlowupCenter(pair, family))
            star = star.extended(step)
            gens = [pull_back_mfunction(g, step) for g in gens]
            new_state = PairState.measure(gens[a], gens[b])
            if new_state.omega != state.omega - {pair} or new_state.inv != state.inv - 1:
                raise AlgorithmInvariantViolation(
                    f"blow-up of {sorted(pair)} did not drop the obstruction count "
                    f"from {state.inv} to {state.inv - 1}"
                )
            fresh = 0
            for x in range(k):
                for y in range(x + 1, k):
                    if (x, y) == (a, b):
                        continue
                    for center in uncoupled_centers(gens[x], gens[y]):
                        if step.new_label in center:
                            fresh += 1
            run.new_uncoupled_counts.append(fresh)
            state = new_state
    run.star = star
    run.final_generators = gens
    return run


def principalize_pair(
    m: MonomialManifold,
    lam: MFunction,
    mu: MFunction,
    max_steps: int = DEFAULT_STEP_BUDGET,
) -> Star:
    """Blow up every obstructed center of a two-generator ideal."""
    return principalize_generators(m, [lam, mu], max_steps=max_steps).star


def principalize(
    m: MonomialManifold, ideal: MIdeal, max_steps: int = DEFAULT_STEP_BUDGET
) -> Star:
    """Tower of blow-ups after which the ideal is locally principal."""
    if ideal.manifold is not m:
        raise StructuralError("the ideal does not live on the given manifold")
    run = principalize_generators(m, ideal.generators, max_steps=max_steps)
    if not is_locally_principal(run.final_ideal):
        raise AlgorithmInvariantViolation("sweep finished but the ideal is not principal")
    return run.star
