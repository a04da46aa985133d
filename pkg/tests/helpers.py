"""Shared test utilities: independent oracles and random instance builders."""

from __future__ import annotations

import functools
import random
from fractions import Fraction

from monores import (
    ExponentVector,
    ReductionProblem,
    make_corner,
    mfunction_from_corner,
    reduce_problem,
    support_from_rows,
    uncoupled_centers,
)


def brute_force_minimal(vectors):
    """Independent oracle for minimal elements: literal all-pairs domination scan.

    Deliberately avoids the library's div_le so it cannot share a bug with it.
    """
    vecs = list(set(vectors))
    out = []
    for v in vecs:
        dominated = False
        for w in vecs:
            if w == v:
                continue
            if all(w[lab] <= v[lab] for lab in v.sorted_labels):
                dominated = True
                break
        if not dominated:
            out.append(v)
    return set(out)


def random_vector(rng: random.Random, labels, max_num=10, max_den=8) -> ExponentVector:
    return ExponentVector(
        {lab: Fraction(rng.randint(0, max_num), rng.randint(1, max_den)) for lab in labels}
    )


def random_uncoupled_pair(rng: random.Random, max_dim=4, max_num=10, max_den=8):
    """An m-corner plus two monomial functions with at least one obstructed center."""
    while True:
        dim = rng.randint(2, max_dim)
        labels = [f"E{i}" for i in range(1, dim + 1)]
        m = make_corner(labels)
        lam = mfunction_from_corner(m, "c0", random_vector(rng, labels, max_num, max_den))
        mu = mfunction_from_corner(m, "c0", random_vector(rng, labels, max_num, max_den))
        if uncoupled_centers(lam, mu):
            return m, lam, mu


def random_problem(rng: random.Random, max_vars=3, max_points=5) -> ReductionProblem:
    e = rng.randint(1, max_vars)
    t = rng.randint(1, max_points)
    labels = [f"z{i}" for i in range(1, e + 1)]
    rows = [
        [Fraction(rng.randint(0, 8), rng.randint(1, 6)) for _ in labels] for _ in range(t)
    ]
    return ReductionProblem(support_from_rows(labels, rows))


def random_reports(seed: int, count: int):
    """Reduce `count` random problems with a seeded generator."""
    rng = random.Random(seed)
    return [reduce_problem(random_problem(rng)) for _ in range(count)]


@functools.lru_cache(maxsize=1)
def shared_reports():
    """One batch of reduced random problems, shared across test modules."""
    return random_reports(seed=2024, count=8)
