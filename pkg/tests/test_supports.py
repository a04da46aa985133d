"""Support-set combinatorics: reduction, complexity, projection, transforms."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monores import (
    DomainError,
    ExponentMatrix,
    ExponentVector,
    FiniteSeries,
    StructuralError,
    ZeroSeriesError,
    div_le,
    minimal_support,
    monomial_complexity,
    project_support,
    pullback_support,
    rescale_support,
    support_from_rows,
)

V2 = ("z1", "z2")


def sup(rows, labels=V2):
    return support_from_rows(labels, rows)


rationals = st.fractions(min_value=Fraction(0), max_value=Fraction(8), max_denominator=6)


def supports(labels=V2, max_points=6):
    return st.builds(
        lambda rows: sup(rows, labels),
        st.lists(st.tuples(*[rationals] * len(labels)), min_size=1, max_size=max_points),
    )


def test_minimal_support_examples():
    s = minimal_support(sup([[3, 0], [0, 2], [3, 2]]))
    assert s.points == sup([[3, 0], [0, 2]]).points
    assert s.minimal
    single = minimal_support(sup([[1, 1]]))
    assert single.points == sup([[1, 1]]).points
    unit = minimal_support(sup([[0, 0], [5, 7]]))
    assert unit.points == sup([[0, 0]]).points


def test_monomial_complexity_examples():
    assert monomial_complexity(sup([[3, 0], [0, 2]])) == 2
    assert monomial_complexity(sup([[1, 1]])) == 1
    assert monomial_complexity(sup([[2, 1], [0, 2], [2, 3]])) == 2
    with pytest.raises(ZeroSeriesError):
        monomial_complexity(support_from_rows(V2, []))


@given(supports())
def test_minimal_support_idempotent(s):
    once = minimal_support(s)
    assert minimal_support(once) == once


def test_project_support_examples():
    s = sup([[3, 0], [0, 2]])
    p = project_support(s, ["z2"])
    assert p.variables == ("z2",)
    assert p.points == {ExponentVector({"z2": 0}), ExponentVector({"z2": 2})}
    assert monomial_complexity(p) == 1
    assert project_support(s, V2) == s
    collapsed = project_support(sup([[1, 1], [1, 2]]), ["z1"])
    assert collapsed.points == {ExponentVector({"z1": 1})}
    with pytest.raises(StructuralError):
        project_support(s, ["z9"])


@given(supports(), st.sets(st.sampled_from(V2), min_size=1, max_size=2))
def test_projection_never_increases_complexity(s, keep):
    assert monomial_complexity(project_support(s, keep)) <= monomial_complexity(s)


def test_rescale_support_examples():
    s = sup([[2, 1], [0, 2]])
    gamma = ExponentVector({"z1": Fraction(1, 2), "z2": 3})
    r = rescale_support(s, gamma)
    assert r.points == sup([[1, 3], [0, 6]]).points
    pts = sorted(r.points, key=lambda v: v["z1"])
    assert not div_le(pts[0], pts[1]) and not div_le(pts[1], pts[0])
    assert rescale_support(s, ExponentVector.ones(V2)) == s
    singleton = sup([[1, 1]])
    assert len(rescale_support(singleton, gamma)) == 1
    with pytest.raises(DomainError):
        rescale_support(s, ExponentVector({"z1": 0, "z2": 1}))


@given(supports(max_points=4), st.tuples(*[st.fractions(min_value=Fraction(1, 6), max_value=Fraction(6), max_denominator=6)] * 2))
def test_rescale_preserves_comparability_both_ways(s, weights):
    gamma = ExponentVector(dict(zip(V2, weights)))
    scaled = rescale_support(s, gamma)
    orig = {p: ExponentVector({k: gamma[k] * p[k] for k in V2}) for p in s.points}
    for a in s.points:
        for b in s.points:
            assert div_le(a, b) == div_le(orig[a], orig[b])
    assert len(minimal_support(scaled)) == len(minimal_support(s))


def test_pullback_support_examples():
    b = ExponentMatrix.from_row_table(V2, ("z1", "E∞1"), [[1, Fraction(1, 2)], [0, 1]])
    s = sup([[2, 1], [0, 2]])
    raw = pullback_support(s, b)
    assert raw.points == {
        ExponentVector({"z1": 2, "E∞1": 2}),
        ExponentVector({"z1": 0, "E∞1": 2}),
    }
    reduced = pullback_support(s, b, minimize=True)
    assert reduced.points == {ExponentVector({"z1": 0, "E∞1": 2})}

    ident = ExponentMatrix.identity(V2)
    assert pullback_support(s, ident).points == s.points

    b2 = ExponentMatrix.from_row_table(V2, ("z1", "E∞1"), [[1, Fraction(2, 3)], [0, 1]])
    s2 = sup([[3, 0], [0, 2]])
    assert pullback_support(s2, b2).points == {
        ExponentVector({"z1": 3, "E∞1": 2}),
        ExponentVector({"z1": 0, "E∞1": 2}),
    }
    assert pullback_support(s2, b2, minimize=True).points == {
        ExponentVector({"z1": 0, "E∞1": 2})
    }


def test_pullback_rejects_negative_matrix():
    b = ExponentMatrix.from_row_table(V2, V2, [[1, -1], [0, 1]])
    with pytest.raises(DomainError):
        pullback_support(sup([[1, 1]]), b)


def test_support_validation():
    with pytest.raises(DomainError):
        sup([[-1, 0]])
    with pytest.raises(StructuralError):
        support_from_rows(V2, [[1]])
    with pytest.raises(StructuralError):
        support_from_rows(("z1", "z1"), [[1, 2]])


def test_finite_series_tags():
    s = sup([[3, 0], [0, 2]])
    series = FiniteSeries(s)
    assert sorted(series.unit_tags.values()) == ["U1", "U2"]
    assert series.complexity() == 2
    with pytest.raises(StructuralError):
        FiniteSeries(s, {ExponentVector({"z1": 3, "z2": 0}): "U1"})
