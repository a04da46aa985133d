"""Monomial functions, obstructed centers, adapted weights, principalization."""

from fractions import Fraction

import pytest

from monores import (
    BlowupCenter,
    BudgetExceededError,
    DomainError,
    ExponentVector,
    LocalStandardization,
    MFunction,
    MIdeal,
    NotEffectiveError,
    PairState,
    adapted_standardization,
    blow_up,
    center_is_uncoupled_at,
    div_le,
    extend,
    is_locally_principal,
    local_min_data,
    make_corner,
    mfunction_from_corner,
    principalize,
    principalize_generators,
    principalize_pair,
    pull_back_mfunction,
    uncoupled_centers,
)

F = Fraction


def corner2():
    return make_corner(["E1", "E2"])


def seed_fn(m, entries, corner="c0"):
    return mfunction_from_corner(m, corner, ExponentVector(entries))


def worked_pair():
    m = corner2()
    lam = seed_fn(m, {"E1": 2, "E2": 1})
    mu = seed_fn(m, {"E1": 0, "E2": 2})
    return m, lam, mu


def worked_step():
    m, lam, mu = worked_pair()
    fam = adapted_standardization(lam, mu, frozenset({"E1", "E2"}))
    return m, lam, mu, blow_up(m, BlowupCenter(frozenset({"E1", "E2"}), fam))


# -- monomial functions -------------------------------------------------------


def test_mfunction_on_corner_is_the_seed():
    m = corner2()
    lam = seed_fn(m, {"E1": F(5, 2), "E2": 0})
    assert lam.at("c0") == ExponentVector({"E1": F(5, 2), "E2": 0})


def test_mfunction_zero_seed_gives_zero_family():
    _, _, _, step = worked_step()
    zero = mfunction_from_corner(
        step.after, "c0.E1", ExponentVector.zero({"E2", "E∞1"})
    )
    for cid in step.after.corner_ids():
        assert zero.at(cid) == ExponentVector.zero(step.after.corner(cid).index_set)


def test_mfunction_propagation_matches_direct_pullback():
    m, lam, mu, step = worked_step()
    after = step.after
    # the data pulled back from downstairs (2,1) is (2,2) at c0.E2 and (1,4) at c0.E1
    lam_up = pull_back_mfunction(lam, step)
    assert lam_up.at("c0.E2") == ExponentVector({"E1": 2, "E∞1": 2})
    assert lam_up.at("c0.E1") == ExponentVector({"E2": 1, "E∞1": 4})
    # seeding the propagated value at one corner reproduces the rest
    reseeded = mfunction_from_corner(after, "c0.E2", ExponentVector({"E1": 2, "E∞1": 2}))
    assert reseeded == lam_up
    # a literal (2,1) seed at the E1-bearing corner propagates to (0,2) across
    other = mfunction_from_corner(after, "c0.E2", ExponentVector({"E1": 2, "E∞1": 1}))
    assert other.at("c0.E1") == ExponentVector({"E2": 0, "E∞1": 2})


def test_mfunction_propagation_can_fail_effectiveness():
    _, _, _, step = worked_step()
    with pytest.raises(NotEffectiveError):
        mfunction_from_corner(step.after, "c0.E2", ExponentVector({"E1": 1, "E∞1": 0}))


def test_mfunction_consistency_enforced():
    _, _, _, step = worked_step()
    after = step.after
    good = mfunction_from_corner(after, "c0.E2", ExponentVector({"E1": 2, "E∞1": 2}))
    data = dict(good.items())
    data["c0.E1"] = ExponentVector({"E2": 1, "E∞1": 5})
    with pytest.raises(Exception):
        MFunction(after, data)


# -- local minimal data ----------------------------------------------------------


def test_local_min_data_and_principality():
    m, lam, mu = worked_pair()
    ideal = MIdeal(m, [lam, mu])
    assert set(local_min_data(ideal, "c0")) == {lam.at("c0"), mu.at("c0")}
    assert not is_locally_principal(ideal)

    chain = MIdeal(m, [seed_fn(m, {"E1": 1, "E2": 1}), seed_fn(m, {"E1": 2, "E2": 2})])
    assert local_min_data(chain, "c0") == [ExponentVector({"E1": 1, "E2": 1})]
    assert is_locally_principal(chain)
    assert is_locally_principal(MIdeal(m, [lam]))

    three = MIdeal(
        m,
        [
            seed_fn(m, {"E1": 1, "E2": 0}),
            seed_fn(m, {"E1": 0, "E2": 1}),
            seed_fn(m, {"E1": 2, "E2": 2}),
        ],
    )
    assert set(local_min_data(three, "c0")) == {
        ExponentVector({"E1": 1, "E2": 0}),
        ExponentVector({"E1": 0, "E2": 1}),
    }


# -- obstructed centers ------------------------------------------------------------


def test_uncoupled_centers_examples():
    m, lam, mu = worked_pair()
    assert uncoupled_centers(lam, mu) == {frozenset({"E1", "E2"})}

    comparable = seed_fn(m, {"E1": 1, "E2": 1}), seed_fn(m, {"E1": 2, "E2": 1})
    assert uncoupled_centers(*comparable) == set()

    m3 = make_corner(["E1", "E2", "E3"])
    lam3 = seed_fn(m3, {"E1": 1, "E2": 0, "E3": 0})
    mu3 = seed_fn(m3, {"E1": 0, "E2": 1, "E3": 1})
    assert uncoupled_centers(lam3, mu3) == {
        frozenset({"E1", "E2"}),
        frozenset({"E1", "E3"}),
    }


def test_uncoupled_witness_independence():
    m, lam, mu, step = worked_step()
    after = step.after
    lam_up = pull_back_mfunction(lam, step)
    mu_up = pull_back_mfunction(mu, step)
    for pair in after.codim2_centers():
        answers = {
            center_is_uncoupled_at(lam_up, mu_up, pair, cid)
            for cid in after.corners_with(pair)
        }
        assert len(answers) == 1


# -- adapted weights -----------------------------------------------------------------


@pytest.mark.parametrize(
    "lam_e, mu_e, expected",
    [
        ({"E1": 2, "E2": 1}, {"E1": 0, "E2": 2}, {"E1": 2, "E2": 1}),
        ({"E1": 3, "E2": 0}, {"E1": 0, "E2": 2}, {"E1": 3, "E2": 2}),
        ({"E1": 1, "E2": 0}, {"E1": 0, "E2": 1}, {"E1": 1, "E2": 1}),
    ],
)
def test_adapted_standardization_formula(lam_e, mu_e, expected):
    m = corner2()
    lam, mu = seed_fn(m, lam_e), seed_fn(m, mu_e)
    fam = adapted_standardization(lam, mu, frozenset({"E1", "E2"}))
    assert fam.alpha_at("c0") == ExponentVector(expected)


def test_adapted_standardization_rejects_coupled_center():
    m = corner2()
    lam, mu = seed_fn(m, {"E1": 1, "E2": 1}), seed_fn(m, {"E1": 2, "E2": 1})
    with pytest.raises(DomainError):
        adapted_standardization(lam, mu, frozenset({"E1", "E2"}))


def test_adapted_balance_holds_at_every_center_corner():
    # center realized by two corners: blow a 3-corner, then target {E3,E∞1}
    m0 = make_corner(["E1", "E2", "E3"])
    lam0 = seed_fn(m0, {"E1": 1, "E2": 0, "E3": 0})
    mu0 = seed_fn(m0, {"E1": 0, "E2": 1, "E3": 1})
    fam0 = adapted_standardization(lam0, mu0, frozenset({"E1", "E2"}))
    step = blow_up(m0, BlowupCenter(frozenset({"E1", "E2"}), fam0))
    lam1 = pull_back_mfunction(lam0, step)
    # build a pair with {E3,E∞1} obstructed at both corners of that center
    mu1 = mfunction_from_corner(
        step.after, "c0.E1", ExponentVector({"E2": 0, "E3": 1, "E∞1": 0})
    )
    pair = frozenset({"E3", "E∞1"})
    holders = step.after.corners_with(pair)
    assert len(holders) == 2
    assert uncoupled_centers(lam1, mu1) >= {pair}
    fam = adapted_standardization(lam1, mu1, pair)
    i, j = sorted(pair)
    for cid in holders:
        a, lv, mv = fam.alpha_at(cid), lam1.at(cid), mu1.at(cid)
        assert a[j] * (lv[i] - mv[i]) + a[i] * (lv[j] - mv[j]) == 0


# -- principalization -------------------------------------------------------------------


def test_principalize_pair_worked_instance():
    m, lam, mu = worked_pair()
    run = principalize_generators(m, [lam, mu])
    star = run.star
    assert star.age == 1
    lam_f, mu_f = run.final_generators
    assert lam_f.at("c0.E2") == ExponentVector({"E1": 2, "E∞1": 2})
    assert mu_f.at("c0.E2") == ExponentVector({"E1": 0, "E∞1": 2})
    assert lam_f.at("c0.E1") == ExponentVector({"E2": 1, "E∞1": 4})
    assert mu_f.at("c0.E1") == ExponentVector({"E2": 2, "E∞1": 4})
    assert div_le(mu_f.at("c0.E2"), lam_f.at("c0.E2"))
    assert div_le(lam_f.at("c0.E1"), mu_f.at("c0.E1"))
    for cid in star.end.corner_ids():
        assert lam_f.at(cid)["E∞1"] == mu_f.at(cid)["E∞1"]


def test_principalize_pair_already_principal():
    m = corner2()
    lam, mu = seed_fn(m, {"E1": 1, "E2": 1}), seed_fn(m, {"E1": 2, "E2": 1})
    assert principalize_pair(m, lam, mu).age == 0


def test_principalize_pair_dim3_two_steps():
    m3 = make_corner(["E1", "E2", "E3"])
    lam = seed_fn(m3, {"E1": 1, "E2": 0, "E3": 0})
    mu = seed_fn(m3, {"E1": 0, "E2": 1, "E3": 1})
    state0 = PairState.measure(lam, mu)
    assert state0.inv == 2
    star = principalize_pair(m3, lam, mu)
    assert star.age == 2
    # replay the per-step invariants
    gens = [lam, mu]
    invs = [state0.inv]
    for step in star.steps:
        gens = [pull_back_mfunction(g, step) for g in gens]
        invs.append(PairState.measure(*gens).inv)
    assert invs == [2, 1, 0]


def test_blown_center_disappears_and_others_persist():
    m3 = make_corner(["E1", "E2", "E3"])
    lam = seed_fn(m3, {"E1": 1, "E2": 0, "E3": 0})
    mu = seed_fn(m3, {"E1": 0, "E2": 1, "E3": 1})
    pair = frozenset({"E1", "E2"})
    fam = adapted_standardization(lam, mu, pair)
    step = blow_up(m3, BlowupCenter(pair, fam))
    lam1, mu1 = pull_back_mfunction(lam, step), pull_back_mfunction(mu, step)
    centers = step.after.codim2_centers()
    assert pair not in centers
    new_omega = uncoupled_centers(lam1, mu1)
    assert new_omega == {frozenset({"E1", "E3"})}
    assert not any(step.new_label in c for c in new_omega)


def test_comparability_persists_under_blowup():
    m, lam, mu, step = worked_step()
    small = seed_fn(m, {"E1": 1, "E2": 0})
    big = seed_fn(m, {"E1": 2, "E2": 1})
    assert div_le(small.at("c0"), big.at("c0"))
    s2, b2 = pull_back_mfunction(small, step), pull_back_mfunction(big, step)
    for cid in step.after.corner_ids():
        assert div_le(s2.at(cid), b2.at(cid))


def test_principalize_three_generators():
    m = corner2()
    gens = [
        seed_fn(m, {"E1": 1, "E2": 0}),
        seed_fn(m, {"E1": 0, "E2": 1}),
        seed_fn(m, {"E1": 2, "E2": 2}),
    ]
    run = principalize_generators(m, gens)
    assert run.star.age == 1
    assert run.pair_invariants == [(0, 1, 1)]
    ideal = MIdeal(run.star.end, run.final_generators)
    assert is_locally_principal(ideal)
    for cid in run.star.end.corner_ids():
        assert len(local_min_data(ideal, cid)) == 1


def test_principalize_single_generator_and_idempotence():
    m = corner2()
    lone = MIdeal(m, [seed_fn(m, {"E1": 1, "E2": 1})])
    assert principalize(m, lone).age == 0

    m2, lam, mu = worked_pair()
    run = principalize_generators(m2, [lam, mu])
    again = principalize_generators(run.star.end, run.final_generators)
    assert again.star.age == 0


def test_budget_exceeded_carries_partial_star():
    m, lam, mu = worked_pair()
    with pytest.raises(BudgetExceededError) as err:
        principalize_pair(m, lam, mu, max_steps=0)
    assert err.value.star is not None
    assert err.value.star.age == 0


def test_empty_ideal_rejected():
    m = corner2()
    with pytest.raises(Exception):
        MIdeal(m, [])


def test_adapted_weights_transport_across_a_weighted_center():
    """A center realized by two corners joined with a nontrivial diagonal
    weight: the adapted weights must differ between the corners (by exactly
    that weight) and still balance, and the blow-up must equalize the
    exceptional exponents at all four new corners while dropping the
    obstruction count by one."""
    m0 = make_corner(["E1", "E2", "E3"])
    fam0 = extend(m0, LocalStandardization("c0", ExponentVector({"E1": 2, "E2": 1, "E3": 1})))
    s1 = blow_up(m0, BlowupCenter(frozenset({"E1", "E2"}), fam0))
    m1 = s1.after
    assert m1.weight_connexion("c0.E1", "c0.E2")["E∞1"] == 2

    lam = pull_back_mfunction(
        mfunction_from_corner(m0, "c0", ExponentVector({"E1": 1, "E2": 0, "E3": 0})), s1
    )
    mu = mfunction_from_corner(m1, "c0.E1", ExponentVector({"E2": 0, "E3": 1, "E∞1": 0}))
    pair = frozenset({"E3", "E∞1"})
    assert uncoupled_centers(lam, mu) == {pair, frozenset({"E1", "E3"})}

    fam = adapted_standardization(lam, mu, pair)
    assert fam.alpha_at("c0.E1") == ExponentVector({"E2": 1, "E3": 1, "E∞1": 1})
    assert fam.alpha_at("c0.E2") == ExponentVector({"E1": 1, "E3": 1, "E∞1": F(1, 2)})

    s2 = blow_up(m1, BlowupCenter(pair, fam))
    lam2, mu2 = pull_back_mfunction(lam, s2), pull_back_mfunction(mu, s2)
    assert s2.after.validate() == []
    assert len(s2.after.corners) == 4
    for cid in s2.after.corner_ids():
        assert lam2.at(cid)["E∞2"] == mu2.at(cid)["E∞2"]
    assert uncoupled_centers(lam2, mu2) == {frozenset({"E1", "E3"})}
