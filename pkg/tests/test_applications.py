"""Applied multi-option games: mappings, closed forms, distributions."""

import math

import numpy as np
import pytest

from cooprob import (
    AttritionSpec,
    DinerSpec,
    DomainError,
    GameTag,
    PayoffTable2,
    PublicGoodsSpec,
    TravelerSpec,
    UndefinedPairError,
    attrition_distribution,
    attrition_pij,
    attrition_table2,
    balanced_p,
    balanced_pn,
    classify2,
    diner_conjecture_test,
    diner_ladder,
    diner_p,
    diner_table2,
    diner_table3,
    public_goods_distribution,
    public_goods_p_star,
    public_goods_table2,
    traveler_distribution,
    traveler_mean,
    traveler_pij,
    traveler_table2,
)


# ----------------------------------------------------------------- diner


def test_diner_spec_validation():
    with pytest.raises(DomainError):
        DinerSpec(r=4, s=5, u=2, w=1)  # r must top the ordering
    with pytest.raises(DomainError):
        DinerSpec(r=4, s=3, u=2, w=-1)  # positive payoffs only
    with pytest.raises(DomainError):
        DinerSpec(r=4, s=3.5, u=2, w=1, n=2)  # R_cb = 2 not below n = 2
    with pytest.raises(DomainError):
        DinerSpec(r=4, s=3, u=2, w=1, n=1)


def test_diner_table2_mapping_and_linearity():
    spec = DinerSpec(r=5.0, s=4.5, u=1.5, w=1.0, n=2)
    t = diner_table2(spec)
    assert t.values() == (1.5, 0.5, -0.5, -1.5)
    # the even split forces a - b - c + d = 0: closed form is linear
    a, b, c, d = t.values()
    assert a - b - c + d == 0.0
    assert classify2(t).tag is GameTag.PRISONERS_DILEMMA


def test_diner_closed_form_two_players():
    spec = DinerSpec(r=5.0, s=4.5, u=1.5, w=1.0, n=2)  # R_cb = 4/3
    est = diner_p(spec)
    assert est.p == pytest.approx(0.5, abs=1e-15)
    spec = DinerSpec(r=4.0, s=3.5, u=1.5, w=1.0, n=2)  # R_cb = 1.5
    assert diner_p(spec).p == pytest.approx(2.0 / 3.0, abs=1e-15)


def test_diner_closed_form_three_players():
    # R_cb = 2 sits inside the (1.5, 3) chain window
    spec = DinerSpec(r=5.0, s=4.5, u=2.5, w=1.0, n=3)
    assert spec.r_cb == pytest.approx(2.0)
    est = diner_p(spec)
    assert est.p == pytest.approx(0.5, abs=1e-12)
    table = diner_table3(spec)
    assert table.values()[0] > table.values()[-1]


def test_diner_table3_requires_chain_window():
    spec = DinerSpec(r=4.0, s=3.5, u=2.0, w=1.0, n=3)  # R_cb = 2 OK
    diner_table3(spec)
    low = DinerSpec(r=4.0, s=3.0, u=0.5, w=1.0 / 3.0, n=3)  # R_cb < 1.5
    assert low.r_cb < 1.5
    with pytest.raises(DomainError):
        diner_table3(low)


def test_diner_ladder_reduces_to_the_two_player_table():
    spec = DinerSpec(r=5.0, s=4.5, u=1.5, w=1.0, n=2)
    assert diner_ladder(spec) == list(diner_table2(spec).values())


def test_diner_ladder_solver_tracks_the_closed_form():
    for r_cb in (2.25, 2.5, 2.75):
        rep = diner_conjecture_test(r_cb, 4)
        assert rep.p_conjecture == pytest.approx(2.0 - 4.0 / r_cb)
        assert abs(rep.gap) < 1e-12


def test_diner_conjecture_domain():
    with pytest.raises(DomainError):
        diner_conjecture_test(1.9, 4)  # below n/2
    with pytest.raises(DomainError):
        diner_conjecture_test(4.0, 4)  # at n
    with pytest.raises(DomainError):
        diner_conjecture_test(2.5, 1)


def test_diner_p_limits_monotone():
    # p -> 0 as R_cb -> 1+ and p -> 1 as R_cb -> 2- for two diners
    ratios = [1.001, 1.2, 1.5, 1.8, 1.999]
    ps = []
    for r_cb in ratios:
        u = 1.0 + (r_cb - 1.0) / 2.0
        spec = DinerSpec(r=1.0 + r_cb, s=u + 1.0, u=u, w=1.0, n=2)
        assert spec.r_cb == pytest.approx(r_cb)
        ps.append(diner_p(spec).p)
    assert all(x < y for x, y in zip(ps, ps[1:]))
    assert ps[0] < 0.01
    assert ps[-1] > 0.99


# ---------------------------------------------------------- public goods


def test_public_goods_p_star():
    assert public_goods_p_star(4.0 / 3.0) == pytest.approx(0.5, abs=1e-15)
    assert public_goods_p_star(1.5) == pytest.approx(2.0 / 3.0, abs=1e-15)
    for k in (1.0, 2.0, 0.5, math.nan):
        with pytest.raises(DomainError):
            public_goods_p_star(k)


def test_public_goods_pairwise_reduction_is_level_free():
    spec = PublicGoodsSpec(r=10.0, k=1.5, options=4)
    p_star = public_goods_p_star(spec.k)
    for i, j in ((1, 0), (4, 0), (3, 1), (4, 3), (2, 4)):
        t = public_goods_table2(spec, i, j)
        assert classify2(t).tag is GameTag.PRISONERS_DILEMMA
        assert balanced_p(t).p == pytest.approx(p_star, abs=1e-12)
    with pytest.raises(UndefinedPairError):
        public_goods_table2(spec, 2, 2)
    with pytest.raises(DomainError):
        public_goods_table2(spec, 5, 0)


def test_public_goods_distribution_exact_fractions():
    dist = public_goods_distribution(PublicGoodsSpec(r=100.0, k=1.5, options=4))
    assert dist.total == 10.0
    for got, num in zip(dist.probabilities, (4, 5, 6, 7, 8)):
        assert got == pytest.approx(num / 30.0, abs=1e-15)
    uniform = public_goods_distribution(PublicGoodsSpec(r=100.0, k=4.0 / 3.0, options=4))
    for got in uniform.probabilities:
        assert got == pytest.approx(0.2, abs=1e-15)
    low = public_goods_distribution(PublicGoodsSpec(r=100.0, k=1.2, options=4))
    for got, num in zip(low.probabilities, (8, 7, 6, 5, 4)):
        assert got == pytest.approx(num / 30.0, abs=1e-12)


# -------------------------------------------------------------- traveler


def test_traveler_spec_validation():
    with pytest.raises(DomainError):
        TravelerSpec(r=2.0, s=4.0, t=2.0, steps=2)
    with pytest.raises(DomainError):
        TravelerSpec(r=4.0, s=2.0, t=3.0, steps=2)  # bonus above the floor
    with pytest.raises(DomainError):
        TravelerSpec(r=4.0, s=2.0, t=2.0, steps=0)


def test_traveler_pair_table_and_formula_agree():
    spec = TravelerSpec(r=4.0, s=2.0, t=2.0, steps=2)
    t = traveler_table2(spec, 1, 0)
    assert t.values() == (4.0, 3.0, 2.0, 0.0)
    assert classify2(t).tag is GameTag.PRISONERS_DILEMMA
    assert balanced_p(t).p == pytest.approx(traveler_pij(spec, 1, 0), abs=1e-12)
    assert traveler_pij(spec, 0, 1) == traveler_pij(spec, 1, 0)
    assert traveler_pij(spec, 1, 0) == pytest.approx((3.0 - math.sqrt(5.0)) / 2.0, abs=1e-12)


def test_traveler_wide_gaps_classify_coordination_and_cooperate():
    # gap * v above the bonus flips the pair out of the dilemma family;
    # its stag-type ratio lands at or above 1/2, so the high claim wins
    spec = TravelerSpec(r=10.0, s=2.0, t=2.0, steps=8)
    t = traveler_table2(spec, 5, 0)
    assert classify2(t).tag is GameTag.STAG_HUNT
    assert balanced_p(t).p == 1.0
    assert traveler_pij(spec, 5, 0) == 1.0


def test_traveler_boundary_gap_equal_bonus():
    # delta v == t: the mapped table has a == b and no strict class, while
    # the gap formula keeps the coordination answer p = 1
    spec = TravelerSpec(r=4.0, s=2.0, t=2.0, steps=2)
    assert traveler_pij(spec, 2, 0) == 1.0
    assert classify2(traveler_table2(spec, 2, 0)).tag is GameTag.UNCLASSIFIED


def test_traveler_small_distribution():
    dist = traveler_distribution(TravelerSpec(r=4.0, s=2.0, t=2.0, steps=2))
    p1 = (3.0 - math.sqrt(5.0)) / 2.0
    assert dist.probabilities[0] == pytest.approx((1.0 - p1) / 3.0, abs=1e-12)
    assert dist.probabilities[1] == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert dist.probabilities[2] == pytest.approx((1.0 + p1) / 3.0, abs=1e-12)
    assert dist.total == pytest.approx(3.0)


def test_traveler_distribution_matches_brute_force():
    spec = TravelerSpec(r=20.0, s=2.0, t=2.0, steps=18)
    dist = traveler_distribution(spec)
    n = spec.steps
    weights = np.zeros(n + 1)
    for i in range(n + 1):
        for j in range(n + 1):
            if i == j:
                continue
            pij = traveler_pij(spec, i, j)
            weights[i] += pij if i > j else 1.0 - pij
    assert np.allclose(weights, dist.weights, atol=1e-12)
    assert dist.total == pytest.approx(weights.sum(), abs=1e-9)
    assert sum(dist.probabilities) == pytest.approx(1.0, abs=1e-12)


def test_traveler_large_case_endpoints():
    dist = traveler_distribution(TravelerSpec(r=100.0, s=2.0, t=2.0, steps=98))
    assert dist.total == pytest.approx(98 * 99 / 2.0)
    assert dist.probabilities[-1] == pytest.approx(0.020074616782364486, abs=1e-12)
    assert dist.probabilities[0] == pytest.approx(0.00012740341965571758, abs=1e-15)


def test_traveler_means():
    assert traveler_mean(TravelerSpec(r=200.0, s=80.0, t=5.0, steps=120)) == pytest.approx(
        160.24523236002165, abs=1e-9
    )
    assert traveler_mean(TravelerSpec(r=200.0, s=80.0, t=80.0, steps=120)) == pytest.approx(
        144.60423747063936, abs=1e-9
    )


def test_traveler_single_step_spec():
    # two options only; v = r - s lands exactly in the dilemma branch here
    spec = TravelerSpec(r=5.0, s=3.0, t=3.0, steps=1)
    assert traveler_mean(spec) == pytest.approx(4.0, abs=1e-12)


def test_traveler_discriminant_identity():
    # (g + t)^2 - 4 g^2 == (t - g)(t + 3 g): nonnegative on the branch g <= t
    for t in (1.0, 2.0, 5.0):
        for g in np.linspace(0.01, t, 7):
            assert (g + t) ** 2 - 4 * g * g == pytest.approx((t - g) * (t + 3 * g), abs=1e-9)


# ------------------------------------------------------------- attrition


def test_attrition_pair_table():
    spec = AttritionSpec(x=2.0, max_bid=4)
    assert attrition_table2(spec, 1, 0).values() == (2.0, 1.0, 0.0, 0.0)
    assert attrition_table2(spec, 3, 1).values() == (1.0, 0.0, -2.0, -1.0)
    with pytest.raises(UndefinedPairError):
        attrition_table2(spec, 2, 2)
    with pytest.raises(DomainError):
        attrition_table2(spec, 5, 0)


@pytest.mark.parametrize(
    "delta, expected",
    [
        (1, (math.sqrt(5.0) - 1.0) / 2.0),
        (2, (math.sqrt(17.0) - 1.0) / 4.0),
        (3, (math.sqrt(37.0) - 1.0) / 6.0),
        (4, (math.sqrt(65.0) - 1.0) / 8.0),
    ],
)
def test_attrition_uniform_formula(delta, expected):
    spec = AttritionSpec(x=2.0, max_bid=4)
    assert attrition_pij(spec, delta, 0, mode="paper") == pytest.approx(expected, abs=1e-12)


def test_attrition_modes_agree_only_in_the_dilemma_window():
    spec = AttritionSpec(x=2.0, max_bid=4)
    # gap 1 = x/2: dilemma side, both modes give the same root
    assert attrition_pij(spec, 1, 0, mode="paper") == pytest.approx(
        attrition_pij(spec, 1, 0, mode="dispatch"), abs=1e-12
    )
    # gap beyond x/2 classifies Chicken and the class-aware root moves
    assert classify2(attrition_table2(spec, 2, 0)).tag is GameTag.CHICKEN
    assert attrition_pij(spec, 2, 0, mode="dispatch") == pytest.approx(0.75, abs=1e-12)
    assert attrition_pij(spec, 2, 0, mode="paper") != pytest.approx(0.75, abs=1e-6)


def test_attrition_mode_validation():
    spec = AttritionSpec(x=2.0, max_bid=4)
    with pytest.raises(DomainError):
        attrition_pij(spec, 1, 0, mode="other")


def test_attrition_distribution_structure():
    spec = AttritionSpec(x=2.0, max_bid=4)
    for mode in ("paper", "dispatch"):
        dist = attrition_distribution(spec, mode=mode)
        assert dist.total == pytest.approx(10.0, abs=1e-12)
        # the middle bid is formula-forced and symmetric pairs sum to 2/N
        assert dist.probabilities[2] == pytest.approx(0.2, abs=1e-12)
        for i in (0, 1):
            assert dist.probabilities[i] + dist.probabilities[4 - i] == pytest.approx(
                0.4, abs=1e-12
            )


def test_attrition_distribution_matches_brute_force():
    spec = AttritionSpec(x=2.0, max_bid=4)
    dist = attrition_distribution(spec, mode="paper")
    n = spec.max_bid
    weights = np.zeros(n + 1)
    for i in range(n + 1):
        for j in range(n + 1):
            if i == j:
                continue
            pij = attrition_pij(spec, i, j, mode="paper")
            # cooperation is the lower bid: level i concedes against higher j
            weights[i] += pij if i < j else 1.0 - pij
    assert np.allclose(weights, dist.weights, atol=1e-12)


def test_attrition_paper_mode_frozen_vector():
    dist = attrition_distribution(AttritionSpec(x=2.0, max_bid=4), mode="paper")
    expected = (
        0.31287197020718353,
        0.26279034947865425,
        0.2,
        0.13720965052134572,
        0.08712802979281645,
    )
    for got, want in zip(dist.probabilities, expected):
        assert got == pytest.approx(want, abs=1e-12)


def test_attrition_escalation_limit():
    # the conceding probability grows toward 1 with the bid gap
    spec = AttritionSpec(x=2.0, max_bid=10**6)
    p_small = attrition_pij(spec, 1, 0, mode="paper")
    p_large = attrition_pij(spec, 10**6, 0, mode="paper")
    assert p_small < p_large < 1.0
    assert p_large > 0.999999
