"""Threshold recursion, survivor floors, feasibility and formulas.

Expected values are frozen from independent evaluation: the recursion
values by unrolling it by hand, the floors and margins by plugging the
parameters into the closed expressions with Fraction arithmetic right
here in the tests.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, floor, log2

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from makerbreaker.errors import (
    IndivisibleGoalError,
    InvalidBoardError,
    SingularScheduleError,
)
from makerbreaker.maker.schedule import (
    ScheduleParams,
    base_clique_threshold,
    biased_feasible,
    biased_shrink_identity_gap,
    biased_survivor_floor,
    eq_q_biased,
    eq_q_tournament,
    f_formula,
    fast_feasible,
    fast_ratio,
    fast_survivor_floor,
    g_formula,
    lemma_constants,
    max_feasible_q,
    shrink_denominator,
    tournament_feasible,
    tournament_set_floor,
)


class TestBaseCliqueThreshold:
    def test_single_vertex_is_free(self):
        assert base_clique_threshold(1, 1) == 1
        assert base_clique_threshold(1, 5) == 1

    def test_two_clique_at_bias_one(self):
        # 5 * 1 * 4 * 1 + 1, one unrolling of the recursion.
        assert base_clique_threshold(2, 1) == 21

    def test_two_clique_at_bias_two(self):
        # 5 * 4 * 9 * 1 + 1.
        assert base_clique_threshold(2, 2) == 181

    def test_growth_is_geometric(self):
        assert base_clique_threshold(3, 1) == 20 * 21 + 1

    def test_rejects_bad_arguments(self):
        with pytest.raises(InvalidBoardError):
            base_clique_threshold(0, 1)


class TestShrinkAlgebra:
    def test_denominator_value(self):
        assert shrink_denominator(1, 3) == Fraction(6)
        assert shrink_denominator(1, 4) == Fraction(4)
        assert shrink_denominator(2, 30) == Fraction(3) + Fraction(18, 24)

    def test_singular_at_q_equal_bb1(self):
        with pytest.raises(SingularScheduleError):
            shrink_denominator(1, 2)

    @settings(max_examples=80, deadline=None)
    @given(n=st.integers(1, 10 ** 6), d=st.integers(0, 200),
           m=st.integers(1, 3), b=st.integers(1, 3), q=st.integers(1, 60))
    def test_direct_form_equals_ratio_form(self, n, d, m, b, q):
        if q <= b * (b + 1):
            return
        assert biased_shrink_identity_gap(n, d, m, b, q) == 0


class TestBiasedFloors:
    def test_spec_instance_m1(self):
        # (2000 - 1)/2 - 2000/10 = 999.5 - 200, floored.
        assert biased_survivor_floor(2000, 0, 1, 1, 10) == 799

    def test_spec_instance_m2(self):
        # (2000 - 21 - 420)/2 - 100 = 779.5 - 100, floored; C(2,1) = 21.
        assert biased_survivor_floor(2000, 0, 2, 1, 20) == 679

    def test_spec_instance_b2(self):
        # (3000 - 1 - 10)/3 - 200 = 996.33... - 200, floored.
        assert biased_survivor_floor(3000, 10, 1, 2, 30) == 796

    def test_degenerate_floor_clamps_to_zero(self):
        assert biased_survivor_floor(10, 9, 1, 1, 3) == 0


class TestBiasedFeasible:
    def test_n10000_q3_is_feasible_with_margin(self):
        ok, margin = biased_feasible(10000, 1, 1, 3, 3)
        assert ok
        assert margin == Fraction(10000, 216) - 15 - 10
        assert abs(float(margin) - 21.296) < 0.001

    def test_n10000_q4_is_infeasible(self):
        ok, margin = biased_feasible(10000, 1, 1, 4, 4)
        assert not ok
        assert margin == Fraction(10000, 256) - 34 - 17

    def test_zero_rounds_always_fit(self):
        ok, _ = biased_feasible(50, 1, 1, 3, 0)
        assert ok

    def test_constants_match_the_direct_formula(self):
        c1, c2 = lemma_constants(2, 1)
        assert c1 == Fraction(2, 2)
        assert c2 == Fraction(21 + 2 * comb(21, 2), 2)


class TestMaxFeasibleQ:
    def test_desk_scale_answer(self):
        assert max_feasible_q(10000, 1, 1) == 3

    def test_small_board_high_bias_has_none(self):
        assert max_feasible_q(100, 1, 3) == 0

    def test_witness_board_has_none(self):
        assert max_feasible_q(200, 1, 1) == 0

    @settings(max_examples=30, deadline=None)
    @given(n=st.integers(4, 50000), m=st.integers(1, 2), b=st.integers(1, 2))
    def test_monotone_in_n(self, n, m, b):
        assert max_feasible_q(2 * n, m, b) >= max_feasible_q(n, m, b)


class TestFastSchedule:
    def test_ratio_is_exact(self):
        assert fast_ratio(3) == 6
        assert fast_ratio(4) == 4
        with pytest.raises(SingularScheduleError):
            fast_ratio(2)

    def test_survivor_floor_spec_instance(self):
        # 999/2 - 100 = 399.5, floored.
        assert fast_survivor_floor(1000, 0, 10) == 399

    def test_feasible_boundary_at_14472(self):
        # 14472/216 - 27 = 40 = 4 * (9 + 1), met with zero slack.
        assert fast_feasible(14472, 3, 4, 3)
        assert not fast_feasible(14471, 3, 4, 3)

    def test_headline_board_fails_at_small_q(self):
        # q^5 2^q r = 7776 at q=3, r=4: 36 - 27 = 9 < 40.
        assert 3 ** 5 * 2 ** 3 * 4 == 7776
        assert not fast_feasible(7776, 3, 4, 3)

    def test_zero_rounds_boundary(self):
        assert fast_feasible(4 * 10, 3, 4, 0)
        assert not fast_feasible(4 * 10 - 1, 3, 4, 0)


class TestTournamentSchedule:
    def test_set_floor_spec_instance(self):
        # 3000 - 3 * 6000 / 100 = 2820.
        assert tournament_set_floor(6000, 0, 3, 10) == 2820

    def test_feasible_spec_instances(self):
        # 18000/216 - 81 = 2.33..., 17000/216 - 81 < 1.
        assert tournament_feasible(18000, 3, 3)
        assert not tournament_feasible(17000, 3, 3)

    def test_single_vertex_base(self):
        assert tournament_feasible(1, 3, 0)


class TestFormulas:
    def test_biased_target_at_2_pow_32(self):
        assert eq_q_biased(2 ** 32, 1, 1) == pytest.approx(7.0)

    def test_exact_threshold_at_2_pow_16(self):
        value = f_formula(2 ** 16)
        assert value == pytest.approx(23.8854, abs=1e-3)
        assert floor(value) == 23

    def test_tournament_target_negative_at_desk_scale(self):
        assert eq_q_tournament(2 ** 16) == pytest.approx(-8.0)

    def test_g_matches_f_in_the_unbiased_case(self):
        for n in (2 ** 16, 2 ** 24, 2 ** 32):
            assert g_formula(n, 1, 1) == pytest.approx(f_formula(n), abs=1e-9)

    def test_coefficient_comparison_at_m_b_6(self):
        coef = 6 / log2(7)
        assert coef == pytest.approx(2.1372, abs=1e-3)
        assert coef > 2

    def test_domain_guards(self):
        with pytest.raises(InvalidBoardError):
            f_formula(3)
        with pytest.raises(InvalidBoardError):
            eq_q_biased(2, 1, 1)


class TestScheduleParams:
    def test_indivisible_goal_rejected(self):
        with pytest.raises(IndivisibleGoalError):
            ScheduleParams.for_biased(1000, 2, 1, 5)

    def test_singular_rejected(self):
        with pytest.raises(SingularScheduleError):
            ScheduleParams.for_biased(1000, 1, 1, 2)

    def test_round_count(self):
        params = ScheduleParams.for_biased(10000, 1, 1, 3)
        assert params.rounds == 3
        assert params.base_board == 1
