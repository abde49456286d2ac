"""Tests for the monogamy inequality catalog."""

import math

import pytest

from wmono import monogamy
from wmono.exceptions import ExponentDomainError, InvalidSelectionError, ZeroPairError
from wmono.monogamy import Direction, OrderingProfile
from wmono.wclass import SubsystemSelection, WClassCoefficients

W4_PAIRS = (0.5, 0.5, 0.5)
W4_FULL = math.sqrt(3) / 2


@pytest.fixture
def split_profile() -> OrderingProfile:
    """Four-qubit block whose first pair dominates and later pairs do not: t = 1."""
    return monogamy.profile_from_values(
        SubsystemSelection((1, 2, 3)), (0.8, 0.2, 0.3), (0.36, 0.3), block_value=1.0
    )


class TestWeights:
    """Tests for split and ordered weights."""

    def test_split_weights_small(self) -> None:
        assert monogamy.split_weights(3.0, 3, 1) == pytest.approx([1.0, 2.25, 1.5])

    def test_split_weights_general(self) -> None:
        w = 2.5
        assert monogamy.split_weights(5.0, 5, 2) == pytest.approx([1, w, w**3, w**3, w**2])

    def test_split_weights_at_x_two_are_one(self) -> None:
        assert monogamy.split_weights(2.0, 6, 3) == [1.0] * 6

    @pytest.mark.parametrize(("count", "t"), [(2, 1), (3, 0), (3, 2), (5, 4)])
    def test_invalid_split(self, count: int, t: int) -> None:
        with pytest.raises(InvalidSelectionError):
            monogamy.split_weights(3.0, count, t)

    def test_ordered_weights(self) -> None:
        assert monogamy.ordered_weights(4.0, 3) == [1.0, 2.0, 4.0]


class TestOrderingProfile:
    """Tests for hypothesis checking along a block."""

    def test_w4_has_no_valid_split(self, w4: WClassCoefficients) -> None:
        profile = monogamy.check_ordering(w4, SubsystemSelection((1, 2, 3)))

        assert profile.t is None
        assert not profile.all_ordered
        assert profile.pattern() == "<="
        assert profile.pattern("adjacent") == "=="
        assert profile.status == "no-valid-t"
        assert profile.block_value == pytest.approx(W4_FULL)

    def test_decreasing_block_is_all_ordered(self, ordered5: WClassCoefficients) -> None:
        profile = monogamy.check_ordering(ordered5, SubsystemSelection((1, 2, 3, 4)))
        assert profile.all_ordered
        assert profile.pattern() == ">>>"
        assert profile.t is None
        assert profile.status == "all-ordered"

    def test_largest_valid_split_chosen(self, split_profile: OrderingProfile) -> None:
        assert split_profile.t == 1
        assert split_profile.split_hypotheses(1) == (True, True, True)
        assert split_profile.status == "t=1"

    def test_split_out_of_range(self, split_profile: OrderingProfile) -> None:
        assert split_profile.split_hypotheses(None) == (False,)
        assert split_profile.split_hypotheses(2) == (False,)

    def test_three_qubit_block_never_splits(self) -> None:
        profile = monogamy.profile_from_pairs((0.6, 0.3))
        assert profile.m == 3
        assert profile.t is None
        assert profile.all_ordered

    def test_declared_split(self, w4: WClassCoefficients) -> None:
        profile = monogamy.check_ordering(w4, SubsystemSelection((1, 2, 3))).with_split(1)
        assert profile.t == 1
        assert profile.forced
        assert profile.status == "t=1 (declared, hypotheses unmet)"

    def test_ties_count_both_ways(self) -> None:
        ge, le, adjacent_ge, adjacent_le = monogamy.ordering_flags((0.5, 0.5), (0.5,))
        assert ge == (True,)
        assert le == (True,)
        assert adjacent_ge == (True,)
        assert adjacent_le == (True,)

    def test_w4_adjacent_reading_splits_at_one(self, w4: WClassCoefficients) -> None:
        """Equal pair values tie under the adjacent reading, so t = 1 holds there."""
        profile = monogamy.check_ordering(w4, SubsystemSelection((1, 2, 3)))

        assert profile.adjacent_t == 1
        assert profile.adjacent_all_ordered
        assert profile.split_hypotheses(1, "adjacent") == (True, True, True)
        assert profile.split_hypotheses(1) == (True, False, True)
        assert profile.adjacent_status == "t=1 (all-ordered)"

    def test_adjacent_split_of_split_profile(self, split_profile: OrderingProfile) -> None:
        assert split_profile.adjacent_ge_flags == (True, False)
        assert split_profile.adjacent_le_flags == (False, True)
        assert split_profile.adjacent_t == 1
        assert split_profile.pattern("adjacent") == "><"

    def test_adjacent_split_range_matches_block_reading(self) -> None:
        profile = monogamy.profile_from_pairs((0.6, 0.3))
        assert profile.adjacent_t is None
        assert profile.split_hypotheses(1, "adjacent") == (False,)

        five = monogamy.profile_from_pairs((0.4, 0.1, 0.2, 0.3))
        assert five.adjacent_t == 1
        assert five.split_hypotheses(3, "adjacent") == (False,)

    def test_declared_split_applies_to_both_readings(self, w4: WClassCoefficients) -> None:
        profile = monogamy.check_ordering(w4, SubsystemSelection((1, 2, 3))).with_split(1)
        assert profile.adjacent_t == 1
        assert profile.adjacent_status == "t=1 (declared, valid)"

    def test_unknown_reading(self, split_profile: OrderingProfile) -> None:
        with pytest.raises(ValueError, match="Unknown reading"):
            split_profile.split_hypotheses(1, "pairs")  # type: ignore[arg-type]

    def test_profile_from_pairs_uses_root_sum_square(self) -> None:
        profile = monogamy.profile_from_pairs((0.6, 0.3, 0.4))
        assert profile.downstream == pytest.approx((0.5, 0.4))
        assert profile.block_value == pytest.approx(math.sqrt(0.61))

    def test_value_count_mismatch(self) -> None:
        with pytest.raises(InvalidSelectionError):
            monogamy.profile_from_values(SubsystemSelection((1, 2)), (0.1,), ())


class TestBaselines:
    def test_coa_lower_baseline(self) -> None:
        assert monogamy.coa_lower_baseline(W4_PAIRS, 2) == pytest.approx(0.75)
        assert monogamy.coa_lower_baseline(W4_PAIRS, 3) == pytest.approx(0.375)
        assert monogamy.coa_lower_baseline([], 2) == 0.0

    def test_coa_lower_baseline_domain(self) -> None:
        with pytest.raises(ExponentDomainError):
            monogamy.coa_lower_baseline(W4_PAIRS, 1.5)

    def test_coa_upper_baseline(self) -> None:
        assert monogamy.coa_upper_baseline(W4_PAIRS, -1) == pytest.approx(6.0)

    def test_coa_upper_baseline_zero_pair(self) -> None:
        with pytest.raises(ZeroPairError) as exc:
            monogamy.coa_upper_baseline((0.5, 0.0, 0.5), -1)
        assert exc.value.zero_positions == [2]

    def test_coa_upper_baseline_domain(self) -> None:
        with pytest.raises(ExponentDomainError):
            monogamy.coa_upper_baseline(W4_PAIRS, 0.0)

    def test_eq4_and_eq5(self) -> None:
        lower = monogamy.eq4_report(W4_PAIRS, 3, W4_FULL)
        upper = monogamy.eq5_report(W4_PAIRS, -1, W4_FULL)
        assert lower.satisfied is True
        assert lower.rhs == pytest.approx(0.375)
        assert upper.satisfied is True
        assert upper.rhs == pytest.approx(6.0)

    def test_eq5_with_vanishing_pair(self) -> None:
        report = monogamy.eq5_report((0.5, 0.0), -1, 0.5)
        assert report.satisfied is None
        assert not report.applicable


class TestConcurrenceBaselines:
    """Tests for the prior concurrence bounds eq2/eq3."""

    def test_lower_form(self, split_profile: OrderingProfile) -> None:
        lower, upper = monogamy.concurrence_baselines(
            split_profile.pairs, 3, 1.0, 1, split_profile
        )
        assert lower.inequality_id == "eq2"
        assert lower.split == 1
        assert lower.rhs == pytest.approx(0.512 + 2.25 * 0.008 + 1.5 * 0.027)
        assert lower.satisfied is True
        assert upper.satisfied is None

    def test_lower_form_without_profile(self) -> None:
        lower, _ = monogamy.concurrence_baselines((0.8, 0.2, 0.3), 2, 1.0, 1)
        assert lower.satisfied is True
        assert "ordering hypotheses not checked" in lower.notes

    def test_lower_form_without_split(self) -> None:
        lower, _ = monogamy.concurrence_baselines(W4_PAIRS, 2, W4_FULL, None)
        assert lower.satisfied is None

    def test_lower_form_adjacent_verdict_on_w4(self, w4: WClassCoefficients) -> None:
        profile = monogamy.check_ordering(w4, SubsystemSelection((1, 2, 3)))
        lower, _ = monogamy.concurrence_baselines(W4_PAIRS, 3, W4_FULL, profile.t, profile)

        assert lower.satisfied is None
        assert "no valid split t" in lower.notes
        assert lower.adjacent_split == 1
        assert lower.adjacent_satisfied is True

    def test_upper_form(self) -> None:
        lower, upper = monogamy.concurrence_baselines(W4_PAIRS, -1, W4_FULL, None)
        assert lower.satisfied is None
        assert upper.rhs == pytest.approx(2.0)
        assert upper.baseline_rhs == pytest.approx(6.0)
        assert upper.satisfied is True

    def test_upper_form_with_zero(self) -> None:
        _, upper = monogamy.concurrence_baselines((0.5, 0.0, 0.5), -2, 0.7, None)
        assert upper.satisfied is None

    @pytest.mark.parametrize("alpha", [0.0, 1.0, 1.99])
    def test_gap_in_domain(self, alpha: float) -> None:
        with pytest.raises(ExponentDomainError):
            monogamy.concurrence_baselines(W4_PAIRS, alpha, W4_FULL, None)


class TestCoaBounds:
    """Tests for th1, th2, th3 and remark1."""

    def test_th1_on_split_profile(self, split_profile: OrderingProfile) -> None:
        report = monogamy.coa_lower_th1(split_profile.pairs, split_profile, 2)
        assert report.direction is Direction.GE
        assert report.lhs == pytest.approx(1.0)
        assert report.rhs == pytest.approx(0.77)
        assert report.baseline_rhs == pytest.approx(0.77)
        assert report.split == 1
        assert report.terms == 3
        assert report.satisfied is True

    def test_th1_without_valid_split(self, w4: WClassCoefficients) -> None:
        profile = monogamy.check_ordering(w4, SubsystemSelection((1, 2, 3)))
        report = monogamy.coa_lower_th1(W4_PAIRS, profile, 3)
        assert report.satisfied is None
        assert math.isnan(report.rhs)
        assert report.baseline_rhs == pytest.approx(0.375)
        assert "no valid split t" in report.notes

    def test_th1_adjacent_verdict_on_w4(self, w4: WClassCoefficients) -> None:
        """The W4 block fails the block reading but satisfies th1 under the adjacent one."""
        profile = monogamy.check_ordering(w4, SubsystemSelection((1, 2, 3)))
        report = monogamy.coa_lower_th1(W4_PAIRS, profile, 3)

        assert report.satisfied is None
        assert report.split is None
        assert report.adjacent_split == 1
        assert report.adjacent_satisfied is True

    def test_th1_adjacent_verdict_alongside_block_verdict(
        self, split_profile: OrderingProfile
    ) -> None:
        report = monogamy.coa_lower_th1(split_profile.pairs, split_profile, 3)
        assert report.satisfied is True
        assert report.adjacent_split == 1
        assert report.adjacent_satisfied is True

    def test_adjacent_verdict_can_fail(self) -> None:
        profile = monogamy.profile_from_values(
            SubsystemSelection((1, 2, 3)), (0.5, 0.5, 0.5), (0.9, 0.9), block_value=0.5
        )
        report = monogamy.coa_lower_th1(profile.pairs, profile, 2)
        assert report.satisfied is None
        assert report.adjacent_split == 1
        assert report.adjacent_satisfied is False

    def test_th2_adjacent_verdict(self) -> None:
        assert monogamy.coa_lower_th2((0.6, 0.3), 2).adjacent_satisfied is True
        assert monogamy.coa_lower_th2((0.3, 0.6), 3).adjacent_satisfied is None

    def test_upper_bounds_carry_no_adjacent_verdict(self) -> None:
        report = monogamy.coa_upper_th3(W4_PAIRS, -1, W4_FULL)
        assert report.adjacent_satisfied is None
        assert report.adjacent_split is None

    def test_th1_needs_four_qubits(self) -> None:
        profile = monogamy.profile_from_pairs((0.6, 0.3))
        report = monogamy.coa_lower_th1((0.6, 0.3), profile, 2)
        assert report.satisfied is None
        assert "m < 4" in report.notes

    def test_th1_domain(self, split_profile: OrderingProfile) -> None:
        with pytest.raises(ExponentDomainError):
            monogamy.coa_lower_th1(split_profile.pairs, split_profile, 1.0)

    def test_th2_example(self) -> None:
        report = monogamy.coa_lower_th2((0.6, 0.3), 2)
        assert report.rhs == pytest.approx(0.45)
        assert report.lhs == pytest.approx(0.45)
        assert report.satisfied is True

    def test_th2_dominates_baseline(self) -> None:
        report = monogamy.coa_lower_th2((0.6, 0.3), 3)
        assert report.rhs == pytest.approx(0.216 + 1.5 * 0.027)
        assert report.rhs >= report.baseline_rhs
        assert report.satisfied is True

    def test_th2_unordered(self) -> None:
        report = monogamy.coa_lower_th2((0.3, 0.6), 3)
        assert report.hypothesis_ok == (False,)
        assert report.satisfied is None

    def test_th3_on_w4(self) -> None:
        report = monogamy.coa_upper_th3(W4_PAIRS, -1, W4_FULL)
        assert report.direction is Direction.LT
        assert report.lhs == pytest.approx(2 / math.sqrt(3))
        assert report.rhs == pytest.approx(2.0)
        assert report.baseline_rhs == pytest.approx(6.0)
        assert report.satisfied is True
        assert report.signed_margin > 0

    def test_th3_zero_pair(self) -> None:
        with pytest.raises(ZeroPairError) as exc:
            monogamy.coa_upper_th3((0.5, 0.0, 0.5), -1, 0.7)
        assert exc.value.route == "remark_cyclic"

    def test_th3_domain(self) -> None:
        with pytest.raises(ExponentDomainError):
            monogamy.coa_upper_th3(W4_PAIRS, 1.0, W4_FULL)

    def test_remark_literal_example(self) -> None:
        report = monogamy.remark_cyclic((0.5, 0.0, 0.5), -1, math.sqrt(0.5), factor="literal")
        assert report.rhs == pytest.approx(4 / 3)
        assert report.terms == 2
        assert "factor=literal" in report.notes

    def test_remark_surviving_holds(self) -> None:
        """Averaging over surviving terms bounds the one-to-group value; the literal factor does not."""
        lhs = math.sqrt(0.5)
        surviving = monogamy.remark_cyclic((0.5, 0.0, 0.5), -1, lhs)
        literal = monogamy.remark_cyclic((0.5, 0.0, 0.5), -1, lhs, factor="literal")
        assert surviving.rhs == pytest.approx(2.0)
        assert surviving.satisfied is True
        assert literal.satisfied is False

    def test_remark_needs_exactly_one_zero(self) -> None:
        with pytest.raises(InvalidSelectionError):
            monogamy.remark_cyclic((0.5, 0.5, 0.5), -1, W4_FULL)
        with pytest.raises(InvalidSelectionError):
            monogamy.remark_cyclic((0.0, 0.0, 0.5), -1, 0.5)

    def test_remark_unknown_factor(self) -> None:
        with pytest.raises(ValueError, match="remark factor"):
            monogamy.remark_cyclic((0.5, 0.0), -1, 0.5, factor="half")  # type: ignore[arg-type]


class TestNegativityBounds:
    """Tests for lem2-lem4 and th4-th6."""

    def test_lemma2_saturated_on_w4(self) -> None:
        report = monogamy.neg_lower_lemma2(W4_PAIRS, 2, W4_FULL)
        assert report.lhs == pytest.approx(0.75)
        assert report.rhs == pytest.approx(0.75)
        assert report.satisfied is True

    def test_lemma3_matches_th1(self, split_profile: OrderingProfile) -> None:
        coa = monogamy.coa_lower_th1(split_profile.pairs, split_profile, 3, 1.0)
        neg = monogamy.neg_lower_lemma3(split_profile.pairs, split_profile, 3, 1.0)
        assert neg.inequality_id == "lem3"
        assert (neg.lhs, neg.rhs, neg.satisfied) == (coa.lhs, coa.rhs, coa.satisfied)

    def test_lemma4(self) -> None:
        report = monogamy.neg_upper_lemma4(W4_PAIRS, -2, W4_FULL)
        assert report.rhs == pytest.approx(4.0)
        assert report.satisfied is True

    def test_lemma4_vanishing_value(self) -> None:
        report = monogamy.neg_upper_lemma4((0.5, 0.0), -1, 0.5)
        assert report.hypothesis_ok == (False,)
        assert report.satisfied is None

    def test_crenoa_bounds_mirror_coa(self, split_profile: OrderingProfile) -> None:
        pairs = split_profile.pairs
        assert monogamy.crenoa_th4(pairs, split_profile, 2.5, 1.0).rhs == pytest.approx(
            monogamy.coa_lower_th1(pairs, split_profile, 2.5, 1.0).rhs
        )
        assert monogamy.crenoa_th5((0.6, 0.3), 4).rhs == pytest.approx(
            monogamy.coa_lower_th2((0.6, 0.3), 4).rhs
        )
        assert monogamy.crenoa_th6(W4_PAIRS, -1, W4_FULL).rhs == pytest.approx(2.0)

    def test_th6_zero_routes_to_remark2(self) -> None:
        with pytest.raises(ZeroPairError) as exc:
            monogamy.crenoa_th6((0.5, 0.0), -1, 0.5)
        assert exc.value.route == "crenoa_remark2"

    def test_remark2(self) -> None:
        report = monogamy.crenoa_remark2((0.5, 0.0, 0.5), -1, math.sqrt(0.5))
        assert report.inequality_id == "remark2"
        assert report.satisfied is True


class TestReports:
    def test_relative_slack(self) -> None:
        """Round-off below the relative slack still counts as satisfied."""
        rhs = 1e6
        report = monogamy.neg_lower_lemma2([rhs ** 0.5], 2, (rhs * (1 - 1e-13)) ** 0.5)
        assert report.satisfied is True
        assert report.margin < 0

    def test_zero_lhs_with_negative_exponent(self) -> None:
        report = monogamy.coa_upper_th3(W4_PAIRS, -1, 0.0)
        assert math.isinf(report.lhs)
        assert report.satisfied is False

    def test_not_applicable(self) -> None:
        report = monogamy.not_applicable("th3", -1, "reason")
        assert report.direction is Direction.LT
        assert report.satisfied is None
        assert report.notes == ("reason",)
        assert monogamy.not_applicable("th1", 2, "x").direction is Direction.GE

    def test_signed_margin_orientation(self) -> None:
        lower = monogamy.neg_lower_lemma2((0.5,), 2, 1.0)
        upper = monogamy.coa_upper_th3((0.5,), -1, 1.0)
        assert lower.signed_margin > 0
        assert upper.signed_margin > 0
