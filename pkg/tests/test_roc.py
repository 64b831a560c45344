from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fairodds import (
    DomainError,
    EnforceOdds,
    EnforceParity,
    RandomPolicy,
    RocCurve,
    ScoredRecord,
    UndefinedRateError,
    UnreachableTargetError,
    chance_line_point,
    parity_points_on_roc,
    roc_from_scores,
    select_operating_points,
    shared_point_gaps,
    threshold_sweep,
)

F = Fraction

# positives score {0.9, 0.4}, negatives {0.6, 0.2}: the four-record example
FOUR = [(1, 0.9), (0, 0.6), (1, 0.4), (0, 0.2)]


def elbow_curve():
    return RocCurve.from_points([("0", "0"), ("0.1", "0.7"), ("1", "1")])


class TestRocFromScores:
    def test_perfectly_separable(self):
        curve = roc_from_scores([(1, 0.9), (0, 0.2)])
        assert curve.vertices == ((0, 0), (0, 1), (1, 1))
        assert curve.thresholds == (None, 0.9, 0.2)

    def test_four_thresholds_hand_enumerated(self):
        curve = roc_from_scores(FOUR)
        assert curve.vertices == (
            (0, 0),
            (F(0), F(1, 2)),
            (F(1, 2), F(1, 2)),
            (F(1, 2), F(1)),
            (F(1), F(1)),
        )
        assert curve.thresholds == (None, 0.9, 0.6, 0.4, 0.2)

    def test_all_scores_equal_is_diagonal(self):
        curve = roc_from_scores([(1, 0.5), (0, 0.5), (1, 0.5), (0, 0.5)])
        assert curve.vertices == ((0, 0), (1, 1))

    def test_order_invariance(self):
        assert roc_from_scores(FOUR) == roc_from_scores(list(reversed(FOUR)))

    def test_group_filter(self):
        records = [ScoredRecord(0, 1, 0.9), ScoredRecord(0, 0, 0.2), ScoredRecord(1, 1, 0.1)]
        curve = roc_from_scores(records, group=0)
        assert curve.vertices == ((0, 0), (0, 1), (1, 1))

    def test_one_class_missing(self):
        with pytest.raises(UndefinedRateError):
            roc_from_scores([(1, 0.5), (1, 0.2)])

    @given(
        st.lists(
            st.tuples(st.integers(0, 1), st.floats(-5, 5, allow_nan=False)),
            min_size=2,
            max_size=40,
        ).filter(lambda rs: any(t for t, _ in rs) and any(1 - t for t, _ in rs))
    )
    def test_monotone_and_q_profile_nondecreasing(self, records):
        curve = roc_from_scores(records)
        for (f0, t0), (f1, t1) in zip(curve.vertices, curve.vertices[1:]):
            assert f1 >= f0 and t1 >= t0
        for p in (F(1, 4), F(1, 2), F(9, 10)):
            qs = curve.posterior_profile(p)
            assert all(b >= a for a, b in zip(qs, qs[1:]))
            assert qs[0] == 0 and qs[-1] == 1


class TestCurveValidation:
    def test_must_start_at_origin(self):
        with pytest.raises(DomainError):
            RocCurve.from_points([("0.1", "0"), ("1", "1")])

    def test_must_be_monotone(self):
        with pytest.raises(DomainError):
            RocCurve.from_points([("0", "0"), ("0.5", "0.8"), ("0.4", "0.9"), ("1", "1")])

    def test_deduplicates(self):
        curve = RocCurve.from_points([("0", "0"), ("0.5", "0.5"), ("0.5", "0.5"), ("1", "1")])
        assert curve.vertices == ((0, 0), (F(1, 2), F(1, 2)), (1, 1))


class TestOperationPoint:
    def test_q_derived_from_base_rate(self):
        from fairodds import OperationPoint

        pt = OperationPoint(group=0, fpr=F(3, 10), tpr=F(7, 10), base_rate=F(1, 3))
        assert pt.q == F(13, 30)

    def test_contradictory_q_rejected(self):
        from fairodds import OperationPoint

        with pytest.raises(DomainError):
            OperationPoint(group=0, fpr=F(3, 10), tpr=F(7, 10), base_rate=F(1, 3), q=F(1, 2))


class TestChanceLinePoint:
    def test_point_a(self):
        pt0, pt1 = chance_line_point("0.3")
        for pt in (pt0, pt1):
            assert pt.fpr == pt.tpr == pt.q == F(3, 10)
            assert pt.on_chance_line

    def test_reject_all(self):
        pt0, _ = chance_line_point(0)
        assert pt0.fpr == pt0.tpr == pt0.q == 0

    def test_q_07(self):
        pt0, pt1 = chance_line_point("0.7")
        assert pt0.q == pt1.q == F(7, 10)


class TestParityPointsOnRoc:
    def test_group0_hits_vertex(self):
        # oracle: on segment (0,0)->(0.1,0.7), q = 0.3t with p=1/3, so q*=0.3 at t=1
        pt0, pt1 = parity_points_on_roc(elbow_curve(), elbow_curve(), "1/3", "0.1", "0.3")
        assert (pt0.fpr, pt0.tpr) == (F(1, 10), F(7, 10))
        assert pt0.q == F(3, 10)

    def test_group1_interpolated(self):
        # oracle: solve 0.1*TPR + 0.9*FPR = 0.3 on the second segment -> (1/4, 3/4)
        _, pt1 = parity_points_on_roc(elbow_curve(), elbow_curve(), "1/3", "0.1", "0.3")
        assert (pt1.fpr, pt1.tpr) == (F(1, 4), F(3, 4))
        assert pt1.q == F(3, 10)
        assert pt1.threshold is None

    def test_q_zero_takes_origin(self):
        pt0, pt1 = parity_points_on_roc(elbow_curve(), elbow_curve(), "1/3", "0.1", "0")
        assert (pt0.fpr, pt0.tpr) == (0, 0)
        assert (pt1.fpr, pt1.tpr) == (0, 0)

    def test_parity_equation_satisfied_exactly(self):
        pt0, pt1 = parity_points_on_roc(elbow_curve(), elbow_curve(), "1/3", "0.1", "0.3")
        assert F(1, 3) * pt0.tpr + F(2, 3) * pt0.fpr == F(3, 10)
        assert F(1, 10) * pt1.tpr + F(9, 10) * pt1.fpr == F(3, 10)

    def test_unreachable_target(self):
        with pytest.raises(UnreachableTargetError) as exc:
            parity_points_on_roc(elbow_curve(), elbow_curve(), "1/3", "0.1", "1.5")
        assert exc.value.group == 0

    def test_base_rate_must_be_interior(self):
        with pytest.raises(DomainError):
            parity_points_on_roc(elbow_curve(), elbow_curve(), "0", "0.1", "0.3")

    def test_flat_rule_override(self):
        # with p = 1 the posterior is just TPR, so the run at TPR=1/2 is flat
        curve = roc_from_scores(FOUR)
        f_min, t_min, _ = curve.point_at_posterior(1, "0.5", flat_rule="min_fpr")
        f_max, t_max, _ = curve.point_at_posterior(1, "0.5", flat_rule="max_fpr")
        assert t_min == t_max == F(1, 2)
        assert f_min == 0 and f_max == F(1, 2)


class TestSharedPointGaps:
    def test_point_b(self):
        q0, q1, gap = shared_point_gaps("0.3", "0.7", "1/3", "0.1")
        assert q0 == F(13, 30)
        assert q1 == F(17, 50)
        assert float(q1) == 0.34
        assert gap == F(7, 75)

    def test_point_a(self):
        q0, q1, gap = shared_point_gaps("0.3", "0.3", "1/3", "0.1")
        assert q0 == q1 == F(3, 10)
        assert gap == 0

    @given(st.fractions(0, 1), st.fractions(0, 1), st.fractions(0, 1), st.fractions(0, 1))
    def test_factorization(self, fpr, tpr, p0, p1):
        _, _, gap = shared_point_gaps(fpr, tpr, p0, p1)
        assert gap == (p0 - p1) * (tpr - fpr)

    @given(st.fractions(0, 1), st.fractions(0, 1), st.fractions(0, 1))
    def test_chance_line_no_gap(self, x, p0, p1):
        q0, q1, gap = shared_point_gaps(x, x, p0, p1)
        assert q0 == q1 == x and gap == 0


class TestThresholdSweep:
    def group0_four(self):
        return [(0, t, s) for t, s in FOUR] + [(1, 1, 0.8), (1, 0, 0.3)]

    def test_shared_threshold_half(self):
        rows = threshold_sweep(self.group0_four(), thresholds=[0.5])
        g0 = rows[0].stats.group0
        assert g0.fpr == F(1, 2) and g0.tpr == F(1, 2)

    def test_above_max_all_zero(self):
        rows = threshold_sweep(self.group0_four(), thresholds=[2.0])
        for g in (rows[0].stats.group0, rows[0].stats.group1):
            assert g.fpr == 0 and g.tpr == 0 and g.posterior == 0

    def test_below_min_all_one(self):
        rows = threshold_sweep(self.group0_four(), thresholds=[-1.0])
        for g in (rows[0].stats.group0, rows[0].stats.group1):
            assert g.fpr == 1 and g.tpr == 1 and g.posterior == 1

    def test_default_rows_per_distinct_score(self):
        rows = threshold_sweep(self.group0_four())
        assert [r.threshold for r in rows] == [0.9, 0.8, 0.6, 0.4, 0.3, 0.2]

    def test_identity_every_row(self):
        for row in threshold_sweep(self.group0_four()):
            for g in (row.stats.group0, row.stats.group1):
                assert g.base_rate * g.tpr + (1 - g.base_rate) * g.fpr == g.posterior

    def test_missing_class_raises(self):
        with pytest.raises(UndefinedRateError):
            threshold_sweep([(0, 1, 0.5), (0, 0, 0.4), (1, 1, 0.9)])


class TestSelectOperatingPoints:
    def test_enforce_parity_case(self):
        result = select_operating_points(
            elbow_curve(), None, "1/3", "0.1", EnforceParity(q_star="0.3")
        )
        assert result.policy == "enforce_parity"
        assert not result.random_classifier
        assert result.point0.q == result.point1.q == F(3, 10)
        assert result.report.measure("statistical_parity").gap == 0
        assert result.report.measure("predictive_equality").gap == F(1, 10) - F(1, 4)
        assert result.report.measure("equal_opportunity").gap == F(7, 10) - F(3, 4)
        assert not result.report.all_satisfied

    def test_enforce_odds_at_group0_parity_point(self):
        result = select_operating_points(
            elbow_curve(), None, "1/3", "0.1", EnforceOdds(fpr="0.1", tpr="0.7")
        )
        assert result.report.measure("predictive_equality").gap == 0
        assert result.report.measure("equal_opportunity").gap == 0
        parity = result.report.measure("statistical_parity")
        assert parity.gap == (F(1, 3) - F(1, 10)) * (F(7, 10) - F(1, 10))
        assert not parity.satisfied

    def test_random_policy_all_zero(self):
        result = select_operating_points(
            None, None, "1/3", "0.1", RandomPolicy(q_star="0.3"), pi1="1/4"
        )
        assert result.random_classifier
        assert result.report.all_satisfied
        for m in result.report.measures:
            assert m.gap == 0
        assert len(result.report.measures) == 5

    def test_parity_policy_needs_curve(self):
        with pytest.raises(DomainError):
            select_operating_points(None, None, "1/3", "0.1", EnforceParity(q_star="0.3"))
