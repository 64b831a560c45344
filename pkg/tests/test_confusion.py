from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fairodds import (
    DomainError,
    EmptyGroupError,
    GroupConfusion,
    MalformedRecordError,
    counts_from_records,
    posterior_from_rates,
    stats_from_counts,
)


def all_confusions(max_total, min_total=0):
    """Every (tp, fn, fp, tn) with min_total <= total <= max_total."""
    for total in range(min_total, max_total + 1):
        for tp, fn, fp in product(range(total + 1), repeat=3):
            tn = total - tp - fn - fp
            if tn >= 0:
                yield GroupConfusion(tp, fn, fp, tn)


class TestGroupConfusion:
    def test_totals(self):
        c = GroupConfusion(600, 1400, 1200, 2800)
        assert c.n == 6000
        assert c.positives == 2000
        assert c.negatives == 4000
        assert c.predicted_positives == 1800

    @pytest.mark.parametrize("bad", [dict(tp=-1), dict(fn=-3), dict(fp=1.5), dict(tn=True)])
    def test_rejects_bad_counts(self, bad):
        with pytest.raises(DomainError):
            GroupConfusion(**bad)


class TestStatsFromCounts:
    def test_point_a(self, point_stats):
        s = point_stats("A")
        assert s.group0.demographic_rate == Fraction(3, 4)
        assert s.group1.demographic_rate == Fraction(1, 4)
        assert s.group0.base_rate == Fraction(1, 3)
        assert s.group1.base_rate == Fraction(1, 10)
        for g in (s.group0, s.group1):
            assert g.posterior == Fraction(3, 10)
            assert g.fpr == Fraction(3, 10)
            assert g.tpr == Fraction(3, 10)
            assert g.fnr == Fraction(7, 10)

    def test_point_b(self, point_stats):
        s = point_stats("B")
        for g in (s.group0, s.group1):
            assert g.tpr == Fraction(7, 10)
            assert g.fpr == Fraction(3, 10)
        assert s.group0.posterior == Fraction(2600, 6000) == Fraction(13, 30)
        assert s.group1.posterior == Fraction(680, 2000) == Fraction(17, 50)

    def test_perfect_symmetric(self):
        c = GroupConfusion(1, 0, 0, 1)
        s = stats_from_counts(c, c)
        for g in (s.group0, s.group1):
            assert g.base_rate == Fraction(1, 2)
            assert g.posterior == Fraction(1, 2)
            assert g.fpr == 0
            assert g.tpr == 1

    def test_empty_group_reported_by_name(self):
        full = GroupConfusion(1, 1, 1, 1)
        with pytest.raises(EmptyGroupError) as exc:
            stats_from_counts(GroupConfusion(), full)
        assert exc.value.group == 0
        with pytest.raises(EmptyGroupError) as exc:
            stats_from_counts(full, GroupConfusion())
        assert exc.value.group == 1

    def test_undefined_rates_are_none_not_zero(self):
        no_negatives = GroupConfusion(tp=2, fn=1, fp=0, tn=0)
        no_positives = GroupConfusion(tp=0, fn=0, fp=1, tn=3)
        s = stats_from_counts(no_negatives, no_positives)
        assert s.group0.fpr is None
        assert s.group0.tpr == Fraction(2, 3)
        assert s.group1.tpr is None
        assert s.group1.fnr is None
        assert s.group1.fpr == Fraction(1, 4)


class TestIdentity:
    def test_posterior_identity_brute_force(self):
        # All matrices with total <= 12 and both classes present: the rates
        # must satisfy p*TPR + (1-p)*FPR == q exactly in rational arithmetic.
        other = GroupConfusion(1, 1, 1, 1)
        checked = 0
        for c in all_confusions(12, min_total=1):
            if c.positives == 0 or c.negatives == 0:
                continue
            g = stats_from_counts(c, other).group0
            assert g.base_rate * g.tpr + (1 - g.base_rate) * g.fpr == g.posterior
            assert g.fnr + g.tpr == 1
            checked += 1
        assert checked > 1000

    def test_rates_in_unit_interval(self):
        for c in all_confusions(7, min_total=1):
            s = stats_from_counts(c, GroupConfusion(1, 1, 1, 1))
            g = s.group0
            for rate in (g.demographic_rate, g.base_rate, g.posterior, g.fpr, g.tpr, g.fnr):
                if rate is not None:
                    assert 0 <= rate <= 1
            assert s.group0.demographic_rate + s.group1.demographic_rate == 1
            assert s.n_total == s.group0.n + s.group1.n


class TestPosteriorFromRates:
    def test_point_b_group0(self):
        assert posterior_from_rates("1/3", "0.7", "0.3") == Fraction(13, 30)

    def test_point_d_group1(self):
        assert posterior_from_rates("0.1", "0.8", "0.3") == Fraction(35, 100)

    @given(st.fractions(0, 1), st.fractions(0, 1))
    def test_chance_line_returns_x(self, p, x):
        assert posterior_from_rates(p, x, x) == x

    @pytest.mark.parametrize("args", [(-0.1, 0.5, 0.5), (0.5, 1.2, 0.5), (0.5, 0.5, "2/1")])
    def test_domain_errors(self, args):
        with pytest.raises(DomainError):
            posterior_from_rates(*args)


class TestCountsFromRecords:
    def test_single_record(self):
        c0, c1 = counts_from_records([(0, 1, 1)])
        assert c0 == GroupConfusion(tp=1)
        assert c1.n == 0

    def test_two_records_other_group(self):
        c0, c1 = counts_from_records([(1, 1, 0), (1, 0, 1)])
        assert c0.n == 0
        assert c1 == GroupConfusion(tp=0, fn=1, fp=1, tn=0)

    def test_malformed_record_reports_row(self):
        with pytest.raises(MalformedRecordError) as exc:
            counts_from_records([(0, 1, 1), (2, 0, 0)])
        assert exc.value.row == 1
        assert exc.value.column == "group"

    @pytest.mark.parametrize("bad", [(0, 5, 1), (0, 1, -1), (0, 1)])
    def test_malformed_values(self, bad):
        with pytest.raises(MalformedRecordError):
            counts_from_records([bad])

    @given(
        st.lists(
            st.tuples(st.integers(0, 1), st.integers(0, 1), st.integers(0, 1)),
            min_size=0,
            max_size=60,
        ),
        st.randoms(use_true_random=False),
    )
    def test_order_invariance(self, records, rng):
        base = counts_from_records(records)
        shuffled = list(records)
        rng.shuffle(shuffled)
        assert counts_from_records(shuffled) == base
        assert base[0].n + base[1].n == len(records)
