"""The five group-fairness measures as signed gaps with tolerance verdicts.

Each measure compares group 0 against group 1 and reports a signed gap
(group-0 value minus group-1 value, except representativity, which has its
own definitional form). Gaps are exact Fractions; ``satisfied`` means
``|gap| <= tolerance``. The sign is kept because it says which group the
classifier favors, which the plain equality definitions throw away.

Measures:

* ``statistical_parity``     gap in the positive-prediction rates q
* ``predictive_equality``    gap in false positive rates
* ``equal_opportunity``      gap in true positive rates (FNR gap is its negation)
* ``error_rate_balance``     FPR and FNR equality combined; satisfied iff both are
* ``representativity``       the protected group's share of positive predictions
                             against its population share; equivalent to
                             statistical parity, kept as an independent check
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Tuple, Union

from .confusion import GroupStats, PopulationStats
from .errors import AuditError, DomainError, NoPositivePredictionsError, UndefinedRateError
from .rational import DEFAULT_TOLERANCE, Rational, positive_fraction, unit_fraction

MEASURES = (
    "statistical_parity",
    "predictive_equality",
    "equal_opportunity",
    "error_rate_balance",
    "representativity",
)


@dataclass(frozen=True)
class MeasureGap:
    """One measure's signed gap and its verdict at the report tolerance."""

    measure: str
    gap: Optional[Fraction]
    satisfied: Optional[bool]
    error: Optional[str] = None


@dataclass(frozen=True)
class GroupRates:
    """Operating-point view of a group when only rates are known, not counts."""

    group: int
    base_rate: Fraction
    fpr: Fraction
    tpr: Fraction

    def __post_init__(self) -> None:
        if self.group not in (0, 1):
            raise DomainError(f"group must be 0 or 1, got {self.group!r}")
        object.__setattr__(self, "base_rate", unit_fraction(self.base_rate, "base_rate"))
        object.__setattr__(self, "fpr", unit_fraction(self.fpr, "fpr"))
        object.__setattr__(self, "tpr", unit_fraction(self.tpr, "tpr"))

    @property
    def fnr(self) -> Fraction:
        return 1 - self.tpr

    @property
    def posterior(self) -> Fraction:
        return self.base_rate * self.tpr + (1 - self.base_rate) * self.fpr


@dataclass(frozen=True)
class RatePair:
    """Rate-level stats for both groups; pi1 is optional population context."""

    group0: GroupRates
    group1: GroupRates
    pi1: Optional[Fraction] = None


Stats = Union[PopulationStats, RatePair]


@dataclass(frozen=True)
class FairnessReport:
    """All measure gaps for one classifier plus the stats they came from."""

    measures: Tuple[MeasureGap, ...]
    tolerance: Fraction
    stats: Stats
    disparate_impact_ratio: Optional[Fraction]

    def measure(self, name: str) -> MeasureGap:
        for m in self.measures:
            if m.measure == name:
                return m
        raise KeyError(name)

    @property
    def all_satisfied(self) -> bool:
        return all(m.satisfied is True for m in self.measures)

    @property
    def violations(self) -> Tuple[str, ...]:
        return tuple(m.measure for m in self.measures if m.satisfied is False)

    @property
    def undefined(self) -> Tuple[str, ...]:
        return tuple(m.measure for m in self.measures if m.error is not None)


def _entry(measure: str, gap: Fraction, tol: Fraction) -> MeasureGap:
    return MeasureGap(measure=measure, gap=gap, satisfied=abs(gap) <= tol)


def statistical_parity_gap(stats: PopulationStats, tolerance: Rational = DEFAULT_TOLERANCE) -> MeasureGap:
    """q_0 - q_1: the difference in positive-prediction rates."""
    tol = positive_fraction(tolerance)
    return _entry("statistical_parity", stats.group0.posterior - stats.group1.posterior, tol)


def _require_rate(g: GroupStats, rate: str) -> Fraction:
    value = getattr(g, rate)
    if value is None:
        raise UndefinedRateError(g.group, rate)
    return value


def predictive_equality_gap(stats: PopulationStats, tolerance: Rational = DEFAULT_TOLERANCE) -> MeasureGap:
    """FPR_0 - FPR_1. Raises UndefinedRateError if a group has no negatives."""
    tol = positive_fraction(tolerance)
    gap = _require_rate(stats.group0, "fpr") - _require_rate(stats.group1, "fpr")
    return _entry("predictive_equality", gap, tol)


def equal_opportunity_gap(stats: PopulationStats, tolerance: Rational = DEFAULT_TOLERANCE) -> MeasureGap:
    """TPR_0 - TPR_1; the FNR gap is the negation since FNR = 1 - TPR."""
    tol = positive_fraction(tolerance)
    gap = _require_rate(stats.group0, "tpr") - _require_rate(stats.group1, "tpr")
    return _entry("equal_opportunity", gap, tol)


def error_rate_balance_gap(stats: PopulationStats, tolerance: Rational = DEFAULT_TOLERANCE) -> MeasureGap:
    """FPR and FNR equality combined; the reported gap is the larger of the two."""
    tol = positive_fraction(tolerance)
    fpr_gap = _require_rate(stats.group0, "fpr") - _require_rate(stats.group1, "fpr")
    fnr_gap = _require_rate(stats.group0, "fnr") - _require_rate(stats.group1, "fnr")
    gap = fpr_gap if abs(fpr_gap) >= abs(fnr_gap) else fnr_gap
    return _entry("error_rate_balance", gap, tol)


def representativity_check(stats: PopulationStats, tolerance: Rational = DEFAULT_TOLERANCE) -> MeasureGap:
    """Protected population share minus its share of positive predictions.

    Zero exactly when the positive-prediction rates match, so this is an
    independent route to the statistical-parity verdict; the equivalence is
    asserted on every call.
    """
    tol = positive_fraction(tolerance)
    g0, g1 = stats.group0, stats.group1
    pos_pred0 = g0.posterior * g0.n
    pos_pred1 = g1.posterior * g1.n
    total = pos_pred0 + pos_pred1
    if total == 0:
        raise NoPositivePredictionsError()
    gap = g1.demographic_rate - pos_pred1 / total
    assert (gap == 0) == (g0.posterior == g1.posterior)
    return _entry("representativity", gap, tol)


_COUNT_MEASURES: Tuple[Tuple[str, Callable[..., MeasureGap]], ...] = (
    ("statistical_parity", statistical_parity_gap),
    ("predictive_equality", predictive_equality_gap),
    ("equal_opportunity", equal_opportunity_gap),
    ("error_rate_balance", error_rate_balance_gap),
    ("representativity", representativity_check),
)


def _impact_ratio(q0: Fraction, q1: Fraction) -> Optional[Fraction]:
    # informational only (the "80% rule" form); never drives verdicts
    return q1 / q0 if q0 > 0 else None


def full_report(stats: PopulationStats, tolerance: Rational = DEFAULT_TOLERANCE) -> FairnessReport:
    """All five measures; per-measure failures are recorded, not raised."""
    tol = positive_fraction(tolerance)
    entries = []
    for name, fn in _COUNT_MEASURES:
        try:
            entries.append(fn(stats, tol))
        except AuditError as exc:
            entries.append(MeasureGap(measure=name, gap=None, satisfied=None, error=str(exc)))
    return FairnessReport(
        measures=tuple(entries),
        tolerance=tol,
        stats=stats,
        disparate_impact_ratio=_impact_ratio(stats.group0.posterior, stats.group1.posterior),
    )


def report_from_rates(
    rates0: GroupRates,
    rates1: GroupRates,
    tolerance: Rational = DEFAULT_TOLERANCE,
    pi1: Optional[Rational] = None,
) -> FairnessReport:
    """Measure report for a pair of operating points given by rates alone.

    Representativity needs the protected group's population share; pass
    ``pi1`` to include it, otherwise the measure is omitted (a rate-only view
    carries no group sizes, so there is nothing to check it against).
    """
    tol = positive_fraction(tolerance)
    q0, q1 = rates0.posterior, rates1.posterior
    entries = [
        _entry("statistical_parity", q0 - q1, tol),
        _entry("predictive_equality", rates0.fpr - rates1.fpr, tol),
        _entry("equal_opportunity", rates0.tpr - rates1.tpr, tol),
    ]
    fpr_gap = rates0.fpr - rates1.fpr
    fnr_gap = rates0.fnr - rates1.fnr
    erb = fpr_gap if abs(fpr_gap) >= abs(fnr_gap) else fnr_gap
    entries.append(_entry("error_rate_balance", erb, tol))
    share1 = None
    if pi1 is not None:
        share1 = unit_fraction(pi1, "pi1")
        weight1 = q1 * share1
        weight0 = q0 * (1 - share1)
        if weight0 + weight1 == 0:
            entries.append(
                MeasureGap(
                    measure="representativity",
                    gap=None,
                    satisfied=None,
                    error=str(NoPositivePredictionsError()),
                )
            )
        else:
            entries.append(_entry("representativity", share1 - weight1 / (weight0 + weight1), tol))
    return FairnessReport(
        measures=tuple(entries),
        tolerance=tol,
        stats=RatePair(group0=rates0, group1=rates1, pi1=share1),
        disparate_impact_ratio=_impact_ratio(q0, q1),
    )
