"""Per-group confusion counts and the exact rate algebra derived from them.

The data model is a binary prediction channel split by a binary sensitive
attribute: group 1 is the protected (unprivileged) group, group 0 the
unprotected one. All rates are exact ``Fraction`` values. A rate whose
conditioning class is absent (no ground-truth positives, or no negatives) is
explicitly ``None``; nothing here substitutes zero for "undefined", because a
fabricated rate would fabricate a fairness verdict downstream.

The one identity everything else leans on: for any group,

    base_rate * TPR + (1 - base_rate) * FPR == posterior

holds exactly whenever both rates exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .errors import DomainError, EmptyGroupError, MalformedRecordError
from .rational import Rational, unit_fraction

PROTECTED = 1
UNPROTECTED = 0

#: A raw audit record: (group, truth, prediction), each in {0, 1}.
Record = Tuple[int, int, int]


@dataclass(frozen=True)
class GroupConfusion:
    """TP/FN/FP/TN counts for one sensitive group."""

    tp: int = 0
    fn: int = 0
    fp: int = 0
    tn: int = 0

    def __post_init__(self) -> None:
        for name in ("tp", "fn", "fp", "tn"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise DomainError(f"{name} must be a non-negative integer, got {v!r}")

    @property
    def n(self) -> int:
        return self.tp + self.fn + self.fp + self.tn

    @property
    def positives(self) -> int:
        """Ground-truth positives."""
        return self.tp + self.fn

    @property
    def negatives(self) -> int:
        """Ground-truth negatives."""
        return self.fp + self.tn

    @property
    def predicted_positives(self) -> int:
        return self.tp + self.fp


@dataclass(frozen=True)
class GroupStats:
    """Derived rates for one group; ``None`` marks an undefined rate."""

    group: int
    n: int
    demographic_rate: Fraction
    base_rate: Fraction
    posterior: Fraction
    fpr: Optional[Fraction]
    tpr: Optional[Fraction]
    fnr: Optional[Fraction]


@dataclass(frozen=True)
class PopulationStats:
    """Both groups' stats plus the population total."""

    group0: GroupStats
    group1: GroupStats
    n_total: int

    def __post_init__(self) -> None:
        if self.n_total != self.group0.n + self.group1.n:
            raise DomainError("n_total does not equal the sum of the group sizes")
        if self.group0.demographic_rate + self.group1.demographic_rate != 1:
            raise DomainError("demographic rates must sum to 1")

    def group(self, label: int) -> GroupStats:
        if label == 0:
            return self.group0
        if label == 1:
            return self.group1
        raise DomainError(f"group must be 0 or 1, got {label!r}")


def _group_stats(label: int, c: GroupConfusion, n_total: int) -> GroupStats:
    n = c.n
    pos = c.positives
    neg = c.negatives
    return GroupStats(
        group=label,
        n=n,
        demographic_rate=Fraction(n, n_total),
        base_rate=Fraction(pos, n),
        posterior=Fraction(c.predicted_positives, n),
        fpr=Fraction(c.fp, neg) if neg else None,
        tpr=Fraction(c.tp, pos) if pos else None,
        fnr=Fraction(c.fn, pos) if pos else None,
    )


def stats_from_counts(c0: GroupConfusion, c1: GroupConfusion) -> PopulationStats:
    """Derive every per-group rate from the two confusion matrices.

    Raises EmptyGroupError, naming the offending group, if either matrix is
    all zero; downstream rate arithmetic has no meaning for an empty group.
    """
    if c0.n == 0:
        raise EmptyGroupError(0)
    if c1.n == 0:
        raise EmptyGroupError(1)
    n_total = c0.n + c1.n
    return PopulationStats(
        group0=_group_stats(0, c0, n_total),
        group1=_group_stats(1, c1, n_total),
        n_total=n_total,
    )


def posterior_from_rates(p: Rational, tpr: Rational, fpr: Rational) -> Fraction:
    """Positive-prediction rate implied by a base rate and an operating point.

    Returns ``p*tpr + (1-p)*fpr``, exact when the inputs are exact. This is
    the law-of-total-probability decomposition of the posterior rate, and the
    reason a chance-line point (tpr == fpr == x) yields posterior x for every
    base rate.
    """
    p_ = unit_fraction(p, "p")
    tpr_ = unit_fraction(tpr, "tpr")
    fpr_ = unit_fraction(fpr, "fpr")
    return p_ * tpr_ + (1 - p_) * fpr_


def counts_from_records(records: Iterable[Sequence[int]]) -> Tuple[GroupConfusion, GroupConfusion]:
    """Aggregate (group, truth, prediction) triples into per-group counts."""
    cells = [[0, 0, 0, 0], [0, 0, 0, 0]]  # tp, fn, fp, tn
    for i, rec in enumerate(records):
        try:
            group, truth, prediction = rec
        except (TypeError, ValueError):
            raise MalformedRecordError(i, "record", rec, "expected (group, truth, prediction)") from None
        if group not in (0, 1):
            raise MalformedRecordError(i, "group", group, "expected 0 or 1")
        if truth not in (0, 1):
            raise MalformedRecordError(i, "truth", truth, "expected 0 or 1")
        if prediction not in (0, 1):
            raise MalformedRecordError(i, "prediction", prediction, "expected 0 or 1")
        if truth == 1:
            cell = 0 if prediction == 1 else 1
        else:
            cell = 2 if prediction == 1 else 3
        cells[group][cell] += 1
    c0, c1 = (GroupConfusion(tp=c[0], fn=c[1], fp=c[2], tn=c[3]) for c in cells)
    return c0, c1
