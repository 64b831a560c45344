"""Delimited-text ingestion, record writing, and the bundled example data."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import IO, List, Optional, Sequence, Tuple, Union

from .confusion import GroupConfusion, PopulationStats, Record, counts_from_records, stats_from_counts
from .errors import DomainError, MalformedRecordError, MissingColumnError
from .rational import DEFAULT_TOLERANCE, positive_fraction
from .roc import ScoredRecord

OUTPUT_FORMATS = ("text", "json", "svg")


@dataclass(frozen=True)
class AuditConfig:
    """How to read an input file and which knobs apply to the audit.

    Exactly one of ``prediction_column`` / ``score_column`` may be set:
    hard 0/1 predictions feed the audit commands, scores feed the trade-off
    machinery. Group labels other than literal 0/1 must be mapped explicitly
    via ``protected_label`` (and optionally ``unprotected_label``); guessing
    which label is the protected group would invert verdict signs silently.
    """

    group_column: str = "group"
    truth_column: str = "y"
    prediction_column: Optional[str] = "yhat"
    score_column: Optional[str] = None
    protected_label: Optional[str] = None
    unprotected_label: Optional[str] = None
    delimiter: str = ","
    tolerance: Fraction = DEFAULT_TOLERANCE
    output_format: str = "text"
    policy: Optional[str] = None
    q_star: Optional[Fraction] = None
    point: Optional[Tuple[Fraction, Fraction]] = None
    pi1: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if (self.prediction_column is None) == (self.score_column is None):
            raise DomainError("configure exactly one of prediction_column / score_column")
        positive_fraction(self.tolerance)
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(f"output_format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}")
        if self.delimiter not in (",", "\t"):
            raise DomainError("delimiter must be ',' or tab")


@dataclass(frozen=True)
class ReadResult:
    records: Union[Tuple[Record, ...], Tuple[ScoredRecord, ...]]
    kind: str  # "prediction" | "score"
    row_count: int


def _parse_group(value: str, config: AuditConfig, row: int) -> int:
    if config.protected_label is not None:
        if value == config.protected_label:
            return 1
        if config.unprotected_label is None or value == config.unprotected_label:
            return 0
        raise MalformedRecordError(row, config.group_column, value, "matches neither group label")
    if value in ("0", "1"):
        return int(value)
    raise MalformedRecordError(
        row, config.group_column, value, "expected 0/1; use a label mapping for other encodings"
    )


def _parse_binary(value: str, column: str, row: int) -> int:
    if value in ("0", "1"):
        return int(value)
    raise MalformedRecordError(row, column, value, "expected 0 or 1")


def _parse_score(value: str, column: str, row: int) -> float:
    try:
        score = float(value)
    except ValueError:
        raise MalformedRecordError(row, column, value, "not a number") from None
    if not math.isfinite(score):
        raise MalformedRecordError(row, column, value, "must be finite")
    return score


def read_records(source: Union[str, Path, IO[str]], config: AuditConfig = AuditConfig()) -> ReadResult:
    """Parse a delimited file with a header row into audit records.

    Row numbers in errors count data rows from 1 (the header is row 0).
    """
    if hasattr(source, "read"):
        return _read_stream(source, config)  # type: ignore[arg-type]
    with open(source, newline="", encoding="utf-8") as fh:
        return _read_stream(fh, config)


def _read_stream(fh: IO[str], config: AuditConfig) -> ReadResult:
    reader = csv.reader(fh, delimiter=config.delimiter)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise MissingColumnError(config.group_column, ()) from None

    def col(name: str) -> int:
        if name not in header:
            raise MissingColumnError(name, header)
        return header.index(name)

    gi = col(config.group_column)
    ti = col(config.truth_column)
    if config.prediction_column is not None:
        vi = col(config.prediction_column)
        kind = "prediction"
    else:
        vi = col(config.score_column)  # type: ignore[arg-type]
        kind = "score"
    records: List = []
    for row_no, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) <= max(gi, ti, vi):
            raise MalformedRecordError(row_no, "<row>", row, "too few fields")
        group = _parse_group(row[gi].strip(), config, row_no)
        truth = _parse_binary(row[ti].strip(), config.truth_column, row_no)
        if kind == "prediction":
            pred = _parse_binary(row[vi].strip(), config.prediction_column, row_no)
            records.append((group, truth, pred))
        else:
            score = _parse_score(row[vi].strip(), config.score_column, row_no)
            records.append(ScoredRecord(group=group, truth=truth, score=score))
    return ReadResult(records=tuple(records), kind=kind, row_count=len(records))


def write_records(
    records: Sequence[Record],
    target: Union[str, Path, IO[str], None] = None,
    *,
    delimiter: str = ",",
    header: Tuple[str, str, str] = ("group", "y", "yhat"),
) -> str:
    """Serialize records as delimited text; returns the text, writing it to
    ``target`` as well when one is given."""
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(records)
    text = buf.getvalue()
    if target is not None:
        if hasattr(target, "write"):
            target.write(text)  # type: ignore[union-attr]
        else:
            Path(target).write_text(text, encoding="utf-8")
    return text


# The worked example: 8000 mortgage-style records, two groups with base rates
# 1/3 and 0.1, at three operating points that trade the measures off against
# each other differently. Cell order per group: (tp, fn, fp, tn).
EXAMPLE_POINTS = ("A", "B", "C")

_EXAMPLE_COUNTS = {
    "A": ((600, 1400, 1200, 2800), (60, 140, 540, 1260)),
    "B": ((1400, 600, 1200, 2800), (140, 60, 540, 1260)),
    "C": ((1400, 600, 400, 3600), (140, 60, 460, 1340)),
}

_CELL_VALUES = (  # (truth, prediction) per cell in (tp, fn, fp, tn) order
    (1, 1),
    (1, 0),
    (0, 1),
    (0, 0),
)


@dataclass(frozen=True)
class ExampleData:
    point: str
    counts: Tuple[GroupConfusion, GroupConfusion]
    records: Tuple[Record, ...] = field(repr=False)
    expected: PopulationStats


def generate_running_example(point: str) -> ExampleData:
    """Emit one operating point of the bundled example as individual records.

    The generated records aggregate back to the defining counts exactly (this
    is asserted on every call), so the output doubles as a self-test fixture
    for the whole ingestion path.
    """
    key = point.strip().upper()
    if key not in _EXAMPLE_COUNTS:
        raise DomainError(f"point must be one of {', '.join(EXAMPLE_POINTS)}, got {point!r}")
    counts = tuple(GroupConfusion(*cells) for cells in _EXAMPLE_COUNTS[key])
    records: List[Record] = []
    for group, c in enumerate(counts):
        for cell_count, (truth, pred) in zip((c.tp, c.fn, c.fp, c.tn), _CELL_VALUES):
            records.extend((group, truth, pred) for _ in range(cell_count))
    assert counts_from_records(records) == counts
    return ExampleData(
        point=key,
        counts=counts,  # type: ignore[arg-type]
        records=tuple(records),
        expected=stats_from_counts(*counts),
    )
