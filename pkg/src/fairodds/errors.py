"""Exception types shared across the package."""

from __future__ import annotations

from typing import Any, Optional, Sequence


class AuditError(Exception):
    """Base class for every error raised by fairodds."""


class DomainError(AuditError, ValueError):
    """A numeric input lies outside its admissible domain."""


class EmptyGroupError(AuditError):
    """A sensitive group contains no records, so no rate can be derived."""

    def __init__(self, group: int) -> None:
        self.group = group
        super().__init__(f"group {group} has no records; its rates are undefined")


class UndefinedRateError(AuditError):
    """A rate has no value because its conditioning class is absent."""

    def __init__(self, group: Optional[int], rate: str) -> None:
        self.group = group
        self.rate = rate
        missing = "ground-truth positives" if rate in ("tpr", "fnr") else "ground-truth negatives"
        where = f"group {group}" if group is not None else "the input"
        super().__init__(f"{rate} is undefined for {where}: no {missing}")


class NoPositivePredictionsError(AuditError):
    def __init__(self) -> None:
        super().__init__(
            "no positive predictions in either group; the share of positive "
            "predictions is undefined"
        )


class MalformedRecordError(AuditError, ValueError):
    """An input record has an out-of-domain or unparseable value."""

    def __init__(self, row: int, column: str, value: Any, reason: str = "") -> None:
        self.row = row
        self.column = column
        self.value = value
        detail = f": {reason}" if reason else ""
        super().__init__(f"row {row}, column {column!r}: bad value {value!r}{detail}")


class MissingColumnError(AuditError):
    def __init__(self, column: str, available: Sequence[str] = ()) -> None:
        self.column = column
        self.available = tuple(available)
        hint = f" (header has: {', '.join(available)})" if available else ""
        super().__init__(f"required column {column!r} not found{hint}")


class DegenerateBaseRateError(AuditError):
    """The explicit slope-intercept form does not exist at base rate 0."""

    def __init__(self) -> None:
        super().__init__(
            "base rate is 0: the line has no explicit slope form; "
            "its implicit form reduces to FPR = q"
        )


class ParallelLinesError(AuditError):
    def __init__(self) -> None:
        super().__init__("the base rates are equal, so the lines are parallel and never cross")


class UnreachableTargetError(AuditError):
    """A posterior target lies outside what the curve can produce."""

    def __init__(self, q_star: Any, group: Optional[int] = None) -> None:
        self.q_star = q_star
        self.group = group
        where = f" for group {group}" if group is not None else ""
        super().__init__(f"target posterior {q_star} is unreachable{where}; the curve spans [0, 1]")


class ClientError(AuditError):
    """The audit service rejected a request."""

    def __init__(self, status_code: int, detail: str) -> None:
        self.status_code = status_code
        self.detail = detail
        super().__init__(f"service returned {status_code}: {detail}")
