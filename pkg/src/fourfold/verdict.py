"""Tri-state verdicts."""
from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass

from .arith import UNDECIDABLE, PiQuantity, PiSquareInterval, pq_sign


class Status(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNDETERMINED = "Undetermined"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Verdict:
    status: Status
    reasons: tuple[str, ...] = ()
    margin: PiQuantity | None = None

    @classmethod
    def holds(cls, *reasons: str, margin: PiQuantity | None = None) -> "Verdict":
        return cls(Status.HOLDS, tuple(reasons), margin)

    @classmethod
    def fails(cls, *reasons: str, margin: PiQuantity | None = None) -> "Verdict":
        return cls(Status.FAILS, tuple(reasons), margin)

    @classmethod
    def undetermined(cls, *reasons: str, margin: PiQuantity | None = None) -> "Verdict":
        return cls(Status.UNDETERMINED, tuple(reasons), margin)

    @property
    def is_holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def is_fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def is_undetermined(self) -> bool:
        return self.status is Status.UNDETERMINED

    def to_json(self) -> dict:
        return {
            "verdict": self.status.value,
            "margin": None if self.margin is None else self.margin.to_json(),
            "reasons": list(self.reasons),
        }

    def __str__(self) -> str:
        tail = f" [{'; '.join(self.reasons)}]" if self.reasons else ""
        return f"{self.status.value}{tail}"


def strict_positive(
    margin: PiQuantity, label: str, interval: PiSquareInterval | None = None
) -> Verdict:
    """Verdict for ``margin > 0``, decided by :func:`pq_sign`."""
    s = pq_sign(margin, interval)
    if s is UNDECIDABLE:
        return Verdict.undetermined(f"{label}: sign undecidable at current pi^2 precision", margin=margin)
    if s > 0:
        return Verdict.holds(label, margin=margin)
    return Verdict.fails(f"{label}: margin {margin} is not positive", margin=margin)


def nonnegative(margin: PiQuantity, label: str, interval: PiSquareInterval | None = None) -> Verdict:
    s = pq_sign(margin, interval)
    if s is UNDECIDABLE:
        return Verdict.undetermined(f"{label}: sign undecidable at current pi^2 precision", margin=margin)
    if s >= 0:
        return Verdict.holds(label, margin=margin)
    return Verdict.fails(f"{label}: margin {margin} is negative", margin=margin)


def conjoin(parts: Iterable[Verdict], margin: PiQuantity | None = None) -> Verdict:
    """Fails if any part fails, Holds if all hold, otherwise Undetermined."""
    parts = list(parts)
    failing = [r for v in parts if v.is_fails for r in v.reasons]
    if any(v.is_fails for v in parts):
        return Verdict(Status.FAILS, tuple(failing), margin)
    pending = [r for v in parts if v.is_undetermined for r in v.reasons]
    if pending or any(v.is_undetermined for v in parts):
        return Verdict(Status.UNDETERMINED, tuple(pending), margin)
    return Verdict(Status.HOLDS, tuple(r for v in parts for r in v.reasons), margin)
