"""Membership certificates and their JSON form."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Verdict(str, Enum):
    MEMBER = "member"
    NON_MEMBER = "non-member"


@dataclass(frozen=True)
class TraceEntry:
    """One evaluated equation family: ``rank <= bound`` must hold.

    ``partition`` is ``[[left...], [right...]]`` for flattenings or a dict
    such as ``{"a": i, "b": j}`` for exterior flattenings.
    """

    family: str
    partition: Any
    rank: int
    bound: int

    @property
    def passed(self) -> bool:
        return self.rank <= self.bound

    def to_json(self) -> dict:
        return {"family": self.family, "partition": self.partition, "rank": self.rank, "bound": self.bound}


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    trace: tuple[TraceEntry, ...] = field(default_factory=tuple)
    witness: TraceEntry | None = None

    def __post_init__(self):
        if self.verdict is Verdict.NON_MEMBER and self.witness is None:
            raise ValueError("a non-member certificate needs a witness")
        if self.verdict is Verdict.MEMBER and (self.witness is not None or not all(e.passed for e in self.trace)):
            raise ValueError("a member certificate cannot contain a failing family")

    @classmethod
    def from_trace(cls, trace) -> "Certificate":
        """Verdict from a canonical-order trace; the witness is the first failure."""
        trace = tuple(trace)
        witness = next((e for e in trace if not e.passed), None)
        verdict = Verdict.MEMBER if witness is None else Verdict.NON_MEMBER
        return cls(verdict, trace, witness)

    @property
    def is_member(self) -> bool:
        return self.verdict is Verdict.MEMBER

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "trace": [e.to_json() for e in self.trace],
            "witness": None if self.witness is None else self.witness.to_json(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(", ", ": "))
