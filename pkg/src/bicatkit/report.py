"""Verdict objects, search budgets and deterministic naming helpers."""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, field
from typing import Any, Iterator

DEFAULT_MAX_SEARCH = 10**7

_limit: contextvars.ContextVar[int] = contextvars.ContextVar(
    "bicatkit_max_search", default=DEFAULT_MAX_SEARCH
)


class SearchLimitExceeded(RuntimeError):
    """An enumeration visited more candidates than the configured bound."""

    def __init__(self, what: str, limit: int):
        super().__init__(f"search space for {what} exceeds {limit} candidates")
        self.what = what
        self.limit = limit


class ShapeError(ValueError):
    """Cells or functors do not have compatible sources and targets."""


@contextlib.contextmanager
def max_search(n: int) -> Iterator[None]:
    token = _limit.set(int(n))
    try:
        yield
    finally:
        _limit.reset(token)


def current_limit() -> int:
    return _limit.get()


class Budget:
    """Counts visited search nodes and aborts past the limit."""

    __slots__ = ("what", "limit", "used")

    def __init__(self, what: str, limit: int | None = None):
        self.what = what
        self.limit = current_limit() if limit is None else limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise SearchLimitExceeded(self.what, self.limit)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a validator or decision procedure.

    A false verdict always carries a witness: plain JSON-compatible data
    locating the violation (a pair of cells, a probe, a missing lift...).
    """

    verdict: bool
    witness: Any = None
    reason: str = ""
    probes: tuple[str, ...] = ()
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.verdict and self.witness is None:
            raise ValueError("a failing report needs a witness")

    def __bool__(self) -> bool:
        return self.verdict

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"verdict": self.verdict}
        if self.reason:
            out["reason"] = self.reason
        if self.witness is not None:
            out["witness"] = self.witness
        if self.probes:
            out["probes"] = list(self.probes)
        if self.details:
            out["details"] = self.details
        return out


OK = CheckReport(True)


def ok(**details) -> CheckReport:
    return CheckReport(True, details=details) if details else OK


def fail(reason: str, witness: Any) -> CheckReport:
    return CheckReport(False, witness=witness, reason=reason)


def encode(*parts: dict) -> str:
    """Deterministic name for an assignment, e.g. ``<0:a,1:b|f:u>``.

    Empty trailing parts are dropped so that data with no morphism part
    gets a short name.
    """
    chunks = [",".join(f"{k}:{v}" for k, v in sorted(p.items())) for p in parts]
    while len(chunks) > 1 and not chunks[-1]:
        chunks.pop()
    return "<" + "|".join(chunks) + ">"
