"""Diagnostics and the exception hierarchy used across the toolchain.

Every stage (parse, preprocess, sort resolution, type check, grounding,
solving, display compilation) reports problems as a list of ``Diagnostic``
records wrapped in a stage-specific ``SparcError`` subclass, so callers can
surface all of a file's problems at once.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .syntax import Pos


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    pos: Pos | None = None
    expected: tuple[str, ...] = ()
    found: str | None = None

    def __str__(self) -> str:
        where = f"{self.pos}: " if self.pos is not None else ""
        return f"{where}{self.code}: {self.message}"


class SparcError(Exception):
    """Base for all toolchain failures; carries one or more diagnostics."""

    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))

    @classmethod
    def single(cls, code: str, message: str, pos: Pos | None = None, **kw):
        return cls([Diagnostic(code, message, pos, **kw)])


class SparcSyntaxError(SparcError):
    pass


class PreprocessError(SparcError):
    pass


class SortError(SparcError):
    pass


class SparcTypeError(SparcError):
    pass


class GroundingError(SparcError):
    pass


class DisplayError(SparcError):
    pass


class SolveError(SparcError):
    pass


class TimeoutExceeded(SolveError):
    """Raised when a cooperative deadline expires during ground or solve."""

    def __init__(self, limit_sec: float):
        self.limit_sec = limit_sec
        super().__init__([Diagnostic("timeout", f"computation exceeded the {limit_sec:g}s time limit")])


class TooManyAnswerSets(SolveError):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__([Diagnostic("too-many-answer-sets", f"there are too many answer sets (more than {cap})")])


class EnumerationRefused(SparcError):
    def __init__(self, sort_name: str, cardinality: int, guard: int):
        self.sort_name = sort_name
        self.cardinality = cardinality
        self.guard = guard
        super().__init__([Diagnostic(
            "enumeration-refused",
            f"refusing to enumerate {sort_name}: {cardinality} elements exceed the guard of {guard}",
        )])
