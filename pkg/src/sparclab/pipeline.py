"""End-to-end runs: preprocess, sort-check, ground, solve, answer, render.

This is the one place that wires the stages together, shared by the CLI,
the HTTP service and the tests so their outputs agree byte for byte.
"""
from __future__ import annotations

import html as html_mod
import time
from dataclasses import dataclass, field

from .display import CanvasConfig, RenderPlan, compile_answer_set, emit_html
from .errors import Diagnostic, SparcError, TimeoutExceeded, TooManyAnswerSets
from .grounding import ground_reachable
from .parser import parse_program, parse_query
from .preprocess import (
    IncludeResolver, StandardResolver, expand, resolve_constants,
    resolve_query_constants,
)
from .query import QueryAnswer, answer_query
from .solver import AnswerSet, SolveLimits, answer_sets
from .sorts import SortTable, build_sort_table
from .typecheck import TypedProgram, typecheck, typecheck_query

MODES = ("answer_sets", "query", "execute")


@dataclass
class Compiled:
    program: object            # the expanded, constant-resolved Program
    table: SortTable
    typed: TypedProgram
    canvas: CanvasConfig


def compile_text(text: str, resolver: IncludeResolver | None = None) -> Compiled:
    """Parse, preprocess, resolve constants, build sorts and type-check."""
    program = parse_program(text)
    program = expand(program, resolver or StandardResolver())
    consts = {c.name: c.value for c in program.consts}
    program = resolve_constants(program)
    table = build_sort_table(program)
    typed = typecheck(program, table)
    canvas = CanvasConfig(
        width=consts.get("canvasWidth", 500),
        height=consts.get("canvasHeight", 500),
        default_frames=consts.get("numFrames", 60),
    )
    return Compiled(program, table, typed, canvas)


def check_text(text: str, resolver: IncludeResolver | None = None) -> list[Diagnostic]:
    """All diagnostics up to and including the type check; empty when clean."""
    try:
        compile_text(text, resolver)
    except SparcError as e:
        return e.diagnostics
    return []


def solve_compiled(compiled: Compiled, limits: SolveLimits,
                   deadline: float | None = None) -> list[AnswerSet]:
    if deadline is None:
        deadline = time.monotonic() + limits.timeout_sec
    gp = ground_reachable(compiled.typed, compiled.table,
                          max_rules=limits.max_ground_rules,
                          deadline=deadline, limit_sec=limits.timeout_sec)
    return answer_sets(gp, limits, deadline=deadline)


def solve_text(text: str, limits: SolveLimits | None = None,
               resolver: IncludeResolver | None = None) -> list[AnswerSet]:
    limits = limits or SolveLimits()
    return solve_compiled(compile_text(text, resolver), limits)


def answer_sets_html(sets: list[AnswerSet]) -> str:
    """The numbered ordered-list fragment shown in the result area."""
    items = "".join(f"<li>{html_mod.escape(s.text())}</li>" for s in sets)
    return f"<ol>{items}</ol>"


@dataclass
class RunResult:
    status: str                                 # ok | error | timeout | too-many-answer-sets
    answer_sets: list[AnswerSet] | None = None
    query_answer: QueryAnswer | None = None
    plans: list[RenderPlan] | None = None
    html: str | None = None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def run(text: str, mode: str, query_text: str | None = None,
        limits: SolveLimits | None = None,
        resolver: IncludeResolver | None = None) -> RunResult:
    """Run a program in one of the three modes; never raises on program
    errors -- they come back as diagnostics with a matching status."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    limits = limits or SolveLimits()
    try:
        compiled = compile_text(text, resolver)
        if mode == "query":
            if not query_text:
                return RunResult("error", diagnostics=[
                    Diagnostic("missing-query", "query mode needs a query")])
            q = parse_query(query_text)
            q = resolve_query_constants(q, compiled.program)
            typed_q = typecheck_query(q, compiled.typed, compiled.table)
            sets = solve_compiled(compiled, limits)
            return RunResult("ok", answer_sets=sets,
                             query_answer=answer_query(sets, typed_q))
        sets = solve_compiled(compiled, limits)
        if mode == "answer_sets":
            return RunResult("ok", answer_sets=sets)
        if not sets:
            return RunResult("error", answer_sets=sets, diagnostics=[
                Diagnostic("no-answer-sets", "the program has no answer sets to execute")])
        plans = [compile_answer_set(s, compiled.canvas) for s in sets]
        return RunResult("ok", answer_sets=sets, plans=plans,
                         html=emit_html(plans, compiled.canvas))
    except TimeoutExceeded as e:
        return RunResult("timeout", diagnostics=e.diagnostics)
    except TooManyAnswerSets as e:
        return RunResult("too-many-answer-sets", diagnostics=e.diagnostics)
    except SparcError as e:
        return RunResult("error", diagnostics=e.diagnostics)
