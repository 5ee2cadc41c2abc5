"""sparclab: a desk-scale workbench for the sorted answer-set language SPARC.

Parse and format programs, expand includes and subsorts, resolve sorts,
type-check, ground, enumerate stable models, answer yes/no/unknown queries,
compile display atoms into frame-indexed render plans and canvas HTML, and
serve the whole pipeline over HTTP.
"""

from .display import (
    CanvasConfig, RenderPlan, compile_answer_set, compile_render_plan,
    emit_html, extract_display_atoms, plan_json,
)
from .errors import (
    Diagnostic, DisplayError, EnumerationRefused, GroundingError,
    PreprocessError, SolveError, SortError, SparcError, SparcSyntaxError,
    SparcTypeError, TimeoutExceeded, TooManyAnswerSets,
)
from .grounding import (
    GroundProgram, GroundRule, ground, ground_naive, ground_reachable,
)
from .parser import parse_program, parse_query
from .pipeline import RunResult, check_text, compile_text, run, solve_text
from .preprocess import (
    DirectoryResolver, MappingResolver, StandardResolver, expand,
    resolve_constants, shipped_header,
)
from .printer import format_program, format_query
from .query import QueryAnswer, Verdict, answer_ground_query, answer_query
from .solver import (
    AnswerSet, SolveLimits, answer_sets, brute_force_answer_sets,
    format_answer_sets, is_stable,
)
from .sorts import SortTable, build_sort_table
from .typecheck import TypedProgram, typecheck, typecheck_query

__version__ = "0.1.0"

__all__ = [
    "AnswerSet", "CanvasConfig", "Diagnostic", "DirectoryResolver",
    "DisplayError", "EnumerationRefused", "GroundProgram", "GroundRule",
    "GroundingError", "MappingResolver", "PreprocessError", "QueryAnswer",
    "RenderPlan", "RunResult", "SolveError", "SolveLimits", "SortError",
    "SortTable", "SparcError", "SparcSyntaxError", "SparcTypeError",
    "StandardResolver", "TimeoutExceeded", "TooManyAnswerSets",
    "TypedProgram", "Verdict",
    "answer_ground_query", "answer_query", "answer_sets",
    "brute_force_answer_sets", "build_sort_table", "check_text",
    "compile_answer_set", "compile_render_plan", "compile_text", "emit_html",
    "expand", "extract_display_atoms", "format_answer_sets", "format_program",
    "format_query", "ground", "ground_naive", "ground_reachable", "is_stable",
    "parse_program", "parse_query", "plan_json", "resolve_constants", "run",
    "shipped_header", "solve_text", "typecheck", "typecheck_query",
]
