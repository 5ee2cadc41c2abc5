"""Include expansion, subsort resolution and #const handling.

``expand`` turns a program that may use ``#include`` directives and
``extend ... with`` subsort statements into a classical SPARC program:
included sections are spliced in front of the including program's sections,
and each extended sort becomes a single ``=`` definition unioning all of its
declared contributions (in first-occurrence order, includes first).
"""
from __future__ import annotations

import importlib.resources
from pathlib import Path
from typing import Protocol

from .errors import Diagnostic, PreprocessError, SparcSyntaxError
from .parser import parse_program
from .syntax import (
    Arith, Builtin, Const, ConstDef, EnumSet, Literal, NotLit, Num,
    PredicateDecl, Program, Query, Range, RecordTerm, Rule, SortDef,
    SubsortDecl, Term, Union_,
)


class IncludeResolver(Protocol):
    def resolve(self, path: str, angled: bool) -> tuple[str, str] | None:
        """Return ``(canonical_id, text)`` for an include path, or None."""


class AssetResolver:
    """Resolves angle-bracket includes against the shipped assets."""

    def resolve(self, path: str, angled: bool) -> tuple[str, str] | None:
        res = importlib.resources.files("sparclab").joinpath("assets", path)
        if res.is_file():
            return f"<{path}>", res.read_text(encoding="utf-8")
        return None


class DirectoryResolver:
    """Resolves quoted includes against a list of directories."""

    def __init__(self, roots: list[Path]):
        self.roots = [Path(r) for r in roots]

    def resolve(self, path: str, angled: bool) -> tuple[str, str] | None:
        for root in self.roots:
            cand = (root / path).resolve()
            if cand.is_file():
                return str(cand), cand.read_text(encoding="utf-8")
        return None


class MappingResolver:
    """Resolves includes from an in-memory mapping (used by tests and the service)."""

    def __init__(self, mapping: dict[str, str]):
        self.mapping = dict(mapping)

    def resolve(self, path: str, angled: bool) -> tuple[str, str] | None:
        if path in self.mapping:
            return f"mem:{path}", self.mapping[path]
        return None


class StandardResolver:
    """Angled paths search the shipped assets; quoted paths search the
    workspace directories first and fall back to the assets."""

    def __init__(self, workspace: IncludeResolver | None = None):
        self.assets = AssetResolver()
        self.workspace = workspace

    def resolve(self, path: str, angled: bool) -> tuple[str, str] | None:
        if angled:
            return self.assets.resolve(path, angled)
        if self.workspace is not None:
            found = self.workspace.resolve(path, angled)
            if found is not None:
                return found
        return self.assets.resolve(path, angled)


def shipped_header() -> str:
    """The bundled ``drawing.sp`` header, exactly as shipped."""
    found = AssetResolver().resolve("drawing.sp", True)
    assert found is not None
    return found[1]


def expand(program: Program, resolver: IncludeResolver | None = None) -> Program:
    """Expand includes and subsort statements into a classical program.

    The output contains no include directives and no subsort declarations;
    constants from included files are merged, with the including program
    winning on name clashes.
    """
    resolver = resolver or StandardResolver()
    errors: list[Diagnostic] = []
    sorts: list[SortDef] = []
    preds: list[PredicateDecl] = []
    rules: list[Rule] = []
    consts: dict[str, ConstDef] = {}
    subsorts: dict[str, list[EnumSet]] = {}
    loaded: set[str] = set()

    def merge_consts(p: Program, origin: str):
        seen_here: dict[str, int] = {}
        for c in p.consts:
            if c.name in seen_here and seen_here[c.name] != c.value:
                errors.append(Diagnostic(
                    "duplicate-const",
                    f"constant '{c.name}' defined with conflicting values in {origin}",
                    c.pos))
                continue
            seen_here[c.name] = c.value
            consts[c.name] = c  # later (more-including) files override

    def visit(p: Program, origin: str, stack: tuple[str, ...]):
        for inc in p.includes:
            found = resolver.resolve(inc.path, inc.angled)
            if found is None:
                errors.append(Diagnostic(
                    "include-not-found", f"cannot resolve include '{inc.path}'", inc.pos))
                continue
            key, text = found
            if key in stack:
                chain = " -> ".join(list(stack[stack.index(key):]) + [key])
                errors.append(Diagnostic(
                    "include-cycle", f"include cycle: {chain}", inc.pos))
                continue
            if key in loaded:
                continue
            loaded.add(key)
            try:
                included = parse_program(text)
            except SparcSyntaxError as e:
                errors.extend(Diagnostic(d.code, f"in {inc.path}: {d.message}", inc.pos)
                              for d in e.diagnostics)
                continue
            visit(included, key, stack + (key,))
        merge_consts(p, origin)
        for s in p.sorts_section:
            if isinstance(s, SubsortDecl):
                subsorts.setdefault(s.sort_name, []).append(s.elements)
            else:
                sorts.append(s)
        preds.extend(p.predicates_section)
        rules.extend(p.rules_section)

    visit(program, "the program", ("<main>",))

    defined = {s.name for s in sorts}
    merged: list[SortDef] = []
    for name, contributions in subsorts.items():
        if name in defined:
            errors.append(Diagnostic(
                "sort-double-definition",
                f"sort '{name}' has subsort declarations and may not also be defined with '='"))
            continue
        expr = contributions[0] if len(contributions) == 1 else Union_(tuple(contributions))
        merged.append(SortDef(name, expr, pos=contributions[0].pos))

    if errors:
        raise PreprocessError(errors)

    return Program(
        consts=tuple(consts.values()),
        includes=(),
        sorts_section=tuple(merged) + tuple(sorts),
        predicates_section=tuple(preds),
        rules_section=tuple(rules),
    )


# ---------------------------------------------------------------------------
# #const substitution

def _subst_term(t: Term, values: dict[str, int]) -> Term:
    if isinstance(t, Const) and t.name in values:
        return Num(values[t.name], pos=t.pos)
    if isinstance(t, Arith):
        return Arith(t.op, _subst_term(t.left, values), _subst_term(t.right, values), pos=t.pos)
    if isinstance(t, RecordTerm):
        return RecordTerm(t.name, tuple(_subst_term(a, values) for a in t.args), pos=t.pos)
    return t


def _subst_body_element(e, values):
    if isinstance(e, Literal):
        return Literal(e.neg, e.pred, tuple(_subst_term(a, values) for a in e.args), pos=e.pos)
    if isinstance(e, NotLit):
        return NotLit(_subst_body_element(e.lit, values), pos=e.pos)
    return Builtin(e.op, _subst_term(e.left, values), _subst_term(e.right, values), pos=e.pos)


def resolve_constants(program: Program) -> Program:
    """Replace every occurrence of a ``#const`` name by its integer value.

    Applies to rule terms and to sort expressions (range bounds and
    enumerated elements), mirroring C-style macro substitution.
    """
    values = {c.name: c.value for c in program.consts}
    if not values:
        return program

    def subst_sort_expr(e):
        if isinstance(e, EnumSet):
            return EnumSet(tuple(_subst_term(t, values) for t in e.elements), pos=e.pos)
        if isinstance(e, Range):
            return Range(_subst_term(e.lo, values), _subst_term(e.hi, values), pos=e.pos)
        if isinstance(e, Union_):
            return Union_(tuple(subst_sort_expr(p) for p in e.parts), pos=e.pos)
        return e

    sorts = tuple(
        SortDef(s.name, subst_sort_expr(s.expr), pos=s.pos) if isinstance(s, SortDef)
        else SubsortDecl(s.sort_name, subst_sort_expr(s.elements), pos=s.pos)
        for s in program.sorts_section)
    rules = tuple(
        Rule(tuple(_subst_body_element(l, values) for l in r.head),
             tuple(_subst_body_element(e, values) for e in r.body), pos=r.pos)
        for r in program.rules_section)
    return Program(program.consts, program.includes, sorts,
                   program.predicates_section, rules)


def resolve_query_constants(query: Query, program: Program) -> Query:
    values = {c.name: c.value for c in program.consts}
    if not values:
        return query
    lit = query.literal
    return Query(Literal(lit.neg, lit.pred,
                         tuple(_subst_term(a, values) for a in lit.args), pos=lit.pos),
                 pos=query.pos)
