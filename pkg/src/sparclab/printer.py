"""Deterministic pretty-printer; ``parse_program(format_program(p)) == p``."""
from __future__ import annotations

from .syntax import Program, Query, SortDef, SubsortDecl, literal_text, rule_text, sort_expr_text


def format_program(p: Program) -> str:
    lines: list[str] = []
    for inc in p.includes:
        delim = ("<", ">") if inc.angled else ('"', '"')
        lines.append(f"#include {delim[0]}{inc.path}{delim[1]}.")
    for c in p.consts:
        lines.append(f"#const {c.name} = {c.value}.")
    if p.sorts_section:
        lines.append("sorts")
        for s in p.sorts_section:
            if isinstance(s, SortDef):
                lines.append(f"  {s.name} = {sort_expr_text(s.expr)}.")
            else:
                assert isinstance(s, SubsortDecl)
                lines.append(f"  extend {s.sort_name} with {sort_expr_text(s.elements)}.")
    if p.predicates_section:
        lines.append("predicates")
        for d in p.predicates_section:
            if d.arg_sorts:
                lines.append(f"  {d.name}({', '.join(d.arg_sorts)}).")
            else:
                lines.append(f"  {d.name}.")
    if p.rules_section:
        lines.append("rules")
        for r in p.rules_section:
            lines.append(f"  {rule_text(r)}")
    return "\n".join(lines) + "\n"


def format_query(q: Query) -> str:
    return literal_text(q.literal) + "?"
