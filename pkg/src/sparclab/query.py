"""Query answering over computed answer sets.

A ground literal is *yes* when it belongs to every answer set, *no* when
its contrary does, *unknown* otherwise.  A query with variables collects
every substitution over the variables' sort domains whose ground instance
answers yes.  A program with no answer sets makes every verdict vacuous,
so those queries answer unknown with the inconsistency flagged.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .errors import EnumerationRefused
from .solver import AnswerSet
from .sorts import DEFAULT_ENUM_GUARD
from .syntax import GroundTerm, Literal, eval_term, term_text
from .typecheck import TypedQuery


class Verdict(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class QueryAnswer:
    verdict: Verdict | None = None
    bindings: tuple[dict[str, GroundTerm], ...] | None = None
    inconsistent: bool = False

    def text(self) -> str:
        if self.bindings is None:
            out = str(self.verdict)
            if self.inconsistent:
                out += " (the program has no answer sets)"
            return out
        if not self.bindings:
            if self.inconsistent:
                return "no bindings satisfy the query (the program has no answer sets)"
            return "no bindings satisfy the query"
        return "\n".join(
            ", ".join(f"{name} = {term_text(value)}" for name, value in sorted(b.items()))
            for b in self.bindings)


def ground_verdict(sets: list[AnswerSet], literal: Literal) -> Verdict:
    """The yes/no/unknown verdict for a ground literal; vacuous (zero answer
    sets) counts as unknown -- see :func:`answer_ground_query`."""
    if not sets:
        return Verdict.UNKNOWN
    if all(literal in s for s in sets):
        return Verdict.YES
    contrary = literal.contrary()
    if all(contrary in s for s in sets):
        return Verdict.NO
    return Verdict.UNKNOWN


def answer_ground_query(sets: list[AnswerSet], literal: Literal) -> QueryAnswer:
    return QueryAnswer(verdict=ground_verdict(sets, literal),
                       inconsistent=not sets)


def answer_query(sets: list[AnswerSet], typed_query: TypedQuery,
                 guard: int = DEFAULT_ENUM_GUARD) -> QueryAnswer:
    """Answer a query; non-ground queries yield the substitutions whose
    ground instance is yes, enumerated deterministically by variable name."""
    query = typed_query.query
    if not typed_query.var_domains:
        return answer_ground_query(sets, _instantiate(query.literal, {}))

    names = sorted(typed_query.var_domains)
    pools = []
    for name in names:
        dom = typed_query.var_domains[name]
        card = dom.cardinality()
        if card > guard:
            raise EnumerationRefused(f"domain of query variable {name}", card, guard)
        pools.append(list(dom.iter_terms()))

    bindings: list[dict[str, GroundTerm]] = []
    for combo in itertools.product(*pools):
        env = dict(zip(names, combo))
        if not _checks_pass(typed_query, env):
            continue
        instance = _instantiate(query.literal, env)
        if ground_verdict(sets, instance) is Verdict.YES:
            bindings.append(env)
    return QueryAnswer(bindings=tuple(bindings), inconsistent=not sets)


def _instantiate(literal: Literal, env) -> Literal:
    return Literal(literal.neg, literal.pred,
                   tuple(eval_term(a, env) for a in literal.args))


def _checks_pass(typed_query: TypedQuery, env) -> bool:
    try:
        for check in typed_query.checks:
            if not check.domain.member(eval_term(check.term, env)):
                return False
    except (ZeroDivisionError, ArithmeticError):
        return False
    return True
