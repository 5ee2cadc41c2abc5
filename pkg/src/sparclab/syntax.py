"""AST node types for SPARC programs and queries.

All nodes are immutable dataclasses.  Structural equality deliberately
ignores source positions so that ``parse(format(p)) == p`` holds; the
``pos`` field is carried for diagnostics only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union


@dataclass(frozen=True)
class Pos:
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


NOPOS = Pos(0, 0)


def _posfield():
    return field(default=NOPOS, compare=False, repr=False)


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Num:
    value: int
    pos: Pos = _posfield()


@dataclass(frozen=True)
class Const:
    name: str
    pos: Pos = _posfield()


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = _posfield()


@dataclass(frozen=True)
class Arith:
    """Binary arithmetic over terms; ``op`` is one of ``+ - * /``."""
    op: str
    left: "Term"
    right: "Term"
    pos: Pos = _posfield()


@dataclass(frozen=True)
class RecordTerm:
    """A record name applied to argument terms, e.g. ``draw_line(pen,1,2,3,4)``."""
    name: str
    args: tuple["Term", ...]
    pos: Pos = _posfield()


Term = Union[Num, Const, Var, Arith, RecordTerm]

#: Ground terms are the subset of terms produced by evaluation.
GroundTerm = Union[Num, Const, RecordTerm]


def term_is_ground(t: Term) -> bool:
    if isinstance(t, (Num, Const)):
        return True
    if isinstance(t, Var):
        return False
    if isinstance(t, Arith):
        return term_is_ground(t.left) and term_is_ground(t.right)
    return all(term_is_ground(a) for a in t.args)


def term_vars(t: Term) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, Arith):
        yield from term_vars(t.left)
        yield from term_vars(t.right)
    elif isinstance(t, RecordTerm):
        for a in t.args:
            yield from term_vars(a)


def term_key(t: GroundTerm):
    """Total order on ground terms: numbers, then constants, then records."""
    if isinstance(t, Num):
        return (0, t.value)
    if isinstance(t, Const):
        return (1, t.name)
    return (2, t.name, tuple(term_key(a) for a in t.args))


def eval_term(t: Term, env=None) -> GroundTerm:
    """Evaluate a term under a variable binding, with integer arithmetic.

    Division truncates toward zero.  Raises ``ZeroDivisionError`` on a zero
    divisor and ``ArithmeticError`` when an operand is not an integer.
    """
    if isinstance(t, (Num, Const)):
        return t
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, RecordTerm):
        return RecordTerm(t.name, tuple(eval_term(a, env) for a in t.args))
    left = eval_term(t.left, env)
    right = eval_term(t.right, env)
    if not isinstance(left, Num) or not isinstance(right, Num):
        raise ArithmeticError(f"non-integer operand in '{t.op}'")
    a, b = left.value, right.value
    if t.op == "+":
        return Num(a + b)
    if t.op == "-":
        return Num(a - b)
    if t.op == "*":
        return Num(a * b)
    if b == 0:
        raise ZeroDivisionError("division by zero")
    q = abs(a) // abs(b)
    return Num(q if (a < 0) == (b < 0) else -q)


# ---------------------------------------------------------------------------
# Literals, rules, queries

@dataclass(frozen=True)
class Literal:
    """An atom or its classical negation (``-p(...)``)."""
    neg: bool
    pred: str
    args: tuple[Term, ...]
    pos: Pos = _posfield()

    def contrary(self) -> "Literal":
        return Literal(not self.neg, self.pred, self.args)


@dataclass(frozen=True)
class NotLit:
    """Default negation of a literal (``not p(...)``)."""
    lit: Literal
    pos: Pos = _posfield()


@dataclass(frozen=True)
class Builtin:
    """Comparison between two terms; ``op`` is one of ``= != < <= > >=``."""
    op: str
    left: Term
    right: Term
    pos: Pos = _posfield()


BodyElement = Union[Literal, NotLit, Builtin]


@dataclass(frozen=True)
class Rule:
    """``head | ... :- body.``; an empty head makes the rule a constraint."""
    head: tuple[Literal, ...]
    body: tuple[BodyElement, ...]
    pos: Pos = _posfield()

    @property
    def is_constraint(self) -> bool:
        return not self.head


def literal_key(l: Literal):
    """Canonical atom order: predicate name, argument order, then polarity."""
    return (l.pred, tuple(term_key(a) for a in l.args), l.neg)


def literal_vars(l: Literal) -> Iterator[str]:
    for a in l.args:
        yield from term_vars(a)


@dataclass(frozen=True)
class Query:
    literal: Literal
    pos: Pos = _posfield()


# ---------------------------------------------------------------------------
# Sort expressions

@dataclass(frozen=True)
class EnumSet:
    """``{a, 3, f(b)}`` -- an explicit set of ground terms, in written order."""
    elements: tuple[GroundTerm, ...]
    pos: Pos = _posfield()


@dataclass(frozen=True)
class Range:
    """``lo..hi``; bounds are integers or ``#const`` names."""
    lo: Term
    hi: Term
    pos: Pos = _posfield()


@dataclass(frozen=True)
class SortName:
    """A reference to another sort inside a sort expression."""
    name: str
    pos: Pos = _posfield()


@dataclass(frozen=True)
class RecordSort:
    """``rec(#s1, #s2)`` -- compound terms over component sorts."""
    name: str
    components: tuple[str, ...]
    pos: Pos = _posfield()


@dataclass(frozen=True)
class Union_:
    """``e1 + e2 + ...`` -- set union of sort expressions."""
    parts: tuple["SortExpr", ...]
    pos: Pos = _posfield()


SortExpr = Union[EnumSet, Range, SortName, RecordSort, Union_]


@dataclass(frozen=True)
class SortDef:
    name: str
    expr: SortExpr
    pos: Pos = _posfield()


@dataclass(frozen=True)
class SubsortDecl:
    """``extend #name with { elements }.``"""
    sort_name: str
    elements: EnumSet
    pos: Pos = _posfield()


@dataclass(frozen=True)
class PredicateDecl:
    name: str
    arg_sorts: tuple[str, ...]
    pos: Pos = _posfield()


@dataclass(frozen=True)
class Include:
    path: str
    angled: bool
    pos: Pos = _posfield()


@dataclass(frozen=True)
class ConstDef:
    name: str
    value: int
    pos: Pos = _posfield()


@dataclass(frozen=True)
class Program:
    consts: tuple[ConstDef, ...] = ()
    includes: tuple[Include, ...] = ()
    sorts_section: tuple[Union[SortDef, SubsortDecl], ...] = ()
    predicates_section: tuple[PredicateDecl, ...] = ()
    rules_section: tuple[Rule, ...] = ()


# ---------------------------------------------------------------------------
# Rendering of terms and literals (shared by the formatter, answer-set
# printing and diagnostics)

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def term_text(t: Term) -> str:
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, (Const, Var)):
        return t.name
    if isinstance(t, RecordTerm):
        return f"{t.name}({', '.join(term_text(a) for a in t.args)})"
    return _arith_text(t)


def _arith_text(t: Arith) -> str:
    prec = _PREC[t.op]

    def side(sub: Term, right: bool) -> str:
        s = term_text(sub)
        if isinstance(sub, Arith):
            sp = _PREC[sub.op]
            if sp < prec or (sp == prec and right):
                return f"({s})"
        return s

    return f"{side(t.left, False)}{t.op}{side(t.right, True)}"


def literal_text(l: Literal) -> str:
    sign = "-" if l.neg else ""
    if not l.args:
        return f"{sign}{l.pred}"
    return f"{sign}{l.pred}({', '.join(term_text(a) for a in l.args)})"


def body_element_text(e: BodyElement) -> str:
    if isinstance(e, Literal):
        return literal_text(e)
    if isinstance(e, NotLit):
        return f"not {literal_text(e.lit)}"
    return f"{term_text(e.left)} {e.op} {term_text(e.right)}"


def rule_text(r: Rule) -> str:
    head = " | ".join(literal_text(l) for l in r.head)
    if not r.body:
        return f"{head}."
    body = ", ".join(body_element_text(e) for e in r.body)
    if not head:
        return f":- {body}."
    return f"{head} :- {body}."


def sort_expr_text(e: SortExpr) -> str:
    if isinstance(e, EnumSet):
        return "{" + ", ".join(term_text(t) for t in e.elements) + "}"
    if isinstance(e, Range):
        return f"{term_text(e.lo)}..{term_text(e.hi)}"
    if isinstance(e, SortName):
        return e.name
    if isinstance(e, RecordSort):
        return f"{e.name}({', '.join(e.components)})"
    return " + ".join(sort_expr_text(p) for p in e.parts)
