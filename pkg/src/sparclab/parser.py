"""Recursive-descent parser for SPARC programs and queries.

Errors are recovered at statement boundaries (the next ``.``) so a single
parse reports every malformed statement in the file; if any error was seen
the parse raises :class:`SparcSyntaxError` carrying the full list.
"""
from __future__ import annotations

from .errors import Diagnostic, SparcSyntaxError
from .lexer import Token, tokenize
from .syntax import (
    Arith, Builtin, Const, ConstDef, EnumSet, Include, Literal, NotLit, Num,
    PredicateDecl, Program, Query, Range, RecordSort, RecordTerm, Rule,
    SortDef, SortName, SubsortDecl, Term, Union_, Var, term_is_ground,
)

_RELOPS = {"EQ": "=", "NE": "!=", "LT": "<", "LE": "<=", "GT": ">", "GE": ">="}
_SECTION_STARTS = ("SORTS", "PREDICATES", "RULES")


class _ParseAbort(Exception):
    """Internal signal: the current statement is unusable, resync."""


class _Parser:
    def __init__(self, text: str):
        self.tokens, lex_errors = tokenize(text)
        self.errors: list[Diagnostic] = list(lex_errors)
        self.i = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def at(self, *kinds: str) -> bool:
        return self.peek().kind in kinds

    def take(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def expect(self, kind: str, what: str | None = None) -> Token:
        t = self.peek()
        if t.kind == kind:
            return self.take()
        self.error(f"expected {what or kind}", expected=(kind,))
        raise _ParseAbort()

    def error(self, message: str, tok: Token | None = None, expected: tuple[str, ...] = ()):
        t = tok or self.peek()
        found = t.text if t.kind != "EOF" else "end of input"
        self.errors.append(Diagnostic("syntax-error", f"{message}, found {found!r}",
                                      t.pos, expected=expected, found=found))

    def sync_to_statement(self):
        """Skip tokens until just past the next '.' or before a section keyword."""
        while not self.at("EOF"):
            if self.at(*_SECTION_STARTS):
                return
            if self.at("DOT"):
                self.take()
                return
            self.take()

    # -- terms -------------------------------------------------------------

    def parse_term(self) -> Term:
        t = self.parse_mul()
        while self.at("PLUS", "MINUS"):
            op = self.take()
            rhs = self.parse_mul()
            t = Arith(op.text, t, rhs, pos=t.pos if t.pos else op.pos)
        return t

    def parse_mul(self) -> Term:
        t = self.parse_unary()
        while self.at("STAR", "SLASH"):
            op = self.take()
            t = Arith(op.text, t, self.parse_unary())
        return t

    def parse_unary(self) -> Term:
        if self.at("MINUS") and self.peek(1).kind == "NUMBER":
            sign = self.take()
            num = self.take()
            return Num(-num.value, pos=sign.pos)
        return self.parse_primary()

    def parse_primary(self) -> Term:
        t = self.peek()
        if t.kind == "NUMBER":
            self.take()
            return Num(t.value, pos=t.pos)
        if t.kind == "VAR":
            self.take()
            return Var(t.text, pos=t.pos)
        if t.kind == "IDENT":
            self.take()
            if self.at("LPAREN"):
                self.take()
                args = [self.parse_term()]
                while self.at("COMMA"):
                    self.take()
                    args.append(self.parse_term())
                self.expect("RPAREN", "')'")
                return RecordTerm(t.text, tuple(args), pos=t.pos)
            return Const(t.text, pos=t.pos)
        if t.kind == "LPAREN":
            self.take()
            inner = self.parse_term()
            self.expect("RPAREN", "')'")
            return inner
        self.error("expected a term", expected=("NUMBER", "VAR", "IDENT", "LPAREN"))
        raise _ParseAbort()

    # -- literals / rules ----------------------------------------------------

    def parse_literal(self) -> Literal:
        neg = False
        start = self.peek()
        if self.at("MINUS", "NEG"):
            self.take()
            neg = True
        name = self.expect("IDENT", "a predicate name")
        args: tuple[Term, ...] = ()
        if self.at("LPAREN"):
            self.take()
            lst = [self.parse_term()]
            while self.at("COMMA"):
                self.take()
                lst.append(self.parse_term())
            self.expect("RPAREN", "')'")
            args = tuple(lst)
        return Literal(neg, name.text, args, pos=start.pos)

    def parse_body_element(self):
        if self.at("NOT"):
            self.take()
            return NotLit(self.parse_literal())
        if self.at("MINUS", "NEG") and self.peek(1).kind == "IDENT":
            return self.parse_literal()
        start = self.peek()
        t = self.parse_term()
        if self.at(*_RELOPS):
            op = self.take()
            rhs = self.parse_term()
            return Builtin(_RELOPS[op.kind], t, rhs, pos=start.pos)
        if isinstance(t, RecordTerm):
            return Literal(False, t.name, t.args, pos=t.pos)
        if isinstance(t, Const):
            return Literal(False, t.name, (), pos=t.pos)
        self.error("expected a literal or comparison", tok=start)
        raise _ParseAbort()

    def parse_rule(self) -> Rule:
        start = self.peek()
        head: list[Literal] = []
        if not self.at("IMPLIES"):
            head.append(self.parse_literal())
            while self.at("PIPE"):
                self.take()
                head.append(self.parse_literal())
        body: list = []
        if self.at("IMPLIES"):
            self.take()
            body.append(self.parse_body_element())
            while self.at("COMMA"):
                self.take()
                body.append(self.parse_body_element())
        if not head and not body:
            self.error("a rule needs a head or a body", tok=start)
            raise _ParseAbort()
        self.expect("DOT", "'.'")
        return Rule(tuple(head), tuple(body), pos=start.pos)

    # -- sort expressions ----------------------------------------------------

    def parse_ground_element(self):
        t = self.parse_term()
        if not term_is_ground(t):
            self.error("sort elements must be ground")
            raise _ParseAbort()
        if isinstance(t, Arith):
            self.error("sort elements may not contain arithmetic")
            raise _ParseAbort()
        return t

    def parse_enum_set(self) -> EnumSet:
        start = self.expect("LBRACE", "'{'")
        elements = [self.parse_ground_element()]
        while self.at("COMMA"):
            self.take()
            elements.append(self.parse_ground_element())
        self.expect("RBRACE", "'}'")
        return EnumSet(tuple(elements), pos=start.pos)

    def parse_sort_part(self):
        t = self.peek()
        if t.kind == "LBRACE":
            return self.parse_enum_set()
        if t.kind == "SORTNAME":
            self.take()
            return SortName(t.text, pos=t.pos)
        if t.kind in ("NUMBER", "MINUS"):
            lo = self.parse_unary()
            self.expect("DOTS", "'..'")
            hi = self.parse_range_bound()
            return Range(lo, hi, pos=t.pos)
        if t.kind == "IDENT":
            if self.peek(1).kind == "LPAREN":
                self.take()
                self.take()
                comps = [self.expect("SORTNAME", "a sort name").text]
                while self.at("COMMA"):
                    self.take()
                    comps.append(self.expect("SORTNAME", "a sort name").text)
                self.expect("RPAREN", "')'")
                return RecordSort(t.text, tuple(comps), pos=t.pos)
            if self.peek(1).kind == "DOTS":
                self.take()
                self.take()
                return Range(Const(t.text, pos=t.pos), self.parse_range_bound(), pos=t.pos)
        self.error("expected a sort expression",
                   expected=("LBRACE", "SORTNAME", "NUMBER", "IDENT"))
        raise _ParseAbort()

    def parse_range_bound(self) -> Term:
        t = self.peek()
        if t.kind in ("NUMBER", "MINUS"):
            return self.parse_unary()
        if t.kind == "IDENT":
            self.take()
            return Const(t.text, pos=t.pos)
        self.error("expected an integer or constant bound")
        raise _ParseAbort()

    def parse_sort_expr(self):
        parts = [self.parse_sort_part()]
        while self.at("PLUS"):
            self.take()
            parts.append(self.parse_sort_part())
        if len(parts) == 1:
            return parts[0]
        return Union_(tuple(parts), pos=parts[0].pos)

    # -- program -------------------------------------------------------------

    def parse_program(self) -> Program:
        consts: list[ConstDef] = []
        includes: list[Include] = []
        sorts: list = []
        preds: list[PredicateDecl] = []
        rules: list[Rule] = []

        while self.at("INCLUDE", "CONST"):
            try:
                t = self.take()
                if t.kind == "INCLUDE":
                    path, angled = t.value
                    if self.at("DOT"):  # trailing '.' after an include is optional
                        self.take()
                    includes.append(Include(path, angled, pos=t.pos))
                else:
                    name = self.expect("IDENT", "a constant name")
                    self.expect("EQ", "'='")
                    val = self.parse_unary()
                    if not isinstance(val, Num):
                        self.error("constant values must be integers")
                        raise _ParseAbort()
                    self.expect("DOT", "'.'")
                    consts.append(ConstDef(name.text, val.value, pos=t.pos))
            except _ParseAbort:
                self.sync_to_statement()

        if self.at("SORTS"):
            self.take()
            while not self.at("PREDICATES", "RULES", "EOF"):
                try:
                    if self.at("EXTEND"):
                        start = self.take()
                        name = self.expect("SORTNAME", "a sort name")
                        self.expect("WITH", "'with'")
                        elems = self.parse_enum_set()
                        self.expect("DOT", "'.'")
                        sorts.append(SubsortDecl(name.text, elems, pos=start.pos))
                    else:
                        name = self.expect("SORTNAME", "a sort name or 'extend'")
                        self.expect("EQ", "'='")
                        expr = self.parse_sort_expr()
                        self.expect("DOT", "'.'")
                        sorts.append(SortDef(name.text, expr, pos=name.pos))
                except _ParseAbort:
                    self.sync_to_statement()

        if self.at("PREDICATES"):
            self.take()
            while not self.at("RULES", "EOF"):
                if self.at("SORTS"):
                    self.error("'sorts' section must precede 'predicates'")
                    self.take()
                    continue
                try:
                    name = self.expect("IDENT", "a predicate name")
                    arg_sorts: list[str] = []
                    if self.at("LPAREN"):
                        self.take()
                        arg_sorts.append(self.expect("SORTNAME", "a sort name").text)
                        while self.at("COMMA"):
                            self.take()
                            arg_sorts.append(self.expect("SORTNAME", "a sort name").text)
                        self.expect("RPAREN", "')'")
                    self.expect("DOT", "'.'")
                    preds.append(PredicateDecl(name.text, tuple(arg_sorts), pos=name.pos))
                except _ParseAbort:
                    self.sync_to_statement()

        if self.at("RULES"):
            self.take()
            while not self.at("EOF"):
                if self.at("SORTS", "PREDICATES"):
                    self.error("sections must appear in the order sorts, predicates, rules")
                    self.take()
                    continue
                try:
                    rules.append(self.parse_rule())
                except _ParseAbort:
                    self.sync_to_statement()

        if not self.at("EOF"):
            self.error("unexpected input after the rules section")

        return Program(tuple(consts), tuple(includes), tuple(sorts), tuple(preds), tuple(rules))

    def parse_query(self) -> Query:
        lit = self.parse_literal()
        if self.at("QMARK"):
            self.take()
        if not self.at("EOF"):
            self.error("a query is a single literal, optionally ending with '?'")
            raise _ParseAbort()
        return Query(lit, pos=lit.pos)


def parse_program(text: str) -> Program:
    """Parse SPARC source into a :class:`Program`.

    Raises :class:`SparcSyntaxError` carrying every diagnostic found; comments
    are discarded and every node carries its (line, column) position.
    """
    p = _Parser(text)
    program = p.parse_program()
    if p.errors:
        raise SparcSyntaxError(p.errors)
    return program


def parse_query(text: str) -> Query:
    """Parse a query: an atom or classically negated atom, optional ``?``."""
    p = _Parser(text)
    try:
        q = p.parse_query()
    except _ParseAbort:
        q = None
    if p.errors:
        raise SparcSyntaxError(p.errors)
    assert q is not None
    return q
