"""Sort checking of rules and queries.

Assigns every variable the intersection of the sorts of the argument
positions it occupies, membership-checks ground arguments, and records the
residual per-instance checks (arithmetic results, ambiguous record
patterns) that the grounder must evaluate per substitution.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import Diagnostic, SparcTypeError
from .sorts import (
    Domain, EmptyDomain, EnumDomain, SortTable, UnionDomain,
    domain_has_integers, domain_is_integral, enum_record_elements, intersect,
    record_alternatives,
)
from .syntax import (
    Arith, Builtin, Literal, NotLit, Num, Program, Query, RecordTerm, Term,
    Var, eval_term, literal_text, term_is_ground, term_text,
)


@dataclass(frozen=True)
class InstCheck:
    """A per-substitution membership check the grounder must run."""
    term: Term
    domain: Domain
    describes: str


@dataclass
class TypedRule:
    rule: Rule
    var_domains: dict[str, Domain]        # insertion order = first occurrence
    var_sorts: dict[str, tuple[str, ...]]
    checks: tuple[InstCheck, ...]


@dataclass
class TypedProgram:
    program: Program
    rules: tuple[TypedRule, ...]
    decls: dict[str, tuple[str, ...]]


@dataclass
class TypedQuery:
    query: Query
    var_domains: dict[str, Domain]
    var_sorts: dict[str, tuple[str, ...]]
    checks: tuple[InstCheck, ...]


class _Scope:
    """Variable constraints and residual checks for one rule or query."""

    def __init__(self, table: SortTable, errors: list[Diagnostic]):
        self.table = table
        self.errors = errors
        self.var_domains: dict[str, Domain] = {}
        self.var_sorts: dict[str, tuple[str, ...]] = {}
        self.numeric_vars: dict[str, object] = {}   # var -> pos of numeric use
        self.positional_vars: set[str] = set()
        self.checks: list[InstCheck] = []

    def constrain(self, v: Var, sort_name: str, domain: Domain):
        self.positional_vars.add(v.name)
        if v.name not in self.var_domains:
            self.var_domains[v.name] = domain
            self.var_sorts[v.name] = (sort_name,)
            return
        merged = intersect(self.var_domains[v.name], domain)
        self.var_sorts[v.name] += (sort_name,)
        if isinstance(merged, EmptyDomain):
            self.errors.append(Diagnostic(
                "conflicting-variable-sorts",
                f"variable {v.name} cannot belong to both "
                f"{' and '.join(self.var_sorts[v.name])} (empty intersection)",
                v.pos))
        self.var_domains[v.name] = merged

    def check_term(self, t: Term, domain: Domain, sort_name: str, where: str):
        if isinstance(t, Var):
            self.constrain(t, sort_name, domain)
            return
        if term_is_ground(t):
            try:
                value = eval_term(t)
            except (ArithmeticError, ZeroDivisionError) as e:
                self.errors.append(Diagnostic("bad-arithmetic", f"{e} in {where}", t.pos))
                return
            if not domain.member(value):
                self.errors.append(Diagnostic(
                    "sort-mismatch",
                    f"{where}: expected a member of {sort_name}, found {term_text(value)}",
                    t.pos))
            return
        if isinstance(t, RecordTerm):
            alts = record_alternatives(domain, t.name, len(t.args))
            enum_elems = enum_record_elements(domain, t.name, len(t.args))
            if not alts and not enum_elems:
                self.errors.append(Diagnostic(
                    "sort-mismatch",
                    f"{where}: no record {t.name}/{len(t.args)} in sort {sort_name}",
                    t.pos))
                return
            exact = len(alts) == 1 and not enum_elems
            for i, arg in enumerate(t.args):
                comp_domains = [a.components[i] for a in alts]
                if enum_elems:
                    comp_domains.append(EnumDomain(tuple(e.args[i] for e in enum_elems)))
                comp = comp_domains[0] if len(comp_domains) == 1 else UnionDomain(tuple(comp_domains))
                self.check_term(arg, comp, f"{sort_name}.{t.name}[{i + 1}]",
                                f"argument {i + 1} of {t.name} in {where}")
            if not exact:
                self.checks.append(InstCheck(t, domain, where))
            return
        assert isinstance(t, Arith)
        if not domain_has_integers(domain):
            self.errors.append(Diagnostic(
                "sort-mismatch",
                f"{where}: arithmetic result can never belong to {sort_name}",
                t.pos))
            return
        for v in _term_var_nodes(t):
            self.numeric_vars.setdefault(v.name, v.pos)
        self.checks.append(InstCheck(t, domain, where))

    def check_literal(self, lit: Literal, decls: dict[str, tuple[str, ...]]):
        decl = decls.get(lit.pred)
        if decl is None:
            self.errors.append(Diagnostic(
                "undeclared-predicate", f"predicate '{lit.pred}' is not declared", lit.pos))
            for v in literal_var_nodes(lit):
                self.positional_vars.add(v.name)
                self.var_domains.setdefault(v.name, EmptyDomain())
                self.var_sorts.setdefault(v.name, ())
            return
        if len(decl) != len(lit.args):
            self.errors.append(Diagnostic(
                "arity-mismatch",
                f"{lit.pred} declared with {len(decl)} argument(s), used with {len(lit.args)}",
                lit.pos))
            return
        for i, (arg, sort_name) in enumerate(zip(lit.args, decl)):
            try:
                domain = self.table.domain(sort_name)
            except Exception:
                self.errors.append(Diagnostic(
                    "unknown-sort", f"declared sort '{sort_name}' of {lit.pred} is unknown", lit.pos))
                continue
            self.check_term(arg, domain, sort_name,
                            f"argument {i + 1} of {literal_text(lit)}")

    def check_builtin(self, b: Builtin):
        kinds = [self._side_kind(b.left), self._side_kind(b.right)]
        # variables without any argument position are reported separately
        if "unknown" in kinds:
            return
        if b.op in ("<", "<=", ">", ">="):
            for side, kind in zip((b.left, b.right), kinds):
                if kind != "num":
                    self.errors.append(Diagnostic(
                        "builtin-sort-mismatch",
                        f"'{b.op}' needs numeric operands, but {term_text(side)} is not numeric",
                        b.pos))
        else:  # = and != also compare arbitrary ground terms syntactically
            if ("num" in kinds) and ("term" in kinds):
                self.errors.append(Diagnostic(
                    "builtin-sort-mismatch",
                    f"'{b.op}' compares a numeric and a non-numeric side "
                    f"({term_text(b.left)} vs {term_text(b.right)})",
                    b.pos))

    def _side_kind(self, t: Term) -> str:
        """'num', 'term', or 'unknown' (variable not yet sorted)."""
        if isinstance(t, Num):
            return "num"
        if isinstance(t, Arith):
            for v in _term_var_nodes(t):
                self.numeric_vars.setdefault(v.name, v.pos)
            return "num"
        if isinstance(t, Var):
            if t.name not in self.var_domains:
                return "unknown"
            return "num" if domain_is_integral(self.var_domains[t.name]) else "term"
        return "term"

    def finish(self, all_vars: dict[str, object]):
        for name, pos in all_vars.items():
            if name not in self.positional_vars:
                self.errors.append(Diagnostic(
                    "unsortable-variable",
                    f"variable {name} occurs only in comparisons; it needs an "
                    f"argument position to fix its sort",
                    pos))
        for name, pos in self.numeric_vars.items():
            dom = self.var_domains.get(name)
            if dom is not None and not domain_is_integral(dom):
                self.errors.append(Diagnostic(
                    "builtin-sort-mismatch",
                    f"variable {name} is used arithmetically but ranges over "
                    f"{' and '.join(self.var_sorts.get(name, ('an unknown sort',)))}",
                    pos))


def _term_var_nodes(t: Term):
    if isinstance(t, Var):
        yield t
    elif isinstance(t, Arith):
        yield from _term_var_nodes(t.left)
        yield from _term_var_nodes(t.right)
    elif isinstance(t, RecordTerm):
        for a in t.args:
            yield from _term_var_nodes(a)


def literal_var_nodes(lit: Literal):
    for a in lit.args:
        yield from _term_var_nodes(a)


def _collect_decls(program: Program, errors: list[Diagnostic]) -> dict[str, tuple[str, ...]]:
    decls: dict[str, tuple[str, ...]] = {}
    for d in program.predicates_section:
        if d.name in decls and decls[d.name] != d.arg_sorts:
            errors.append(Diagnostic(
                "duplicate-predicate",
                f"predicate '{d.name}' declared twice with different signatures", d.pos))
            continue
        decls[d.name] = d.arg_sorts
    return decls


def typecheck(program: Program, table: SortTable) -> TypedProgram:
    """Check a preprocessed, constant-resolved program against its sorts."""
    errors: list[Diagnostic] = []
    decls = _collect_decls(program, errors)

    typed_rules: list[TypedRule] = []
    for rule in program.rules_section:
        scope = _Scope(table, errors)
        all_vars: dict[str, object] = {}

        def note_vars(lit: Literal):
            for v in literal_var_nodes(lit):
                all_vars.setdefault(v.name, v.pos)

        for lit in rule.head:
            note_vars(lit)
            scope.check_literal(lit, decls)
        builtins: list[Builtin] = []
        for e in rule.body:
            if isinstance(e, Literal):
                note_vars(e)
                scope.check_literal(e, decls)
            elif isinstance(e, NotLit):
                note_vars(e.lit)
                scope.check_literal(e.lit, decls)
            else:
                for v in _term_var_nodes(e.left):
                    all_vars.setdefault(v.name, v.pos)
                for v in _term_var_nodes(e.right):
                    all_vars.setdefault(v.name, v.pos)
                builtins.append(e)
        for b in builtins:  # after positions fixed the variable sorts
            scope.check_builtin(b)
        scope.finish(all_vars)
        typed_rules.append(TypedRule(rule, scope.var_domains, scope.var_sorts,
                                     tuple(scope.checks)))

    if errors:
        raise SparcTypeError(errors)
    return TypedProgram(program, tuple(typed_rules), decls)


def typecheck_query(query: Query, program_or_decls, table: SortTable) -> TypedQuery:
    """Check a query literal against the program's declarations."""
    errors: list[Diagnostic] = []
    if isinstance(program_or_decls, TypedProgram):
        decls = program_or_decls.decls
    elif isinstance(program_or_decls, Program):
        decls = _collect_decls(program_or_decls, errors)
    else:
        decls = program_or_decls
    scope = _Scope(table, errors)
    all_vars = {v.name: v.pos for v in literal_var_nodes(query.literal)}
    scope.check_literal(query.literal, decls)
    scope.finish(all_vars)
    if errors:
        raise SparcTypeError(errors)
    return TypedQuery(query, scope.var_domains, scope.var_sorts, tuple(scope.checks))
