"""Rule instantiation: from a typed program to a variable-free program.

Three entry points:

* :func:`ground` -- the contract grounder: every assignment of each rule's
  variables over their domains, arithmetic evaluated (integer, division
  truncating toward zero), builtin-false and out-of-sort instances dropped,
  duplicates removed.  Early pruning only skips work, never changes output.
* :func:`ground_naive` -- cross product then filtering, no cleverness; the
  test oracle, refuses more than 100k instantiations.
* :func:`ground_reachable` -- bottom-up instantiation that only keeps rules
  whose positive body atoms are derivable.  Answer sets are unchanged (a
  dropped rule has a positive body atom no answer set can contain) while
  grounding of style-header programs shrinks by orders of magnitude.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from functools import cached_property
from math import prod

from .errors import Diagnostic, GroundingError, TimeoutExceeded
from .sorts import DEFAULT_ENUM_GUARD, SortTable
from .syntax import (
    Arith, Builtin, Const, Literal, NotLit, Num, RecordTerm, Var, eval_term,
    literal_key, literal_text, term_key, term_vars,
)
from .typecheck import TypedProgram, TypedRule

DEFAULT_MAX_GROUND_RULES = 5_000_000
_NAIVE_BOUND = 100_000


@dataclass(frozen=True)
class GroundRule:
    head: tuple[Literal, ...]
    pos: tuple[Literal, ...]
    neg: tuple[Literal, ...]

    def text(self) -> str:
        head = " | ".join(literal_text(l) for l in self.head)
        body = ", ".join([literal_text(l) for l in self.pos]
                         + [f"not {literal_text(l)}" for l in self.neg])
        if not body:
            return f"{head}."
        return f"{head} :- {body}." if head else f":- {body}."


def make_ground_rule(head, pos, neg) -> GroundRule:
    """Normalize literal order so structurally equal rules deduplicate."""
    return GroundRule(
        tuple(sorted(set(head), key=literal_key)),
        tuple(sorted(set(pos), key=literal_key)),
        tuple(sorted(set(neg), key=literal_key)),
    )


@dataclass
class GroundProgram:
    rules: tuple[GroundRule, ...]

    @cached_property
    def herbrand(self) -> frozenset[Literal]:
        lits: set[Literal] = set()
        for r in self.rules:
            lits.update(r.head)
            lits.update(r.pos)
            lits.update(r.neg)
        return frozenset(lits)

    def text(self) -> str:
        return "\n".join(r.text() for r in self.rules) + ("\n" if self.rules else "")


def eval_builtin(b: Builtin, env) -> bool:
    left = eval_term(b.left, env)
    right = eval_term(b.right, env)
    if isinstance(left, Num) and isinstance(right, Num):
        a, c = left.value, right.value
        return {"=": a == c, "!=": a != c, "<": a < c,
                "<=": a <= c, ">": a > c, ">=": a >= c}[b.op]
    if b.op == "=":
        return left == right
    if b.op == "!=":
        return left != right
    raise ArithmeticError(f"ordered comparison of non-integers in '{b.op}'")


class _Deadline:
    def __init__(self, deadline: float | None, limit_sec: float):
        self.deadline = deadline
        self.limit_sec = limit_sec
        self.counter = 0

    def tick(self, every: int = 2048):
        if self.deadline is None:
            return
        self.counter += 1
        if self.counter % every == 0 and time.monotonic() > self.deadline:
            raise TimeoutExceeded(self.limit_sec)


def _rule_vars(trule: TypedRule) -> list[str]:
    return sorted(trule.var_domains)


def _var_values(trule: TypedRule, table_guard: int) -> dict[str, list]:
    from .errors import EnumerationRefused
    out = {}
    for name, dom in trule.var_domains.items():
        card = dom.cardinality()
        if card > table_guard:
            raise EnumerationRefused(f"domain of variable {name}", card, table_guard)
        out[name] = list(dom.iter_terms())
    return out


def _instance_ok(trule: TypedRule, env, pending_builtins, deadline: _Deadline) -> bool:
    """Evaluate remaining builtins and out-of-sort checks for one substitution."""
    deadline.tick()
    try:
        for b in pending_builtins:
            if not eval_builtin(b, env):
                return False
        for check in trule.checks:
            if not check.domain.member(eval_term(check.term, env)):
                return False
    except ZeroDivisionError:
        raise GroundingError([Diagnostic(
            "division-by-zero", "division by zero while instantiating rule",
            trule.rule.pos)]) from None
    return True


def _build_instance(trule: TypedRule, env) -> GroundRule:
    rule = trule.rule
    head = [Literal(l.neg, l.pred, tuple(eval_term(a, env) for a in l.args)) for l in rule.head]
    pos, neg = [], []
    for e in rule.body:
        if isinstance(e, Literal):
            pos.append(Literal(e.neg, e.pred, tuple(eval_term(a, env) for a in e.args)))
        elif isinstance(e, NotLit):
            l = e.lit
            neg.append(Literal(l.neg, l.pred, tuple(eval_term(a, env) for a in l.args)))
    return make_ground_rule(head, pos, neg)


def _rule_builtins(trule: TypedRule) -> list[Builtin]:
    return [e for e in trule.rule.body if isinstance(e, Builtin)]


def _assignment_for(var: str, builtins, bound: set[str]):
    """Find ``var = expr`` (or ``expr = var``) with expr's variables bound."""
    for b in builtins:
        if b.op != "=":
            continue
        for mine, other in ((b.left, b.right), (b.right, b.left)):
            if isinstance(mine, Var) and mine.name == var and set(term_vars(other)) <= bound:
                return b, other
    return None


def ground(typed: TypedProgram, table: SortTable, *,
           max_rules: int = DEFAULT_MAX_GROUND_RULES,
           enum_guard: int = DEFAULT_ENUM_GUARD,
           deadline: float | None = None,
           limit_sec: float = 0.0) -> GroundProgram:
    """Instantiate every rule over the full cross product of its variable
    domains (the contract semantics); see the module docstring."""
    dl = _Deadline(deadline, limit_sec)
    seen: dict[GroundRule, None] = {}

    for trule in typed.rules:
        varnames = _rule_vars(trule)
        values = _var_values(trule, enum_guard)
        builtins = _rule_builtins(trule)

        # schedule each builtin at the first depth where its variables are bound
        var_index = {v: i for i, v in enumerate(varnames)}
        by_depth: list[list[Builtin]] = [[] for _ in range(len(varnames) + 1)]
        for b in builtins:
            vs = set(term_vars(b.left)) | set(term_vars(b.right))
            depth = max((var_index[v] + 1 for v in vs), default=0)
            by_depth[depth].append(b)

        def emit(env):
            inst = _build_instance(trule, env)
            if inst not in seen:
                seen[inst] = None
                if len(seen) > max_rules:
                    raise GroundingError([Diagnostic(
                        "ground-size-exceeded",
                        f"ground program exceeds the limit of {max_rules} rules")])

        def rec(depth: int, env: dict):
            dl.tick()
            if depth == len(varnames):
                if _instance_ok(trule, env, [], dl):
                    emit(env)
                return
            var = varnames[depth]
            bound = set(varnames[:depth])
            assign = _assignment_for(var, by_depth[depth + 1], bound)
            dom = trule.var_domains[var]
            if assign is not None:
                try:
                    candidate = eval_term(assign[1], env)
                except ZeroDivisionError:
                    raise GroundingError([Diagnostic(
                        "division-by-zero", "division by zero while instantiating rule",
                        trule.rule.pos)]) from None
                candidates = [candidate] if dom.member(candidate) else []
            else:
                candidates = values[var]
            for v in candidates:
                env[var] = v
                ok = True
                try:
                    for b in by_depth[depth + 1]:
                        if not eval_builtin(b, env):
                            ok = False
                            break
                except ZeroDivisionError:
                    raise GroundingError([Diagnostic(
                        "division-by-zero", "division by zero while instantiating rule",
                        trule.rule.pos)]) from None
                if ok:
                    rec(depth + 1, env)
            env.pop(var, None)

        if not varnames:
            if _instance_ok(trule, {}, builtins, dl):
                emit({})
        else:
            rec(0, {})

    return GroundProgram(tuple(seen))


def ground_naive(typed: TypedProgram, table: SortTable,
                 bound: int = _NAIVE_BOUND) -> GroundProgram:
    """Pure cross-product instantiation then filtering; the test oracle."""
    total = 0
    per_rule = []
    for trule in typed.rules:
        values = _var_values(trule, bound)
        count = prod(len(v) for v in values.values())
        total += max(count, 1)
        per_rule.append(values)
    if total > bound:
        raise GroundingError([Diagnostic(
            "oracle-refused", f"naive grounding of {total} instantiations exceeds {bound}")])

    dl = _Deadline(None, 0.0)
    seen: dict[GroundRule, None] = {}
    for trule, values in zip(typed.rules, per_rule):
        varnames = _rule_vars(trule)
        builtins = _rule_builtins(trule)
        for combo in itertools.product(*(values[v] for v in varnames)):
            env = dict(zip(varnames, combo))
            if _instance_ok(trule, env, builtins, dl):
                inst = _build_instance(trule, env)
                seen.setdefault(inst, None)
    return GroundProgram(tuple(seen))


# ---------------------------------------------------------------------------
# Reachability-pruned grounding

class _AtomStore:
    """Derived atoms indexed by predicate and by the shape of the first
    argument, so record-command patterns only scan their own bucket."""

    def __init__(self):
        self.by_pred: dict[tuple[bool, str], list[Literal]] = {}
        self.by_skel: dict[tuple, list[Literal]] = {}
        self.all: set[Literal] = set()
        self.versions: dict[tuple[bool, str], int] = {}

    @staticmethod
    def _skel(t):
        if isinstance(t, RecordTerm):
            return ("r", t.name, len(t.args))
        return ("g", t)

    def add(self, lit: Literal) -> bool:
        if lit in self.all:
            return False
        self.all.add(lit)
        key = (lit.neg, lit.pred)
        self.by_pred.setdefault(key, []).append(lit)
        self.versions[key] = self.versions.get(key, 0) + 1
        if lit.args:
            self.by_skel.setdefault(key + (self._skel(lit.args[0]),), []).append(lit)
        return True

    def version_of(self, keys) -> tuple[int, ...]:
        return tuple(self.versions.get(k, 0) for k in keys)

    def candidates(self, lit: Literal, env: dict) -> list[Literal]:
        if lit.args:
            a0 = lit.args[0]
            if isinstance(a0, Var):
                a0 = env.get(a0.name, a0)
            if isinstance(a0, (Num, Const, RecordTerm)):
                return self.by_skel.get((lit.neg, lit.pred, self._skel(a0)), [])
        return self.by_pred.get((lit.neg, lit.pred), [])


def _unify(pattern_args, ground_args, env: dict, var_domains) -> dict | None:
    env2 = env
    copied = False
    for pat, g in zip(pattern_args, ground_args):
        stack = [(pat, g)]
        while stack:
            p, gg = stack.pop()
            if isinstance(p, Var):
                bound = env2.get(p.name)
                if bound is not None:
                    if bound != gg:
                        return None
                else:
                    if not var_domains[p.name].member(gg):
                        return None
                    if not copied:
                        env2 = dict(env2)
                        copied = True
                    env2[p.name] = gg
            elif isinstance(p, (Num, Const)):
                if p != gg:
                    return None
            elif isinstance(p, RecordTerm):
                if not (isinstance(gg, RecordTerm) and gg.name == p.name
                        and len(gg.args) == len(p.args)):
                    return None
                stack.extend(zip(p.args, gg.args))
            else:  # arithmetic: evaluable only when its variables are bound
                assert isinstance(p, Arith)
                try:
                    if eval_term(p, env2) != gg:
                        return None
                except (KeyError, ZeroDivisionError):
                    return None
    return env2


def _lit_matchable(lit: Literal, bound: set[str]) -> bool:
    """A literal can be joined when none of its arithmetic args has free vars."""
    def walk(t) -> bool:
        if isinstance(t, Arith):
            return set(term_vars(t)) <= bound
        if isinstance(t, RecordTerm):
            return all(walk(a) for a in t.args)
        return True
    return all(walk(a) for a in lit.args)


def ground_reachable(typed: TypedProgram, table: SortTable, *,
                     max_rules: int = DEFAULT_MAX_GROUND_RULES,
                     enum_guard: int = DEFAULT_ENUM_GUARD,
                     deadline: float | None = None,
                     limit_sec: float = 0.0) -> GroundProgram:
    """Ground keeping only rules whose positive body is derivable.

    Computes the standard over-approximation of every answer set (negative
    literals assumed true, every head disjunct derivable) and instantiates
    positive body literals by matching against it.  The stable models of the
    result equal those of :func:`ground` on the same input.
    """
    dl = _Deadline(deadline, limit_sec)
    store = _AtomStore()
    emitted: list[set[tuple]] = [set() for _ in typed.rules]
    collected: dict[tuple, GroundRule] = {}
    # a rule only needs re-running when a positive body predicate grew
    last_seen: list[tuple[int, ...] | None] = [None for _ in typed.rules]

    def run_rule(idx: int, trule: TypedRule) -> bool:
        changed = False
        rule = trule.rule
        varnames = _rule_vars(trule)
        builtins = _rule_builtins(trule)
        pos_lits = [e for e in rule.body if isinstance(e, Literal)]
        body_keys = [(l.neg, l.pred) for l in pos_lits]
        snapshot = store.version_of(body_keys)
        if snapshot == last_seen[idx]:
            return False
        last_seen[idx] = snapshot

        def finish(env: dict) -> None:
            nonlocal changed
            key = tuple(term_key(env[v]) for v in varnames)
            if key in emitted[idx]:
                return
            emitted[idx].add(key)
            if not _instance_ok(trule, env, builtins, dl):
                return
            inst = _build_instance(trule, env)
            collected[(idx, key)] = inst
            if len(collected) > max_rules:
                raise GroundingError([Diagnostic(
                    "ground-size-exceeded",
                    f"ground program exceeds the limit of {max_rules} rules")])
            for h in inst.head:
                if store.add(h):
                    changed = True

        def enumerate_leftovers(env: dict):
            free = [v for v in varnames if v not in env]
            if not free:
                finish(env)
                return

            def rec(i: int, env2: dict):
                dl.tick()
                if i == len(free):
                    finish(dict(env2))
                    return
                var = free[i]
                bound = set(env2)
                assign = _assignment_for(var, builtins, bound)
                dom = trule.var_domains[var]
                if assign is not None:
                    try:
                        cand = eval_term(assign[1], env2)
                    except ZeroDivisionError:
                        raise GroundingError([Diagnostic(
                            "division-by-zero", "division by zero while instantiating rule",
                            rule.pos)]) from None
                    candidates = [cand] if dom.member(cand) else []
                else:
                    card = dom.cardinality()
                    if card > enum_guard:
                        from .errors import EnumerationRefused
                        raise EnumerationRefused(f"domain of variable {var}", card, enum_guard)
                    candidates = dom.iter_terms()
                for v in candidates:
                    env2[var] = v
                    if _partial_builtins_ok(env2):
                        rec(i + 1, env2)
                env2.pop(var, None)

            rec(0, dict(env))

        def _partial_builtins_ok(env) -> bool:
            try:
                for b in builtins:
                    vs = set(term_vars(b.left)) | set(term_vars(b.right))
                    if vs <= set(env) and not eval_builtin(b, env):
                        return False
            except ZeroDivisionError:
                raise GroundingError([Diagnostic(
                    "division-by-zero", "division by zero while instantiating rule",
                    rule.pos)]) from None
            return True

        def join(env: dict, remaining: list[Literal]):
            dl.tick()
            if not remaining:
                enumerate_leftovers(env)
                return
            bound = set(env)
            pick = None
            pick_candidates = None
            for i, lit in enumerate(remaining):
                if _lit_matchable(lit, bound):
                    cands = store.candidates(lit, env)
                    if pick_candidates is None or len(cands) < len(pick_candidates):
                        pick, pick_candidates = i, cands
            if pick is None:
                # bind one more variable from a domain, then retry the join
                needed = sorted(set().union(*(set(term_vars(a)) for l in remaining for a in l.args)) - bound)
                var = needed[0]
                dom = trule.var_domains[var]
                card = dom.cardinality()
                if card > enum_guard:
                    from .errors import EnumerationRefused
                    raise EnumerationRefused(f"domain of variable {var}", card, enum_guard)
                for v in dom.iter_terms():
                    env2 = dict(env)
                    env2[var] = v
                    if _partial_builtins_ok(env2):
                        join(env2, remaining)
                return
            lit = remaining[pick]
            rest = remaining[:pick] + remaining[pick + 1:]
            snapshot = len(pick_candidates)
            for k in range(snapshot):  # the bucket may grow while we iterate
                env2 = _unify(lit.args, pick_candidates[k].args, env, trule.var_domains)
                if env2 is not None and _partial_builtins_ok(env2):
                    join(env2 if env2 is not env else dict(env2), rest)

        join({}, pos_lits)
        return changed

    while True:
        changed = False
        for idx, trule in enumerate(typed.rules):
            if run_rule(idx, trule):
                changed = True
        if not changed:
            break

    ordered = [collected[k] for k in sorted(collected)]
    # global dedup, first occurrence wins
    seen: dict[GroundRule, None] = {}
    for r in ordered:
        seen.setdefault(r, None)
    return GroundProgram(tuple(seen))
