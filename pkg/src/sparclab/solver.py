"""Answer-set enumeration for ground programs.

The search works on a bitmask encoding of the ground program:

* non-disjunctive programs go through a well-founded (alternating fixpoint)
  computation; when it decides every atom the unique candidate is checked
  directly, otherwise a DPLL-style enumeration runs over the undecided
  residue only;
* disjunctive programs are enumerated as classical models of the rule
  clauses and filtered through :func:`is_stable`;
* :func:`is_stable` is the independent reduct checker: consistency, model
  property, then minimality of the candidate as a model of the reduct
  (definite closure plus a small search over disjunctive remainders);
* :func:`brute_force_answer_sets` filters all ``2^n`` subsets of the
  Herbrand literals through :func:`is_stable` (the test oracle).
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable

from .errors import Diagnostic, SolveError, TimeoutExceeded, TooManyAnswerSets
from .grounding import GroundProgram
from .syntax import Literal, literal_key, literal_text

MAX_TIMEOUT_SEC = 50.0
DEFAULT_TIMEOUT_SEC = 20.0
DEFAULT_ANSWER_SET_CAP = 1000
_BRUTE_FORCE_BOUND = 20


@dataclass(frozen=True)
class SolveLimits:
    timeout_sec: float = DEFAULT_TIMEOUT_SEC
    max_answer_sets: int = DEFAULT_ANSWER_SET_CAP
    max_ground_rules: int = 5_000_000

    def __post_init__(self):
        if not (0 < self.timeout_sec <= MAX_TIMEOUT_SEC):
            raise ValueError(f"timeout must lie in (0, {MAX_TIMEOUT_SEC:g}] seconds")


@dataclass(frozen=True)
class AnswerSet:
    literals: frozenset[Literal]

    def sorted_literals(self) -> list[Literal]:
        return sorted(self.literals, key=literal_key)

    def text(self) -> str:
        return "{" + ", ".join(literal_text(l) for l in self.sorted_literals()) + "}"

    def __contains__(self, lit: Literal) -> bool:
        return lit in self.literals


def format_answer_sets(sets: Iterable[AnswerSet]) -> str:
    """One answer set per line, literals comma-separated in braces."""
    return "\n".join(s.text() for s in sets)


# ---------------------------------------------------------------------------
# Bitmask index

class _Index:
    def __init__(self, gp: GroundProgram):
        self.lits: list[Literal] = sorted(gp.herbrand, key=literal_key)
        self.id_of = {l: i for i, l in enumerate(self.lits)}
        self.n = len(self.lits)
        self.rules: list[tuple[int, int, int]] = []   # (head, pos, neg) masks
        for r in gp.rules:
            head = pos = neg = 0
            for l in r.head:
                head |= 1 << self.id_of[l]
            for l in r.pos:
                pos |= 1 << self.id_of[l]
            for l in r.neg:
                neg |= 1 << self.id_of[l]
            self.rules.append((head, pos, neg))
        self.contrary_pairs: list[tuple[int, int]] = []
        for l, i in self.id_of.items():
            if l.neg:
                j = self.id_of.get(l.contrary())
                if j is not None:
                    self.contrary_pairs.append((i, j))
        self.fact_mask = 0
        for head, pos, neg in self.rules:
            if pos == 0 and neg == 0 and head and head & (head - 1) == 0:
                self.fact_mask |= head
        self.disjunctive = any(head & (head - 1) for head, _, _ in self.rules)

    def mask_of(self, literals: Iterable[Literal]) -> int | None:
        m = 0
        for l in literals:
            i = self.id_of.get(l)
            if i is None:
                return None
            m |= 1 << i
        return m

    def to_answer_set(self, mask: int) -> AnswerSet:
        return AnswerSet(frozenset(self.lits[i] for i in _bits(mask)))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _index(gp: GroundProgram) -> _Index:
    idx = getattr(gp, "_solver_index", None)
    if idx is None:
        idx = _Index(gp)
        gp._solver_index = idx
    return idx


# ---------------------------------------------------------------------------
# Stability check

def is_stable(gp: GroundProgram, candidate: Iterable[Literal]) -> bool:
    """True iff the candidate is a consistent minimal model of the reduct."""
    idx = _index(gp)
    cand = candidate.literals if isinstance(candidate, AnswerSet) else set(candidate)
    mask = idx.mask_of(cand)
    if mask is None:   # contains a literal the program never mentions
        return False
    return _is_stable_mask(idx, mask)


def _is_stable_mask(idx: _Index, s: int) -> bool:
    if s & idx.fact_mask != idx.fact_mask:
        return False
    for i, j in idx.contrary_pairs:
        if s >> i & 1 and s >> j & 1:
            return False
    relevant: list[tuple[int, int]] = []   # (head & s, pos) of reduct rules
    for head, pos, neg in idx.rules:
        if neg & s:
            continue
        if pos & s == pos:
            if head & s == 0:
                return False     # rule (or constraint) violated by the model
            relevant.append((head & s, pos))
    # definite closure: rules whose effective head is a single atom
    d = 0
    changed = True
    while changed:
        changed = False
        for head, pos in relevant:
            if head & d == 0 and pos & d == pos and head & (head - 1) == 0:
                d |= head
                changed = True
    if d == s:
        return True
    free = s & ~d
    # a proper sub-model must leave at least one free atom out
    clauses = [(head, pos) for head, pos in relevant] + [(0, free)]
    return not _sat_clauses(clauses, fixed_true=d, variables=free)


def _sat_clauses(clauses: list[tuple[int, int]], fixed_true: int, variables: int) -> bool:
    """Satisfiability of clauses (pos_mask, neg_mask): some pos atom true or
    some neg atom false.  Atoms outside fixed_true | variables are false."""

    def rec(t: int, f: int) -> bool:
        while True:
            forced_t = 0
            forced_f = 0
            for pos, neg in clauses:
                if pos & t or neg & f:
                    continue
                un_pos = pos & variables & ~t & ~f
                un_neg = neg & variables & ~t & ~f
                if un_pos & un_neg:   # tautology on an undecided atom
                    continue
                if un_pos == 0 and un_neg == 0:
                    return False
                if un_pos == 0 and un_neg & (un_neg - 1) == 0:
                    forced_f |= un_neg
                elif un_neg == 0 and un_pos & (un_pos - 1) == 0:
                    forced_t |= un_pos
            if forced_t & forced_f:
                return False
            if not forced_t and not forced_f:
                break
            t |= forced_t
            f |= forced_f
        undecided = variables & ~t & ~f
        if undecided == 0:
            return True
        bit = undecided & -undecided
        return rec(t, f | bit) or rec(t | bit, f)

    # clauses whose pos side touches fixed_true are pre-satisfied
    cl = []
    for pos, neg in clauses:
        if pos & fixed_true:
            continue
        # atoms outside variables|fixed_true are false: their pos occurrences
        # can never fire, their neg occurrences satisfy the clause outright
        if neg & ~(variables | fixed_true):
            continue
        cl.append((pos & variables, neg & variables))
    clauses = cl
    return rec(0, 0)


# ---------------------------------------------------------------------------
# Well-founded approximation (non-disjunctive rules only)

def _derive(idx: _Index, against: int) -> int:
    """Least fixpoint with 'not b' true iff b is not in ``against``;
    constraints (empty heads) do not derive anything."""
    enabled = [(head, pos) for head, pos, neg in idx.rules
               if head and neg & against == 0]
    derived = 0
    changed = True
    while changed:
        changed = False
        for head, pos in enabled:
            if head & derived == 0 and pos & derived == pos:
                derived |= head
                changed = True
    return derived


def _well_founded(idx: _Index, deadline: float | None, limit: float) -> tuple[int, int]:
    """Returns (true_mask, possible_mask)."""
    over = _derive(idx, 0)
    under = _derive(idx, over)
    while True:
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutExceeded(limit)
        new_over = _derive(idx, under)
        new_under = _derive(idx, new_over)
        if new_over == over and new_under == under:
            return under, over
        over, under = new_over, new_under


# ---------------------------------------------------------------------------
# Model enumeration

class _StopSearch(Exception):
    pass


def _enumerate_models(idx: _Index, fixed_true: int, fixed_false: int,
                      deadline: float | None, limit: float, on_model) -> None:
    """Yield every total assignment satisfying all rule clauses and the
    consistency constraints, restricted by the fixed partial assignment."""
    all_mask = (1 << idx.n) - 1
    clauses: list[tuple[int, int]] = []
    for head, pos, neg in idx.rules:
        # rule as clause: some head atom true, some pos atom false, or some
        # neg atom true
        clauses.append((head | neg, pos))
    for i, j in idx.contrary_pairs:
        clauses.append((0, (1 << i) | (1 << j)))

    def rec(t: int, f: int):
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutExceeded(limit)
        while True:
            forced_t = 0
            forced_f = 0
            for pos, neg in clauses:
                if pos & t or neg & f:
                    continue
                un_pos = pos & ~t & ~f
                un_neg = neg & ~t & ~f
                if un_pos & un_neg:   # tautology on an undecided atom
                    continue
                if un_pos == 0 and un_neg == 0:
                    return
                if un_pos == 0 and un_neg & (un_neg - 1) == 0:
                    forced_f |= un_neg
                elif un_neg == 0 and un_pos & (un_pos - 1) == 0:
                    forced_t |= un_pos
            if forced_t & forced_f:
                return
            if not forced_t and not forced_f:
                break
            t |= forced_t
            f |= forced_f
        undecided = all_mask & ~t & ~f
        if undecided == 0:
            on_model(t)
            return
        bit = undecided & -undecided
        rec(t, f | bit)
        rec(t | bit, f)

    rec(fixed_true, fixed_false)


# ---------------------------------------------------------------------------
# Public entry points

def answer_sets(gp: GroundProgram, limits: SolveLimits | None = None,
                deadline: float | None = None) -> list[AnswerSet]:
    """All stable models, deterministically ordered.

    Raises :class:`TooManyAnswerSets` past ``limits.max_answer_sets`` and
    :class:`TimeoutExceeded` past the cooperative deadline.  An inconsistent
    program yields an empty list, not an error.
    """
    limits = limits or SolveLimits()
    if deadline is None:
        deadline = time.monotonic() + limits.timeout_sec
    idx = _index(gp)
    found: list[int] = []

    def add_model(mask: int):
        if _is_stable_mask(idx, mask):
            found.append(mask)
            if len(found) > limits.max_answer_sets:
                raise TooManyAnswerSets(limits.max_answer_sets)

    if not idx.disjunctive:
        true_mask, possible = _well_founded(idx, deadline, limits.timeout_sec)
        inconsistent = any(
            true_mask >> i & 1 and true_mask >> j & 1 for i, j in idx.contrary_pairs)
        if not inconsistent and true_mask == possible:
            add_model(true_mask)
        elif not inconsistent:
            all_mask = (1 << idx.n) - 1
            _enumerate_models(idx, true_mask, all_mask & ~possible,
                              deadline, limits.timeout_sec, add_model)
    else:
        _enumerate_models(idx, 0, 0, deadline, limits.timeout_sec, add_model)

    ordered = sorted(tuple(_bits(m)) for m in found)
    return [idx.to_answer_set(_mask_from_bits(bits)) for bits in ordered]


def _mask_from_bits(bits: tuple[int, ...]) -> int:
    m = 0
    for b in bits:
        m |= 1 << b
    return m


def brute_force_answer_sets(gp: GroundProgram) -> list[AnswerSet]:
    """Filter all subsets of the Herbrand literals through :func:`is_stable`.

    Only usable up to 20 literals; independent of the search in
    :func:`answer_sets` apart from the shared stability checker.
    """
    idx = _index(gp)
    if idx.n > _BRUTE_FORCE_BOUND:
        raise SolveError([Diagnostic(
            "oracle-refused",
            f"brute force over {idx.n} literals exceeds the bound of {_BRUTE_FORCE_BOUND}")])
    stable = [m for m in range(1 << idx.n) if _is_stable_mask(idx, m)]
    ordered = sorted(tuple(_bits(m)) for m in stable)
    return [idx.to_answer_set(_mask_from_bits(bits)) for bits in ordered]
