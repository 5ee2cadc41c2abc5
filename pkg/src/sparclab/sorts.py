"""Sort resolution: domains with membership, exact cardinality and
deterministic enumeration.

Record domains are never materialized; membership is structural and
cardinalities are computed symbolically (union cardinality counts
duplicates once, via interval merging and inclusion-exclusion over
overlapping record groups).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Iterable, Iterator

from .errors import Diagnostic, EnumerationRefused, SortError
from .syntax import (
    Const, EnumSet, GroundTerm, Num, Program, Range, RecordSort, RecordTerm,
    SortDef, SortExpr, SortName, SubsortDecl, Union_,
)

DEFAULT_ENUM_GUARD = 1_000_000


# ---------------------------------------------------------------------------
# Domains

class Domain:
    def member(self, t: GroundTerm) -> bool:
        raise NotImplementedError

    def cardinality(self) -> int:
        raise NotImplementedError

    def iter_terms(self) -> Iterator[GroundTerm]:
        raise NotImplementedError

    def is_empty(self) -> bool:
        return self.cardinality() == 0


@dataclass(frozen=True)
class EmptyDomain(Domain):
    def member(self, t):
        return False

    def cardinality(self):
        return 0

    def iter_terms(self):
        return iter(())


@dataclass(frozen=True)
class EnumDomain(Domain):
    """Explicit elements in written order (first occurrence wins)."""
    elements: tuple[GroundTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "_set", frozenset(self.elements))

    def member(self, t):
        return t in self._set

    def cardinality(self):
        return len(self._set)

    def iter_terms(self):
        seen = set()
        for t in self.elements:
            if t not in seen:
                seen.add(t)
                yield t


@dataclass(frozen=True)
class RangeDomain(Domain):
    lo: int
    hi: int  # inclusive; lo <= hi

    def member(self, t):
        return isinstance(t, Num) and self.lo <= t.value <= self.hi

    def cardinality(self):
        return self.hi - self.lo + 1

    def iter_terms(self):
        for v in range(self.lo, self.hi + 1):
            yield Num(v)


@dataclass(frozen=True)
class RecordDomain(Domain):
    name: str
    components: tuple[Domain, ...]

    def member(self, t):
        return (isinstance(t, RecordTerm) and t.name == self.name
                and len(t.args) == len(self.components)
                and all(c.member(a) for c, a in zip(self.components, t.args)))

    def cardinality(self):
        return prod(c.cardinality() for c in self.components)

    def iter_terms(self):
        # odometer order: leftmost component outermost
        pools = [list(c.iter_terms()) for c in self.components]
        for combo in itertools.product(*pools):
            yield RecordTerm(self.name, combo)


@dataclass(frozen=True)
class UnionDomain(Domain):
    parts: tuple[Domain, ...]

    def member(self, t):
        return any(p.member(t) for p in self.parts)

    def cardinality(self):
        return _union_cardinality(self.parts)

    def iter_terms(self):
        seen = set()
        for p in self.parts:
            for t in p.iter_terms():
                if t not in seen:
                    seen.add(t)
                    yield t


@dataclass(frozen=True)
class IntersectionDomain(Domain):
    """Used for variables constrained by several sorts; enumeration follows
    the first part's order filtered by the rest."""
    parts: tuple[Domain, ...]

    def member(self, t):
        return all(p.member(t) for p in self.parts)

    def cardinality(self):
        simplified = intersect_all(self.parts)
        if isinstance(simplified, IntersectionDomain):  # pragma: no cover - defensive
            return sum(1 for _ in simplified.iter_terms())
        return simplified.cardinality()

    def iter_terms(self):
        first, rest = self.parts[0], self.parts[1:]
        for t in first.iter_terms():
            if all(p.member(t) for p in rest):
                yield t


# -- exact union cardinality -------------------------------------------------

def _flatten(parts: Iterable[Domain]):
    intervals: list[tuple[int, int]] = []
    scalars: set = set()          # non-record enum elements (Const and Num)
    ground_records: set = set()   # RecordTerm elements from enums
    records: list[RecordDomain] = []
    for p in parts:
        if isinstance(p, UnionDomain):
            sub = _flatten(p.parts)
            intervals += sub[0]
            scalars |= sub[1]
            ground_records |= sub[2]
            records += sub[3]
        elif isinstance(p, IntersectionDomain):
            simplified = intersect_all(p.parts)
            if isinstance(simplified, IntersectionDomain):
                ground_records |= {t for t in simplified.iter_terms() if isinstance(t, RecordTerm)}
                scalars |= {t for t in simplified.iter_terms() if not isinstance(t, RecordTerm)}
            else:
                sub = _flatten([simplified])
                intervals += sub[0]
                scalars |= sub[1]
                ground_records |= sub[2]
                records += sub[3]
        elif isinstance(p, EnumDomain):
            for t in p.elements:
                if isinstance(t, RecordTerm):
                    ground_records.add(t)
                else:
                    scalars.add(t)
        elif isinstance(p, RangeDomain):
            intervals.append((p.lo, p.hi))
        elif isinstance(p, RecordDomain):
            records.append(p)
        elif isinstance(p, EmptyDomain):
            pass
        else:  # pragma: no cover - defensive
            raise TypeError(f"unexpected domain {p!r}")
    return intervals, scalars, ground_records, records


def _merged_interval_size(intervals: list[tuple[int, int]], points: list[int]) -> int:
    spans = sorted(intervals + [(v, v) for v in points])
    total = 0
    cur: tuple[int, int] | None = None
    for lo, hi in spans:
        if cur is None or lo > cur[1] + 1:
            if cur is not None:
                total += cur[1] - cur[0] + 1
            cur = (lo, hi)
        else:
            cur = (cur[0], max(cur[1], hi))
    if cur is not None:
        total += cur[1] - cur[0] + 1
    return total


def _union_cardinality(parts: Iterable[Domain]) -> int:
    intervals, scalars, ground_records, records = _flatten(parts)
    ints = [t.value for t in scalars if isinstance(t, Num)]
    names = [t for t in scalars if isinstance(t, Const)]
    count = _merged_interval_size(intervals, ints) + len(set(names))
    count += sum(1 for r in ground_records if not any(rd.member(r) for rd in records))
    groups: dict[tuple[str, int], list[RecordDomain]] = {}
    for rd in records:
        groups.setdefault((rd.name, len(rd.components)), []).append(rd)
    for group in groups.values():
        uniq = list(dict.fromkeys(group))
        if len(uniq) > 12:
            raise SortError.single(
                "sort-too-complex",
                f"union of {len(uniq)} overlapping record sorts is not supported")
        n = len(uniq)
        for k in range(1, n + 1):
            for combo in itertools.combinations(uniq, k):
                inter = combo[0]
                for other in combo[1:]:
                    inter = intersect(inter, other)
                    if inter.is_empty():
                        break
                size = 0 if inter.is_empty() else inter.cardinality()
                count += size if k % 2 == 1 else -size
    return count


# -- exact intersections -----------------------------------------------------

def intersect(a: Domain, b: Domain) -> Domain:
    if isinstance(a, EmptyDomain) or isinstance(b, EmptyDomain):
        return EmptyDomain()
    if isinstance(a, UnionDomain):
        parts = [intersect(p, b) for p in a.parts]
        parts = [p for p in parts if not isinstance(p, EmptyDomain)]
        if not parts:
            return EmptyDomain()
        if len(parts) == 1:
            return parts[0]
        return UnionDomain(tuple(parts))
    if isinstance(b, UnionDomain):
        return intersect(b, a)
    if isinstance(a, IntersectionDomain):
        return intersect_all(tuple(a.parts) + (b,))
    if isinstance(b, IntersectionDomain):
        return intersect_all((a,) + tuple(b.parts))
    if isinstance(a, EnumDomain):
        kept = tuple(t for t in a.iter_terms() if b.member(t))
        return EnumDomain(kept) if kept else EmptyDomain()
    if isinstance(b, EnumDomain):
        kept = tuple(t for t in b.iter_terms() if a.member(t))
        return EnumDomain(kept) if kept else EmptyDomain()
    if isinstance(a, RangeDomain) and isinstance(b, RangeDomain):
        lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
        return RangeDomain(lo, hi) if lo <= hi else EmptyDomain()
    if isinstance(a, RecordDomain) and isinstance(b, RecordDomain):
        if a.name != b.name or len(a.components) != len(b.components):
            return EmptyDomain()
        comps = tuple(intersect(x, y) for x, y in zip(a.components, b.components))
        if any(isinstance(c, EmptyDomain) for c in comps):
            return EmptyDomain()
        return RecordDomain(a.name, comps)
    # Range x Record cannot overlap
    return EmptyDomain()


def intersect_all(parts: Iterable[Domain]) -> Domain:
    parts = list(parts)
    acc = parts[0]
    for p in parts[1:]:
        acc = intersect(acc, p)
        if isinstance(acc, EmptyDomain):
            return acc
    return acc


def record_alternatives(d: Domain, name: str, arity: int) -> list[RecordDomain]:
    """All record domains with the given name/arity reachable in ``d``."""
    if isinstance(d, RecordDomain):
        return [d] if d.name == name and len(d.components) == arity else []
    if isinstance(d, (UnionDomain, IntersectionDomain)):
        out = []
        for p in d.parts:
            out.extend(record_alternatives(p, name, arity))
        return out
    return []


def enum_record_elements(d: Domain, name: str, arity: int) -> list[RecordTerm]:
    """Ground record terms of the given shape listed directly in enums."""
    if isinstance(d, EnumDomain):
        return [t for t in d.elements
                if isinstance(t, RecordTerm) and t.name == name and len(t.args) == arity]
    if isinstance(d, (UnionDomain, IntersectionDomain)):
        out = []
        for p in d.parts:
            out.extend(enum_record_elements(p, name, arity))
        return out
    return []


def domain_is_integral(d: Domain) -> bool:
    """True when every element of the domain is an integer."""
    if isinstance(d, (RangeDomain, EmptyDomain)):
        return True
    if isinstance(d, EnumDomain):
        return all(isinstance(t, Num) for t in d.elements)
    if isinstance(d, UnionDomain):
        return all(domain_is_integral(p) for p in d.parts)
    if isinstance(d, IntersectionDomain):
        return any(domain_is_integral(p) for p in d.parts)
    return False


def domain_has_integers(d: Domain) -> bool:
    """True when the domain contains at least one integer."""
    if isinstance(d, RangeDomain):
        return True
    if isinstance(d, EnumDomain):
        return any(isinstance(t, Num) for t in d.elements)
    if isinstance(d, UnionDomain):
        return any(domain_has_integers(p) for p in d.parts)
    if isinstance(d, IntersectionDomain):
        return any(isinstance(t, Num) for t in itertools.islice(d.iter_terms(), 10000))
    return False


# ---------------------------------------------------------------------------
# Sort table

@dataclass
class SortTable:
    domains: dict[str, Domain]
    consts: dict[str, int]

    def domain(self, name: str) -> Domain:
        try:
            return self.domains[name]
        except KeyError:
            raise SortError.single("unknown-sort", f"unknown sort name '{name}'") from None

    def member(self, name: str, term: GroundTerm) -> bool:
        return self.domain(name).member(term)

    def cardinality(self, name: str) -> int:
        return self.domain(name).cardinality()

    def enumerate(self, name: str, guard: int = DEFAULT_ENUM_GUARD) -> list[GroundTerm]:
        d = self.domain(name)
        card = d.cardinality()
        if card > guard:
            raise EnumerationRefused(name, card, guard)
        return list(d.iter_terms())


def build_sort_table(program: Program) -> SortTable:
    """Resolve every sort definition of a preprocessed program.

    Range bounds are substituted from ``#const`` directives; cycles, unknown
    names, inverted ranges and empty sorts are reported together.
    """
    consts = {c.name: c.value for c in program.consts}
    defs: dict[str, SortDef] = {}
    errors: list[Diagnostic] = []
    for s in program.sorts_section:
        if isinstance(s, SubsortDecl):
            errors.append(Diagnostic(
                "unexpanded-subsort",
                f"subsort declaration for '{s.sort_name}' survives preprocessing", s.pos))
            continue
        if s.name in defs:
            errors.append(Diagnostic(
                "duplicate-sort", f"sort '{s.name}' is defined more than once", s.pos))
            continue
        defs[s.name] = s

    resolved: dict[str, Domain] = {}
    in_progress: list[str] = []

    def bound_value(t, pos) -> int | None:
        if isinstance(t, Num):
            return t.value
        if isinstance(t, Const):
            if t.name in consts:
                return consts[t.name]
            errors.append(Diagnostic(
                "unknown-const", f"range bound '{t.name}' is not a defined constant", pos))
            return None
        errors.append(Diagnostic("bad-range-bound", "range bounds must be integers or constants", pos))
        return None

    def resolve_name(name: str, pos) -> Domain:
        if name in resolved:
            return resolved[name]
        if name in in_progress:
            chain = " -> ".join(in_progress[in_progress.index(name):] + [name])
            errors.append(Diagnostic("cyclic-sort", f"cyclic sort definition: {chain}", pos))
            return EmptyDomain()
        if name not in defs:
            errors.append(Diagnostic("unknown-sort", f"unknown sort name '{name}'", pos))
            return EmptyDomain()
        in_progress.append(name)
        dom = resolve_expr(defs[name].expr)
        in_progress.pop()
        resolved[name] = dom
        return dom

    def resolve_expr(e: SortExpr) -> Domain:
        if isinstance(e, EnumSet):
            return EnumDomain(tuple(e.elements))
        if isinstance(e, Range):
            lo = bound_value(e.lo, e.pos)
            hi = bound_value(e.hi, e.pos)
            if lo is None or hi is None:
                return EmptyDomain()
            if lo > hi:
                errors.append(Diagnostic(
                    "range-inverted", f"range {lo}..{hi} is inverted", e.pos))
                return EmptyDomain()
            return RangeDomain(lo, hi)
        if isinstance(e, SortName):
            return resolve_name(e.name, e.pos)
        if isinstance(e, RecordSort):
            comps = tuple(resolve_name(c, e.pos) for c in e.components)
            return RecordDomain(e.name, comps)
        assert isinstance(e, Union_)
        return UnionDomain(tuple(resolve_expr(p) for p in e.parts))

    for name in defs:
        resolve_name(name, defs[name].pos)

    if not errors:
        for name, dom in resolved.items():
            if dom.cardinality() == 0:
                errors.append(Diagnostic(
                    "empty-sort", f"sort '{name}' denotes the empty set", defs[name].pos))

    if errors:
        raise SortError(errors)
    return SortTable(resolved, consts)
