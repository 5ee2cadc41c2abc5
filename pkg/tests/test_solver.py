import random
import time

import pytest

from sparclab.errors import SolveError, TimeoutExceeded, TooManyAnswerSets
from sparclab.grounding import GroundProgram, ground, ground_reachable, make_ground_rule
from sparclab.solver import (
    AnswerSet, SolveLimits, answer_sets, brute_force_answer_sets,
    format_answer_sets, is_stable,
)
from sparclab.syntax import Const, Literal

from conftest import ORACLE_CORPUS, corpus_text


def lit(p, *args, neg=False):
    return Literal(neg, p, tuple(Const(a) for a in args))


def gr(head, pos=(), neg=()):
    return make_ground_rule(head, pos, neg)


def compile_ground(text: str):
    from sparclab.parser import parse_program
    from sparclab.preprocess import expand, resolve_constants
    from sparclab.sorts import build_sort_table
    from sparclab.typecheck import typecheck
    p = resolve_constants(expand(parse_program(text)))
    table = build_sort_table(p)
    return ground(typecheck(p, table), table)


def test_is_stable_textbook():
    gp = GroundProgram((gr([lit("p")], neg=[lit("q")]),))
    assert is_stable(gp, {lit("p")})
    assert not is_stable(gp, {lit("q")})
    assert not is_stable(gp, set())


def test_is_stable_disjunction_not_minimal():
    gp = GroundProgram((gr([lit("p"), lit("q")]),))
    assert is_stable(gp, {lit("p")})
    assert is_stable(gp, {lit("q")})
    assert not is_stable(gp, {lit("p"), lit("q")})


def test_is_stable_rejects_inconsistent():
    gp = GroundProgram((gr([lit("p", "a")]), gr([lit("p", "a", neg=True)])))
    assert not is_stable(gp, {lit("p", "a"), lit("p", "a", neg=True)})


def test_stratified_least_model():
    gp = compile_ground(corpus_text("t1.sp"))
    (only,) = answer_sets(gp)
    assert only.text() == "{p(a), q(a)}"


def test_disjunction_two_answer_sets():
    gp = compile_ground(corpus_text("disj.sp"))
    assert [s.text() for s in answer_sets(gp)] == ["{p(a)}", "{p(b)}"]


def test_constraint_filters_everything():
    gp = GroundProgram((gr([lit("p")]), gr([], pos=[lit("p")])))
    assert answer_sets(gp) == []
    assert brute_force_answer_sets(gp) == []


def test_empty_program_single_empty_set():
    gp = GroundProgram(())
    assert answer_sets(gp) == [AnswerSet(frozenset())]
    assert brute_force_answer_sets(gp) == [AnswerSet(frozenset())]


def test_classical_negation_via_implicit_constraint():
    gp = GroundProgram((gr([lit("p", "a")]), gr([lit("p", "a", neg=True)])))
    assert answer_sets(gp) == []


def test_even_negation_loop():
    gp = GroundProgram((gr([lit("p")], neg=[lit("q")]),
                        gr([lit("q")], neg=[lit("p")])))
    assert [s.text() for s in answer_sets(gp)] == ["{p}", "{q}"]


def test_odd_negation_loop_inconsistent():
    gp = GroundProgram((gr([lit("p")], neg=[lit("p")]),))
    assert answer_sets(gp) == []
    assert brute_force_answer_sets(gp) == []


def test_triangle_six_answer_sets_and_oracle():
    gp = compile_ground(corpus_text("map_triangle.sp"))
    fast = answer_sets(gp)
    assert len(fast) == 6
    assert brute_force_answer_sets(gp) == fast


def test_all_returned_sets_are_stable_and_supported():
    for name in ORACLE_CORPUS:
        gp = compile_ground(corpus_text(name))
        for s in answer_sets(gp):
            assert is_stable(gp, s)
            for l in s.literals:
                assert any(
                    l in r.head
                    and all(b in s.literals for b in r.pos)
                    and all(b not in s.literals for b in r.neg)
                    for r in gp.rules), f"{l} unsupported in {name}"


def test_determinism():
    gp = compile_ground(corpus_text("map_triangle.sp"))
    assert answer_sets(gp) == answer_sets(gp)


def test_brute_force_refuses_large_base():
    rules = tuple(gr([lit(f"p{i}")]) for i in range(21))
    with pytest.raises(SolveError) as err:
        brute_force_answer_sets(GroundProgram(rules))
    assert err.value.diagnostics[0].code == "oracle-refused"


def test_too_many_answer_sets():
    gp = compile_ground(corpus_text("too_many.sp"))
    with pytest.raises(TooManyAnswerSets):
        answer_sets(gp, SolveLimits(timeout_sec=50, max_answer_sets=1000))
    # generous cap lets all 2^11 through
    all_sets = answer_sets(gp, SolveLimits(timeout_sec=50, max_answer_sets=5000))
    assert len(all_sets) == 2 ** 11


def test_timeout_is_cooperative():
    from sparclab.pipeline import compile_text
    compiled = compile_text(corpus_text("slow_queens.sp"))
    gp = ground_reachable(compiled.typed, compiled.table)
    start = time.monotonic()
    with pytest.raises(TimeoutExceeded):
        answer_sets(gp, SolveLimits(timeout_sec=1.0))
    assert time.monotonic() - start < 3.0


def test_limits_validation():
    with pytest.raises(ValueError):
        SolveLimits(timeout_sec=51)
    with pytest.raises(ValueError):
        SolveLimits(timeout_sec=0)
    assert SolveLimits().timeout_sec == 20.0


def test_format_answer_sets():
    gp = compile_ground(corpus_text("disj.sp"))
    assert format_answer_sets(answer_sets(gp)) == "{p(a)}\n{p(b)}"


def test_sudoku_unique_solution():
    from sparclab.grounding import ground_reachable
    from sparclab.pipeline import compile_text
    compiled = compile_text(corpus_text("sudoku4.sp"))
    gp = ground_reachable(compiled.typed, compiled.table)
    (only,) = answer_sets(gp, SolveLimits(timeout_sec=50))
    grid = {}
    for l in only.literals:
        if l.pred == "at":
            grid[(l.args[0].value, l.args[1].value)] = l.args[2].value
    assert len(grid) == 16
    for r in range(1, 5):
        assert {grid[(r, c)] for c in range(1, 5)} == {1, 2, 3, 4}
    for c in range(1, 5):
        assert {grid[(r, c)] for r in range(1, 5)} == {1, 2, 3, 4}
    for br in (1, 3):
        for bc in (1, 3):
            box = {grid[(r, c)] for r in (br, br + 1) for c in (bc, bc + 1)}
            assert box == {1, 2, 3, 4}
    assert is_stable(gp, only)


# ---------------------------------------------------------------------------
# randomized oracle equivalence (the larger acceptance run lives in
# test_acceptance.py; this is a quick developer-loop version)

def random_ground_program(rng: random.Random) -> GroundProgram:
    n_atoms = rng.randint(2, 7)
    atoms = [Literal(False, f"p{i}", ()) for i in range(n_atoms)]
    lits = list(atoms)
    for a in atoms:
        if rng.random() < 0.25:
            lits.append(a.contrary())
    rules = []
    for _ in range(rng.randint(1, 10)):
        kind = rng.random()
        head_n = 0 if kind < 0.2 else (2 if kind > 0.8 else 1)
        head = rng.sample(lits, min(head_n, len(lits)))
        pool = [l for l in lits if l not in head]
        body = rng.sample(pool, rng.randint(0, min(3, len(pool))))
        pos = [l for l in body if rng.random() < 0.6]
        neg = [l for l in body if l not in pos]
        if not head and not (pos or neg):
            continue
        rules.append(make_ground_rule(head, pos, neg))
    return GroundProgram(tuple(rules))


def test_random_programs_agree_with_oracle():
    rng = random.Random(7)
    limits = SolveLimits(timeout_sec=10, max_answer_sets=100_000)
    for _ in range(120):
        gp = random_ground_program(rng)
        if len(gp.herbrand) > 14:
            continue
        assert answer_sets(gp, limits) == brute_force_answer_sets(gp)
