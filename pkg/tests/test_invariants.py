"""Cross-module properties that don't belong to a single stage."""
import sqlite3

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparclab.errors import SparcSyntaxError
from sparclab.display import compile_answer_set
from sparclab.grounding import ground, ground_reachable
from sparclab.parser import parse_program
from sparclab.solver import SolveLimits, answer_sets

from conftest import FAST_CORPUS


# -- position fidelity ---------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(st.text(alphabet=st.sampled_from("sorts predicatcru.#={}()|:-,<>!XYa1\n %"),
               min_size=0, max_size=80))
def test_error_positions_index_into_the_input(text):
    lines = text.split("\n")
    try:
        parse_program(text)
    except SparcSyntaxError as e:
        for d in e.diagnostics:
            assert d.pos is not None
            assert 1 <= d.pos.line <= len(lines)
            # one past the line end is allowed: that's where a missing
            # token would have to appear
            assert 1 <= d.pos.col <= len(lines[d.pos.line - 1]) + 1


# -- answer-set level invariants --------------------------------------------------

@pytest.mark.parametrize("name", FAST_CORPUS)
def test_no_answer_set_is_inconsistent(name, solved_cache):
    _, _, sets = solved_cache(name)
    for s in sets:
        for l in s.literals:
            assert l.contrary() not in s.literals


@pytest.mark.parametrize("name", ["redline.sp", "three_sets.sp", "moving_box.sp",
                                  "growing_line.sp", "moving_box_included.sp"])
def test_every_styled_shape_fully_resolved(name, solved_cache):
    compiled, _, sets = solved_cache(name)
    for s in sets:
        plan = compile_answer_set(s, compiled.canvas)
        for frame in plan.frames:
            for shape in frame:
                st_ = shape.style
                assert st_.color and st_.cap and st_.font_family and st_.align
                assert st_.width >= 1 and st_.font_size >= 8


# -- grounding of arithmetic inside positive bodies -------------------------------

def test_positive_body_arithmetic_falls_back_to_enumeration():
    text = """
    sorts #n = 1..6.
    predicates p(#n). q(#n).
    rules p(2). p(5). q(X) :- p(X+1).
    """
    from sparclab.preprocess import expand, resolve_constants
    from sparclab.sorts import build_sort_table
    from sparclab.typecheck import typecheck
    p = resolve_constants(expand(parse_program(text)))
    table = build_sort_table(p)
    typed = typecheck(p, table)
    full = ground(typed, table)
    pruned = ground_reachable(typed, table)
    limits = SolveLimits(timeout_sec=10)
    assert answer_sets(full, limits) == answer_sets(pruned, limits)
    (only,) = answer_sets(pruned, limits)
    # q(X) holds where X+1 is a p-fact: X in {1, 4}
    assert only.text() == "{p(2), p(5), q(1), q(4)}"


def test_nested_record_arithmetic_in_body():
    text = """
    sorts #n = 1..6. #w = f(#n).
    predicates p(#w). q(#n).
    rules p(f(3)). q(X) :- p(f(X+1)).
    """
    from sparclab.preprocess import expand, resolve_constants
    from sparclab.sorts import build_sort_table
    from sparclab.typecheck import typecheck
    p = resolve_constants(expand(parse_program(text)))
    table = build_sort_table(p)
    typed = typecheck(p, table)
    limits = SolveLimits(timeout_sec=10)
    full, pruned = ground(typed, table), ground_reachable(typed, table)
    assert answer_sets(full, limits) == answer_sets(pruned, limits)
    (only,) = answer_sets(pruned, limits)
    assert only.text() == "{p(f(3)), q(2)}"


# -- workspace tree integrity -------------------------------------------------------

def test_stored_urls_equal_recomputed_urls(tmp_path):
    from sparclab.service.store import WorkspaceStore
    store = WorkspaceStore(tmp_path)
    user = store.register("ann", "pw")
    a = store.create_folder(user, None, "a")
    b = store.create_folder(user, a["id"], "b")
    c = store.create_folder(user, b["id"], "c")
    store.create_file(user, c["id"], "deep.sp", "x")
    store.create_file(user, None, "top.sp", "y")
    store.rename_folder(user, b["id"], "bee")

    conn = sqlite3.connect(store.db_path)
    conn.row_factory = sqlite3.Row
    folders = {r["id"]: r for r in conn.execute("SELECT * FROM folders")}

    def chain(folder_id):
        parts = []
        cur = folders.get(folder_id)
        while cur is not None:
            parts.append(cur["name"])
            cur = folders.get(cur["parent"])
        return "/" + "/".join(reversed(parts)) if parts else ""

    for row in folders.values():
        assert row["url"] == chain(row["id"])
        assert folders[row["id"]]["owner"] == user      # chain reaches the root
    for row in conn.execute("SELECT * FROM files"):
        base = chain(row["folder"]) if row["folder"] is not None else ""
        assert row["url"] == f"{base}/{row['name']}"


# -- stability checker against a from-scratch oracle ----------------------------------

def _brute_is_stable(gp, cand) -> bool:
    """Independent re-derivation of stability: model property, then reduct
    minimality by full subset enumeration."""
    import itertools
    cand = frozenset(cand)
    if any(l.contrary() in cand for l in cand):
        return False
    for r in gp.rules:
        if set(r.pos) <= cand and not (set(r.neg) & cand) and not (set(r.head) & cand):
            return False
    reduct = [(r.head, r.pos) for r in gp.rules if not (set(r.neg) & cand)]

    def is_model(m):
        return all(not (set(pos) <= m) or (set(head) & m)
                   for head, pos in reduct)

    for k in range(len(cand)):
        for sub in itertools.combinations(cand, k):
            if is_model(set(sub)):
                return False
    return is_model(set(cand))


def test_is_stable_matches_independent_checker():
    import itertools
    import random
    from sparclab.grounding import GroundProgram, make_ground_rule
    from sparclab.solver import is_stable
    from sparclab.syntax import Literal

    rng = random.Random(99)
    for _ in range(400):
        n = rng.randint(1, 5)
        atoms = [Literal(False, f"a{i}", ()) for i in range(n)]
        pool = atoms + [a.contrary() for a in atoms if rng.random() < 0.3]
        rules = []
        for _ in range(rng.randint(1, 7)):
            head_n = rng.choice([0, 1, 1, 2, 3])
            head = rng.sample(pool, min(head_n, len(pool)))
            rest = [l for l in pool if l not in head]
            body = rng.sample(rest, rng.randint(0, min(3, len(rest))))
            pos = [l for l in body if rng.random() < 0.5]
            neg = [l for l in body if l not in pos]
            if head or pos or neg:
                rules.append(make_ground_rule(head, pos, neg))
        if not rules:
            continue
        gp = GroundProgram(tuple(rules))
        base = sorted(gp.herbrand, key=str)
        for size in range(len(base) + 1):
            for cand in itertools.combinations(base, size):
                assert is_stable(gp, set(cand)) == _brute_is_stable(gp, set(cand)), \
                    gp.text()


# -- sort forward references and head-only variables ------------------------------------

def test_sort_forward_reference():
    from sparclab.preprocess import expand, resolve_constants
    from sparclab.sorts import build_sort_table
    p = resolve_constants(expand(parse_program(
        "sorts #pair = f(#base, #base). #base = {x, y}.")))
    table = build_sort_table(p)
    assert table.cardinality("#pair") == 4


def test_head_only_variable_enumerates_domain():
    from sparclab.preprocess import expand, resolve_constants
    from sparclab.sorts import build_sort_table
    from sparclab.typecheck import typecheck
    text = """
    sorts #s = {a, b, c}.
    predicates p(#s). go.
    rules go. p(X) :- go.
    """
    p = resolve_constants(expand(parse_program(text)))
    table = build_sort_table(p)
    typed = typecheck(p, table)
    limits = SolveLimits(timeout_sec=10)
    for gp in (ground(typed, table), ground_reachable(typed, table)):
        (only,) = answer_sets(gp, limits)
        assert only.text() == "{go, p(a), p(b), p(c)}"


# -- inconsistent programs through the service ----------------------------------------

def test_inconsistent_program_query_flagged_via_service(tmp_path):
    from fastapi.testclient import TestClient
    from sparclab.service.app import create_app
    from sparclab.service.config import ServiceConfig
    program = "predicates p. q. rules p. q. :- q."
    with TestClient(create_app(ServiceConfig(data_dir=tmp_path / "d"))) as client:
        r = client.post("/api/run", json={"program": program, "mode": "query",
                                          "query": "p?"})
        j = r.json()
        assert j["status"] == "ok"
        assert j["queryAnswer"]["verdict"] == "unknown"
        assert j["queryAnswer"]["inconsistent"] is True
        assert "no answer sets" in j["queryAnswer"]["text"]
        assert j["answerSets"] == []
