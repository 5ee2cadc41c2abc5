from __future__ import annotations

from pathlib import Path

import pytest

from sparclab.grounding import ground_reachable
from sparclab.pipeline import Compiled, compile_text
from sparclab.preprocess import MappingResolver, StandardResolver
from sparclab.solver import SolveLimits, answer_sets

CORPUS = Path(__file__).parent / "corpus"

#: programs small enough for the whole pipeline in well under a second
FAST_CORPUS = ["map_triangle.sp", "map_edge.sp", "t1.sp", "disj.sp",
               "family.sp", "redline.sp", "three_sets.sp", "moving_box.sp"]

#: programs whose Herbrand base stays within the brute-force bound
ORACLE_CORPUS = ["map_triangle.sp", "map_edge.sp", "t1.sp", "disj.sp"]


def corpus_text(name: str) -> str:
    return (CORPUS / name).read_text(encoding="utf-8")


def corpus_resolver(name: str):
    folder = (CORPUS / name).parent
    mapping = {p.name: p.read_text(encoding="utf-8") for p in folder.glob("*.sp")}
    return StandardResolver(MappingResolver(mapping))


@pytest.fixture(scope="session")
def compiled_cache():
    cache: dict[str, Compiled] = {}

    def get(name: str) -> Compiled:
        if name not in cache:
            cache[name] = compile_text(corpus_text(name), corpus_resolver(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def solved_cache(compiled_cache):
    cache: dict[str, tuple] = {}

    def get(name: str, timeout: float = 50.0):
        if name not in cache:
            compiled = compiled_cache(name)
            gp = ground_reachable(compiled.typed, compiled.table)
            sets = answer_sets(gp, SolveLimits(timeout_sec=timeout))
            cache[name] = (compiled, gp, sets)
        return cache[name]

    return get
