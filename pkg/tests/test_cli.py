import json
import shutil

import pytest

from sparclab.cli import main

from conftest import CORPUS


@pytest.fixture()
def corpus_copy(tmp_path):
    for f in CORPUS.glob("*.sp"):
        shutil.copy(f, tmp_path / f.name)
    return tmp_path


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_clean(capsys, corpus_copy):
    code, out, err = run_cli(capsys, "check", str(corpus_copy / "map_triangle.sp"))
    assert code == 0 and "no errors" in out


def test_check_reports_diagnostics(capsys, tmp_path):
    bad = tmp_path / "bad.sp"
    bad.write_text("sorts #s = {a}. predicates p(#s). rules q(a).")
    code, out, err = run_cli(capsys, "check", str(bad))
    assert code == 1
    assert "undeclared-predicate" in err


def test_solve_triangle(capsys, corpus_copy):
    code, out, err = run_cli(capsys, "solve", str(corpus_copy / "map_triangle.sp"))
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6
    assert all(line.startswith("{") and line.endswith("}") for line in lines)


def test_solve_json_format(capsys, corpus_copy):
    code, out, _ = run_cli(capsys, "solve", str(corpus_copy / "disj.sp"),
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["answerSets"] == [["p(a)"], ["p(b)"]]


def test_solve_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("predicates p. rules p."))
    code, out, _ = run_cli(capsys, "solve", "-")
    assert code == 0 and out.strip() == "{p}"


def test_query_verdict(capsys, corpus_copy):
    code, out, _ = run_cli(capsys, "query", str(corpus_copy / "t1.sp"),
                           "--query", "p(b)?")
    assert code == 0 and out.strip() == "unknown"
    code, out, _ = run_cli(capsys, "query", str(corpus_copy / "t1.sp"),
                           "--query", "q(a)?")
    assert code == 0 and out.strip() == "yes"


def test_query_bindings(capsys, corpus_copy):
    code, out, _ = run_cli(capsys, "query", str(corpus_copy / "family.sp"),
                           "--query", "parent(ann, X)")
    assert code == 0
    assert out.strip().splitlines() == ["X = bob", "X = carol"]


def test_render_html(capsys, corpus_copy, tmp_path):
    out_file = tmp_path / "page.html"
    code, out, _ = run_cli(capsys, "render", str(corpus_copy / "redline.sp"),
                           "--out", str(out_file))
    assert code == 0
    html = out_file.read_text()
    assert '<canvas id="myCanvas"' in html
    assert html.count("<button") == 1


def test_render_json(capsys, corpus_copy, tmp_path):
    out_file = tmp_path / "plan.json"
    code, _, _ = run_cli(capsys, "render", str(corpus_copy / "redline.sp"),
                         "--out", str(out_file))
    assert code == 0
    payload = json.loads(out_file.read_text())
    assert len(payload["plans"]) == 1
    assert payload["plans"][0]["fps"] == 60


def test_max_timeout_is_a_usage_error(capsys, corpus_copy):
    with pytest.raises(SystemExit) as exc:
        main(["solve", str(corpus_copy / "t1.sp"), "--timeout", "51"])
    assert exc.value.code == 2


def test_missing_file(capsys):
    code, _, err = run_cli(capsys, "solve", "/does/not/exist.sp")
    assert code == 1 and "error" in err


def test_quoted_include_via_include_dir(capsys, tmp_path):
    (tmp_path / "lib.sp").write_text("predicates helper. rules helper.")
    main_file = tmp_path / "main.sp"
    main_file.write_text('#include "lib.sp"\npredicates p.\nrules p.')
    code, out, _ = run_cli(capsys, "solve", str(main_file))
    assert code == 0 and out.strip() == "{helper, p}"


def test_timeout_exit_code(capsys, corpus_copy):
    code, out, err = run_cli(capsys, "solve", str(corpus_copy / "slow_queens.sp"),
                             "--timeout", "1")
    assert code == 1
    assert "timeout" in err


def test_cli_matches_service_text(capsys, corpus_copy):
    """solve/query output equals the service's textual fields byte for byte."""
    from sparclab.pipeline import run as pipeline_run
    from sparclab.solver import format_answer_sets
    text = (corpus_copy / "map_triangle.sp").read_text()
    result = pipeline_run(text, "answer_sets")
    service_text = format_answer_sets(result.answer_sets)
    code, out, _ = run_cli(capsys, "solve", str(corpus_copy / "map_triangle.sp"))
    assert out == service_text + "\n"

    result_q = pipeline_run(text, "query", query_text="ofColor(n1, red)?")
    code, out, _ = run_cli(capsys, "query", str(corpus_copy / "map_triangle.sp"),
                           "--query", "ofColor(n1, red)?")
    assert out == result_q.query_answer.text() + "\n"
