from pathlib import Path

from sparclab.display import compile_answer_set, emit_html
from sparclab.pipeline import compile_text, solve_compiled
from sparclab.solver import SolveLimits

from conftest import corpus_text

GOLDEN = Path(__file__).parent / "golden"


def normalize(text: str) -> str:
    lines = [line.strip() for line in text.splitlines()]
    return "\n".join(line for line in lines if line)


def render(name: str):
    compiled = compile_text(corpus_text(name))
    sets = solve_compiled(compiled, SolveLimits(timeout_sec=50))
    plans = [compile_answer_set(s, compiled.canvas) for s in sets]
    return emit_html(plans, compiled.canvas), plans


def test_redline_matches_golden_file():
    html, _ = render("redline.sp")
    golden = (GOLDEN / "redline.html").read_text(encoding="utf-8")
    assert normalize(html) == normalize(golden)


def test_redline_required_statements_in_order():
    html, _ = render("redline.sp")
    assert '<canvas id="myCanvas" width="500" height="500"> </canvas>' in html
    i_move = html.index("ctx.moveTo(0,0);")
    i_line = html.index("ctx.lineTo(2,2);")
    i_color = html.index('ctx.strokeStyle="red";')
    i_stroke = html.index("ctx.stroke();")
    assert i_move < i_line < i_color < i_stroke
    assert '<button onclick="animate0()"> 0 </button>' in html


def test_three_answer_sets_three_buttons():
    html, plans = render("three_sets.sp")
    assert len(plans) == 3
    for i in range(3):
        assert f'<button onclick="animate{i}()"> {i} </button>' in html
    assert '<button onclick="animate3()"' not in html
    assert "function animate2()" in html
    assert "function mainf" in html


def test_empty_plan_still_valid_segment():
    from sparclab.display import RenderPlan
    plan = RenderPlan(500, 500, 1, [[]])
    html = emit_html([plan])
    assert '<canvas id="myCanvas"' in html
    assert '<button onclick="animate0()"> 0 </button>' in html
    assert "drawings[0] = function() {" in html


def test_emission_deterministic():
    a, _ = render("redline.sp")
    b, _ = render("redline.sp")
    assert a == b


def test_statements_for_curves_arcs_and_text():
    from sparclab.display import (
        Arc, BezierCurve, QuadCurve, RenderPlan, Style, StyledShape, TextShape,
    )
    style = Style(color="navy", width=3, cap="round",
                  font_size=18, font_family="tahoma", align="center")
    plan = RenderPlan(500, 500, 1, [[
        StyledShape(QuadCurve(1, 2, 3, 4, 5, 6), style),
        StyledShape(BezierCurve(1, 2, 3, 4, 5, 6, 7, 8), style),
        StyledShape(Arc(250, 250, 100, 3, 9), style),
        StyledShape(TextShape("label", 10, 20), style),
    ]])
    html = emit_html([plan])
    assert "ctx.quadraticCurveTo(3,4,5,6);" in html
    assert "ctx.bezierCurveTo(3,4,5,6,7,8);" in html
    assert "ctx.arc(250,250,100,3*Math.PI/8,9*Math.PI/8);" in html
    assert 'ctx.font="18px tahoma";' in html
    assert 'ctx.fillStyle="navy";' in html
    assert 'ctx.textAlign="center";' in html
    assert 'ctx.fillText("label",10,20);' in html
    assert 'ctx.lineCap="round";' in html
    assert html.index("ctx.arc(") < html.index('ctx.fillText("label"')
