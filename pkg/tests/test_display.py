import dataclasses

import pytest

from sparclab.display import (
    Arc, BezierCurve, CanvasConfig, Line, QuadCurve, TextShape, compile_answer_set,
    compile_render_plan, extract_display_atoms, plan_json, Style,
)
from sparclab.errors import DisplayError
from sparclab.grounding import ground_reachable
from sparclab.parser import parse_program
from sparclab.preprocess import shipped_header
from sparclab.solver import AnswerSet, SolveLimits, answer_sets
from sparclab.syntax import Const, Literal, Num, PredicateDecl, RecordTerm

from conftest import corpus_text


def atom(pred, *args):
    return Literal(False, pred, tuple(args))


def cmd(name, *args):
    return RecordTerm(name, tuple(args))


def _set(*literals):
    return AnswerSet(frozenset(literals))


REDLINE_SET = _set(
    atom("draw", cmd("line_color", Const("redline"), Const("red"))),
    atom("draw", cmd("draw_line", Const("redline"), Num(0), Num(0), Num(2), Num(2))),
)


def test_extract_two_atoms():
    atoms = extract_display_atoms(REDLINE_SET)
    kinds = sorted((a.command, a.kind) for a in atoms)
    assert kinds == [("draw_line", "draw"), ("line_color", "draw")]


def test_extract_ignores_other_predicates():
    s = _set(atom("p", Const("a")), atom("neighbor", Const("x"), Const("y")))
    assert extract_display_atoms(s) == []


def test_extract_bad_arity():
    s = _set(atom("draw", cmd("draw_line", Const("redline"), Num(0), Num(0))))
    with pytest.raises(DisplayError) as err:
        extract_display_atoms(s)
    assert "draw_line" in err.value.diagnostics[0].message


def test_extract_unknown_command_and_color():
    s = _set(
        atom("draw", cmd("draw_lime", Const("p"), Num(1), Num(1), Num(2), Num(2))),
        atom("draw", cmd("line_color", Const("p"), Const("sparkle"))),
        atom("draw", cmd("draw_line", Const("p"), Num(1), Num(1), Num(900), Num(2))),
    )
    with pytest.raises(DisplayError) as err:
        extract_display_atoms(s)
    msgs = " | ".join(d.message for d in err.value.diagnostics)
    assert "draw_lime" in msgs and "sparkle" in msgs and "900" in msgs
    assert len(err.value.diagnostics) == 3


def test_draw_shape_in_every_frame_defaults():
    plan = compile_render_plan(extract_display_atoms(REDLINE_SET), CanvasConfig())
    assert plan.frame_count == 61         # default frame count
    for frame in plan.frames:
        (shape,) = frame
        assert shape.shape == Line(0, 0, 2, 2)
        assert shape.style.color == "red"
        assert shape.style.width == 2 and shape.style.cap == "butt"


def test_unstyled_shape_gets_all_defaults():
    s = _set(atom("draw", cmd("draw_line", Const("pen"), Num(1), Num(1), Num(2), Num(2))))
    plan = compile_answer_set(s)
    style = plan.frames[0][0].style
    assert style == Style()
    assert (style.color, style.width, style.cap, style.font_size,
            style.font_family, style.align) == ("black", 2, "butt", 11, "arial", "left")


def test_animate_shape_only_its_frame():
    s = _set(
        atom("draw", cmd("set_number_of_frames", Num(5))),
        atom("animate", cmd("draw_line", Const("p"), Num(1), Num(1), Num(2), Num(2)), Num(3)),
    )
    plan = compile_answer_set(s)
    assert plan.frame_count == 6
    assert [len(f) for f in plan.frames] == [0, 0, 0, 1, 0, 0]


def test_per_frame_style_override():
    s = _set(
        atom("draw", cmd("set_number_of_frames", Num(4))),
        atom("draw", cmd("draw_line", Const("p"), Num(1), Num(1), Num(2), Num(2))),
        atom("draw", cmd("line_color", Const("p"), Const("green"))),
        atom("animate", cmd("line_color", Const("p"), Const("red")), Num(2)),
    )
    plan = compile_answer_set(s)
    colors = [f[0].style.color for f in plan.frames]
    assert colors == ["green", "green", "red", "green", "green"]


def test_frames_beyond_count_dropped():
    s = _set(
        atom("draw", cmd("set_number_of_frames", Num(2))),
        atom("animate", cmd("draw_line", Const("p"), Num(1), Num(1), Num(2), Num(2)), Num(9)),
        atom("animate", cmd("line_color", Const("p"), Const("red")), Num(9)),
    )
    plan = compile_answer_set(s)
    assert plan.frame_count == 3
    assert all(not f for f in plan.frames)


def test_conflicting_style_same_scope():
    s = _set(
        atom("draw", cmd("line_color", Const("p"), Const("red"))),
        atom("draw", cmd("line_color", Const("p"), Const("blue"))),
    )
    with pytest.raises(DisplayError) as err:
        compile_answer_set(s)
    assert err.value.diagnostics[0].code == "conflicting-style"


def test_conflicting_frame_counts():
    s = _set(
        atom("draw", cmd("set_number_of_frames", Num(2))),
        atom("draw", cmd("set_number_of_frames", Num(7))),
    )
    with pytest.raises(DisplayError) as err:
        compile_answer_set(s)
    assert err.value.diagnostics[0].code == "conflicting-style"


def test_same_style_twice_is_fine():
    s = _set(
        atom("draw", cmd("line_color", Const("p"), Const("red"))),
        atom("animate", cmd("line_color", Const("p"), Const("red")), Num(0)),
        atom("draw", cmd("draw_line", Const("p"), Num(1), Num(1), Num(2), Num(2))),
    )
    plan = compile_answer_set(s)
    assert plan.frames[0][0].style.color == "red"


def test_draw_order_before_animate_order():
    s = _set(
        atom("draw", cmd("set_number_of_frames", Num(0))),
        atom("animate", cmd("draw_line", Const("a"), Num(5), Num(5), Num(6), Num(6)), Num(0)),
        atom("draw", cmd("draw_text", Const("z"), Const("hi"), Num(1), Num(1))),
    )
    plan = compile_answer_set(s)
    (first, second) = plan.frames[0]
    assert isinstance(first.shape, TextShape)     # draw kind precedes animate kind
    assert isinstance(second.shape, Line)


def test_all_shape_kinds_and_json():
    s = _set(
        atom("draw", cmd("set_number_of_frames", Num(0))),
        atom("draw", cmd("draw_quad_curve", Const("p"), Num(1), Num(2), Num(3), Num(4), Num(5), Num(6))),
        atom("draw", cmd("draw_bezier_curve", Const("p"), Num(1), Num(2), Num(3), Num(4),
                         Num(5), Num(6), Num(7), Num(8))),
        atom("draw", cmd("draw_arc_curve", Const("p"), Num(100), Num(100), Num(50), Num(1), Num(5))),
        atom("draw", cmd("draw_text", Const("p"), Const("label"), Num(10), Num(20))),
        atom("draw", cmd("text_font", Const("p"), Num(18), Const("tahoma"))),
        atom("draw", cmd("text_align", Const("p"), Const("center"))),
        atom("draw", cmd("line_cap", Const("p"), Const("round"))),
        atom("draw", cmd("line_width", Const("p"), Num(7))),
        atom("draw", cmd("text_color", Const("p"), Const("navy"))),
    )
    plan = compile_answer_set(s)
    (frame,) = plan.frames
    shapes = {type(x.shape) for x in frame}
    assert shapes == {QuadCurve, BezierCurve, Arc, TextShape}
    text = next(x for x in frame if isinstance(x.shape, TextShape))
    assert text.style.font_size == 18 and text.style.font_family == "tahoma"
    assert text.style.align == "center" and text.style.color == "navy"
    arc = next(x for x in frame if isinstance(x.shape, Arc))
    assert arc.style.width == 7 and arc.style.cap == "round"
    j = plan_json(plan)
    assert j["canvas"] == {"w": 500, "h": 500} and j["fps"] == 60
    arc_j = next(d for d in j["frames"][0] if d["shape"] == "arc")
    import math
    assert arc_j["startAngle"] == pytest.approx(math.pi / 8)
    assert arc_j["endAngle"] == pytest.approx(5 * math.pi / 8)


def test_negative_frame_or_bad_frame_index():
    s = _set(atom("animate", cmd("line_color", Const("p"), Const("red")), Const("x")))
    with pytest.raises(DisplayError):
        extract_display_atoms(s)


def test_set_number_of_frames_not_in_animate():
    s = _set(atom("animate", cmd("set_number_of_frames", Num(3)), Num(0)))
    with pytest.raises(DisplayError):
        extract_display_atoms(s)


# -- header equivalence --------------------------------------------------------

def _with_header_machinery(program_text: str):
    """Append the header's default/propagation rules to a standalone program."""
    base = parse_program(program_text)
    header = parse_program(shipped_header())
    machinery = tuple(r for r in header.rules_section if r.body)
    style_prop = next(s for s in header.sorts_section
                      if getattr(s, "name", None) == "#styleproperty")
    decls = base.predicates_section + (
        PredicateDecl("nonDefaultValueDefined_drawing", ("#stylename", "#styleproperty")),
        PredicateDecl("styleDefinedInFrame", ("#stylename", "#styleproperty", "#frame")),
    )
    return dataclasses.replace(
        base,
        sorts_section=base.sorts_section + (style_prop,),
        predicates_section=decls,
        rules_section=base.rules_section + machinery,
    )


def _plans(program, default_frames):
    from sparclab.preprocess import expand, resolve_constants
    from sparclab.sorts import build_sort_table
    from sparclab.typecheck import typecheck
    p = resolve_constants(expand(program))
    table = build_sort_table(p)
    typed = typecheck(p, table)
    gp = ground_reachable(typed, table)
    sets = answer_sets(gp, SolveLimits(timeout_sec=50))
    cfg = CanvasConfig(default_frames=default_frames)
    return [compile_answer_set(s, cfg) for s in sets]


def test_header_rules_equivalent_to_builtin_defaults():
    text = corpus_text("moving_box.sp")
    plain = _plans(parse_program(text), 200)
    with_rules = _plans(_with_header_machinery(text), 200)
    assert plain == with_rules
