"""From answer sets to frame-indexed render plans and canvas HTML.

Display atoms are ``draw(command)`` and ``animate(command, frame)``.  Shape
commands place geometry, style commands bind visual properties to a style
name, and ``set_number_of_frames`` fixes the animation length.  A plan has
``N + 1`` frames played at 60 fps; a ``draw`` shape appears in every frame,
an ``animate`` shape only in its own.  Per property, a shape at frame ``i``
uses the ``animate`` value for its style at ``i`` when present, else the
``draw`` value, else the built-in default (black, width 2, butt caps, 11pt
arial, left alignment).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .drawing_vocab import (
    ALIGNMENTS, ANGLE_RANGE, COLOR_NAMES, FONT_FAMILIES, FONT_SIZE_RANGE,
    LINE_CAPS,
)
from .errors import Diagnostic, DisplayError
from .solver import AnswerSet
from .syntax import Const, Literal, Num, RecordTerm, literal_key, literal_text

FPS = 60

DEFAULT_COLOR = "black"
DEFAULT_WIDTH = 2
DEFAULT_CAP = "butt"
DEFAULT_FONT_SIZE = 11
DEFAULT_FONT_FAMILY = "arial"
DEFAULT_ALIGN = "left"

_MAX_FRAMES = 100_000


@dataclass(frozen=True)
class CanvasConfig:
    width: int = 500
    height: int = 500
    default_frames: int = 60

    @property
    def size(self) -> int:
        return min(self.width, self.height)


@dataclass(frozen=True)
class Style:
    color: str = DEFAULT_COLOR
    width: int = DEFAULT_WIDTH
    cap: str = DEFAULT_CAP
    font_size: int = DEFAULT_FONT_SIZE
    font_family: str = DEFAULT_FONT_FAMILY
    align: str = DEFAULT_ALIGN


@dataclass(frozen=True)
class Line:
    x1: int
    y1: int
    x2: int
    y2: int


@dataclass(frozen=True)
class QuadCurve:
    x1: int
    y1: int
    cx: int
    cy: int
    x2: int
    y2: int


@dataclass(frozen=True)
class BezierCurve:
    x1: int
    y1: int
    c1x: int
    c1y: int
    c2x: int
    c2y: int
    x2: int
    y2: int


@dataclass(frozen=True)
class Arc:
    x: int
    y: int
    r: int
    start: int   # 1..16, each step is 1/16 of a turn, clockwise
    end: int


@dataclass(frozen=True)
class TextShape:
    text: str
    x: int
    y: int


Shape = Line | QuadCurve | BezierCurve | Arc | TextShape


@dataclass(frozen=True)
class StyledShape:
    shape: Shape
    style: Style


@dataclass(frozen=True)
class DisplayAtom:
    kind: str                 # "draw" | "animate"
    command: str
    style_name: str | None
    shape: Shape | None       # shape commands only
    prop: str | None          # style commands only
    value: object             # property value, or frame count
    frame: int | None         # animate atoms only
    atom: Literal             # the original literal, for ordering/messages


def _int_arg(t) -> int | None:
    return t.value if isinstance(t, Num) else None


def _const_arg(t) -> str | None:
    return t.name if isinstance(t, Const) else None


class _Extractor:
    def __init__(self, config: CanvasConfig):
        self.config = config
        self.errors: list[Diagnostic] = []

    def fail(self, atom: Literal, message: str):
        self.errors.append(Diagnostic(
            "display-error", f"{message} in {literal_text(atom)}", atom.pos))

    def coord(self, atom, t, axis: str) -> int | None:
        v = _int_arg(t)
        hi = self.config.width if axis == "x" else self.config.height
        if v is None or not (0 <= v <= hi):
            self.fail(atom, f"coordinate {_fmt(t)} outside 0..{hi}")
            return None
        return v

    def bounded(self, atom, t, lo, hi, what) -> int | None:
        v = _int_arg(t)
        if v is None or not (lo <= v <= hi):
            self.fail(atom, f"{what} {_fmt(t)} outside {lo}..{hi}")
            return None
        return v

    def choice(self, atom, t, allowed, what) -> str | None:
        v = _const_arg(t)
        if v is None or v not in allowed:
            self.fail(atom, f"unknown {what} {_fmt(t)}")
            return None
        return v

    def style_name(self, atom, t) -> str | None:
        v = _const_arg(t)
        if v is None:
            self.fail(atom, f"style name must be a constant, got {_fmt(t)}")
        return v

    def command(self, atom: Literal, kind: str, cmd, frame: int | None) -> DisplayAtom | None:
        if not isinstance(cmd, RecordTerm):
            self.fail(atom, f"unknown drawing command {_fmt(cmd)}")
            return None
        name, args = cmd.name, cmd.args
        maker = _COMMANDS.get(name)
        if maker is None:
            self.fail(atom, f"unknown drawing command '{name}'")
            return None
        arity, build = maker
        if len(args) != arity:
            self.fail(atom, f"{name} takes {arity} argument(s), got {len(args)}")
            return None
        before = len(self.errors)
        parsed = build(self, atom, args)
        if len(self.errors) > before or parsed is None:
            return None
        style_name, shape, prop, value = parsed
        return DisplayAtom(kind, name, style_name, shape, prop, value, frame, atom)


def _fmt(t) -> str:
    from .syntax import term_text
    return term_text(t)


def _mk_line(ex, atom, a):
    sn = ex.style_name(atom, a[0])
    pts = [ex.coord(atom, a[1], "x"), ex.coord(atom, a[2], "y"),
           ex.coord(atom, a[3], "x"), ex.coord(atom, a[4], "y")]
    if sn is None or None in pts:
        return None
    return sn, Line(*pts), None, None


def _mk_quad(ex, atom, a):
    sn = ex.style_name(atom, a[0])
    pts = [ex.coord(atom, a[i], "x" if i % 2 == 1 else "y") for i in range(1, 7)]
    if sn is None or None in pts:
        return None
    x1, y1, cx, cy, x2, y2 = pts
    return sn, QuadCurve(x1, y1, cx, cy, x2, y2), None, None


def _mk_bezier(ex, atom, a):
    sn = ex.style_name(atom, a[0])
    pts = [ex.coord(atom, a[i], "x" if i % 2 == 1 else "y") for i in range(1, 9)]
    if sn is None or None in pts:
        return None
    return sn, BezierCurve(*pts), None, None


def _mk_arc(ex, atom, a):
    sn = ex.style_name(atom, a[0])
    x = ex.coord(atom, a[1], "x")
    y = ex.coord(atom, a[2], "y")
    r = ex.bounded(atom, a[3], 1, ex.config.size, "radius")
    sa = ex.bounded(atom, a[4], *ANGLE_RANGE, "angle")
    se = ex.bounded(atom, a[5], *ANGLE_RANGE, "angle")
    if None in (sn, x, y, r, sa, se):
        return None
    return sn, Arc(x, y, r, sa, se), None, None


def _mk_text(ex, atom, a):
    sn = ex.style_name(atom, a[0])
    if isinstance(a[1], Const):
        text = a[1].name
    elif isinstance(a[1], Num):
        text = str(a[1].value)
    else:
        ex.fail(atom, f"text must be a constant, got {_fmt(a[1])}")
        text = None
    x = ex.coord(atom, a[2], "x")
    y = ex.coord(atom, a[3], "y")
    if None in (sn, text, x, y):
        return None
    return sn, TextShape(text, x, y), None, None


def _mk_line_width(ex, atom, a):
    sn = ex.style_name(atom, a[0])
    w = ex.bounded(atom, a[1], 1, ex.config.size, "line width")
    if None in (sn, w):
        return None
    return sn, None, "width", w


def _mk_text_font(ex, atom, a):
    sn = ex.style_name(atom, a[0])
    fs = ex.bounded(atom, a[1], *FONT_SIZE_RANGE, "font size")
    ff = ex.choice(atom, a[2], FONT_FAMILIES, "font family")
    if None in (sn, fs, ff):
        return None
    return sn, None, "font", (fs, ff)


def _mk_line_cap(ex, atom, a):
    sn = ex.style_name(atom, a[0])
    c = ex.choice(atom, a[1], LINE_CAPS, "line cap")
    if None in (sn, c):
        return None
    return sn, None, "cap", c


def _mk_text_align(ex, atom, a):
    sn = ex.style_name(atom, a[0])
    al = ex.choice(atom, a[1], ALIGNMENTS, "alignment")
    if None in (sn, al):
        return None
    return sn, None, "align", al


def _mk_line_color(ex, atom, a):
    sn = ex.style_name(atom, a[0])
    c = ex.choice(atom, a[1], COLOR_NAMES, "color")
    if None in (sn, c):
        return None
    return sn, None, "line_color", c


def _mk_text_color(ex, atom, a):
    sn = ex.style_name(atom, a[0])
    c = ex.choice(atom, a[1], COLOR_NAMES, "color")
    if None in (sn, c):
        return None
    return sn, None, "text_color", c


def _mk_frames(ex, atom, a):
    n = _int_arg(a[0])
    if n is None or n < 0:
        ex.fail(atom, f"frame count {_fmt(a[0])} must be a non-negative integer")
        return None
    return None, None, "frame_count", n


_COMMANDS = {
    "draw_line": (5, _mk_line),
    "draw_quad_curve": (7, _mk_quad),
    "draw_bezier_curve": (9, _mk_bezier),
    "draw_arc_curve": (6, _mk_arc),
    "draw_text": (4, _mk_text),
    "line_width": (2, _mk_line_width),
    "text_font": (3, _mk_text_font),
    "line_cap": (2, _mk_line_cap),
    "text_align": (2, _mk_text_align),
    "line_color": (2, _mk_line_color),
    "text_color": (2, _mk_text_color),
    "set_number_of_frames": (1, _mk_frames),
}


def extract_display_atoms(answer_set: AnswerSet,
                          config: CanvasConfig = CanvasConfig()) -> list[DisplayAtom]:
    """Validate and collect the display atoms of one answer set.

    Raises :class:`DisplayError` listing every incorrect usage; atoms of
    other predicates are ignored.
    """
    ex = _Extractor(config)
    out: list[DisplayAtom] = []
    for lit in sorted(answer_set.literals, key=literal_key):
        if lit.neg:
            continue
        if lit.pred == "draw" and len(lit.args) == 1:
            atom = ex.command(lit, "draw", lit.args[0], None)
            if atom is not None:
                out.append(atom)
        elif lit.pred == "animate" and len(lit.args) == 2:
            frame = _int_arg(lit.args[1])
            if frame is None or frame < 0:
                ex.fail(lit, f"frame index {_fmt(lit.args[1])} must be a non-negative integer")
                continue
            atom = ex.command(lit, "animate", lit.args[0], frame)
            if atom is not None:
                if atom.prop == "frame_count":
                    ex.fail(lit, "set_number_of_frames must be used with draw")
                    continue
                out.append(atom)
    if ex.errors:
        raise DisplayError(ex.errors)
    return out


@dataclass
class RenderPlan:
    width: int
    height: int
    frame_count: int                     # number of frames, N + 1
    frames: list[list[StyledShape]]
    fps: int = FPS


def compile_render_plan(atoms: list[DisplayAtom],
                        config: CanvasConfig = CanvasConfig()) -> RenderPlan:
    """Resolve styles and distribute shapes over frames.

    Raises :class:`DisplayError` with code ``conflicting-style`` when two
    style commands bind the same property of one style name at the same
    scope to different values, or on contradictory frame counts.
    """
    errors: list[Diagnostic] = []

    n = config.default_frames
    counts = {a.value for a in atoms if a.prop == "frame_count"}
    if len(counts) > 1:
        errors.append(Diagnostic(
            "conflicting-style",
            f"set_number_of_frames used with different values: {sorted(counts)}"))
    elif counts:
        (n,) = counts
    if n > _MAX_FRAMES:
        errors.append(Diagnostic(
            "display-error", f"frame count {n} exceeds the supported maximum of {_MAX_FRAMES}"))
        raise DisplayError(errors)

    draw_scope: dict[tuple[str, str], object] = {}
    frame_scope: dict[tuple[str, str, int], object] = {}
    for a in atoms:
        if a.prop is None or a.prop == "frame_count":
            continue
        key = (a.style_name, a.prop) if a.kind == "draw" else (a.style_name, a.prop, a.frame)
        scope = draw_scope if a.kind == "draw" else frame_scope
        if key in scope and scope[key] != a.value:
            where = "draw" if a.kind == "draw" else f"frame {a.frame}"
            errors.append(Diagnostic(
                "conflicting-style",
                f"style '{a.style_name}' binds {a.prop} to both {scope[key]} and "
                f"{a.value} at {where} scope"))
            continue
        scope[key] = a.value

    if errors:
        raise DisplayError(errors)

    def resolve(style_name: str, frame: int, is_text: bool) -> Style:
        def prop(name, default):
            v = frame_scope.get((style_name, name, frame))
            if v is None:
                v = draw_scope.get((style_name, name))
            return default if v is None else v

        color = prop("text_color" if is_text else "line_color", DEFAULT_COLOR)
        font = prop("font", (DEFAULT_FONT_SIZE, DEFAULT_FONT_FAMILY))
        return Style(color=color, width=prop("width", DEFAULT_WIDTH),
                     cap=prop("cap", DEFAULT_CAP), font_size=font[0],
                     font_family=font[1], align=prop("align", DEFAULT_ALIGN))

    shape_atoms = [a for a in atoms if a.shape is not None]
    # draw shapes first, then animate shapes, each in atom order
    shape_atoms.sort(key=lambda a: (0 if a.kind == "draw" else 1, literal_key(a.atom)))

    frames: list[list[StyledShape]] = [[] for _ in range(n + 1)]
    for a in shape_atoms:
        is_text = isinstance(a.shape, TextShape)
        if a.kind == "draw":
            for i in range(n + 1):
                frames[i].append(StyledShape(a.shape, resolve(a.style_name, i, is_text)))
        elif a.frame <= n:   # animate shapes beyond the last frame are never shown
            frames[a.frame].append(StyledShape(a.shape, resolve(a.style_name, a.frame, is_text)))

    return RenderPlan(config.width, config.height, n + 1, frames)


def compile_answer_set(answer_set: AnswerSet,
                       config: CanvasConfig = CanvasConfig()) -> RenderPlan:
    return compile_render_plan(extract_display_atoms(answer_set, config), config)


# ---------------------------------------------------------------------------
# Serialization for the UI

def style_json(s: Style) -> dict:
    return {"color": s.color, "width": s.width, "cap": s.cap,
            "fontSize": s.font_size, "fontFamily": s.font_family, "align": s.align}


def shape_json(ss: StyledShape) -> dict:
    s = ss.shape
    if isinstance(s, Line):
        d = {"shape": "line", "x1": s.x1, "y1": s.y1, "x2": s.x2, "y2": s.y2}
    elif isinstance(s, QuadCurve):
        d = {"shape": "quad", "x1": s.x1, "y1": s.y1, "cx": s.cx, "cy": s.cy,
             "x2": s.x2, "y2": s.y2}
    elif isinstance(s, BezierCurve):
        d = {"shape": "bezier", "x1": s.x1, "y1": s.y1, "c1x": s.c1x, "c1y": s.c1y,
             "c2x": s.c2x, "c2y": s.c2y, "x2": s.x2, "y2": s.y2}
    elif isinstance(s, Arc):
        d = {"shape": "arc", "x": s.x, "y": s.y, "r": s.r,
             "startAngle": s.start * math.pi / 8, "endAngle": s.end * math.pi / 8}
    else:
        assert isinstance(s, TextShape)
        d = {"shape": "text", "text": s.text, "x": s.x, "y": s.y}
    d["style"] = style_json(ss.style)
    return d


def plan_json(plan: RenderPlan) -> dict:
    return {"canvas": {"w": plan.width, "h": plan.height}, "fps": plan.fps,
            "frames": [[shape_json(s) for s in frame] for frame in plan.frames]}


def plan_json_text(plan: RenderPlan) -> str:
    return json.dumps(plan_json(plan), indent=None, separators=(",", ":"))


# ---------------------------------------------------------------------------
# HTML emission

def _shape_statements(ss: StyledShape) -> list[str]:
    s, st = ss.shape, ss.style
    if isinstance(s, TextShape):
        return [
            f'ctx.font="{st.font_size}px {st.font_family}";',
            f'ctx.fillStyle="{st.color}";',
            f'ctx.textAlign="{st.align}";',
            f'ctx.fillText("{s.text}",{s.x},{s.y});',
        ]
    if isinstance(s, Line):
        path = [f"ctx.moveTo({s.x1},{s.y1});", f"ctx.lineTo({s.x2},{s.y2});"]
    elif isinstance(s, QuadCurve):
        path = [f"ctx.moveTo({s.x1},{s.y1});",
                f"ctx.quadraticCurveTo({s.cx},{s.cy},{s.x2},{s.y2});"]
    elif isinstance(s, BezierCurve):
        path = [f"ctx.moveTo({s.x1},{s.y1});",
                f"ctx.bezierCurveTo({s.c1x},{s.c1y},{s.c2x},{s.c2y},{s.x2},{s.y2});"]
    else:
        assert isinstance(s, Arc)
        path = [f"ctx.arc({s.x},{s.y},{s.r},{s.start}*Math.PI/8,{s.end}*Math.PI/8);"]
    return (["ctx.beginPath();"] + path
            + [f'ctx.strokeStyle="{st.color}";',
               f"ctx.lineWidth={st.width};",
               f'ctx.lineCap="{st.cap}";',
               "ctx.stroke();"])


def emit_html(plans: list[RenderPlan],
              config: CanvasConfig = CanvasConfig()) -> str:
    """The standalone HTML segment: one canvas, one animation function and
    one numbered button per answer set, and a trailing dispatch function."""
    out: list[str] = []
    out.append(f'<canvas id="myCanvas" width="{config.width}" height="{config.height}"> </canvas>')
    out.append("<script>")
    for i, plan in enumerate(plans):
        out.append(f"function animate{i}() {{")
        out.append('  var canvas = document.getElementById("myCanvas");')
        out.append('  var ctx = canvas.getContext("2d");')
        out.append("  var drawings = [];")
        for f, frame in enumerate(plan.frames):
            out.append(f"  drawings[{f}] = function() {{")
            for ss in frame:
                for stmt in _shape_statements(ss):
                    out.append(f"    {stmt}")
            out.append("  };")
        out.append("  var frame = 0;")
        out.append("  function showFrame() {")
        out.append("    if (frame >= drawings.length) { return; }")
        out.append("    ctx.clearRect(0, 0, canvas.width, canvas.height);")
        out.append("    drawings[frame]();")
        out.append("    frame = frame + 1;")
        out.append(f"    setTimeout(showFrame, 1000 / {FPS});")
        out.append("  }")
        out.append("  showFrame();")
        out.append("}")
    names = ", ".join(f"animate{i}" for i in range(len(plans)))
    out.append("function mainf(i) {")
    out.append(f"  var animations = [{names}];")
    out.append("  animations[i]();")
    out.append("}")
    out.append("</script>")
    for i in range(len(plans)):
        out.append(f'<button onclick="animate{i}()"> {i} </button>')
    return "\n".join(out) + "\n"
