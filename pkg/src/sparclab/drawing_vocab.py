"""Vocabulary shared by the drawing validator and the shipped header file.

The color list is the full set of names a drawing command may use (the
shipped ``drawing.sp`` defines ``#color`` over exactly this list, and the
display validator checks extracted atoms against it).
"""
from __future__ import annotations

COLOR_NAMES: tuple[str, ...] = (
    "black", "navy", "darkBlue", "mediumBlue", "blue", "darkGreen", "green",
    "teal", "darkCyan", "deepSkyBlue", "darkTurquoise", "mediumSpringGreen",
    "lime", "springGreen", "aqua", "cyan", "midnightBlue", "dodgerBlue",
    "lightSeaGreen", "forestGreen", "seaGreen", "darkSlateGray",
    "darkSlateGrey", "limeGreen", "mediumSeaGreen", "turquoise", "royalBlue",
    "steelBlue", "darkSlateBlue", "mediumTurquoise", "indigo",
    "darkOliveGreen", "cadetBlue", "cornflowerBlue", "rebeccaPurple",
    "mediumAquaMarine", "dimGray", "dimGrey", "slateBlue", "oliveDrab",
    "slateGray", "slateGrey", "lightSlateGray", "lightSlateGrey",
    "mediumSlateBlue", "lawnGreen", "chartreuse", "aquamarine", "maroon",
    "purple", "olive", "gray", "grey", "skyBlue", "lightSkyBlue",
    "blueViolet", "darkRed", "darkMagenta", "saddleBrown", "darkSeaGreen",
    "lightGreen", "mediumPurple", "darkViolet", "paleGreen", "darkOrchid",
    "yellowGreen", "sienna", "brown", "darkGray", "darkGrey", "lightBlue",
    "greenYellow", "paleTurquoise", "lightSteelBlue", "powderBlue",
    "fireBrick", "darkGoldenRod", "mediumOrchid", "rosyBrown", "darkKhaki",
    "silver", "mediumVioletRed", "indianRed", "peru", "chocolate", "tan",
    "lightGray", "lightGrey", "thistle", "orchid", "goldenRod",
    "paleVioletRed", "crimson", "gainsboro", "plum", "burlyWood",
    "lightCyan", "lavender", "darkSalmon", "violet", "paleGoldenRod",
    "lightCoral", "khaki", "aliceBlue", "honeyDew", "azure", "sandyBrown",
    "wheat", "beige", "whiteSmoke", "mintCream", "ghostWhite", "salmon",
    "antiqueWhite", "linen", "lightGoldenRodYellow", "oldLace", "red",
    "fuchsia", "magenta", "deepPink", "orangeRed", "tomato", "hotPink",
    "coral", "darkOrange", "lightSalmon", "orange", "lightPink", "pink",
    "gold", "peachPuff", "navajoWhite", "moccasin", "bisque", "mistyRose",
    "blanchedAlmond", "papayaWhip", "lavenderBlush", "seaShell", "cornsilk",
    "lemonChiffon", "floralWhite", "snow", "yellow", "lightYellow", "ivory",
    "white",
)

FONT_FAMILIES: tuple[str, ...] = (
    "georgia", "palatino", "antiqua", "times", "arial", "helvetica",
    "arialBlack", "impact", "tahoma", "verdana",
)

LINE_CAPS: tuple[str, ...] = ("butt", "round", "square")

ALIGNMENTS: tuple[str, ...] = ("left", "right", "center", "start", "end")

FONT_SIZE_RANGE = (8, 72)
ANGLE_RANGE = (1, 16)

DEFAULT_PENS: tuple[str, ...] = (
    "redPen", "greenPen", "bluePen", "blackPen",
    "redPenThin", "greenPenThin", "bluePenThin", "blackPenThin",
    "redPenThick", "greenPenThick", "bluePenThick", "blackPenThick",
)
