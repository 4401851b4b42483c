"""
Oct-2026

Aztec diamond dimers for Django - SVG rendering of tilings.

Dominoes are drawn as rectangles in the rotated frame X = (x1 + x2)/2,
Y = (x2 - x1)/2 where every cell is a unit square; a group transform maps
that frame back onto the page with Kasteleyn (0, 0) at the bottom-left
and x2 pointing up.
"""
# python stuff
import io
import logging
from typing import Optional

# django stuff
from django.template.loader import render_to_string

# our stuff
from .constants import KIND_COLORS, KIND_ORDER
from .lattice import Tiling, height_function
from .utils import format_scalar


logger = logging.getLogger(__name__)

TEMPLATE_NAME = "aztec_dimers/tiling.svg"
DEFAULT_SCALE = 10


def _number(value) -> str:
    return format(float(value), "g")


def _rect(d) -> dict:
    # cell centres in the rotated frame, doubled to stay integral
    xs = [d.b[0] + d.b[1], d.w[0] + d.w[1]]
    ys = [d.b[1] - d.b[0], d.w[1] - d.w[0]]
    return {
        "x": _number(min(xs) / 2 - 0.5),
        "y": _number(min(ys) / 2 - 0.5),
        "width": _number((max(xs) - min(xs)) / 2 + 1),
        "height": _number((max(ys) - min(ys)) / 2 + 1),
        "color": KIND_COLORS[d.kind],
        "kind": d.kind,
    }


def render_svg(t: Tiling, scale: int = DEFAULT_SCALE, heights: bool = False, title: Optional[str] = None) -> str:
    """one rectangle per domino, N red, S green, E yellow, W blue; optional height labels."""
    n = t.diamond.n
    margin = 2 * scale
    size = 2 * margin + 2 * n * scale
    order = {kind: i for i, kind in enumerate(KIND_ORDER)}
    dimers = sorted(t.dimers, key=lambda d: (d.b[0], d.b[1], order[d.kind]))
    labels = []
    if heights:
        field = height_function(t)
        for p in sorted(field.heights, key=lambda p: (p[1], p[0])):
            labels.append(
                {
                    "x": _number(margin + scale * p[0]),
                    "y": _number(size - margin - scale * p[1]),
                    "text": str(field[p]),
                }
            )
    context = {
        "size": size,
        "title": title or "Aztec diamond of order {n}, a={a}".format(n=n, a=format_scalar(t.diamond.a)),
        "matrix": " ".join(_number(v) for v in (scale, -scale, -scale, -scale, margin, size - margin)),
        "rects": [_rect(d) for d in dimers],
        "labels": labels,
        "font_size": _number(scale * 0.6),
    }
    return render_to_string(TEMPLATE_NAME, context)


def write_svg(path, t: Tiling, scale: int = DEFAULT_SCALE, heights: bool = False) -> None:
    with io.open(path, "wt", encoding="utf8", newline="\n") as f:
        f.write(render_svg(t, scale=scale, heights=heights))
