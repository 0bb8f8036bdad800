"""SVG 1.1 rendering of a layout.

Piece polygons are written in board coordinates inside a group whose
transform flips the y axis, so the ``points`` attributes can be read back
directly as board positions.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .dotgrid import Instance

PALETTE = ("#8dd3c7", "#fdb462", "#bebada", "#fb8072", "#80b1d3", "#b3de69", "#fccde5", "#d9d9d9")


def _n(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(placements, inst: Instance, length: float | None = None, scale: float = 20.0) -> str:
    b = inst.board
    L, W = b.length_ub, b.width
    margin = 1.0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_n((L + 2 * margin) * scale)}" height="{_n((W + 2 * margin) * scale)}" '
        f'viewBox="{_n(-margin)} {_n(-margin)} {_n(L + 2 * margin)} {_n(W + 2 * margin)}">',
        f"<title>{escape(inst.name)}</title>",
        f'<g id="board" transform="matrix(1 0 0 -1 0 {_n(W)})">',
        f'<rect x="0" y="0" width="{_n(L)}" height="{_n(W)}" fill="white" stroke="black" stroke-width="0.05"/>',
    ]
    if length is not None:
        out.append(
            f'<line id="length" x1="{_n(length)}" y1="0" x2="{_n(length)}" y2="{_n(W)}" '
            f'stroke="red" stroke-width="0.05" stroke-dasharray="0.2 0.1"/>'
        )
    for i, p in enumerate(placements):
        pts = " ".join(f"{_n(v.x)},{_n(v.y)}" for v in p.polygon.vertices)
        color = PALETTE[p.type_id % len(PALETTE)]
        out.append(
            f'<polygon class="piece" data-type="{p.type_id}" data-index="{i}" points="{pts}" '
            f'fill="{color}" stroke="black" stroke-width="0.04"/>'
        )
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"
