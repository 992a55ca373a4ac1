"""Static SVG and ASCII pictures of tableaux, assemblées and label traces.

Lattice coordinates have y pointing up; SVG coordinates have y pointing
down, so every point goes through ``_Frame.px``.  All numbers are written
with fixed formatting so identical input gives identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping
from xml.sax.saxutils import escape

from .assemblees import Assemblee
from .bijections import EdgeLabel
from .rat import Fill, Tableau
from .shapes import Edge, Point, Symbol, compute_strips

UNIT = 40
MARGIN = 20

GLYPHS = {Fill.ALPHA: "α", Fill.BETA: "β", Fill.Q: "q", Fill.EMPTY: ""}
STRIP_STYLE = {
    Symbol.HEAVY: 'stroke="#c0392b" stroke-dasharray="6 4"',
    Symbol.HOLE: 'stroke="#2c6fbb" stroke-dasharray="2 3"',
    Symbol.LIGHT: 'stroke="#27864a"',
}


def _num(v: float) -> str:
    text = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


@dataclass(frozen=True)
class _Frame:
    xmin: float
    ymax: float
    width: int
    height: int

    @classmethod
    def around(cls, points: Iterable[Point]) -> _Frame:
        xs, ys = zip(*points)
        w = (max(xs) - min(xs)) * UNIT + 2 * MARGIN
        h = (max(ys) - min(ys)) * UNIT + 2 * MARGIN
        return cls(min(xs), max(ys), w, h)

    def px(self, p: tuple[float, float]) -> str:
        x = (p[0] - self.xmin) * UNIT + MARGIN
        y = (self.ymax - p[1]) * UNIT + MARGIN
        return f"{_num(x)},{_num(y)}"

    def xy(self, p: tuple[float, float]) -> str:
        x, y = self.px(p).split(",")
        return f'x="{x}" y="{y}"'


def _header(width: int, height: int) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="serif" font-size="16">',
    ]


def _midpoint(e: Edge) -> tuple[float, float]:
    (x1, y1), (x2, y2) = e
    return ((x1 + x2) / 2, (y1 + y2) / 2)


def _path_points(edges: list[Edge]) -> list[Point]:
    return [edges[0][0]] + [e[1] for e in edges] if edges else []


def _tableau_body(t: Tableau, frame: _Frame, strips: bool) -> list[str]:
    tiling = t.tiling
    diagram = tiling.diagram
    out = ['<g class="tiles" fill="#fdfaf0" stroke="#333" stroke-width="1">']
    for tile in tiling.sorted_tiles:
        pts = " ".join(frame.px(v) for v in tile.vertices())
        out.append(f'<polygon class="tile {tile.kind.value}" points="{pts}"/>')
    out.append("</g>")

    if strips:
        out.append('<g class="strips" fill="none" stroke-width="1.5">')
        for s in compute_strips(tiling).by_letter:
            pts = [_midpoint(s.se_edge)] + [tile.centroid() for tile in s.tiles] + [_midpoint(s.nw_edge)]
            line = " ".join(frame.px(p) for p in pts)
            out.append(f'<polyline class="strip {s.symbol.value}" points="{line}" '
                       f'{STRIP_STYLE[s.symbol]}/>')
        out.append("</g>")

    out.append('<g class="boundary" fill="none" stroke="#000" stroke-width="2">')
    for name, edges in (("se", diagram.se_edges()), ("nw", diagram.nw_edges())):
        if edges:
            line = " ".join(frame.px(p) for p in _path_points(edges))
            out.append(f'<polyline class="path {name}" points="{line}"/>')
    out.append("</g>")

    out.append('<g class="symbols" text-anchor="middle" dominant-baseline="central">')
    for tile, fill in zip(tiling.sorted_tiles, t.filling):
        if GLYPHS[fill]:
            out.append(f'<text class="symbol" {frame.xy(tile.centroid())}>{GLYPHS[fill]}</text>')
    out.append("</g>")
    return out


def _tableau_frame(t: Tableau) -> _Frame:
    d = t.tiling.diagram
    points = _path_points(d.se_edges()) + _path_points(d.nw_edges()) or [(0, 0)]
    return _Frame.around(points)


def tableau_svg(t: Tableau, strips: bool = True) -> str:
    frame = _tableau_frame(t)
    lines = _header(frame.width, frame.height) + _tableau_body(t, frame, strips) + ["</svg>"]
    return "\n".join(lines) + "\n"


def trace_svg(t: Tableau, edge_labels: Mapping[Edge, EdgeLabel]) -> str:
    """The tableau with every labelled edge annotated at its midpoint."""
    frame = _tableau_frame(t)
    body = _tableau_body(t, frame, strips=True)
    body.append('<g class="labels" font-size="11" fill="#6a1b9a" text-anchor="middle" '
                'dominant-baseline="central">')
    for e in sorted(edge_labels, key=_edge_key):
        label = edge_labels[e]
        if label is not None:
            body.append(f'<text class="label" {frame.xy(_midpoint(e))}>{escape(str(label))}</text>')
    body.append("</g>")
    return "\n".join(_header(frame.width, frame.height) + body + ["</svg>"]) + "\n"


def assemblee_svg(a: Assemblee) -> str:
    """One box per block, left to right, entries separated by spaces."""
    char_w, height = 10, 28
    widths = [max(len(" ".join(map(str, b))) * char_w + 16, 32) for b in a.blocks]
    gap = 12
    total = sum(widths) + gap * (len(widths) - 1) + 2 * MARGIN
    lines = _header(total, height + 2 * MARGIN)
    lines.append('<g class="blocks" text-anchor="middle" dominant-baseline="central">')
    x = MARGIN
    for b, w in zip(a.blocks, widths):
        lines.append(f'<rect class="block" x="{x}" y="{MARGIN}" width="{w}" height="{height}" '
                     'fill="#fdfaf0" stroke="#333"/>')
        lines.append(f'<text x="{_num(x + w / 2)}" y="{_num(MARGIN + height / 2)}">'
                     f'{" ".join(map(str, b))}</text>')
        x += w + gap
    lines += ["</g>", "</svg>"]
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# ASCII
# --------------------------------------------------------------------------


def tableau_ascii(t: Tableau) -> str:
    """Fill characters placed at twice the tile centroids (always integral)."""
    cells = {}
    for tile, fill in zip(t.tiling.sorted_tiles, t.filling):
        (x1, y1), (x2, y2), (x3, y3), (x4, y4) = tile.vertices()
        cells[((y1 + y2 + y3 + y4) // 2, (x1 + x2 + x3 + x4) // 2)] = fill.value
    if not cells:
        return "(no tiles)\n"
    rows = sorted({r for r, _ in cells}, reverse=True)
    cols = [c for _, c in cells]
    lo, hi = min(cols), max(cols)
    out = []
    for r in range(rows[0], rows[-1] - 1, -1):
        line = "".join(cells.get((r, c), " ") for c in range(lo, hi + 1))
        out.append(line.rstrip())
    return "\n".join(out) + "\n"


def _edge_key(e: Edge):
    (x1, y1), (x2, y2) = e
    return (-y1, -x1, -y2, -x2)


def trace_ascii(t: Tableau, edge_labels: Mapping[Edge, EdgeLabel]) -> str:
    lines = [tableau_ascii(t).rstrip("\n")]
    for e in sorted(edge_labels, key=_edge_key):
        (x1, y1), (x2, y2) = e
        label = edge_labels[e]
        lines.append(f"({x1},{y1})-({x2},{y2}) {label if label is not None else '-'}")
    return "\n".join(lines) + "\n"


def assemblee_ascii(a: Assemblee) -> str:
    return str(a) + "\n"
