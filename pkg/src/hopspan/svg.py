"""Static SVG drawings of point sets, spanner edges and hexagonal cells."""
from __future__ import annotations

import numpy as np

from .hexgrid import CellPartition, HexCellId


def render_svg(xy: np.ndarray, edges: np.ndarray, cells: bool = False,
               width: int = 800, pad: float = 0.5) -> str:
    """Return SVG markup; y points up in data space, so it is flipped on output."""
    xy = np.asarray(xy, dtype=np.float64).reshape(-1, 2)
    polys = []
    if cells and len(xy):
        polys = [HexCellId(*c).vertices() for c in CellPartition.of(xy).ids]
    pts = np.vstack([xy, *polys]) if polys else xy
    if len(pts) == 0:
        pts = np.zeros((1, 2))
    lo = pts.min(axis=0) - pad
    hi = pts.max(axis=0) + pad
    span = max(hi[0] - lo[0], hi[1] - lo[1])
    scale = width / span
    height = int(round((hi[1] - lo[1]) * scale))
    w = int(round((hi[0] - lo[0]) * scale))

    def tx(p):
        return f"{(p[0] - lo[0]) * scale:.2f},{(hi[1] - p[1]) * scale:.2f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{height}" '
           f'viewBox="0 0 {w} {height}">',
           '<rect width="100%" height="100%" fill="white"/>']
    for poly in polys:
        out.append(f'<polygon points="{" ".join(tx(v) for v in poly)}" '
                   'fill="none" stroke="#bbbbbb" stroke-width="1"/>')
    for i, j in np.asarray(edges, dtype=np.int64).reshape(-1, 2):
        a, b = tx(xy[i]).split(","), tx(xy[j]).split(",")
        out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" '
                   'stroke="#1f5fa8" stroke-width="1"/>')
    r = max(1.5, min(4.0, 0.04 * scale))
    for p in xy:
        c = tx(p).split(",")
        out.append(f'<circle cx="{c[0]}" cy="{c[1]}" r="{r:.2f}" fill="#c0392b"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
