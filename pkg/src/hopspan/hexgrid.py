"""Hexagonal tiling with cells of unit diameter.

Pointy-top hexagons of circumradius 1/2, one cell centered at the origin,
axial coordinates (q, r). Neighboring centers are sqrt(3)/2 apart and the
east neighbor of (q, r) is (q + 1, r).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

SQRT3 = math.sqrt(3.0)
CIRCUMRADIUS = 0.5
APOTHEM = SQRT3 / 4.0
BOUNDARY_TOL = 1e-12

# counterclockwise from east
DIRECTIONS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))
_NORMALS = np.array([(math.cos(k * math.pi / 3), math.sin(k * math.pi / 3)) for k in range(3)])
_VERTEX_OFFSETS = np.array([
    (CIRCUMRADIUS * math.cos(math.radians(a)), CIRCUMRADIUS * math.sin(math.radians(a)))
    for a in (30, 90, 150, 210, 270, 330)
])


class HexCellId(NamedTuple):
    q: int
    r: int

    def __add__(self, other):
        return HexCellId(self.q + other[0], self.r + other[1])

    def __sub__(self, other):
        return HexCellId(self.q - other[0], self.r - other[1])

    def center(self) -> tuple:
        return (SQRT3 / 2 * (self.q + self.r / 2), 0.75 * self.r)

    def vertices(self) -> np.ndarray:
        """The six corners, counterclockwise from the upper-right one."""
        return np.asarray(self.center()) + _VERTEX_OFFSETS

    def neighbors(self) -> list:
        return [self + d for d in DIRECTIONS]

    def distance(self, other) -> int:
        dq, dr = self.q - other[0], self.r - other[1]
        return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def layer_cells(c, layer: int) -> list:
    """Cells of the first (6) or second (12) layer around ``c``, counterclockwise.

    Layer 1 starts at the east neighbor H1. Layer 2 starts at the cell two
    steps east, the only second-layer cell touching H1 alone.
    """
    c = HexCellId(*c)
    if layer == 1:
        return [c + d for d in DIRECTIONS]
    if layer == 2:
        out = []
        for k in range(6):
            d0, d1 = DIRECTIONS[k], DIRECTIONS[(k + 1) % 6]
            out.append(c + (2 * d0[0], 2 * d0[1]))
            out.append(c + (d0[0] + d1[0], d0[1] + d1[1]))
        return out
    raise ValueError(f"layer must be 1 or 2, got {layer}")


def centers(qr: np.ndarray) -> np.ndarray:
    qr = np.asarray(qr, dtype=np.float64).reshape(-1, 2)
    return np.column_stack((SQRT3 / 2 * (qr[:, 0] + qr[:, 1] / 2), 0.75 * qr[:, 1]))


def margin(xy: np.ndarray, qr: np.ndarray) -> np.ndarray:
    """Signed clearance of each point inside the hexagon of the given cell.

    Positive inside, zero on the boundary, negative outside (in the
    hexagonal norm, scaled so the value is a Euclidean distance along the
    normal of the nearest side).
    """
    d = np.asarray(xy, dtype=np.float64).reshape(-1, 2) - centers(qr)
    return APOTHEM - np.abs(d @ _NORMALS.T).max(axis=1)


def _axial_round(qf: np.ndarray, rf: np.ndarray) -> np.ndarray:
    sf = -qf - rf
    q, r, s = np.round(qf), np.round(rf), np.round(sf)
    dq, dr, ds = np.abs(q - qf), np.abs(r - rf), np.abs(s - sf)
    fix_q = (dq > dr) & (dq > ds)
    fix_r = ~fix_q & (dr > ds)
    q = np.where(fix_q, -r - s, q)
    r = np.where(fix_r, -q - s, r)
    return np.column_stack((q, r)).astype(np.int64)


def cells_of(xy: np.ndarray) -> np.ndarray:
    """Axial cell of every point, as an (n, 2) int64 array.

    A point on a cell boundary goes to the lexicographically smallest cell
    whose closed hexagon contains it.
    """
    xy = np.asarray(xy, dtype=np.float64).reshape(-1, 2)
    qf = (SQRT3 / 3 * xy[:, 0] - xy[:, 1] / 3) / CIRCUMRADIUS
    rf = (2.0 / 3 * xy[:, 1]) / CIRCUMRADIUS
    qr = _axial_round(qf, rf)
    near = np.flatnonzero(margin(xy, qr) <= BOUNDARY_TOL)
    for i in near:
        base = HexCellId(int(qr[i, 0]), int(qr[i, 1]))
        cands = [base] + base.neighbors()
        m = margin(np.repeat(xy[i:i + 1], 7, axis=0), np.array(cands))
        inside = [c for c, v in zip(cands, m) if v >= -BOUNDARY_TOL]
        qr[i] = min(inside) if inside else base
    return qr


def cell_of(p) -> HexCellId:
    x, y = (p.x, p.y) if hasattr(p, "x") else p
    q, r = cells_of(np.array([[x, y]]))[0]
    return HexCellId(int(q), int(r))


def point_hex_distance(xy: np.ndarray, qr: np.ndarray) -> np.ndarray:
    """Euclidean distance from each point to the closed hexagon of the paired cell."""
    xy = np.asarray(xy, dtype=np.float64).reshape(-1, 2)
    qr = np.asarray(qr).reshape(-1, 2)
    c = centers(qr)
    best = np.full(len(xy), np.inf)
    for k in range(6):
        a = c + _VERTEX_OFFSETS[k]
        b = c + _VERTEX_OFFSETS[(k + 1) % 6]
        ab = b - a
        t = np.clip(np.einsum("ij,ij->i", xy - a, ab) / np.einsum("ij,ij->i", ab, ab), 0.0, 1.0)
        proj = a + t[:, None] * ab
        best = np.minimum(best, np.hypot(*(xy - proj).T))
    return np.where(margin(xy, qr) >= 0.0, 0.0, best)


@dataclass(frozen=True, eq=False)
class CellPartition:
    """Assignment of point indices to hexagonal cells.

    ``ids`` lists the nonempty cells in lexicographic order, ``labels[i]`` is
    the position in ``ids`` of the cell holding point i, and ``members[k]``
    holds the (sorted) point indices of cell ``ids[k]``.
    """

    ids: list
    labels: np.ndarray
    members: list

    @classmethod
    def of(cls, xy: np.ndarray) -> "CellPartition":
        qr = cells_of(xy)
        if len(qr) == 0:
            return cls([], np.zeros(0, dtype=np.int64), [])
        uniq, labels = np.unique(qr, axis=0, return_inverse=True)
        labels = labels.reshape(-1).astype(np.int64)
        order = np.argsort(labels, kind="stable")
        bounds = np.searchsorted(labels[order], np.arange(len(uniq) + 1))
        members = [order[bounds[k]:bounds[k + 1]] for k in range(len(uniq))]
        ids = [HexCellId(int(q), int(r)) for q, r in uniq]
        return cls(ids, labels, members)

    @property
    def cells(self) -> dict:
        return {c: m.tolist() for c, m in zip(self.ids, self.members)}

    def cell_of(self, i: int) -> HexCellId:
        return self.ids[self.labels[i]]

    def roots(self) -> np.ndarray:
        """Lowest point index in each cell."""
        return np.array([m[0] for m in self.members], dtype=np.int64)

    @property
    def qr(self) -> np.ndarray:
        return np.array(self.ids, dtype=np.int64).reshape(-1, 2)


@dataclass(frozen=True)
class Line:
    """Oriented line through ``origin`` with unit ``normal`` pointing to the positive side."""

    origin: tuple
    normal: tuple

    def side(self, xy: np.ndarray) -> np.ndarray:
        xy = np.asarray(xy, dtype=np.float64).reshape(-1, 2)
        return (xy - np.asarray(self.origin)) @ np.asarray(self.normal)

    def to_frame(self, xy: np.ndarray) -> np.ndarray:
        """Rigid motion taking the line to the x-axis, positive side up."""
        xy = np.asarray(xy, dtype=np.float64).reshape(-1, 2) - np.asarray(self.origin)
        nx, ny = self.normal
        return np.column_stack((xy[:, 0] * ny - xy[:, 1] * nx, xy @ np.asarray(self.normal)))

    def from_frame(self, uv: np.ndarray) -> np.ndarray:
        uv = np.asarray(uv, dtype=np.float64).reshape(-1, 2)
        nx, ny = self.normal
        x = uv[:, 0] * ny + uv[:, 1] * nx
        y = -uv[:, 0] * nx + uv[:, 1] * ny
        return np.column_stack((x, y)) + np.asarray(self.origin)


def separating_line(c1, c2) -> Line:
    """Perpendicular bisector of two cell centers, with c1 on the positive side."""
    c1, c2 = HexCellId(*c1), HexCellId(*c2)
    if c1 == c2:
        raise ValueError(f"cells coincide: {c1}")
    a, b = np.asarray(c1.center()), np.asarray(c2.center())
    n = (a - b) / np.linalg.norm(a - b)
    mid = (a + b) / 2
    return Line((float(mid[0]), float(mid[1])), (float(n[0]), float(n[1])))
