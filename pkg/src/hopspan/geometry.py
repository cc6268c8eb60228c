"""Points, unit disk graphs and spanner subgraphs.

Coordinates are in units of the disk radius. Two points are adjacent in the
unit disk graph iff their squared distance is at most ``1 + UNIT_SQ_TOL``;
the same tolerance is used by every builder and verifier in the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.spatial import cKDTree

UNIT_SQ_TOL = 1e-12
EDGE_SQ_LIMIT = 1.0 + UNIT_SQ_TOL
INTERIOR_SQ_LIMIT = 1.0 - UNIT_SQ_TOL


class DuplicatePointError(ValueError):
    def __init__(self, pairs):
        self.pairs = [tuple(int(i) for i in p) for p in pairs]
        super().__init__(f"duplicate points at indices {self.pairs}")


class ForeignEdgeError(ValueError):
    """Raised when a spanner contains edges that are not unit disk edges."""

    def __init__(self, edges):
        self.edges = [tuple(int(i) for i in e) for e in edges]
        shown = ", ".join(f"{i} {j}" for i, j in self.edges[:10])
        more = "" if len(self.edges) <= 10 else f" (+{len(self.edges) - 10} more)"
        super().__init__(f"edges not in the unit disk graph: {shown}{more}")


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate ({self.x}, {self.y})")

    def dist(self, other: "Point2D") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


class PointSet:
    """Ordered, duplicate-free planar point set; a point's id is its index."""

    def __init__(self, xy):
        arr = np.array(xy, dtype=np.float64).reshape(-1, 2)
        if not np.all(np.isfinite(arr)):
            bad = np.flatnonzero(~np.all(np.isfinite(arr), axis=1))
            raise ValueError(f"non-finite coordinates at indices {bad.tolist()}")
        dups = _duplicate_pairs(arr)
        if dups:
            raise DuplicatePointError(dups)
        arr.setflags(write=False)
        self.xy = arr

    @classmethod
    def from_points(cls, points: Iterable[Point2D]) -> "PointSet":
        return cls([(p.x, p.y) for p in points])

    def __len__(self) -> int:
        return len(self.xy)

    def __getitem__(self, i: int) -> Point2D:
        x, y = self.xy[i]
        return Point2D(float(x), float(y))

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and np.array_equal(self.xy, other.xy)

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)})"


def _duplicate_pairs(arr: np.ndarray) -> list:
    if len(arr) < 2:
        return []
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    s = arr[order]
    same = np.all(s[1:] == s[:-1], axis=1)
    return [(min(order[k], order[k + 1]), max(order[k], order[k + 1]))
            for k in np.flatnonzero(same)]


def normalize_edges(pairs, n: Optional[int] = None) -> np.ndarray:
    """Return unique edges as an (m, 2) int64 array, i < j, sorted lexicographically."""
    e = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    if len(e) == 0:
        return np.zeros((0, 2), dtype=np.int64)
    if np.any(e[:, 0] == e[:, 1]):
        loops = e[e[:, 0] == e[:, 1]][:, 0]
        raise ValueError(f"self-loops at vertices {sorted(set(loops.tolist()))}")
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    if n is None:
        n = int(hi.max()) + 1
    keys = np.unique(lo * n + hi)
    return np.column_stack((keys // n, keys % n))


def edge_keys(edges: np.ndarray, n: int) -> np.ndarray:
    return edges[:, 0] * n + edges[:, 1]


@dataclass(frozen=True, eq=False)
class UnitDiskGraph:
    points: PointSet
    edges: np.ndarray  # (m, 2), i < j, lexicographically sorted

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def keys(self) -> np.ndarray:
        return edge_keys(self.edges, self.n)

    @cached_property
    def adjacency(self) -> csr_matrix:
        return _adjacency(self.edges, self.n)

    def degrees(self) -> np.ndarray:
        return np.diff(self.adjacency.indptr)

    def neighbors(self, i: int) -> np.ndarray:
        a = self.adjacency
        return a.indices[a.indptr[i]:a.indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        if i == j:
            return False
        k = min(i, j) * self.n + max(i, j)
        pos = np.searchsorted(self.keys, k)
        return bool(pos < len(self.keys) and self.keys[pos] == k)

    def edge_set(self) -> set:
        return {(int(i), int(j)) for i, j in self.edges}


def _adjacency(edges: np.ndarray, n: int) -> csr_matrix:
    rows = np.concatenate((edges[:, 0], edges[:, 1]))
    cols = np.concatenate((edges[:, 1], edges[:, 0]))
    a = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    a.sort_indices()
    return a


def udg_build(ps: PointSet) -> UnitDiskGraph:
    """All pairs at distance at most one (with the package tolerance)."""
    n = len(ps)
    if n < 2:
        return UnitDiskGraph(ps, np.zeros((0, 2), dtype=np.int64))
    # kd-tree radius is padded; the exact squared-distance test below decides.
    pairs = cKDTree(ps.xy).query_pairs(1.0 + 1e-9, output_type="ndarray")
    pairs = pairs.astype(np.int64, copy=False)
    d = ps.xy[pairs[:, 0]] - ps.xy[pairs[:, 1]]
    pairs = pairs[np.einsum("ij,ij->i", d, d) <= EDGE_SQ_LIMIT]
    return UnitDiskGraph(ps, normalize_edges(pairs, n))


@dataclass(frozen=True, eq=False)
class SpannerGraph:
    """An edge subset of a unit disk graph."""

    base: UnitDiskGraph
    edges: np.ndarray

    @classmethod
    def from_pairs(cls, base: UnitDiskGraph, pairs) -> "SpannerGraph":
        return cls(base, normalize_edges(pairs, base.n))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> csr_matrix:
        return _adjacency(self.edges, self.n)

    def degrees(self) -> np.ndarray:
        return np.diff(self.adjacency.indptr)

    def neighbors(self, i: int) -> np.ndarray:
        a = self.adjacency
        return a.indices[a.indptr[i]:a.indptr[i + 1]]

    def foreign_edges(self) -> np.ndarray:
        if self.m == 0:
            return self.edges
        keys = edge_keys(self.edges, self.n)
        return self.edges[~np.isin(keys, self.base.keys, assume_unique=True)]

    def edge_set(self) -> set:
        return {(int(i), int(j)) for i, j in self.edges}


def circle_below_axis_through(p1: Point2D, p2: Point2D) -> Optional[Point2D]:
    """Center of the unit circle through ``p1`` and ``p2`` whose center has y <= 0.

    For two points above the x-axis there is at most one such circle. Returns
    None if the points are more than 2 apart or both candidate centers lie
    above the axis.
    """
    dx, dy = p2.x - p1.x, p2.y - p1.y
    d2 = dx * dx + dy * dy
    if d2 == 0.0:
        raise ValueError("coincident points")
    if d2 > 4.0:
        return None
    d = math.sqrt(d2)
    h = math.sqrt(max(0.0, 1.0 - d2 / 4.0))
    mx, my = (p1.x + p2.x) / 2, (p1.y + p2.y) / 2
    nx, ny = -dy / d, dx / d
    c1 = (mx + h * nx, my + h * ny)
    c2 = (mx - h * nx, my - h * ny)
    c = min(c1, c2, key=lambda c: c[1])
    if c[1] > 0.0:
        return None
    return Point2D(c[0], c[1])


def segments_cross(p1, p2, p3, p4, eps: float = 1e-12) -> bool:
    """True if segments p1p2 and p3p4 properly cross or overlap.

    Touching at a shared endpoint is allowed; collinear overlap counts as a
    crossing. Orientation values within ``eps`` are treated as collinear.
    """
    shared = _same(p1, p3) or _same(p1, p4) or _same(p2, p3) or _same(p2, p4)
    o1 = _orient(p1, p2, p3, eps)
    o2 = _orient(p1, p2, p4, eps)
    o3 = _orient(p3, p4, p1, eps)
    o4 = _orient(p3, p4, p2, eps)
    if o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0:
        return o1 != o2 and o3 != o4
    if o1 == 0 and o2 == 0:
        # collinear: crossing iff the open segments overlap
        return _collinear_overlap(p1, p2, p3, p4)
    if shared:
        return False
    # one endpoint on the other segment's line
    if o1 == 0 and _on_segment(p1, p2, p3):
        return True
    if o2 == 0 and _on_segment(p1, p2, p4):
        return True
    if o3 == 0 and _on_segment(p3, p4, p1):
        return True
    if o4 == 0 and _on_segment(p3, p4, p2):
        return True
    return False


def _same(a, b) -> bool:
    return a[0] == b[0] and a[1] == b[1]


def _orient(a, b, c, eps) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return 0 if abs(v) <= eps else (1 if v > 0 else -1)


def _on_segment(a, b, p) -> bool:
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _collinear_overlap(p1, p2, p3, p4) -> bool:
    ax = 0 if abs(p2[0] - p1[0]) >= abs(p2[1] - p1[1]) else 1
    a0, a1 = sorted((p1[ax], p2[ax]))
    b0, b1 = sorted((p3[ax], p4[ax]))
    return min(a1, b1) - max(a0, b0) > 0


def pairwise_sq(xy: np.ndarray) -> np.ndarray:
    d = xy[:, None, :] - xy[None, :, :]
    return np.einsum("ijk,ijk->ij", d, d)


def diameter_sq(xy: Sequence) -> float:
    xy = np.asarray(xy, dtype=np.float64).reshape(-1, 2)
    if len(xy) < 2:
        return 0.0
    return float(pairwise_sq(xy).max())
