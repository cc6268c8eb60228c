"""Unit-disk hulls, small epsilon-nets and bipartite 2-hop star covers.

Everything here works in an axis-aligned frame: the A side lies strictly
above the x-axis, the B side strictly below, and the ranges are unit disks
centered on or below the axis. ``BipartiteScene`` maps a pair of point
groups separated by an oriented line into that frame.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import EDGE_SQ_LIMIT, INTERIOR_SQ_LIMIT, UNIT_SQ_TOL, diameter_sq
from .hexgrid import Line


def _sq_dists(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    d = p[:, None, :] - q[None, :, :]
    return np.einsum("ijk,ijk->ij", d, d)


def disk_membership(centers: np.ndarray, a_xy: np.ndarray) -> np.ndarray:
    """Boolean matrix: ``[b, a]`` is True iff point a lies in the closed unit disk at b."""
    centers = np.asarray(centers, dtype=np.float64).reshape(-1, 2)
    a_xy = np.asarray(a_xy, dtype=np.float64).reshape(-1, 2)
    return _sq_dists(centers, a_xy) <= EDGE_SQ_LIMIT


@dataclass(frozen=True, eq=False)
class BipartiteScene:
    """Two point groups in the frame of a separating line.

    ``a_xy``/``b_xy`` are frame coordinates of the global points ``a_idx``/
    ``b_idx``. The frame is the line's own frame shifted vertically by
    ``offset`` (nonzero only when a point lies on the line itself).
    """

    a_idx: np.ndarray
    b_idx: np.ndarray
    a_xy: np.ndarray
    b_xy: np.ndarray
    line: Line
    offset: float = 0.0

    @classmethod
    def from_points(cls, xy: np.ndarray, a_idx, b_idx, line: Line) -> "BipartiteScene":
        a_idx = np.asarray(a_idx, dtype=np.int64)
        b_idx = np.asarray(b_idx, dtype=np.int64)
        a_xy = line.to_frame(xy[a_idx])
        b_xy = line.to_frame(xy[b_idx])
        lo, hi = a_xy[:, 1].min(), b_xy[:, 1].max()
        offset = 0.0
        if lo <= 0.0 or hi >= 0.0:
            if lo <= hi:
                raise ValueError("groups are not separated by the line")
            offset = float((lo + hi) / 2)
            a_xy[:, 1] -= offset
            b_xy[:, 1] -= offset
        return cls(a_idx, b_idx, a_xy, b_xy, line, offset)


@dataclass(frozen=True, eq=False)
class HullBoundarySet:
    """Points of A on the boundary of the unit-disk hull.

    ``M`` holds local indices into A sorted by x (then y, then index);
    ``witnesses[k]`` is the center (y <= 0) of a unit disk with ``M[k]`` on
    its boundary and no point of A in its open interior.
    """

    M: np.ndarray
    witnesses: np.ndarray


def _free_witness(p: np.ndarray, others: np.ndarray):
    """Center of an empty unit disk through ``p`` centered on/below the axis, or None.

    Centers through p form the arc ``p + (cos t, sin t)`` with ``sin t <= -p_y``.
    Every other point q rules out an open sub-arc; the sweep looks for an
    uncovered angle.
    """
    py = p[1]
    if py > 1.0 + UNIT_SQ_TOL:
        return None
    s = math.asin(min(py, 1.0))
    lo, hi = -math.pi + s, -s
    d = others - p
    d2 = np.einsum("ij,ij->i", d, d)
    # a coincident point sits on every circle through p, never inside
    d, d2 = d[d2 > 0], d2[d2 > 0]
    dist = np.sqrt(d2)
    h = (d2 + UNIT_SQ_TOL) / (2.0 * dist)
    close = h < 1.0
    theta = None
    if np.any(close):
        phi = np.arctan2(d[close, 1], d[close, 0])
        w = np.arccos(h[close])
        starts = np.concatenate([phi - w + k * 2 * math.pi for k in (-1, 0, 1)])
        ends = np.concatenate([phi + w + k * 2 * math.pi for k in (-1, 0, 1)])
        keep = (starts < hi) & (ends > lo)
        starts, ends = starts[keep], ends[keep]
        if len(starts):
            order = np.argsort(starts, kind="stable")
            starts, ends = starts[order], ends[order]
            reach = np.maximum(np.maximum.accumulate(ends), lo)
            pos = np.concatenate(([lo], reach[:-1]))
            gaps = np.flatnonzero(starts >= pos)
            if len(gaps):
                k = gaps[0]
                theta = (pos[k] + starts[k]) / 2
            elif reach[-1] <= hi:
                theta = (reach[-1] + hi) / 2
            else:
                return None
    if theta is None:
        theta = (lo + hi) / 2
    cx, cy = p[0] + math.cos(theta), p[1] + math.sin(theta)
    return (cx, min(cy, 0.0))


def hull_boundary(a_xy) -> HullBoundarySet:
    """Points of A admitting an empty unit witness disk centered on or below the axis."""
    a_xy = np.asarray(a_xy, dtype=np.float64).reshape(-1, 2)
    n = len(a_xy)
    members, wit = [], []
    for i in range(n):
        w = _free_witness(a_xy[i], np.delete(a_xy, i, axis=0))
        if w is not None:
            members.append(i)
            wit.append(w)
    m = np.array(members, dtype=np.int64)
    wit = np.array(wit, dtype=np.float64).reshape(-1, 2)
    if len(m):
        order = np.lexsort((m, a_xy[m, 1], a_xy[m, 0]))
        m, wit = m[order], wit[order]
    return HullBoundarySet(m, wit)


@dataclass(frozen=True, eq=False)
class EpsNet:
    N: np.ndarray          # local indices into A, sorted like M
    eps: float
    family: np.ndarray     # disk centers the net was made minimal against
    heavy: np.ndarray      # which family disks hold >= eps |A| points


def minimal_eps_net(a_xy, hull: HullBoundarySet, eps: float, family) -> EpsNet:
    """Minimal subset of the hull boundary hitting every heavy disk of ``family``.

    Starts from M and deletes points in decreasing x order while every disk
    holding at least ``eps * |A|`` points of A still contains a net point.
    """
    if not 0.0 < eps < 2.0 / 3.0:
        raise ValueError(f"eps must lie in (0, 2/3), got {eps}")
    a_xy = np.asarray(a_xy, dtype=np.float64).reshape(-1, 2)
    family = np.asarray(family, dtype=np.float64).reshape(-1, 2)
    inside = disk_membership(family, a_xy)
    heavy = inside.sum(axis=1) >= eps * len(a_xy)
    if not np.any(heavy) or len(hull.M) == 0:
        return EpsNet(np.zeros(0, dtype=np.int64), eps, family, heavy)
    hit = inside[heavy][:, hull.M]
    counts = hit.sum(axis=1)
    if np.any(counts == 0):
        raise RuntimeError("a heavy disk contains no hull boundary point")
    keep = np.ones(len(hull.M), dtype=bool)
    for k in range(len(hull.M) - 1, -1, -1):
        col = hit[:, k]
        if np.all(counts[col] >= 2):
            keep[k] = False
            counts[col] -= 1
    return EpsNet(hull.M[keep], eps, family, heavy)


@dataclass(frozen=True, eq=False)
class DiskBin:
    level: int
    members: np.ndarray    # local indices into B


def disk_level(count: int, total: int) -> int:
    """Level i >= 1 with total/2^i <= count < total/2^(i-1); a full disk is level 1."""
    if count < 1:
        raise ValueError("empty disks have no level")
    return max(1, (-(-total // count) - 1).bit_length())


def bin_disks(a_xy, b_xy) -> list:
    counts = disk_membership(b_xy, a_xy).sum(axis=1)
    total = len(np.asarray(a_xy).reshape(-1, 2))
    levels = {}
    for b, c in enumerate(counts):
        if c > 0:
            levels.setdefault(disk_level(int(c), total), []).append(b)
    return [DiskBin(lv, np.array(levels[lv], dtype=np.int64)) for lv in sorted(levels)]


@dataclass(frozen=True, eq=False)
class Star:
    level: int
    center: int            # local index into A
    a_members: np.ndarray  # A-points covered by the disks of b_members
    b_members: np.ndarray  # local indices into B


@dataclass(frozen=True, eq=False)
class Bipartite2Hop:
    """Star cover on A + B; vertex ``len(A) + b`` is the b-th point of B."""

    n_a: int
    n_b: int
    edges: np.ndarray
    hull: HullBoundarySet
    bins: list
    nets: dict = field(default_factory=dict)
    stars: list = field(default_factory=list)


def bipartite_2hop(a_xy, b_xy) -> Bipartite2Hop:
    """Subgraph where every A-B edge of length <= 1 has a path of at most two edges.

    Each B-disk is binned by how many A-points it holds; per level a minimal
    net on the hull boundary is built, and each net point v becomes the
    center of a star over the disks whose leftmost net point is v and all
    A-points those disks cover.
    """
    a_xy = np.asarray(a_xy, dtype=np.float64).reshape(-1, 2)
    b_xy = np.asarray(b_xy, dtype=np.float64).reshape(-1, 2)
    _check_scene(a_xy, b_xy)
    n_a, n_b = len(a_xy), len(b_xy)
    empty = np.zeros((0, 2), dtype=np.int64)
    if n_a == 0 or n_b == 0:
        return Bipartite2Hop(n_a, n_b, empty, HullBoundarySet(empty[:, 0], np.zeros((0, 2))), [])
    inside = disk_membership(b_xy, a_xy)
    hull = hull_boundary(a_xy)
    bins = bin_disks(a_xy, b_xy)
    nets, stars, pairs = {}, [], []
    for dbin in bins:
        net = minimal_eps_net(a_xy, hull, 2.0 ** -dbin.level, b_xy[dbin.members])
        nets[dbin.level] = net
        groups = {}
        for b in dbin.members:
            hits = net.N[inside[b, net.N]]
            if len(hits) == 0:
                raise RuntimeError(f"net misses the disk of B-point {b}")
            groups.setdefault(int(hits[0]), []).append(b)
        for v in sorted(groups, key=lambda v: (a_xy[v, 0], a_xy[v, 1], v)):
            bs = np.array(groups[v], dtype=np.int64)
            covered = np.flatnonzero(inside[bs].any(axis=0))
            stars.append(Star(dbin.level, v, covered, bs))
            pairs.extend((v, n_a + b) for b in bs)
            pairs.extend((v, a) for a in covered if a != v)
    edges = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    edges = np.unique(np.sort(edges, axis=1), axis=0) if len(edges) else empty
    return Bipartite2Hop(n_a, n_b, edges, hull, bins, nets, stars)


def _check_scene(a_xy, b_xy):
    if len(a_xy) and np.any(a_xy[:, 1] <= 0.0):
        bad = np.flatnonzero(a_xy[:, 1] <= 0.0).tolist()
        raise ValueError(f"A-points not strictly above the axis: {bad}")
    if len(b_xy) and np.any(b_xy[:, 1] >= 0.0):
        bad = np.flatnonzero(b_xy[:, 1] >= 0.0).tolist()
        raise ValueError(f"B-points not strictly below the axis: {bad}")
    for name, xy in (("A", a_xy), ("B", b_xy)):
        d2 = diameter_sq(xy)
        if d2 > EDGE_SQ_LIMIT:
            raise ValueError(f"diam({name}) = {math.sqrt(d2):.6g} exceeds 1")


def interior_empty(center, a_xy) -> bool:
    """True if no point of A lies in the open unit disk at ``center``."""
    d = np.asarray(a_xy, dtype=np.float64).reshape(-1, 2) - np.asarray(center)
    return bool(np.all(np.einsum("ij,ij->i", d, d) >= INTERIOR_SQ_LIMIT))
