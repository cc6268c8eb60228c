"""Hop spanner constructions on unit disk graphs.

``build_hop5``, ``build_hop3`` and ``build_hop2`` bucket the points into
unit-diameter hexagonal cells; ``build_circle_hop4`` handles concyclic
points and produces a plane spanner.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import EDGE_SQ_LIMIT, PointSet, SpannerGraph, UnitDiskGraph, udg_build
from .hexgrid import CellPartition, point_hex_distance, separating_line
from .nets import BipartiteScene, bipartite_2hop

# slack on d(point, cell) <= 1 so every unit disk edge passes the test
CELL_REACH_SQ = 1.0 + 1e-9
CONCYCLIC_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class BridgeMap:
    """One chosen unit disk edge per pair of cells joined by any edge.

    Row k describes cell pair ``(cells[k, 0], cells[k, 1])`` (labels into
    the partition, first < second), its bridge ``edges[k]`` (point indices,
    first < second, not necessarily in cell order) and whether the cells are
    adjacent.
    """

    partition: CellPartition
    cells: np.ndarray
    edges: np.ndarray
    short: np.ndarray

    def __len__(self) -> int:
        return len(self.edges)

    def lookup(self) -> dict:
        """``{(cell_a, cell_b): (p, q)}`` with p in cell_a, q in cell_b, both orders."""
        ids, lab = self.partition.ids, self.partition.labels
        out = {}
        for (i, j) in self.edges:
            a, b = ids[lab[i]], ids[lab[j]]
            out[(a, b)] = (int(i), int(j))
            out[(b, a)] = (int(j), int(i))
        return out

    def incident(self) -> np.ndarray:
        """Number of bridges touching each cell."""
        return np.bincount(self.cells.reshape(-1), minlength=len(self.partition.ids))


def _cross_edges(g: UnitDiskGraph, part: CellPartition):
    lab = part.labels
    li, lj = lab[g.edges[:, 0]], lab[g.edges[:, 1]]
    cross = li != lj
    lo = np.minimum(li[cross], lj[cross])
    hi = np.maximum(li[cross], lj[cross])
    return g.edges[cross], lo, hi


def find_bridges(g: UnitDiskGraph, part: CellPartition | None = None) -> BridgeMap:
    """Lexicographically smallest unit disk edge for every linked cell pair."""
    if part is None:
        part = CellPartition.of(g.points.xy)
    edges, lo, hi = _cross_edges(g, part)
    ncell = max(len(part.ids), 1)
    _, first = np.unique(lo * ncell + hi, return_index=True)
    cells = np.column_stack((lo[first], hi[first])).reshape(-1, 2)
    qr = part.qr
    d = qr[cells[:, 0]] - qr[cells[:, 1]] if len(cells) else np.zeros((0, 2), dtype=np.int64)
    hexdist = (np.abs(d[:, 0]) + np.abs(d[:, 1]) + np.abs(d[:, 0] + d[:, 1])) // 2
    return BridgeMap(part, cells, edges[first].reshape(-1, 2), hexdist == 1)


def _star_edges(part: CellPartition, centers=None) -> np.ndarray:
    """Per-cell spanning stars; ``centers[k]`` defaults to the lowest index in cell k."""
    if centers is None:
        centers = part.roots()
    n = len(part.labels)
    hub = np.asarray(centers)[part.labels]
    leaf = np.arange(n)
    keep = hub != leaf
    return np.column_stack((hub[keep], leaf[keep]))


def _spanner(g: UnitDiskGraph, *parts) -> SpannerGraph:
    pairs = [p for p in parts if len(p)]
    if not pairs:
        return SpannerGraph(g, np.zeros((0, 2), dtype=np.int64))
    return SpannerGraph.from_pairs(g, np.concatenate(pairs))


def build_hop5(g: UnitDiskGraph) -> SpannerGraph:
    """Per-cell stars plus one bridge per linked cell pair; at most 5 hops, 5.5n edges."""
    part = CellPartition.of(g.points.xy)
    return _spanner(g, _star_edges(part), find_bridges(g, part).edges)


def build_hop3(g: UnitDiskGraph) -> SpannerGraph:
    """All hop5 bridges plus edges to bridge endpoints; at most 3 hops, 11n edges.

    A point ``x`` of cell s is joined to the s-side endpoint p of the bridge
    toward cell t whenever x is within distance 1 of the hexagon t. Cells with
    no short bridge also get a spanning star, centered at their lowest
    long-bridge endpoint if they have one.
    """
    part = CellPartition.of(g.points.xy)
    br = find_bridges(g, part)
    xy, lab, qr = g.points.xy, part.labels, part.qr
    pieces = [br.edges]

    if len(br):
        # one record per bridge side: (own cell, own endpoint, partner cell)
        own_p = np.concatenate((br.edges[:, 0], br.edges[:, 1]))
        other = np.concatenate((br.edges[:, 1], br.edges[:, 0]))
        own_c, tau = lab[own_p], lab[other]
        sizes = np.array([len(m) for m in part.members], dtype=np.int64)
        flat = np.concatenate(part.members)
        offsets = np.concatenate(([0], np.cumsum(sizes)))
        reps = sizes[own_c]
        rec = np.repeat(np.arange(len(own_p)), reps)
        start = np.repeat(np.cumsum(reps) - reps, reps)
        x = flat[offsets[own_c[rec]] + np.arange(len(rec)) - start]
        d = point_hex_distance(xy[x], qr[tau[rec]])
        keep = (x != own_p[rec]) & (d * d <= CELL_REACH_SQ)
        pieces.append(np.column_stack((x[keep], own_p[rec][keep])))

    short_cells = np.zeros(len(part.ids), dtype=bool)
    short_cells[br.cells[br.short].reshape(-1)] = True
    long_end = np.full(len(part.ids), -1, dtype=np.int64)
    for p in sorted(br.edges[~br.short].reshape(-1).tolist(), reverse=True):
        long_end[lab[p]] = p
    centers = np.where(long_end >= 0, long_end, part.roots())
    stars = _star_edges(part, centers)
    pieces.append(stars[~short_cells[lab[stars[:, 1]]]])
    return _spanner(g, *pieces)


def hop2_scenes(g: UnitDiskGraph, part: CellPartition | None = None):
    """Bipartite scenes for every cell pair with at least one cross edge.

    The lexicographically smaller cell is the A side, above the bisector of
    the two cell centers.
    """
    if part is None:
        part = CellPartition.of(g.points.xy)
    _, lo, hi = _cross_edges(g, part)
    ncell = max(len(part.ids), 1)
    keys = np.unique(lo * ncell + hi)
    for key in keys:
        a, b = int(key // ncell), int(key % ncell)
        line = separating_line(part.ids[a], part.ids[b])
        yield (a, b), BipartiteScene.from_points(
            g.points.xy, part.members[a], part.members[b], line)


def build_hop2(g: UnitDiskGraph, trace: list | None = None) -> SpannerGraph:
    """Per-cell stars plus a bipartite 2-hop star cover for every linked cell pair.

    If ``trace`` is a list, one record per cell pair is appended with the
    hull boundary points and per-level nets (global point indices).
    """
    part = CellPartition.of(g.points.xy)
    pieces = [_star_edges(part)]
    for (a, b), scene in hop2_scenes(g, part):
        res = bipartite_2hop(scene.a_xy, scene.b_xy)
        glob = np.concatenate((scene.a_idx, scene.b_idx))
        pieces.append(glob[res.edges])
        if trace is not None:
            trace.append({
                "cells": [list(part.ids[a]), list(part.ids[b])],
                "M": scene.a_idx[res.hull.M].tolist(),
                "nets": {str(lv): scene.a_idx[net.N].tolist() for lv, net in res.nets.items()},
                "edges": len(res.edges),
            })
    return _spanner(g, *pieces)


@dataclass(frozen=True, eq=False)
class GreedyChain:
    """Greedy polygonal chain on concyclic points.

    ``order`` lists point indices counterclockwise starting after the
    largest angular gap; ``chain`` holds positions in ``order`` of the chain
    vertices. Block t spans positions ``chain[t]..chain[t+1]``. A closed
    chain has one more block running from the last chain vertex through the
    remaining points and back to the first one.
    """

    order: np.ndarray
    chain: list
    closed: bool
    center: tuple
    radius: float

    def block_positions(self) -> list:
        out = [list(range(self.chain[t], self.chain[t + 1] + 1)) for t in range(len(self.chain) - 1)]
        if self.closed:
            out.append(list(range(self.chain[-1], len(self.order))) + [0])
        return out

    @property
    def blocks(self) -> list:
        return [[int(self.order[p]) for p in blk] for blk in self.block_positions()]


def fit_circle(xy: np.ndarray, tol: float = CONCYCLIC_TOL) -> tuple:
    """Center and radius of the circle through the points; ValueError if not concyclic."""
    xy = np.asarray(xy, dtype=np.float64)
    if len(xy) < 3:
        raise ValueError("need at least 3 points to fix a circle")
    lhs = np.column_stack((2 * xy, np.ones(len(xy))))
    rhs = np.einsum("ij,ij->i", xy, xy)
    sol, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
    c = sol[:2]
    radii = np.hypot(*(xy - c).T)
    r = float(radii.mean())
    if np.max(np.abs(radii - r)) > tol:
        raise ValueError(f"points are not concyclic (radius spread {np.ptp(radii):.3g})")
    return (float(c[0]), float(c[1])), r


def greedy_chain(ps: PointSet) -> GreedyChain:
    xy = ps.xy
    n = len(xy)
    center, r = fit_circle(xy)
    ang = np.mod(np.arctan2(xy[:, 1] - center[1], xy[:, 0] - center[0]), 2 * math.pi)
    srt = np.lexsort((np.arange(n), ang))
    a = ang[srt]
    gaps = np.append(np.diff(a), a[0] + 2 * math.pi - a[-1])
    order = np.roll(srt, -(int(np.argmax(gaps)) + 1))
    s = xy[order]

    def close(i, j):
        d = s[i] - s[j]
        return d @ d <= EDGE_SQ_LIMIT

    for i in range(n - 1):
        if not close(i, i + 1):
            raise ValueError(
                f"unit disk graph is disconnected: gap of length "
                f"{math.dist(s[i], s[i + 1]):.6g} > 1 between points {order[i]} and {order[i + 1]}")
    chain, a_pos = [0], 0
    closed = False
    while a_pos < n - 1:
        b = a_pos + 1
        while b + 1 <= n - 1 and close(a_pos, b + 1):
            b += 1
        if b == n - 1 and len(chain) >= 2 and close(a_pos, 0):
            # the walk reached the last point: stop here and close the polygon,
            # so the closing block takes the rest of the arc
            closed = True
            break
        chain.append(b)
        a_pos = b
    else:
        closed = len(chain) >= 3 and close(chain[-1], 0)
    return GreedyChain(order, chain, closed, center, r)


def build_circle_hop4(ps: PointSet, g: UnitDiskGraph | None = None) -> SpannerGraph:
    """Plane 4-hop spanner of concyclic points.

    Small circles (radius <= 1/2) get a star at point 0. Otherwise a greedy
    chain is walked counterclockwise and each chain vertex becomes the apex
    of a star over the points of its block.
    """
    if g is None:
        g = udg_build(ps)
    n = len(ps)
    if n <= 2:
        if n == 2 and g.m == 0:
            raise ValueError(f"unit disk graph is disconnected: points 0 and 1 are "
                             f"{math.dist(*ps.xy):.6g} apart")
        return SpannerGraph(g, g.edges.copy())
    _, r = fit_circle(ps.xy)
    if r <= 0.5:
        return _spanner(g, np.column_stack((np.zeros(n - 1, dtype=np.int64), np.arange(1, n))))
    ch = greedy_chain(ps)
    o = ch.order
    pairs = [(o[blk[0]], o[p]) for blk in ch.block_positions() for p in blk[1:]]
    return _spanner(g, np.array(pairs, dtype=np.int64))


BUILDERS = {
    "hop5": build_hop5,
    "hop3": build_hop3,
    "hop2": build_hop2,
    "circle4": lambda g: build_circle_hop4(g.points, g),
}
