"""Seeded instance generators.

All randomness comes from numpy's PCG64 bit generator seeded with the
given integer, so outputs are reproducible from ``(parameters, seed)``.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .geometry import EDGE_SQ_LIMIT, PointSet, udg_build
from .hexgrid import HexCellId, layer_cells, margin

KINDS = ("uniform", "cluster", "unit_clique", "circle8", "ngon_lb", "clique_chain",
         "circle_uniform", "triangle_free")


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass
class GenSpec:
    kind: str
    n: int = 100
    seed: int = 0
    box: float = 1.0
    t: int = 1
    groups: int = 2
    eps: float = 0.02
    r: float = 1.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.n < 1:
            raise ValueError("n must be >= 1")


def generate(spec: GenSpec) -> tuple:
    """Return ``(PointSet, meta)`` for a spec; meta records every parameter used."""
    meta = {k: v for k, v in asdict(spec).items()}
    k = spec.kind
    if k == "uniform":
        ps = gen_uniform(spec.n, spec.box, spec.seed)
    elif k == "cluster":
        ps, extra = gen_cluster(spec.n, spec.seed)
        meta.update(extra)
    elif k == "unit_clique":
        ps = gen_unit_clique(spec.n, spec.seed)
    elif k == "circle8":
        ps, extra = gen_circle8()
        meta.update(extra)
    elif k == "ngon_lb":
        ps, extra = gen_ngon_lb(spec.n, spec.eps)
        meta.update(extra)
    elif k == "clique_chain":
        ps = gen_clique_chain(spec.t, spec.groups, spec.seed)
    elif k == "circle_uniform":
        ps = gen_circle_uniform(spec.n, spec.r, spec.seed)
    else:
        ps = gen_triangle_free(spec.n, spec.seed, spec.box if spec.box > 1 else None)
    meta["n"] = len(ps)
    return ps, meta


def gen_uniform(n: int, box: float, seed: int) -> PointSet:
    if box <= 0:
        raise ValueError("box must be positive")
    return PointSet(rng_for(seed).uniform(0.0, box, size=(n, 2)))


def gen_unit_clique(n: int, seed: int = 0) -> PointSet:
    """n points uniform in a disk of diameter 0.98; the UDG is complete."""
    rng = rng_for(seed)
    rad = 0.49 * np.sqrt(rng.uniform(size=n))
    ang = rng.uniform(0.0, 2 * math.pi, size=n)
    return PointSet(np.column_stack((rad * np.cos(ang), rad * np.sin(ang))))


def gen_circle_uniform(n: int, r: float, seed: int = 0) -> PointSet:
    if r <= 0:
        raise ValueError("r must be positive")
    ang = np.sort(rng_for(seed).uniform(0.0, 2 * math.pi, size=n))
    return PointSet(np.column_stack((r * np.cos(ang), r * np.sin(ang))))


def _sample_in_cell(rng, cell: HexCellId, k: int, shrink: float = 0.98) -> np.ndarray:
    c = np.asarray(cell.center())
    out = []
    while len(out) < k:
        p = rng.uniform(-0.5, 0.5, size=(2 * k, 2))
        ok = margin(p / shrink, np.zeros((len(p), 2), dtype=np.int64)) > 0
        out.extend((p[ok] + c).tolist())
    return np.array(out[:k])


def gen_cluster(n: int, seed: int) -> tuple:
    """Two dense clusters filling the interiors of two nearby cells.

    The second cell is one of the six neighbors of the origin cell, so most
    cross pairs are unit disk edges and every bipartite disk family is dense.
    """
    rng = rng_for(seed)
    near = layer_cells(HexCellId(0, 0), 1)
    other = near[int(rng.integers(len(near)))]
    k = n // 2
    xy = np.vstack((_sample_in_cell(rng, HexCellId(0, 0), k), _sample_in_cell(rng, other, n - k)))
    return PointSet(xy), {"cells": [[0, 0], list(other)]}


def gen_circle8(r: float = 1.0) -> tuple:
    """The 8-point configuration on a circle forcing plane hop stretch >= 3.

    Arcs p2p3..p6p7 share the central angle alpha with 2 r sin(2 alpha) = 1
    (so |p2p6| = |p3p7| = 1); arcs p1p2 and p7p8 have angle beta with chord
    1.1 times the short chord. Points are labeled counterclockwise along the
    lower arc, so p1p8 is horizontal.
    """
    if r < 1.0:
        raise ValueError("the construction needs r >= 1")
    alpha = math.asin(1.0 / (2 * r)) / 2
    s = 1.1 * math.sin(alpha / 2)
    if s >= 1.0:
        raise RuntimeError("no chord ratio solution")
    beta = 2 * math.asin(s)
    steps = [beta] + [alpha] * 5 + [beta]
    total = sum(steps)
    theta = [1.5 * math.pi - total / 2]
    for st in steps:
        theta.append(theta[-1] + st)
    xy = np.array([(r * math.cos(t), r * math.sin(t)) for t in theta])
    ps = PointSet(xy)

    def d(i, j):
        return math.dist(xy[i - 1], xy[j - 1])

    short = d(2, 3)
    checks = {
        "equal_short_chords": max(abs(d(i, i + 1) - short) for i in range(2, 7)) <= 1e-10,
        "long_chords_ratio": abs(d(1, 2) - 1.1 * short) <= 1e-10 and abs(d(7, 8) - 1.1 * short) <= 1e-10,
        "p1p4_below_1": d(1, 4) < 1.0,
        "p2p6_is_1": abs(d(2, 6) - 1.0) <= 1e-10 and abs(d(3, 7) - 1.0) <= 1e-10,
        "p1p8_horizontal": abs(xy[0, 1] - xy[7, 1]) <= 1e-10,
        "p1p5_above_1": d(1, 5) > 1.0,
    }
    if not all(checks.values()):
        raise RuntimeError(f"constraint check failed: {checks}")
    meta = {"r": r, "alpha_deg": math.degrees(alpha), "beta_deg": math.degrees(beta)}
    return ps, meta


def ngon_window(n: int, eps: float) -> int:
    return math.floor((1.0 / 3.0 - eps) * n)


def gen_ngon_lb(n: int, eps: float) -> tuple:
    """Regular n-gon whose every window of m = floor((1/3 - eps) n) consecutive
    vertices has diameter <= 1 while every window of m + 1 has diameter > 1.

    The radius is the midpoint of the feasible interval
    ``(1 / (2 sin(pi m / n)), 1 / (2 sin(pi (m - 1) / n))]``.
    """
    if not 0.0 < eps <= 1.0 / 50 + 1e-12:
        raise ValueError("eps must lie in (0, 1/50]")
    if n < math.ceil(2.0 / eps - 1e-9):
        raise ValueError(f"n must be at least ceil(2/eps) = {math.ceil(2.0 / eps - 1e-9)}")
    m = ngon_window(n, eps)
    lo = 1.0 / (2 * math.sin(math.pi * m / n))
    hi = 1.0 / (2 * math.sin(math.pi * (m - 1) / n))
    if not lo < hi:
        raise ValueError("empty radius interval")
    r = (lo + hi) / 2
    ang = 2 * math.pi * np.arange(n) / n
    xy = np.column_stack((r * np.cos(ang), r * np.sin(ang)))
    if not (2 * r * math.sin(math.pi * (m - 1) / n) <= 1.0 < 2 * r * math.sin(math.pi * m / n)):
        raise RuntimeError("window constraints violated")
    return PointSet(xy), {"radius": r, "window": m, "r_interval": [lo, hi]}


def gen_clique_chain(t: int, groups: int, seed: int = 0) -> PointSet:
    """``groups`` cliques of 2t+1 points in a row, consecutive ones joined by one edge.

    Group g sits in the disk of diameter 1 centered at (2g, 0). Its two
    connectors are the disk's leftmost and rightmost points, so the right
    connector of group g and the left connector of group g+1 are exactly 1
    apart. The other 2t-1 points fill a disk of radius 0.4 around the
    center, more than 1 away from everything outside the group.
    """
    if t < 1 or groups < 1:
        raise ValueError("need t >= 1 and groups >= 1")
    rng = rng_for(seed)
    pts = []
    for gi in range(groups):
        cx = 2.0 * gi
        pts.append((cx - 0.5, 0.0))
        pts.append((cx + 0.5, 0.0))
        k = 2 * t - 1
        rad = 0.4 * np.sqrt(rng.uniform(size=k))
        ang = rng.uniform(0.0, 2 * math.pi, size=k)
        pts.extend(zip(cx + rad * np.cos(ang), rad * np.sin(ang)))
    ps = PointSet(np.array(pts))
    g = udg_build(ps)
    size = 2 * t + 1
    expected = groups * size * (size - 1) // 2 + groups - 1
    if g.m != expected:
        raise RuntimeError(f"clique chain has {g.m} edges, expected {expected}")
    return ps


def gen_triangle_free(n: int, seed: int, box: float | None = None,
                      max_tries: int = 200_000) -> PointSet:
    """Rejection sampling: accept a uniform point only if it closes no triangle."""
    rng = rng_for(seed)
    if box is None:
        box = math.sqrt(n) * 0.9
    xy = np.zeros((0, 2))
    adj: list = []
    tries = 0
    while len(xy) < n:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"rejection sampling stalled at {len(xy)} points")
        p = rng.uniform(0.0, box, size=2)
        d = xy - p
        nb = np.flatnonzero(np.einsum("ij,ij->i", d, d) <= EDGE_SQ_LIMIT)
        if any(nb[b] in adj[nb[a]] for a in range(len(nb)) for b in range(a + 1, len(nb))):
            continue
        if np.any(np.all(xy == p, axis=1)):
            continue
        for v in nb:
            adj[v].add(len(xy))
        adj.append(set(int(v) for v in nb))
        xy = np.vstack((xy, p))
    return PointSet(xy)
