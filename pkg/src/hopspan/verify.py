"""Checks for hop stretch, planarity, size bounds and the lower-bound claims."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import networkx as nx
import numpy as np
from numba import njit

from .geometry import PointSet, SpannerGraph, UnitDiskGraph, ForeignEdgeError, udg_build

STRETCH_BOUNDS = {"hop5": 5, "hop3": 3, "hop2": 2, "circle4": 4}
HOP2_CONSTANT = 10


@dataclass
class BoundCheck:
    name: str
    bound: float
    observed: float
    passed: bool


@dataclass
class VerificationReport:
    stretch: float                     # math.inf if some edge is disconnected
    worst_edge: Optional[tuple]
    edge_count: int
    planar: Optional[bool] = None
    crossing: Optional[tuple] = None   # ((i, j), (k, l))
    bound_checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.bound_checks)

    def to_json(self) -> dict:
        return {
            "stretch": None if math.isinf(self.stretch) else int(self.stretch),
            "connected": not math.isinf(self.stretch),
            "worst_edge": None if self.worst_edge is None else list(self.worst_edge),
            "edges": self.edge_count,
            "planar": self.planar,
            "crossing": None if self.crossing is None else [list(e) for e in self.crossing],
            "checks": [asdict(c) for c in self.bound_checks],
            "passed": self.passed,
        }


@njit(cache=True)
def _edge_hops(indptr, indices, n, e_u, e_v, e_start):  # pragma: no cover - jitted
    out = np.full(len(e_u), -1, np.int64)
    dist = np.full(n, -1, np.int64)
    target = np.zeros(n, np.bool_)
    queue = np.empty(n, np.int64)
    for u in range(n):
        s, t = e_start[u], e_start[u + 1]
        if s == t:
            continue
        for k in range(s, t):
            target[e_v[k]] = True
        remaining = t - s
        queue[0] = u
        dist[u] = 0
        head, tail = 0, 1
        while head < tail and remaining > 0:
            x = queue[head]
            head += 1
            for p in range(indptr[x], indptr[x + 1]):
                y = indices[p]
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue[tail] = y
                    tail += 1
                    if target[y]:
                        remaining -= 1
        for k in range(s, t):
            out[k] = dist[e_v[k]]
            target[e_v[k]] = False
        for k in range(tail):
            dist[queue[k]] = -1
    return out


def edge_hops(g: UnitDiskGraph, s: SpannerGraph) -> np.ndarray:
    """Spanner hop distance for every UDG edge (in ``g.edges`` order); -1 if disconnected.

    One breadth-first search per vertex u, stopped once all UDG neighbors
    v > u have been reached.
    """
    if g.m == 0:
        return np.zeros(0, dtype=np.int64)
    a = s.adjacency
    e_start = np.searchsorted(g.edges[:, 0], np.arange(g.n + 1)).astype(np.int64)
    return _edge_hops(a.indptr.astype(np.int64), a.indices.astype(np.int64), g.n,
                      np.ascontiguousarray(g.edges[:, 0]), np.ascontiguousarray(g.edges[:, 1]),
                      e_start)


def check_subgraph(g: UnitDiskGraph, s: SpannerGraph) -> None:
    if s.base is not g and s.base.n != g.n:
        raise ValueError("spanner and graph have different vertex sets")
    foreign = SpannerGraph(g, s.edges).foreign_edges()
    if len(foreign):
        raise ForeignEdgeError(foreign)


def hop_stretch(g: UnitDiskGraph, s: SpannerGraph) -> VerificationReport:
    """Largest spanner hop distance over the edges of ``g``."""
    check_subgraph(g, s)
    hops = edge_hops(g, s)
    if len(hops) == 0:
        return VerificationReport(0, None, s.m)
    bad = np.flatnonzero(hops < 0)
    if len(bad):
        k = int(bad[0])
        return VerificationReport(math.inf, tuple(int(v) for v in g.edges[k]), s.m)
    k = int(np.argmax(hops))
    return VerificationReport(int(hops[k]), tuple(int(v) for v in g.edges[k]), s.m)


def _crossing_mask(p1, p2, q1, q2, eps=1e-12) -> np.ndarray:
    """Vectorized twin of ``geometry.segments_cross`` for one segment against many."""
    def orient(a, b, c):
        v = (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - \
            (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])
        return np.where(np.abs(v) <= eps, 0, np.sign(v)).astype(np.int8)

    def same(a, b):
        return (a[..., 0] == b[..., 0]) & (a[..., 1] == b[..., 1])

    def on_seg(a, b, p):
        return ((np.minimum(a[..., 0], b[..., 0]) <= p[..., 0]) & (p[..., 0] <= np.maximum(a[..., 0], b[..., 0]))
                & (np.minimum(a[..., 1], b[..., 1]) <= p[..., 1]) & (p[..., 1] <= np.maximum(a[..., 1], b[..., 1])))

    p1 = np.broadcast_to(p1, q1.shape)
    p2 = np.broadcast_to(p2, q1.shape)
    shared = same(p1, q1) | same(p1, q2) | same(p2, q1) | same(p2, q2)
    o1, o2, o3, o4 = orient(p1, p2, q1), orient(p1, p2, q2), orient(q1, q2, p1), orient(q1, q2, p2)
    nz = (o1 != 0) & (o2 != 0) & (o3 != 0) & (o4 != 0)
    proper = nz & (o1 != o2) & (o3 != o4)
    col = (o1 == 0) & (o2 == 0)
    use_x = np.abs(p2[..., 0] - p1[..., 0]) >= np.abs(p2[..., 1] - p1[..., 1])
    ax = np.where(use_x, 0, 1)
    take = lambda a: np.take_along_axis(a, ax[..., None], axis=-1)[..., 0]
    a0, a1 = np.minimum(take(p1), take(p2)), np.maximum(take(p1), take(p2))
    b0, b1 = np.minimum(take(q1), take(q2)), np.maximum(take(q1), take(q2))
    overlap = col & (np.minimum(a1, b1) - np.maximum(a0, b0) > 0)
    touch = ((o1 == 0) & on_seg(p1, p2, q1)) | ((o2 == 0) & on_seg(p1, p2, q2)) | \
            ((o3 == 0) & on_seg(q1, q2, p1)) | ((o4 == 0) & on_seg(q1, q2, p2))
    touch = ~nz & ~col & ~shared & touch
    return proper | overlap | touch


def is_plane(s: SpannerGraph | tuple) -> tuple:
    """(True, None) if no two edges cross or overlap, else (False, first crossing pair).

    Accepts a SpannerGraph or an ``(xy, edges)`` tuple. Pairs are scanned in
    lexicographic edge order.
    """
    xy, edges = (s.base.points.xy, s.edges) if isinstance(s, SpannerGraph) else s
    edges = np.asarray(edges).reshape(-1, 2)
    a, b = xy[edges[:, 0]], xy[edges[:, 1]]
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    for i in range(len(edges) - 1):
        j = np.arange(i + 1, len(edges))
        near = np.all(lo[j] <= hi[i] + 1e-12, axis=1) & np.all(hi[j] >= lo[i] - 1e-12, axis=1)
        j = j[near]
        if len(j) == 0:
            continue
        hit = _crossing_mask(a[i], b[i], a[j], b[j])
        if np.any(hit):
            k = int(j[np.argmax(hit)])
            return False, (tuple(int(v) for v in edges[i]), tuple(int(v) for v in edges[k]))
    return True, None


def hop2_size_bound(n: int, c: float = HOP2_CONSTANT) -> float:
    return c * n * math.ceil(math.log2(n)) if n > 1 else 0


def audit_bounds(g: UnitDiskGraph, s: SpannerGraph, kind: str,
                 report: VerificationReport | None = None) -> VerificationReport:
    """Run the stretch, size and (for circle4) planarity checks for a builder kind."""
    if kind not in STRETCH_BOUNDS:
        raise ValueError(f"unknown spanner kind {kind!r}")
    if report is None:
        report = hop_stretch(g, s)
    n, m = g.n, s.m
    checks = [BoundCheck("stretch", STRETCH_BOUNDS[kind], report.stretch,
                         report.stretch <= STRETCH_BOUNDS[kind])]
    if kind == "hop5":
        checks.append(BoundCheck("edges<=5.5n", 5.5 * n, m, m <= 5.5 * n))
    elif kind == "hop3":
        checks.append(BoundCheck("edges<=11n", 11 * n, m, m <= 11 * n))
    elif kind == "hop2":
        bound = hop2_size_bound(n)
        checks.append(BoundCheck(f"edges<={HOP2_CONSTANT}n*ceil(log2 n)", bound, m, m <= bound))
    elif kind == "circle4":
        planar, crossing = is_plane(s)
        report.planar, report.crossing = planar, crossing
        checks.append(BoundCheck("plane", 1, int(planar), planar))
    report.bound_checks = checks
    return report


# ---------------------------------------------------------------------------
# exhaustive plane-spanner minimum for small convex point sets

def convex_order(xy: np.ndarray) -> np.ndarray:
    """Indices in counterclockwise hull order; ValueError unless strictly convex."""
    xy = np.asarray(xy, dtype=np.float64)
    n = len(xy)
    c = xy.mean(axis=0)
    order = np.argsort(np.arctan2(xy[:, 1] - c[1], xy[:, 0] - c[0]), kind="stable")
    if n >= 3:
        p = xy[order]
        q, r = np.roll(p, -1, axis=0), np.roll(p, -2, axis=0)
        turn = (q[:, 0] - p[:, 0]) * (r[:, 1] - p[:, 1]) - (q[:, 1] - p[:, 1]) * (r[:, 0] - p[:, 0])
        if np.any(turn <= 1e-12):
            raise ValueError("points are not in strictly convex position")
    return order


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def maximal_noncrossing_sets(m: int, conflict: list):
    """Maximal independent sets of the conflict graph (bitmasks), Bron-Kerbosch with pivot."""
    full = (1 << m) - 1
    compat = [full & ~conflict[i] & ~(1 << i) for i in range(m)]

    def expand(r, p, x):
        if p == 0 and x == 0:
            yield r
            return
        u = max(_bits(p | x), key=lambda u: bin(p & compat[u]).count("1"))
        for v in list(_bits(p & ~compat[u])):
            yield from expand(r | (1 << v), p & compat[v], x & compat[v])
            p &= ~(1 << v)
            x |= 1 << v

    yield from expand(0, full, 0)


def _mask_stretch(n: int, edges: list, chosen: int, cap: int) -> int:
    nbr = [0] * n
    for k in _bits(chosen):
        i, j = edges[k]
        nbr[i] |= 1 << j
        nbr[j] |= 1 << i
    worst = 0
    for (i, j) in edges:
        ball, frontier, d = 1 << i, 1 << i, 0
        while not (ball >> j) & 1:
            d += 1
            if d > cap or frontier == 0:
                return cap + 1
            nxt = 0
            for v in _bits(frontier):
                nxt |= nbr[v]
            frontier = nxt & ~ball
            ball |= nxt
        worst = max(worst, d)
    return worst


def brute_min_plane_stretch(ps: PointSet, cap: int = 6, max_n: int = 12) -> int:
    """Smallest hop stretch over all plane subgraphs of the UDG, truncated at ``cap``.

    Only maximal noncrossing edge sets are evaluated: adding a noncrossing
    edge never increases hop distances.
    """
    n = len(ps)
    if n > max_n:
        raise ValueError(f"exhaustive search limited to n <= {max_n}, got {n}")
    g = udg_build(ps)
    if g.m == 0:
        return 0
    order = convex_order(ps.xy)
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    edges = [(int(i), int(j)) for i, j in g.edges]
    m = len(edges)
    conflict = [0] * m
    for x in range(m):
        a, b = sorted((pos[edges[x][0]], pos[edges[x][1]]))
        for y in range(x + 1, m):
            c, d = sorted((pos[edges[y][0]], pos[edges[y][1]]))
            if (a < c < b < d) or (c < a < d < b):
                conflict[x] |= 1 << y
                conflict[y] |= 1 << x
    lower = 2 if any(conflict) else 1
    best = cap + 1
    for chosen in maximal_noncrossing_sets(m, conflict):
        best = min(best, _mask_stretch(n, edges, chosen, min(cap, best)))
        if best <= lower:
            break
    return min(best, cap)


# ---------------------------------------------------------------------------
# degree lower bounds

def moore_bound(k: int, delta: int) -> int:
    """Most vertices within k hops of a vertex in a graph of maximum degree delta."""
    if k < 1 or delta < 2:
        raise ValueError("need k >= 1 and delta >= 2")
    return 1 + delta * sum((delta - 1) ** i for i in range(k))


@dataclass
class ImpossibilityCertificate:
    k: int
    delta: int
    moore: int
    n: int
    valid: bool
    template: str          # "complete" or "clique_chain"
    criterion: str         # "moore" (ball growth) or "encoding" (path counting)
    t: Optional[int] = None
    groups: Optional[int] = None


def clique_chain_groups(g: UnitDiskGraph) -> Optional[list]:
    """Vertex groups if ``g`` is a path of cliques joined by single edges, else None."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(map(tuple, g.edges.tolist()))
    if not nx.is_connected(G):
        return None
    H = G.copy()
    H.remove_edges_from(list(nx.bridges(G)))
    comps = [sorted(c) for c in nx.connected_components(H)]
    label = {v: k for k, c in enumerate(comps) for v in c}
    for c in comps:
        if H.subgraph(c).number_of_edges() != len(c) * (len(c) - 1) // 2:
            return None
    Q = nx.Graph()
    Q.add_nodes_from(range(len(comps)))
    for u, v in G.edges():
        if label[u] != label[v]:
            if Q.has_edge(label[u], label[v]):
                return None
            Q.add_edge(label[u], label[v])
    degs = [d for _, d in Q.degree()]
    if len(comps) > 1 and (max(degs) > 2 or Q.number_of_edges() != len(comps) - 1):
        return None
    if len(comps) == 1:
        return comps
    start = next(v for v, d in Q.degree() if d == 1)
    return [comps[k] for k in nx.dfs_preorder_nodes(Q, start)]


def certify_no_bounded_degree_spanner(g: UnitDiskGraph, k: int, delta: int) -> ImpossibilityCertificate:
    """Certify that no subgraph of max degree ``delta`` is a k-hop spanner of ``g``.

    Complete graphs use the ball-growth bound; chains of equal cliques of
    size 2t+1 use the path-encoding count and need t > 2 delta^k.
    """
    moore = moore_bound(k, delta)
    n = g.n
    if g.m == n * (n - 1) // 2:
        return ImpossibilityCertificate(k, delta, moore, n, n > moore, "complete", "moore")
    groups = clique_chain_groups(g)
    if groups is None:
        raise ValueError("graph is neither complete nor a chain of cliques")
    sizes = sorted({len(c) for c in groups}, reverse=True)
    main = sizes[0]
    odd_main = sum(len(c) == main for c in groups) >= len(groups) - 1
    if main % 2 == 0 or main < 3 or not odd_main:
        raise ValueError(f"clique sizes {sizes} do not match groups of size 2t+1")
    t = (main - 1) // 2
    return ImpossibilityCertificate(k, delta, moore, n, t > 2 * delta ** k,
                                    "clique_chain", "encoding", t, len(groups))


# ---------------------------------------------------------------------------

@dataclass
class TriangleFreeAudit:
    applicable: bool
    max_degree: int
    edges: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.applicable and all(c.passed for c in self.checks)


def has_triangle(g: UnitDiskGraph) -> bool:
    a = g.adjacency.astype(np.int32)
    return (a @ a).multiply(a).nnz > 0


def audit_triangle_free(g: UnitDiskGraph) -> TriangleFreeAudit:
    """Degree <= 5 and at most 2.5n edges for triangle-free unit disk graphs."""
    deg = g.degrees()
    dmax = int(deg.max()) if g.n else 0
    if has_triangle(g):
        return TriangleFreeAudit(False, dmax, g.m)
    checks = [BoundCheck("max_degree<=5", 5, dmax, dmax <= 5),
              BoundCheck("edges<=2.5n", 2.5 * g.n, g.m, g.m <= 2.5 * g.n)]
    return TriangleFreeAudit(True, dmax, g.m, checks)
