import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import float_point_arrays
from hopspan.gen import gen_circle8, gen_circle_uniform, gen_uniform
from hopspan.geometry import PointSet, udg_build
from hopspan.hexgrid import CellPartition, HexCellId, layer_cells
from hopspan.spanners import (BUILDERS, build_circle_hop4, build_hop2, build_hop3, build_hop5,
                              find_bridges, fit_circle, greedy_chain)
from hopspan.verify import edge_hops, hop2_size_bound, is_plane


def nx_stretch(g, s):
    """Hop stretch from networkx shortest paths (independent oracle)."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(map(tuple, s.edges.tolist()))
    worst = 0
    for u, v in g.edges.tolist():
        try:
            worst = max(worst, nx.shortest_path_length(G, u, v))
        except nx.NetworkXNoPath:
            return math.inf
    return worst


def one_cell_points(n, seed=0):
    rng = np.random.default_rng(seed)
    ang = rng.uniform(0, 2 * math.pi, n)
    rad = 0.4 * np.sqrt(rng.uniform(size=n))
    return PointSet(np.column_stack((rad * np.cos(ang), rad * np.sin(ang))))


@pytest.mark.parametrize("build", [build_hop5, build_hop3, build_hop2])
def test_single_cell_gives_star(build):
    g = udg_build(one_cell_points(30))
    s = build(g)
    assert s.m == 29
    assert nx_stretch(g, s) <= 2
    assert sorted(s.degrees())[-1] == 29


def test_hop5_row_one_point_per_cell():
    xy = np.array([[HexCellId(k, 0).center()[0], 0.0] for k in range(8)])
    g = udg_build(PointSet(xy))
    s = build_hop5(g)
    assert np.array_equal(s.edges, g.edges)
    assert nx_stretch(g, s) == 1


def test_hop3_two_adjacent_cells():
    g = udg_build(PointSet([(0.0, 0.0), (0.8, 0.0)]))
    s = build_hop3(g)
    assert s.edges.tolist() == [[0, 1]]


def test_hop2_two_points_in_different_cells():
    g = udg_build(PointSet([(0.1, 0.1), (0.95, 0.2)]))
    s = build_hop2(g)
    assert s.edges.tolist() == [[0, 1]]


@pytest.mark.parametrize("algo,bound,size", [("hop5", 5, 5500), ("hop3", 3, 11000)])
def test_thousand_uniform(algo, bound, size):
    g = udg_build(gen_uniform(1000, 8.0, 1))
    s = BUILDERS[algo](g)
    assert edge_hops(g, s).max() <= bound
    assert s.m <= size


def test_hop2_five_hundred_uniform():
    g = udg_build(gen_uniform(500, 4.0, 9))
    s = build_hop2(g)
    assert edge_hops(g, s).max() <= 2
    assert s.m <= hop2_size_bound(500)


@pytest.mark.parametrize("algo,bound", [("hop5", 5), ("hop3", 3), ("hop2", 2)])
@given(xy=float_point_arrays(min_n=2, max_n=80, lo=0, hi=3))
def test_builders_on_random_sets(algo, bound, xy):
    g = udg_build(PointSet(xy))
    s = BUILDERS[algo](g)
    assert len(s.foreign_edges()) == 0
    assert nx_stretch(g, s) <= bound
    again = BUILDERS[algo](udg_build(PointSet(xy)))
    assert np.array_equal(again.edges, s.edges)


@pytest.mark.parametrize("algo", ["hop5", "hop3"])
@given(xy=float_point_arrays(min_n=2, max_n=120, lo=0, hi=4))
def test_linear_size(algo, xy):
    g = udg_build(PointSet(xy))
    s = BUILDERS[algo](g)
    assert s.m <= (5.5 if algo == "hop5" else 11) * g.n


@given(xy=float_point_arrays(min_n=2, max_n=150, lo=0, hi=4))
def test_hop5_bridge_counts(xy):
    g = udg_build(PointSet(xy))
    part = CellPartition.of(xy)
    br = find_bridges(g, part)
    assert br.incident().max(initial=0) <= 18
    s = build_hop5(g)
    deg = s.degrees()
    lab = part.labels
    for k, members in enumerate(part.members):
        if len(members) == 1:
            assert deg[members[0]] <= 11
    # second-layer partner cells of bridges at one point
    ids = part.ids
    for p in range(g.n):
        mine = [e for e in br.edges.tolist() if p in e]
        far = {ids[lab[q if p == pp else pp]] for pp, q in mine
               if ids[lab[pp]].distance(ids[lab[q]]) == 2}
        assert len(far) <= 5


def test_bridge_is_lexicographically_smallest_edge():
    g = udg_build(gen_uniform(300, 4.0, 3))
    part = CellPartition.of(g.points.xy)
    br = find_bridges(g, part)
    lab = part.labels
    for (a, b), (i, j) in zip(br.cells.tolist(), br.edges.tolist()):
        cross = [tuple(e) for e in g.edges.tolist() if {lab[e[0]], lab[e[1]]} == {a, b}]
        assert (i, j) == min(cross)


@given(xy=float_point_arrays(min_n=2, max_n=100, lo=0, hi=3.5))
def test_hop3_path_witness(xy):
    """Every cross-cell edge x y has the path x, p, q, y through the cell pair's bridge."""
    g = udg_build(PointSet(xy))
    part = CellPartition.of(xy)
    look = find_bridges(g, part).lookup()
    s = build_hop3(g)
    es = s.edge_set()
    has = lambda u, v: u == v or (min(u, v), max(u, v)) in es
    for x, y in g.edges.tolist():
        cx, cy = part.cell_of(x), part.cell_of(y)
        if cx == cy:
            continue
        p, q = look[(cx, cy)]
        assert has(x, p) and has(p, q) and has(q, y)


# ---- concyclic points -------------------------------------------------------

def test_small_circle_is_star():
    ps = gen_circle_uniform(20, 0.4, 1)
    g = udg_build(ps)
    s = build_circle_hop4(ps, g)
    assert s.m == 19 and s.degrees()[0] == 19
    assert nx_stretch(g, s) <= 2


def test_circle8_plane_stretch_three_or_four():
    ps, _ = gen_circle8()
    g = udg_build(ps)
    s = build_circle_hop4(ps, g)
    assert is_plane(s)[0]
    assert nx_stretch(g, s) in (3, 4)


def test_sixty_four_on_radius_1_2():
    ang = 2 * math.pi * np.arange(64) / 64
    ps = PointSet(np.column_stack((1.2 * np.cos(ang), 1.2 * np.sin(ang))))
    g = udg_build(ps)
    s = build_circle_hop4(ps, g)
    assert is_plane(s)[0]
    assert nx_stretch(g, s) <= 4


def block_of(ch):
    out = {}
    for t, blk in enumerate(ch.blocks):
        for v in blk:
            out.setdefault(v, set()).add(t)
    return out


@given(st.integers(3, 60), st.floats(0.55, 4.0), st.integers(0, 10_000))
def test_circle_hop4_on_random_arcs(n, r, seed):
    ps = gen_circle_uniform(n, r, seed)
    g = udg_build(ps)
    try:
        ch = greedy_chain(ps)
    except ValueError:
        with pytest.raises(ValueError, match="gap"):
            build_circle_hop4(ps, g)
        return
    s = build_circle_hop4(ps, g)
    assert len(s.foreign_edges()) == 0
    assert is_plane(s)[0]
    assert nx_stretch(g, s) <= 4
    # UDG edges join points in the same, adjacent or once-removed blocks
    where = block_of(ch)
    nb = len(ch.blocks)
    for u, v in g.edges.tolist():
        gap = min(abs(a - b) for a in where[u] for b in where[v])
        if ch.closed:
            gap = min(gap, min((a - b) % nb for a in where[u] for b in where[v]),
                      min((b - a) % nb for a in where[u] for b in where[v]))
        assert gap <= 2


def test_short_last_step_closes_early():
    """The walk reaches the last point from a vertex already within 1 of the first.

    Keeping the last point as a chain vertex would put two chain edges under
    the UDG edge across the wrap and give 5 hops.
    """
    ps = gen_circle_uniform(25, 0.75, 3)
    g = udg_build(ps)
    ch = greedy_chain(ps)
    assert ch.closed and ch.chain[-1] != len(ps) - 1
    s = build_circle_hop4(ps, g)
    assert nx_stretch(g, s) <= 4 and is_plane(s)[0]


def test_circle_requires_concyclic():
    with pytest.raises(ValueError, match="concyclic"):
        build_circle_hop4(PointSet([(0, 0), (1, 0), (0, 1), (0.3, 0.3)]))


def test_circle_gap_is_reported():
    ang = np.array([0.0, 0.3, 0.6, 2.5])
    ps = PointSet(np.column_stack((2 * np.cos(ang), 2 * np.sin(ang))))
    with pytest.raises(ValueError, match="gap"):
        build_circle_hop4(ps)


def test_fit_circle():
    c, r = fit_circle(np.array([[1.0, 2.0], [3.0, 0.0], [1.0, -2.0], [-1.0, 0.0]]))
    assert c == pytest.approx((1.0, 0.0)) and r == pytest.approx(2.0)
