"""Acceptance experiments, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line (shown even without
``-s``) and then asserts. Criteria 1-3 share one sweep over the uniform and
two-cluster instances, run once per session.
"""

from hopspan import acceptance as acc


def report(capsys, result):
    with capsys.disabled():
        print("\n" + result.line())
    return result


def test_c01_hop5_stretch_and_size(capsys):
    r = report(capsys, acc.criterion_1_hop5())
    assert r.data["max_stretch"] <= 5 and r.data["max_edges_per_n"] <= 5.5
    assert r.passed, r.detail


def test_c02_hop3_stretch_and_size(capsys):
    r = report(capsys, acc.criterion_2_hop3())
    assert r.data["max_stretch"] <= 3 and r.data["max_edges_per_n"] <= 11
    assert r.passed, r.detail


def test_c03_hop2_stretch_and_size(capsys):
    r = report(capsys, acc.criterion_3_hop2())
    assert r.data["max_stretch"] <= 2 and r.data["max_C"] <= 10
    assert r.passed, r.detail


def test_c04_eps_net_properties(capsys):
    r = report(capsys, acc.criterion_4_eps_net())
    assert r.data["loaded_disks"] > 0, "surrogate never exercised"
    assert r.passed, r.detail


def test_c05_eight_point_lower_bound(capsys):
    assert report(capsys, acc.criterion_5_circle8()).passed


def test_c06_square_lower_bound(capsys):
    assert report(capsys, acc.criterion_6_square()).passed


def test_c07_ngon_windows(capsys):
    assert report(capsys, acc.criterion_7_ngon()).passed


def test_c08_degree_impossibility(capsys):
    assert report(capsys, acc.criterion_8_degree()).passed


def test_c09_triangle_free_audit(capsys):
    assert report(capsys, acc.criterion_9_triangle_free()).passed


def test_c10_determinism(capsys):
    assert report(capsys, acc.criterion_10_determinism()).passed


def test_sweep_covers_every_size_and_box():
    combos = {(n, box) for n, box, _ in acc.sweep_instances()}
    assert combos == {(n, b) for n in acc.SWEEP_SIZES for b in acc.SWEEP_BOXES}
    assert len(acc.sweep_instances()) == 50


def test_two_hop_batch_check_matches_bfs():
    """The batched A + A^2 reachability test against networkx on the same samples."""
    import networkx as nx
    import numpy as np
    adj = acc.random_bounded_degree_subgraphs(7, 3, 300, seed=3)
    found = 0
    for a in adj:
        G = nx.from_numpy_array(a)
        d = dict(nx.all_pairs_shortest_path_length(G))
        found += all(d[u].get(v, 99) <= 2 for u in range(7) for v in range(7))
    assert acc.count_two_hop_spanners(adj) == found
    assert np.all(adj.sum(axis=2) <= 3)
