"""Structural metric tests: components, flow robustness, spectrum,
betweenness and degree entropy, checked against closed forms and the
reference implementations in oracles.py."""

import math

import numpy as np
import pytest

import oracles
from helpers import complete_topology, cycle_topology, path_topology, star_topology
from netresil import (
    Topology,
    betweenness_raw,
    connected_components,
    edge_betweenness,
    edge_key,
    effective_graph_resistance,
    flow_robustness,
    laplacian_matrix,
    laplacian_spectrum,
    node_betweenness,
    structure_entropy,
)


def random_topology(rng, n_max=12, p_range=(0.05, 0.9)):
    n = int(rng.integers(2, n_max + 1))
    p = float(rng.uniform(*p_range))
    edges = [
        (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
    ]
    return Topology.from_edges(range(n), edges)


# ---------------------------------------------------------------- topology


def test_topology_rejects_self_loops():
    with pytest.raises(ValueError):
        Topology.from_edges([0, 1], [(0, 0)])


def test_topology_rejects_unknown_endpoints():
    with pytest.raises(ValueError):
        Topology.from_edges([0, 1], [(0, 2)])


def test_topology_canonicalises_and_dedupes_edges():
    topo = Topology.from_edges([0, 1, 2], [(1, 0), (0, 1), (2, 1)])
    assert topo.m == 2
    assert topo.has_edge(0, 1) and topo.has_edge(1, 0)
    assert topo.sorted_edges() == [(0, 1), (1, 2)]
    assert edge_key(5, 3) == (3, 5)


def test_topology_degrees():
    star = star_topology(5)
    assert star.degree(0) == 4
    assert all(star.degree(v) == 1 for v in range(1, 5))
    assert sum(star.degrees().values()) == 2 * star.m


def test_equal_topologies_share_cached_results():
    a = Topology.from_edges(range(4), [(0, 1), (2, 3)])
    b = Topology.from_edges(range(4), [(2, 3), (0, 1)])
    assert a == b
    assert connected_components(a) is connected_components(b)
    assert betweenness_raw(a) is betweenness_raw(b)


# -------------------------------------------------------------- components


def test_components_fixture():
    topo = Topology.from_edges(range(6), [(0, 1), (1, 2), (3, 4)])
    part = connected_components(topo)
    assert part.components == ((0, 1, 2), (3, 4), (5,))
    assert part.sizes == (3, 2, 1)
    assert part.largest_size == 3
    assert part.component_of[4] == 1
    assert part.component_of[5] == 2


def test_components_match_bfs_oracle():
    rng = np.random.default_rng(8231)
    for _ in range(200):
        topo = random_topology(rng)
        got = sorted(frozenset(c) for c in connected_components(topo).components)
        want = sorted(frozenset(c) for c in oracles.bfs_components(topo.nodes, topo.edges))
        assert got == want


def test_components_ordered_by_smallest_member():
    rng = np.random.default_rng(4177)
    for _ in range(50):
        topo = random_topology(rng)
        comps = connected_components(topo).components
        heads = [c[0] for c in comps]
        assert heads == sorted(heads)
        for comp in comps:
            assert list(comp) == sorted(comp)


# ---------------------------------------------------------- flow robustness


def test_flow_robustness_connected_is_one():
    assert flow_robustness(complete_topology(5)) == 1.0
    assert flow_robustness(path_topology(7)) == 1.0


def test_flow_robustness_edgeless_is_zero():
    assert flow_robustness(Topology.from_edges(range(4))) == 0.0


def test_flow_robustness_fixture():
    # components of size 3 and 2: (6 + 2) / 20
    topo = Topology.from_edges(range(5), [(0, 1), (1, 2), (3, 4)])
    assert flow_robustness(topo) == pytest.approx(0.4, abs=1e-15)


def test_flow_robustness_total_nodes_override():
    topo = complete_topology(3)
    assert flow_robustness(topo, total_nodes=6) == pytest.approx(0.2, abs=1e-15)


def test_flow_robustness_needs_two_nodes():
    with pytest.raises(ValueError):
        flow_robustness(Topology.from_edges([0]))
    with pytest.raises(ValueError):
        flow_robustness(complete_topology(3), total_nodes=1)


def test_flow_robustness_matches_pair_oracle():
    rng = np.random.default_rng(551)
    for _ in range(200):
        topo = random_topology(rng)
        want = oracles.reachable_ordered_pairs(topo.nodes, topo.edges) / (
            topo.n * (topo.n - 1)
        )
        assert flow_robustness(topo) == want


def test_flow_robustness_never_increases_when_edges_removed():
    rng = np.random.default_rng(97)
    for _ in range(30):
        topo = random_topology(rng, p_range=(0.2, 0.8))
        score = flow_robustness(topo)
        for dropped in topo.edges:
            smaller = Topology.from_edges(
                topo.nodes, [e for e in topo.edges if e != dropped]
            )
            assert flow_robustness(smaller) <= score + 1e-15


# ----------------------------------------------------------------- spectrum


def test_spectrum_fixtures():
    # complete graph: eigenvalues 0 and n with multiplicity n-1
    spec = laplacian_spectrum(complete_topology(5))
    assert spec.eigenvalues[0] == pytest.approx(0.0, abs=1e-9)
    for lam in spec.eigenvalues[1:]:
        assert lam == pytest.approx(5.0, abs=1e-9)
    assert effective_graph_resistance(spec, 5) == pytest.approx(1.0, abs=1e-9)


def test_effective_resistance_path_three():
    spec = laplacian_spectrum(path_topology(3))
    assert effective_graph_resistance(spec, 3) == pytest.approx(0.5, abs=1e-9)


def test_effective_resistance_edgeless_is_zero():
    spec = laplacian_spectrum(Topology.from_edges(range(4)))
    assert effective_graph_resistance(spec, 4) == 0.0


def test_laplacian_row_sums_are_zero():
    rng = np.random.default_rng(13)
    for _ in range(20):
        topo = random_topology(rng)
        lap = laplacian_matrix(topo)
        assert np.allclose(lap.sum(axis=1), 0.0)
        assert np.allclose(lap, lap.T)


def test_spectrum_matches_independent_assembly():
    rng = np.random.default_rng(29)
    for _ in range(50):
        topo = random_topology(rng)
        want = oracles.laplacian_eigenvalues(topo.nodes, topo.edges)
        got = np.array(laplacian_spectrum(topo).eigenvalues)
        assert np.allclose(got, want, atol=1e-9)
        # trace identity: eigenvalue sum equals total degree
        assert got.sum() == pytest.approx(2.0 * topo.m, abs=1e-8)


def test_connected_graph_resistance_in_unit_interval():
    rng = np.random.default_rng(71)
    seen = 0
    while seen < 40:
        topo = random_topology(rng, p_range=(0.3, 0.9))
        if connected_components(topo).largest_size < topo.n:
            continue
        seen += 1
        value = effective_graph_resistance(laplacian_spectrum(topo), topo.n)
        assert 0.0 < value <= 1.0 + 1e-12


# -------------------------------------------------------------- betweenness


def test_betweenness_star_center():
    topo = star_topology(6)
    bn = node_betweenness(topo)
    # the hub lies on all C(5,2) = 10 leaf pairs, the normaliser too
    assert bn[0] == pytest.approx(1.0, abs=1e-12)
    assert all(bn[v] == 0.0 for v in range(1, 6))


def test_betweenness_path_three():
    bn = node_betweenness(path_topology(3))
    assert bn == pytest.approx({0: 0.0, 1: 1.0, 2: 0.0})


def test_betweenness_complete_graph_is_zero():
    bn = node_betweenness(complete_topology(4))
    assert all(v == 0.0 for v in bn.values())


def test_betweenness_below_three_nodes_is_zero():
    assert node_betweenness(path_topology(2)) == {0: 0.0, 1: 0.0}
    assert node_betweenness(Topology.from_edges([7])) == {7: 0.0}


def test_edge_betweenness_single_edge():
    be = edge_betweenness(path_topology(2))
    assert be[(0, 1)] == pytest.approx(1.0, abs=1e-12)


def test_edge_betweenness_cycle_four():
    be = edge_betweenness(cycle_topology(4))
    # raw carried load is 2 per edge (one pair each way splits evenly),
    # against n(n-1)/2 = 6 possible pairs
    for value in be.values():
        assert value == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_bridge_carries_most_load():
    topo = Topology.from_edges(
        range(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]
    )
    be = edge_betweenness(topo)
    bridge = be[(2, 3)]
    assert all(bridge > value for e, value in be.items() if e != (2, 3))


def test_betweenness_matches_enumeration_oracle():
    rng = np.random.default_rng(9020)
    for _ in range(60):
        topo = random_topology(rng, n_max=10)
        node_want, edge_want = oracles.betweenness_by_enumeration(
            topo.nodes, topo.edges
        )
        node_raw, edge_raw = betweenness_raw(topo)
        for v in topo.nodes:
            assert abs(node_raw[v] - node_want[v]) < 1e-9
        for e in topo.edges:
            assert abs(edge_raw[e] - edge_want[e]) < 1e-9


def test_betweenness_two_oracles_agree():
    # the two reference implementations must agree with each other too
    rng = np.random.default_rng(3355)
    for _ in range(30):
        topo = random_topology(rng, n_max=9)
        node_a, edge_a = oracles.betweenness_by_enumeration(topo.nodes, topo.edges)
        node_b, edge_b = oracles.betweenness_by_pair_counts(topo.nodes, topo.edges)
        for v in topo.nodes:
            assert abs(node_a[v] - node_b[v]) < 1e-9
        for e in topo.edges:
            assert abs(edge_a[e] - edge_b[e]) < 1e-9


# ------------------------------------------------------------------ entropy


def test_structure_entropy_regular_graphs():
    assert structure_entropy(cycle_topology(4)) == pytest.approx(math.log(4), abs=1e-12)
    assert structure_entropy(complete_topology(6)) == pytest.approx(
        math.log(6), abs=1e-12
    )


def test_structure_entropy_star():
    # hub share 1/2, each of five leaves 1/10
    want = 0.5 * math.log(2) + 0.5 * math.log(10)
    assert structure_entropy(star_topology(6)) == pytest.approx(want, abs=1e-12)


def test_structure_entropy_skips_isolated_nodes():
    topo = Topology.from_edges(range(5), [(i, (i + 1) % 4) for i in range(4)])
    assert structure_entropy(topo) == pytest.approx(math.log(4), abs=1e-12)


def test_structure_entropy_edgeless_raises():
    with pytest.raises(ValueError):
        structure_entropy(Topology.from_edges(range(3)))


def test_structure_entropy_bounded_by_log_n():
    rng = np.random.default_rng(606)
    for _ in range(100):
        topo = random_topology(rng, p_range=(0.2, 0.9))
        if topo.m == 0:
            continue
        positive = sum(1 for d in topo.degrees().values() if d > 0)
        assert structure_entropy(topo) <= math.log(positive) + 1e-12
