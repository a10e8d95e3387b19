"""Capability measure tests: hand-computed fixtures, scaling laws, the
risk-free denominator guard and agreement with the term-by-term oracle."""

import math
import warnings

import numpy as np
import pytest

import oracles
from helpers import complete_topology, cycle_topology, make_network, path_topology
from netresil import (
    CAP_MAX,
    CapabilityVector,
    RiskFreeWarning,
    Topology,
    build_network,
    capability_vector,
    continuous_running,
    dynamic_evolution,
    generate_er,
    normalize_capabilities,
    rapid_convergence,
    rapid_response,
    sustained_resistance,
)

NAMES = ("rrc", "src", "crc", "rcc", "dec")


# ----------------------------------------------------------------- fixtures


def test_rapid_response_two_nodes():
    # observation term (0.5 + 0.5) / 2 plus the single fully loaded edge
    # at rtt 0.5: 0.5 + 2.0
    net = make_network(
        path_topology(2), observe=0.5, control=0.0, decide=0.0, act=0.0, rtt=0.5
    )
    assert rapid_response(net) == pytest.approx(2.5, abs=1e-12)


def test_rapid_response_edgeless_is_zero():
    net = make_network(Topology.from_edges(range(3)), observe=0.3)
    assert rapid_response(net) == 0.0  # no edges and degree shares are zero


def test_rapid_convergence_two_nodes():
    net = make_network(
        path_topology(2),
        observe=0.0,
        control=0.0,
        decide=0.0,
        act=0.4,
        bandwidth=0.5,
        rtt=0.5,
    )
    # node term: both nodes push with act 0.4 at full degree share;
    # edge term: full betweenness, bandwidth 0.5 over rtt 0.5
    assert rapid_convergence(net) == pytest.approx(1.4, abs=1e-12)


def test_continuous_running_path_three():
    net = make_network(
        path_topology(3),
        observe=0.25,
        control=0.25,
        decide=0.25,
        act=0.25,
        bandwidth=0.6,
    )
    # both edges have criticality 1/3, all pairs reachable
    assert continuous_running(net) == pytest.approx(0.4 / 3.0, abs=1e-12)


def test_continuous_running_needs_two_nodes():
    net = make_network(Topology.from_edges([0]))
    with pytest.raises(ValueError):
        continuous_running(net)


def test_dynamic_evolution_cycle():
    net = make_network(cycle_topology(4), mai=1.0, max_bandwidth=1.0)
    assert dynamic_evolution(net) == pytest.approx(math.log(4), abs=1e-12)


def test_dynamic_evolution_edgeless_is_zero():
    net = make_network(Topology.from_edges(range(4)))
    assert dynamic_evolution(net) == 0.0


def test_sustained_resistance_scales_inversely_with_risk():
    low = make_network(path_topology(3), node_likelihood=0.4, edge_likelihood=0.4)
    high = make_network(path_topology(3), node_likelihood=0.8, edge_likelihood=0.8)
    assert sustained_resistance(low) == pytest.approx(
        2.0 * sustained_resistance(high), rel=1e-12
    )


def test_sustained_resistance_floors_zero_exposure():
    # a complete graph has no betweenness anywhere, so criticality-weighted
    # exposure vanishes even though the structure is maximally robust
    net = make_network(complete_topology(4), node_likelihood=0.0, edge_likelihood=0.0)
    with pytest.warns(RiskFreeWarning):
        value = sustained_resistance(net)
    assert value == pytest.approx(1e6, rel=1e-9)


def test_sustained_resistance_zero_numerator_stays_quiet():
    net = make_network(Topology.from_edges(range(3)))
    with warnings.catch_warnings():
        warnings.simplefilter("error", RiskFreeWarning)
        assert sustained_resistance(net) == 0.0


# ------------------------------------------------------------- damage model


def test_capabilities_drop_when_nodes_are_destroyed():
    net = build_network(generate_er(40, 0.3, seed=2), seed=3)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        before = capability_vector(net)
        for v in (1, 5, 9, 12, 20, 33):
            net.destroy_node(v)
        after = capability_vector(net)
    assert after.rrc < before.rrc
    assert after.crc < before.crc
    assert after.rcc < before.rcc
    assert after.dec < before.dec


def test_fully_destroyed_network_scores_zero():
    net = make_network(path_topology(3))
    for v in (0, 1, 2):
        net.destroy_node(v)
    with warnings.catch_warnings():
        warnings.simplefilter("error", RiskFreeWarning)
        vec = capability_vector(net)
    assert vec.raw() == (0.0, 0.0, 0.0, 0.0, 0.0)


def test_capability_vector_matches_oracle():
    rng = np.random.default_rng(515)
    for i in range(30):
        n = int(rng.integers(10, 31))
        topo = generate_er(n, float(rng.uniform(0.12, 0.5)), seed=int(rng.integers(1 << 30)))
        net = build_network(topo, seed=int(rng.integers(1 << 30)))
        if i % 2:
            for v in rng.choice(topo.nodes, size=n // 4, replace=False):
                net.destroy_node(int(v))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            vec = capability_vector(net)
            want = oracles.capability_oracle(net)
        for name in NAMES:
            assert abs(getattr(vec, name) - want[name]) < 1e-12, name


# ------------------------------------------------------------ normalisation


def test_normalize_against_self_is_unity():
    net = make_network(path_topology(4))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        raw = capability_vector(net)
    normed = normalize_capabilities(raw, raw)
    assert normed.normalized() == (1.0, 1.0, 1.0, 1.0, 1.0)
    # raw values are carried over untouched
    assert normed.raw() == raw.raw()


def test_normalize_caps_large_ratios():
    raw = CapabilityVector(2.0, 2.0, 2.0, 2.0, 2.0)
    base = CapabilityVector(1.0, 1.0, 1.0, 4.0, 1.0)
    normed = normalize_capabilities(raw, base)
    assert normed.normalized() == (CAP_MAX, CAP_MAX, CAP_MAX, 0.5, CAP_MAX)


def test_normalize_rejects_degenerate_baseline():
    raw = CapabilityVector(1.0, 1.0, 1.0, 1.0, 1.0)
    base = CapabilityVector(1.0, 1.0, 0.0, 1.0, 1.0)
    with pytest.raises(ValueError, match="crc"):
        normalize_capabilities(raw, base)
    with pytest.raises(ValueError):
        normalize_capabilities(raw, raw, cap_max=0.0)


def test_unnormalised_vector_refuses_normalized_view():
    vec = CapabilityVector(1.0, 1.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        vec.normalized()
