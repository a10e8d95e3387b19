"""Shared builders for the test suite: small named topologies and networks
with uniform, hand-picked attributes so expected values can be worked out
by hand."""

from __future__ import annotations

from netresil import (
    EdgeAttributes,
    NodeCapacity,
    ResilientNetwork,
    RiskProfile,
    Topology,
)


def path_topology(n: int) -> Topology:
    return Topology.from_edges(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_topology(n: int) -> Topology:
    return Topology.from_edges(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete_topology(n: int) -> Topology:
    return Topology.from_edges(
        range(n), [(i, j) for i in range(n) for j in range(i + 1, n)]
    )


def star_topology(n: int) -> Topology:
    """Node 0 is the hub, 1..n-1 the leaves."""
    return Topology.from_edges(range(n), [(0, i) for i in range(1, n)])


def make_network(
    topo: Topology,
    observe: float = 0.125,
    control: float = 0.125,
    decide: float = 0.125,
    act: float = 0.125,
    mai: float = 1.0,
    max_bandwidth: float = 1.0,
    bandwidth: float = 0.8,
    rtt: float = 0.5,
    node_likelihood: float = 0.5,
    edge_likelihood: float = 0.5,
    node_repair: float = 1.0,
    edge_repair: float = 1.0,
) -> ResilientNetwork:
    """Network over ``topo`` where every element shares the same attributes."""
    capacities = {
        v: NodeCapacity(observe, control, decide, act, max_total=mai)
        for v in topo.nodes
    }
    edge_attrs = {
        e: EdgeAttributes(max_bandwidth=max_bandwidth, bandwidth=bandwidth, rtt=rtt)
        for e in topo.edges
    }
    risk = RiskProfile(
        node_disruption_likelihood={v: node_likelihood for v in topo.nodes},
        edge_disruption_likelihood={e: edge_likelihood for e in topo.edges},
        node_repair_rate={v: node_repair for v in topo.nodes},
        edge_repair_rate={e: edge_repair for e in topo.edges},
    )
    return ResilientNetwork(topo, capacities, edge_attrs, risk)
