"""Mutable network state for attack/recovery simulation.

A :class:`ResilientNetwork` couples a live :class:`~netresil.graph.Topology`
with per-node functional capacities, per-edge link attributes and a risk
profile. Destroyed elements are parked (with their identities) so they can be
restored later with their original attributes; a snapshot of the pristine
state is kept for that purpose and for damage-relative measures.
"""

from __future__ import annotations

import copy
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Mapping

import numpy as np

from .graph import Topology, betweenness_raw, edge_key

# smallest round-trip time used in any ratio; avoids division blow-ups
RTT_FLOOR = 1e-3

_TOL = 1e-9


def _clamp_small(value: float, name: str) -> float:
    if value < -_TOL:
        raise ValueError(f"{name} must be non-negative, got {value}")
    return max(value, 0.0)


@dataclass
class NodeCapacity:
    """Functional capacity of one node split across the four activities it
    can spend effort on: observing, controlling, deciding and acting.

    The four shares are non-negative and their sum never exceeds
    ``max_total``, the node's capacity budget.
    """

    observe: float
    control: float
    decide: float
    act: float
    max_total: float = 1.0

    def __post_init__(self) -> None:
        self.observe = _clamp_small(float(self.observe), "observe")
        self.control = _clamp_small(float(self.control), "control")
        self.decide = _clamp_small(float(self.decide), "decide")
        self.act = _clamp_small(float(self.act), "act")
        self.max_total = float(self.max_total)
        if self.max_total <= 0:
            raise ValueError(f"max_total must be positive, got {self.max_total}")
        if self.total > self.max_total + _TOL:
            raise ValueError(
                f"capacity sum {self.total} exceeds budget {self.max_total}"
            )

    @property
    def total(self) -> float:
        return self.observe + self.control + self.decide + self.act

    @property
    def headroom(self) -> float:
        return max(self.max_total - self.total, 0.0)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.observe, self.control, self.decide, self.act)


@dataclass
class EdgeAttributes:
    """Link attributes: bandwidth ceiling, current bandwidth and round-trip
    time. ``rtt`` lives in ``[RTT_FLOOR, 1]``; bandwidth never exceeds its
    ceiling."""

    max_bandwidth: float
    bandwidth: float
    rtt: float

    def __post_init__(self) -> None:
        self.max_bandwidth = float(self.max_bandwidth)
        self.bandwidth = float(self.bandwidth)
        self.rtt = float(self.rtt)
        if not 0.0 < self.max_bandwidth <= 1.0 + _TOL:
            raise ValueError(f"max_bandwidth must lie in (0, 1], got {self.max_bandwidth}")
        if self.bandwidth < -_TOL or self.bandwidth > self.max_bandwidth + _TOL:
            raise ValueError(
                f"bandwidth {self.bandwidth} outside [0, {self.max_bandwidth}]"
            )
        self.bandwidth = min(max(self.bandwidth, 0.0), self.max_bandwidth)
        if self.rtt < RTT_FLOOR or self.rtt > 1.0 + _TOL:
            raise ValueError(f"rtt must lie in [{RTT_FLOOR}, 1], got {self.rtt}")


@dataclass
class RiskProfile:
    """Disruption likelihoods and repair rates, per node and per edge.

    All values live in ``[0, 1]``. Likelihood is the chance an element is
    compromised when attacked; repair rate scales the per-step restoration
    probability during recovery.
    """

    node_disruption_likelihood: dict[int, float]
    edge_disruption_likelihood: dict[tuple[int, int], float]
    node_repair_rate: dict[int, float]
    edge_repair_rate: dict[tuple[int, int], float]

    def __post_init__(self) -> None:
        for label, mapping in (
            ("node_disruption_likelihood", self.node_disruption_likelihood),
            ("edge_disruption_likelihood", self.edge_disruption_likelihood),
            ("node_repair_rate", self.node_repair_rate),
            ("edge_repair_rate", self.edge_repair_rate),
        ):
            for key, value in mapping.items():
                if not 0.0 <= value <= 1.0:
                    raise ValueError(f"{label}[{key}] = {value} outside [0, 1]")


@dataclass(frozen=True)
class AttributeRanges:
    """Sampling ranges used when attributes are drawn at random.

    ``mai`` is the per-node capacity budget and ``capacity_fraction`` the
    share of it that the initial draw occupies. ``bandwidth_fraction`` sets
    the initial bandwidth relative to the sampled ceiling.
    """

    mai: float = 1.0
    capacity_fraction: float = 0.5
    max_bandwidth: tuple[float, float] = (0.5, 1.0)
    bandwidth_fraction: float = 0.8
    rtt: tuple[float, float] = (0.1, 1.0)
    node_likelihood: tuple[float, float] = (0.0, 1.0)
    edge_likelihood: tuple[float, float] = (0.0, 1.0)
    node_repair: tuple[float, float] = (0.5, 1.0)
    edge_repair: tuple[float, float] = (0.5, 1.0)

    def __post_init__(self) -> None:
        if self.mai <= 0:
            raise ValueError("mai must be positive")
        if not 0.0 < self.capacity_fraction <= 1.0:
            raise ValueError("capacity_fraction must lie in (0, 1]")
        if not 0.0 < self.bandwidth_fraction <= 1.0:
            raise ValueError("bandwidth_fraction must lie in (0, 1]")
        for label, (lo, hi), bound_lo in (
            ("max_bandwidth", self.max_bandwidth, 0.0),
            ("rtt", self.rtt, RTT_FLOOR),
            ("node_likelihood", self.node_likelihood, 0.0),
            ("edge_likelihood", self.edge_likelihood, 0.0),
            ("node_repair", self.node_repair, 0.0),
            ("edge_repair", self.edge_repair, 0.0),
        ):
            if not bound_lo <= lo <= hi <= 1.0:
                raise ValueError(f"range {label}=({lo}, {hi}) is invalid")


@dataclass
class NetworkSnapshot:
    """Read-only copy of a pristine network state."""

    topo: Topology
    capacities: dict[int, NodeCapacity]
    edge_attrs: dict[tuple[int, int], EdgeAttributes]
    risk: RiskProfile


def _shift_resist(cap: NodeCapacity, fraction: float) -> NodeCapacity:
    """Move a share of control+decide effort into observe and act."""
    moved = fraction * (cap.control + cap.decide)
    return replace(
        cap,
        observe=cap.observe + moved / 2.0,
        control=cap.control * (1.0 - fraction),
        decide=cap.decide * (1.0 - fraction),
        act=cap.act + moved / 2.0,
    )


def _shift_recover(cap: NodeCapacity, fraction: float) -> NodeCapacity:
    """Move a share of observe effort into control, decide and act."""
    moved = fraction * cap.observe
    return replace(
        cap,
        observe=cap.observe * (1.0 - fraction),
        control=cap.control + moved / 3.0,
        decide=cap.decide + moved / 3.0,
        act=cap.act + moved / 3.0,
    )


ADAPTATION_POLICIES: dict[str, Callable[[NodeCapacity, float], NodeCapacity]] = {
    "none": lambda cap, fraction: cap,
    "resist": _shift_resist,
    "recover": _shift_recover,
}


class ResilientNetwork:
    """Live network state plus bookkeeping for destroyed elements.

    Mutating operations (destroy/restore/adjust) keep three invariants:
    live and destroyed element sets are disjoint and cover the original
    network, attribute maps are keyed exactly by the live elements, and
    every capacity split stays within its budget.
    """

    def __init__(
        self,
        topo: Topology,
        capacities: Mapping[int, NodeCapacity],
        edge_attrs: Mapping[tuple[int, int], EdgeAttributes],
        risk: RiskProfile,
        original: NetworkSnapshot | None = None,
    ):
        caps = {int(k): v for k, v in capacities.items()}
        attrs = {edge_key(*e): v for e, v in edge_attrs.items()}
        if set(caps) != set(topo.nodes):
            raise ValueError("capacities must be keyed exactly by the topology nodes")
        if set(attrs) != set(topo.edges):
            raise ValueError("edge attributes must be keyed exactly by the topology edges")
        risk = RiskProfile(
            node_disruption_likelihood={int(k): v for k, v in risk.node_disruption_likelihood.items()},
            edge_disruption_likelihood={edge_key(*k): v for k, v in risk.edge_disruption_likelihood.items()},
            node_repair_rate={int(k): v for k, v in risk.node_repair_rate.items()},
            edge_repair_rate={edge_key(*k): v for k, v in risk.edge_repair_rate.items()},
        )
        if set(risk.node_disruption_likelihood) != set(topo.nodes) or set(
            risk.node_repair_rate
        ) != set(topo.nodes):
            raise ValueError("node risk entries must cover exactly the topology nodes")
        if set(risk.edge_disruption_likelihood) != set(topo.edges) or set(
            risk.edge_repair_rate
        ) != set(topo.edges):
            raise ValueError("edge risk entries must cover exactly the topology edges")

        self.topo = topo
        self.capacities = caps
        self.edge_attrs = attrs
        self.risk = risk
        self.destroyed_nodes: set[int] = set()
        self.destroyed_edges: set[tuple[int, int]] = set()
        self.original = original or NetworkSnapshot(
            topo=topo,
            capacities=copy.deepcopy(caps),
            edge_attrs=copy.deepcopy(attrs),
            risk=copy.deepcopy(risk),
        )

    # ------------------------------------------------------------------ views

    @property
    def n_original(self) -> int:
        return self.original.topo.n

    @property
    def m_original(self) -> int:
        return self.original.topo.m

    def is_intact(self) -> bool:
        return not self.destroyed_nodes and not self.destroyed_edges

    def validate(self) -> None:
        """Consistency check used by tests; raises on violation."""
        if set(self.capacities) != set(self.topo.nodes):
            raise AssertionError("capacity keys drifted from live nodes")
        if set(self.edge_attrs) != set(self.topo.edges):
            raise AssertionError("edge attribute keys drifted from live edges")
        if self.destroyed_nodes & set(self.topo.nodes):
            raise AssertionError("a node is both live and destroyed")
        if self.destroyed_edges & set(self.topo.edges):
            raise AssertionError("an edge is both live and destroyed")
        if set(self.topo.nodes) | self.destroyed_nodes != set(self.original.topo.nodes):
            raise AssertionError("live plus destroyed nodes do not cover the original")
        if set(self.topo.edges) | self.destroyed_edges != set(self.original.topo.edges):
            raise AssertionError("live plus destroyed edges do not cover the original")
        for cap in self.capacities.values():
            if cap.total > cap.max_total + _TOL:
                raise AssertionError("capacity budget violated")

    # -------------------------------------------------------------- mutation

    def destroy_node(self, node: int) -> bool:
        """Remove a live node and all its incident edges.

        Returns True when the node was removed; destroying an already
        destroyed node warns and is a no-op. Unknown ids raise ``KeyError``.
        """
        if node in self.destroyed_nodes:
            warnings.warn(f"node {node} is already destroyed; ignoring", stacklevel=2)
            return False
        if node not in self.capacities:
            raise KeyError(f"unknown node {node}")
        for neighbor in self.topo.adjacency[node]:
            e = edge_key(node, neighbor)
            self.destroyed_edges.add(e)
            del self.edge_attrs[e]
            del self.risk.edge_disruption_likelihood[e]
            del self.risk.edge_repair_rate[e]
        del self.capacities[node]
        del self.risk.node_disruption_likelihood[node]
        del self.risk.node_repair_rate[node]
        self.destroyed_nodes.add(node)
        self.topo = Topology.from_edges(
            (v for v in self.topo.nodes if v != node),
            (e for e in self.topo.edges if node not in e),
        )
        return True

    def restore_node(self, node: int, with_edges: bool = True) -> bool:
        """Bring a destroyed node back with its original attributes.

        With ``with_edges`` every destroyed incident edge whose other
        endpoint is live is restored as well; otherwise those edges stay
        parked for a later :meth:`restore_edge`. Restoring a live node warns
        and is a no-op; unknown ids raise ``KeyError``.
        """
        if node in self.capacities:
            warnings.warn(f"node {node} is already live; ignoring", stacklevel=2)
            return False
        if node not in self.destroyed_nodes:
            raise KeyError(f"unknown node {node}")
        self.destroyed_nodes.discard(node)
        self.capacities[node] = copy.deepcopy(self.original.capacities[node])
        self.risk.node_disruption_likelihood[node] = self.original.risk.node_disruption_likelihood[node]
        self.risk.node_repair_rate[node] = self.original.risk.node_repair_rate[node]
        live_edges = set(self.topo.edges)
        if with_edges:
            for neighbor in self.original.topo.adjacency[node]:
                e = edge_key(node, neighbor)
                if e in self.destroyed_edges and neighbor in self.capacities:
                    self.destroyed_edges.discard(e)
                    self.edge_attrs[e] = copy.deepcopy(self.original.edge_attrs[e])
                    self.risk.edge_disruption_likelihood[e] = self.original.risk.edge_disruption_likelihood[e]
                    self.risk.edge_repair_rate[e] = self.original.risk.edge_repair_rate[e]
                    live_edges.add(e)
        self.topo = Topology.from_edges(
            list(self.topo.nodes) + [node], live_edges
        )
        return True

    def restore_edge(self, edge: tuple[int, int]) -> bool:
        """Bring one destroyed edge back; both endpoints must be live.

        Restoring a live edge warns and is a no-op; edges that never existed
        raise ``KeyError``; a destroyed endpoint raises ``ValueError``.
        """
        e = edge_key(*edge)
        if e in self.edge_attrs:
            warnings.warn(f"edge {e} is already live; ignoring", stacklevel=2)
            return False
        if e not in self.destroyed_edges:
            raise KeyError(f"unknown edge {e}")
        u, v = e
        if u not in self.capacities or v not in self.capacities:
            raise ValueError(f"cannot restore edge {e}: an endpoint is destroyed")
        self.destroyed_edges.discard(e)
        self.edge_attrs[e] = copy.deepcopy(self.original.edge_attrs[e])
        self.risk.edge_disruption_likelihood[e] = self.original.risk.edge_disruption_likelihood[e]
        self.risk.edge_repair_rate[e] = self.original.risk.edge_repair_rate[e]
        self.topo = Topology.from_edges(self.topo.nodes, set(self.topo.edges) | {e})
        return True

    def adjust_capacities(self, policy: str, fraction: float = 0.1) -> None:
        """Re-balance every live node's capacity split under a named policy.

        Policies keep each node's total effort constant: ``resist`` shifts
        weight toward observing and acting, ``recover`` toward controlling,
        deciding and acting; ``none`` leaves the split untouched.
        """
        try:
            shift = ADAPTATION_POLICIES[policy]
        except KeyError:
            raise ValueError(
                f"unknown adaptation policy {policy!r}; expected one of "
                f"{sorted(ADAPTATION_POLICIES)}"
            ) from None
        if not 0.0 <= fraction <= 1.0:
            raise ValueError("fraction must lie in [0, 1]")
        for node, cap in list(self.capacities.items()):
            self.capacities[node] = shift(cap, fraction)

    def relax_capacities(self) -> None:
        """Drop any adaptation posture: every live node returns to its
        original capacity split. Used once repair is complete, so the
        network grows from its canonical working point."""
        for node in self.capacities:
            self.capacities[node] = copy.deepcopy(self.original.capacities[node])


def criticality_maps(
    net: ResilientNetwork,
) -> tuple[dict[int, float], dict[tuple[int, int], float]]:
    """Importance of every live node and edge.

    A node's criticality is its betweenness weighted by the effort it spends
    observing and acting; an edge inherits the sum of its endpoints' scores
    weighted by its own betweenness. Betweenness is normalised against the
    original network size, so the scores of survivors do not inflate as
    other elements are destroyed.
    """
    node_raw, edge_raw = betweenness_raw(net.topo)
    n0 = net.n_original
    node_den = (n0 - 1) * (n0 - 2) / 2.0
    edge_den = n0 * (n0 - 1) / 2.0
    node_crit: dict[int, float] = {}
    for v in net.topo.nodes:
        bn = node_raw[v] / node_den if node_den > 0 else 0.0
        cap = net.capacities[v]
        node_crit[v] = bn * (cap.observe + cap.act)
    edge_crit: dict[tuple[int, int], float] = {}
    for e in net.topo.edges:
        be = edge_raw[e] / edge_den if edge_den > 0 else 0.0
        edge_crit[e] = be * (node_crit[e[0]] + node_crit[e[1]])
    return node_crit, edge_crit


def node_criticality(net: ResilientNetwork, node: int) -> float:
    if node not in net.capacities:
        raise KeyError(f"node {node} is not live")
    return criticality_maps(net)[0][node]


def edge_criticality(net: ResilientNetwork, edge: tuple[int, int]) -> float:
    e = edge_key(*edge)
    if e not in net.edge_attrs:
        raise KeyError(f"edge {e} is not live")
    return criticality_maps(net)[1][e]


def _draw_capacities(
    topo: Topology, mai: float, fraction: float, rng: np.random.Generator
) -> dict[int, NodeCapacity]:
    capacities = {}
    for v in topo.nodes:
        draws = rng.random(4)
        total = float(draws.sum())
        if total <= 0.0:
            draws = np.full(4, 0.25)
            total = 1.0
        scale = fraction * mai / total
        capacities[v] = NodeCapacity(
            observe=float(draws[0]) * scale,
            control=float(draws[1]) * scale,
            decide=float(draws[2]) * scale,
            act=float(draws[3]) * scale,
            max_total=mai,
        )
    return capacities


def initialize_capacities(
    topo: Topology, mai: float = 1.0, seed: int = 0, fraction: float = 0.5
) -> dict[int, NodeCapacity]:
    """Draw a random capacity split for every node.

    Four independent uniforms are rescaled so each node starts at
    ``fraction * mai`` total effort, leaving headroom to grow later.
    """
    if mai <= 0:
        raise ValueError("mai must be positive")
    if not 0.0 < fraction <= 1.0:
        raise ValueError("fraction must lie in (0, 1]")
    return _draw_capacities(topo, mai, fraction, np.random.default_rng(seed))


def build_network(
    topo: Topology, ranges: AttributeRanges | None = None, seed: int = 0
) -> ResilientNetwork:
    """Assemble a :class:`ResilientNetwork` with attributes drawn from
    ``ranges`` using a single seeded generator (node order, then edge order,
    then risk draws), so equal seeds give identical networks."""
    ranges = ranges or AttributeRanges()
    rng = np.random.default_rng(seed)
    capacities = _draw_capacities(topo, ranges.mai, ranges.capacity_fraction, rng)
    edge_attrs: dict[tuple[int, int], EdgeAttributes] = {}
    for e in topo.sorted_edges():
        ceiling = float(rng.uniform(*ranges.max_bandwidth))
        edge_attrs[e] = EdgeAttributes(
            max_bandwidth=ceiling,
            bandwidth=ranges.bandwidth_fraction * ceiling,
            rtt=max(float(rng.uniform(*ranges.rtt)), RTT_FLOOR),
        )
    risk = RiskProfile(
        node_disruption_likelihood={v: float(rng.uniform(*ranges.node_likelihood)) for v in topo.nodes},
        edge_disruption_likelihood={e: float(rng.uniform(*ranges.edge_likelihood)) for e in topo.sorted_edges()},
        node_repair_rate={v: float(rng.uniform(*ranges.node_repair)) for v in topo.nodes},
        edge_repair_rate={e: float(rng.uniform(*ranges.edge_repair)) for e in topo.sorted_edges()},
    )
    return ResilientNetwork(topo, capacities, edge_attrs, risk)
