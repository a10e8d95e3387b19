"""The five capability measures scored on the current network state.

Each measure is a scalar summary of how well the network can respond,
resist, keep running, converge back and evolve. Destroyed elements count as
lost capability mass: structural metrics are evaluated on the live topology
while every size normaliser uses the original element counts, so a damaged
network scores lower instead of being re-normalised onto its survivors.
On an intact network this coincides with the plain self-normalised metrics.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace

from .graph import (
    betweenness_raw,
    effective_graph_resistance,
    flow_robustness,
    laplacian_spectrum,
    structure_entropy,
)
from .network import RTT_FLOOR, ResilientNetwork, criticality_maps

# denominator floor for the risk-weighted ratio
RISK_EXPOSURE_FLOOR = 1e-6

# ceiling applied to baseline-relative capability values
CAP_MAX = 1.25

_NAMES = ("rrc", "src", "crc", "rcc", "dec")


class RiskFreeWarning(UserWarning):
    """Total disruption risk is numerically zero; the ratio was floored."""


@dataclass
class CapabilityVector:
    """Raw capability values plus (optionally) their baseline-relative
    normalised counterparts in ``[0, CAP_MAX]``."""

    rrc: float
    src: float
    crc: float
    rcc: float
    dec: float
    rrc_n: float | None = None
    src_n: float | None = None
    crc_n: float | None = None
    rcc_n: float | None = None
    dec_n: float | None = None

    def raw(self) -> tuple[float, float, float, float, float]:
        return (self.rrc, self.src, self.crc, self.rcc, self.dec)

    def normalized(self) -> tuple[float, float, float, float, float]:
        values = (self.rrc_n, self.src_n, self.crc_n, self.rcc_n, self.dec_n)
        if any(v is None for v in values):
            raise ValueError("capability vector has not been normalised")
        return values  # type: ignore[return-value]


def _degree_share(net: ResilientNetwork, node: int) -> float:
    denom = net.n_original - 1
    if denom <= 0:
        return 0.0
    return net.topo.degree(node) / denom


def rapid_response(net: ResilientNetwork) -> float:
    """Readiness to react: observation effort placed on well-connected nodes
    plus how fast traffic crosses the links that carry the most paths."""
    n0 = net.n_original
    if n0 == 0:
        return 0.0
    node_term = (
        sum(_degree_share(net, v) * net.capacities[v].observe for v in net.topo.nodes)
        / n0
    )
    m = net.topo.m
    if m == 0:
        return node_term
    _, edge_raw = betweenness_raw(net.topo)
    edge_den = n0 * (n0 - 1) / 2.0
    edge_term = (
        sum(
            (edge_raw[e] / edge_den) / max(net.edge_attrs[e].rtt, RTT_FLOOR)
            for e in net.topo.edges
        )
        / m
    )
    return node_term + edge_term


def sustained_resistance(net: ResilientNetwork) -> float:
    """Structural robustness earned per unit of disruption risk carried.

    The numerator combines spectral connectivity with mean degree; the
    denominator is total criticality-weighted disruption likelihood. A
    denominator below ``RISK_EXPOSURE_FLOOR`` is floored, and flagged with
    :class:`RiskFreeWarning` when the network still has robustness to score.
    """
    n0 = net.n_original
    if n0 == 0:
        return 0.0
    spectrum = laplacian_spectrum(net.topo)
    resistance = effective_graph_resistance(spectrum, n0)
    mean_degree = sum(_degree_share(net, v) for v in net.topo.nodes) / n0
    numerator = resistance * mean_degree
    node_crit, edge_crit = criticality_maps(net)
    exposure = sum(
        node_crit[v] * net.risk.node_disruption_likelihood[v] for v in net.topo.nodes
    ) + sum(
        edge_crit[e] * net.risk.edge_disruption_likelihood[e] for e in net.topo.edges
    )
    if exposure < RISK_EXPOSURE_FLOOR:
        if numerator > 0.0:
            warnings.warn(
                "total disruption risk is numerically zero; flooring the "
                "exposure denominator",
                RiskFreeWarning,
                stacklevel=2,
            )
        exposure = RISK_EXPOSURE_FLOOR
    return numerator / exposure


def continuous_running(net: ResilientNetwork) -> float:
    """Ability to keep traffic flowing: reachability times the bandwidth
    concentrated on critical links."""
    n0 = net.n_original
    if n0 < 2:
        raise ValueError("continuous running needs at least two nodes")
    fr = flow_robustness(net.topo, total_nodes=n0)
    _, edge_crit = criticality_maps(net)
    weighted = sum(
        net.edge_attrs[e].bandwidth * edge_crit[e] for e in net.topo.edges
    )
    return fr * weighted / n0


def rapid_convergence(net: ResilientNetwork) -> float:
    """Speed of pulling the network back together: repairable nodes that can
    steer (control/decide) or push (act), plus repairable fast links on
    heavily used routes."""
    n0 = net.n_original
    if n0 == 0:
        return 0.0
    node_raw, edge_raw = betweenness_raw(net.topo)
    node_den = (n0 - 1) * (n0 - 2) / 2.0
    node_term = 0.0
    for v in net.topo.nodes:
        cap = net.capacities[v]
        bn = node_raw[v] / node_den if node_den > 0 else 0.0
        node_term += net.risk.node_repair_rate[v] * (
            bn * (cap.control + cap.decide) + _degree_share(net, v) * cap.act
        )
    node_term /= n0
    if n0 < 2 or net.topo.m == 0:
        return node_term
    edge_den = n0 * (n0 - 1) / 2.0
    edge_term = 0.0
    for e in net.topo.edges:
        attrs = net.edge_attrs[e]
        edge_term += (
            net.risk.edge_repair_rate[e]
            * (edge_raw[e] / edge_den)
            * attrs.bandwidth
            / max(attrs.rtt, RTT_FLOOR)
        )
    edge_term *= 2.0 / (n0 * (n0 - 1))
    return node_term + edge_term


def dynamic_evolution(net: ResilientNetwork) -> float:
    """Room to grow: degree-distribution entropy scaled by the total
    capacity budget and total bandwidth ceiling still present."""
    n0 = net.n_original
    m = net.topo.m
    if n0 == 0 or m == 0:
        return 0.0
    entropy = structure_entropy(net.topo)
    budget = sum(net.capacities[v].max_total for v in net.topo.nodes)
    ceiling = sum(net.edge_attrs[e].max_bandwidth for e in net.topo.edges)
    return entropy * budget * ceiling / (n0 * m)


def capability_vector(net: ResilientNetwork) -> CapabilityVector:
    """Evaluate all five capabilities on the current state (raw values)."""
    return CapabilityVector(
        rrc=rapid_response(net),
        src=sustained_resistance(net),
        crc=continuous_running(net),
        rcc=rapid_convergence(net),
        dec=dynamic_evolution(net),
    )


def normalize_capabilities(
    raw: CapabilityVector, baseline: CapabilityVector, cap_max: float = CAP_MAX
) -> CapabilityVector:
    """Express ``raw`` relative to ``baseline``, capped at ``cap_max``.

    Every baseline component must be strictly positive; a degenerate
    baseline network (for example one without any path structure) cannot
    anchor the scale and raises ``ValueError``.
    """
    if cap_max <= 0:
        raise ValueError("cap_max must be positive")
    scaled: dict[str, float] = {}
    for name in _NAMES:
        base = getattr(baseline, name)
        if base <= 0.0:
            raise ValueError(
                f"baseline capability {name} is {base}; the baseline network "
                "is degenerate and cannot be used for normalisation"
            )
        scaled[f"{name}_n"] = min(getattr(raw, name) / base, cap_max)
    return replace(raw, **scaled)
