"""Attack/recovery scenario driver.

A run starts from an intact network, samples a baseline capability vector,
fires an attack at a configured step, then alternates capacity adaptation
and probabilistic repair until everything destroyed is back, optionally
letting the network evolve past its original level afterwards. Every step
re-scores the capabilities, advances the performance state, and records the
two reference baselines used for comparison.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .capabilities import (
    CAP_MAX,
    CapabilityVector,
    capability_vector,
    normalize_capabilities,
)
from .dbn import (
    CumulativeResilience,
    PerformanceState,
    ResilienceSeries,
    TransitionModel,
    aggregate_performance,
    cumulative_resilience,
    dbn_step,
)
from .graph import betweenness_raw, connected_components, flow_robustness
from .network import ResilientNetwork

ATTACK_PATTERNS = ("random", "centrality")
RECOVERY_PATTERNS = ("random", "centrality")
ADAPTATION_CHOICES = ("auto", "none", "resist", "recover")

STAGE_PREPARATION = "preparation"
STAGE_RESISTANCE = "resistance"
STAGE_ADAPTATION = "adaptation"
STAGE_RECOVERY = "recovery"
STAGE_EVOLUTION = "evolution"


@dataclass
class ScenarioConfig:
    """Everything that parameterises one run.

    ``attack_time`` is the step at which ``attacked_count`` targets are hit
    with per-node compromise probability ``attack_prob``. From the next
    step, up to ``recovery_per_step`` nodes are repaired per step, each with
    probability ``recovery_prob`` scaled by its repair rate. ``max_steps``
    defaults to attack time plus the minimum number of repair steps plus
    ten, leaving room to observe evolution.
    """

    attack_time: int = 5
    attacked_count: int = 0
    recovery_per_step: int = 2
    attack_prob: float = 1.0
    recovery_prob: float = 1.0
    attack_pattern: str = "random"
    recovery_pattern: str = "random"
    adaptation_policy: str = "auto"
    adaptation_fraction: float = 0.1
    evolution_enabled: bool = True
    evolution_fraction: float = 0.5
    seed: int = 0
    max_steps: int | None = None

    def validate(self, n_nodes: int) -> None:
        if self.attack_time < 0:
            raise ValueError("attack_time must be non-negative")
        if self.attacked_count < 0 or self.attacked_count > n_nodes:
            raise ValueError(
                f"attacked_count must lie in [0, {n_nodes}], got {self.attacked_count}"
            )
        if self.attacked_count > 0 and self.attack_time < 1:
            raise ValueError(
                "attack_time must be at least 1: step 0 samples the intact "
                "network and anchors the reference level"
            )
        if self.recovery_per_step < 1:
            raise ValueError("recovery_per_step must be at least 1")
        if not 0.0 <= self.attack_prob <= 1.0:
            raise ValueError("attack_prob must lie in [0, 1]")
        if not 0.0 <= self.recovery_prob <= 1.0:
            raise ValueError("recovery_prob must lie in [0, 1]")
        if self.attack_pattern not in ATTACK_PATTERNS:
            raise ValueError(f"unknown attack_pattern {self.attack_pattern!r}")
        if self.recovery_pattern not in RECOVERY_PATTERNS:
            raise ValueError(f"unknown recovery_pattern {self.recovery_pattern!r}")
        if self.adaptation_policy not in ADAPTATION_CHOICES:
            raise ValueError(f"unknown adaptation_policy {self.adaptation_policy!r}")
        if not 0.0 <= self.adaptation_fraction <= 1.0:
            raise ValueError("adaptation_fraction must lie in [0, 1]")
        if not 0.0 <= self.evolution_fraction <= 1.0:
            raise ValueError("evolution_fraction must lie in [0, 1]")
        resolved = self.resolved_max_steps()
        if resolved < self.minimum_steps():
            raise ValueError(
                f"max_steps {resolved} cannot cover the attack plus the "
                f"minimum recovery window {self.minimum_steps()}"
            )

    def minimum_steps(self) -> int:
        """Steps needed to fire the attack and finish repair at full rate."""
        if self.attacked_count == 0:
            return self.attack_time
        return self.attack_time + math.ceil(self.attacked_count / self.recovery_per_step)

    def resolved_max_steps(self) -> int:
        if self.max_steps is not None:
            return self.max_steps
        return self.minimum_steps() + 10


@dataclass
class StageThresholds:
    """Performance levels separating the stages of a run, anchored at the
    pre-attack reference level ``p_nor``."""

    p_nor: float = 1.0
    p_up: float = 0.9
    p_down: float = 0.6

    def __post_init__(self) -> None:
        if not 0.0 < self.p_down < self.p_up <= self.p_nor:
            raise ValueError(
                f"thresholds must satisfy 0 < p_down < p_up <= p_nor, got "
                f"({self.p_down}, {self.p_up}, {self.p_nor})"
            )

    @classmethod
    def from_reference(
        cls, p_nor: float, up_fraction: float = 0.9, down_fraction: float = 0.6
    ) -> "StageThresholds":
        return cls(p_nor=p_nor, p_up=up_fraction * p_nor, p_down=down_fraction * p_nor)


@dataclass
class RunRecord:
    """Everything produced by one scenario run; all per-step lists have
    ``max_steps + 1`` entries (step 0 is the intact network)."""

    series: ResilienceSeries
    stage_labels: list[str]
    baseline1: list[float]
    baseline2: list[float]
    cumulative: CumulativeResilience
    attack_step: int | None
    attacked_nodes: tuple[int, ...]
    restoration_step: int | None
    config: ScenarioConfig
    thresholds: StageThresholds

    def __len__(self) -> int:
        return len(self.series)


def select_attack_targets(
    net: ResilientNetwork, cfg: ScenarioConfig, rng: np.random.Generator
) -> list[int]:
    """Pick the attacked nodes and keep those actually compromised.

    ``random`` samples uniformly among live nodes; ``centrality`` takes the
    highest-degree live nodes (ties by id). A target is compromised when its
    disruption likelihood exceeds ``1 - attack_prob``, so probability 1
    compromises every target with non-zero likelihood and probability 0
    compromises none.
    """
    live = list(net.topo.nodes)
    if cfg.attacked_count > len(live):
        raise ValueError(
            f"cannot attack {cfg.attacked_count} nodes, only {len(live)} are live"
        )
    if cfg.attack_pattern == "random":
        targets = [int(v) for v in rng.choice(live, size=cfg.attacked_count, replace=False)]
    else:
        targets = sorted(live, key=lambda v: (-net.topo.degree(v), v))[: cfg.attacked_count]
    threshold = 1.0 - cfg.attack_prob
    return [v for v in targets if net.risk.node_disruption_likelihood[v] > threshold]


def recovery_step(
    net: ResilientNetwork, cfg: ScenarioConfig, rng: np.random.Generator
) -> int:
    """One round of repair; returns the number of nodes restored.

    Up to ``recovery_per_step`` destroyed nodes are tried (random order or
    by original degree), each coming back with probability ``recovery_prob``
    times its repair rate; failures stay queued for the next round. Nodes
    come back without their edges; every destroyed edge whose endpoints are
    both live then gets its own repair draw.
    """
    restored = 0
    if net.destroyed_nodes:
        if cfg.recovery_pattern == "random":
            candidates = [int(v) for v in rng.permutation(sorted(net.destroyed_nodes))]
        else:
            candidates = sorted(
                net.destroyed_nodes,
                key=lambda v: (-net.original.topo.degree(v), v),
            )
        for node in candidates[: cfg.recovery_per_step]:
            rate = net.original.risk.node_repair_rate[node]
            if rng.random() < cfg.recovery_prob * rate:
                net.restore_node(node, with_edges=False)
                restored += 1
    for e in sorted(net.destroyed_edges):
        u, v = e
        if u in net.capacities and v in net.capacities:
            rate = net.original.risk.edge_repair_rate[e]
            if rng.random() < cfg.recovery_prob * rate:
                net.restore_edge(e)
    return restored


def evolution_step(net: ResilientNetwork, cfg: ScenarioConfig) -> None:
    """Let a fully repaired network grow: every link closes part of the gap
    to its bandwidth ceiling, and every node converts part of its unused
    capacity budget, in proportion to its betweenness, into extra effort
    spread across its current activity split."""
    if not cfg.evolution_enabled:
        return
    for e in net.topo.sorted_edges():
        attrs = net.edge_attrs[e]
        attrs.bandwidth += cfg.evolution_fraction * (attrs.max_bandwidth - attrs.bandwidth)
    node_raw, _ = betweenness_raw(net.topo)
    n0 = net.n_original
    node_den = (n0 - 1) * (n0 - 2) / 2.0
    if node_den <= 0:
        return
    for v in net.topo.nodes:
        cap = net.capacities[v]
        gain = (node_raw[v] / node_den) * cap.headroom
        if gain <= 0.0:
            continue
        total = cap.total
        if total > 0.0:
            scale = 1.0 + gain / total
            net.capacities[v] = replace(
                cap,
                observe=cap.observe * scale,
                control=cap.control * scale,
                decide=cap.decide * scale,
                act=cap.act * scale,
            )
        else:
            quarter = gain / 4.0
            net.capacities[v] = replace(
                cap, observe=quarter, control=quarter, decide=quarter, act=quarter
            )


def baseline_relative_size(net: ResilientNetwork) -> float:
    """Reference measure 1: size of the largest live connected component
    relative to the original node count."""
    n0 = net.n_original
    if n0 == 0:
        raise ValueError("network has no original nodes")
    if net.topo.n == 0:
        return 0.0
    return connected_components(net.topo).largest_size / n0


def baseline_flow_robustness(net: ResilientNetwork) -> float:
    """Reference measure 2: reachable pair fraction of the live topology
    against the original pair count, so destroyed nodes count as isolated."""
    return flow_robustness(net.topo, total_nodes=net.n_original)


def _resolve_policy(cfg: ScenarioConfig, post_attack_steps: int) -> str:
    """Adaptation policy for the given post-attack step (1-based).

    ``auto`` shifts effort toward resisting on the first step after the
    attack and toward recovering from then on; any explicit policy name is
    applied unconditionally.
    """
    if cfg.adaptation_policy != "auto":
        return cfg.adaptation_policy
    return "resist" if post_attack_steps <= 1 else "recover"


def _stage_labels(
    performance: Sequence[float],
    attack_step: int | None,
    thresholds: StageThresholds,
) -> list[str]:
    """Label each step with the stage the run is in.

    Before any attack everything is preparation. From the attack step the
    run is resisting while performance holds at or above ``p_up``; once it
    falls below, it is adapting while still sinking and recovering once it
    climbs; reaching ``p_up`` again after the drop is evolution, which is
    terminal.
    """
    labels: list[str] = []
    stage = STAGE_PREPARATION
    for t, p in enumerate(performance):
        if attack_step is None or t < attack_step:
            labels.append(STAGE_PREPARATION)
            continue
        if stage == STAGE_PREPARATION:
            stage = STAGE_RESISTANCE
        if stage == STAGE_RESISTANCE and p < thresholds.p_up:
            stage = STAGE_ADAPTATION
        if stage == STAGE_ADAPTATION:
            if p >= thresholds.p_up:
                stage = STAGE_EVOLUTION
            elif t > 0 and p > performance[t - 1]:
                stage = STAGE_RECOVERY
        if stage == STAGE_RECOVERY and p >= thresholds.p_up:
            stage = STAGE_EVOLUTION
        labels.append(stage)
    return labels


def label_stages(
    record: RunRecord,
    thresholds: StageThresholds | None = None,
    cfg: ScenarioConfig | None = None,
) -> list[str]:
    """Stage labels for an existing run record; thresholds default to the
    ones the run was scored against."""
    del cfg  # the record already carries everything the labelling needs
    return _stage_labels(
        record.series.performance,
        record.attack_step,
        thresholds or record.thresholds,
    )


def run_scenario(
    net: ResilientNetwork,
    cfg: ScenarioConfig,
    model: TransitionModel | None = None,
    thresholds: StageThresholds | None = None,
    cap_max: float = CAP_MAX,
) -> RunRecord:
    """Execute one full scenario and return its record.

    The input network must be intact; it is copied, never mutated. The run
    is deterministic for a fixed (network, config) pair: a single generator
    seeded from the config drives target selection and every repair draw.
    """
    model = model or TransitionModel()
    if not net.is_intact():
        raise ValueError("run_scenario needs an intact network")
    cfg.validate(net.topo.n)
    net = copy.deepcopy(net)
    rng = np.random.default_rng(cfg.seed)
    max_steps = cfg.resolved_max_steps()

    baseline = capability_vector(net)
    caps = normalize_capabilities(baseline, baseline, cap_max)
    state = PerformanceState.initial()
    p_nor = aggregate_performance(state, model)
    series = ResilienceSeries(p_nor=p_nor)
    series.append(state, caps, p_nor)
    b1 = [baseline_relative_size(net)]
    b2 = [baseline_flow_robustness(net)]
    thresholds = thresholds or StageThresholds.from_reference(p_nor)

    attack_step: int | None = None
    attacked: tuple[int, ...] = ()
    restoration_step: int | None = None
    post_attack_steps = 0

    for t in range(1, max_steps + 1):
        if cfg.attacked_count > 0 and t == cfg.attack_time:
            targets = select_attack_targets(net, cfg, rng)
            for node in targets:
                net.destroy_node(node)
            attack_step = t
            attacked = tuple(targets)
        elif attack_step is not None and t > attack_step:
            post_attack_steps += 1
            if net.destroyed_nodes:
                net.adjust_capacities(
                    _resolve_policy(cfg, post_attack_steps), cfg.adaptation_fraction
                )
            if net.destroyed_nodes or net.destroyed_edges:
                recovery_step(net, cfg, rng)
                if restoration_step is None and not net.destroyed_nodes:
                    # repair is complete: the adaptation posture relaxes and
                    # every node returns to its original effort split
                    restoration_step = t
                    net.relax_capacities()
            if cfg.evolution_enabled and not net.destroyed_nodes:
                evolution_step(net, cfg)

        raw = capability_vector(net)
        caps = normalize_capabilities(raw, baseline, cap_max)
        state = dbn_step(state, caps, model)
        series.append(state, caps, aggregate_performance(state, model))
        b1.append(baseline_relative_size(net))
        b2.append(baseline_flow_robustness(net))

    start = attack_step if attack_step is not None else 0
    cumulative = cumulative_resilience(series, start, len(series) - start)
    labels = _stage_labels(series.performance, attack_step, thresholds)
    return RunRecord(
        series=series,
        stage_labels=labels,
        baseline1=b1,
        baseline2=b2,
        cumulative=cumulative,
        attack_step=attack_step,
        attacked_nodes=attacked,
        restoration_step=restoration_step,
        config=replace(cfg),
        thresholds=thresholds,
    )
