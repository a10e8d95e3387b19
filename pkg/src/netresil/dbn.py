"""Two-time-slice propagation of the five resilience performances.

Performances form a fixed chain (prepare -> resist -> adapt -> recover ->
evolve). Each new-slice value is the product of tempered parent factors and
the matching normalised capability; tempering maps a parent value x to
``alpha + (1 - alpha) * clamp(x, 0, 1)`` so ``alpha`` tunes how much history
is carried: 0 multiplies raw parents, 1 makes each performance equal its
capability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .capabilities import CapabilityVector

PERFORMANCE_ORDER = ("prepare", "resist", "adapt", "recover", "evolve")


@dataclass(frozen=True)
class TransitionModel:
    """Parameters of the propagation: tempering strength and the weights
    used to aggregate the five performances into one scalar."""

    factor_alpha: float = 0.5
    weights: tuple[float, float, float, float, float] = (0.2, 0.2, 0.2, 0.2, 0.2)

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if not 0.0 <= self.factor_alpha <= 1.0:
            raise ValueError("factor_alpha must lie in [0, 1]")
        if len(self.weights) != 5:
            raise ValueError("exactly five aggregation weights are required")
        if any(w < 0 for w in self.weights):
            raise ValueError("aggregation weights must be non-negative")
        if abs(sum(self.weights) - 1.0) > 1e-12:
            raise ValueError(f"aggregation weights must sum to 1, got {sum(self.weights)}")

    def conditional_factor(self, value: float) -> float:
        """Tempered parent influence in ``[alpha, 1]``."""
        clamped = min(max(value, 0.0), 1.0)
        return self.factor_alpha + (1.0 - self.factor_alpha) * clamped


@dataclass(frozen=True)
class PerformanceState:
    """The five performance values at one time step."""

    prepare: float
    resist: float
    adapt: float
    recover: float
    evolve: float
    time_index: int = 0

    def __post_init__(self) -> None:
        for name in PERFORMANCE_ORDER:
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"performance {name} is not finite: {value}")
            if value < 0.0:
                raise ValueError(f"performance {name} must be non-negative: {value}")

    @classmethod
    def initial(cls) -> "PerformanceState":
        return cls(1.0, 1.0, 1.0, 1.0, 1.0, time_index=0)

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.prepare, self.resist, self.adapt, self.recover, self.evolve)


def dbn_step(
    prev: PerformanceState, caps: CapabilityVector, model: TransitionModel
) -> PerformanceState:
    """Advance the performance state one step.

    The head of the chain depends only on its own past; every later
    performance depends on its own past, its parent's past, and the
    parent's just-computed new value, each tempered, times the matching
    normalised capability.
    """
    rrc_n, src_n, crc_n, rcc_n, dec_n = caps.normalized()
    f = model.conditional_factor
    prepare = f(prev.prepare) * rrc_n
    resist = f(prev.resist) * f(prev.prepare) * f(prepare) * src_n
    adapt = f(prev.adapt) * f(prev.resist) * f(resist) * crc_n
    recover = f(prev.recover) * f(prev.adapt) * f(adapt) * rcc_n
    evolve = f(prev.evolve) * f(prev.recover) * f(recover) * dec_n
    return PerformanceState(
        prepare=prepare,
        resist=resist,
        adapt=adapt,
        recover=recover,
        evolve=evolve,
        time_index=prev.time_index + 1,
    )


def aggregate_performance(state: PerformanceState, model: TransitionModel) -> float:
    """Weighted sum of the five performances."""
    return sum(w * v for w, v in zip(model.weights, state.as_tuple()))


@dataclass
class ResilienceSeries:
    """Trajectory of one run: per-step states, capabilities, and the
    aggregate performance, anchored by the pre-attack reference level."""

    p_nor: float
    performance: list[float] = field(default_factory=list)
    states: list[PerformanceState] = field(default_factory=list)
    capabilities: list[CapabilityVector] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.p_nor <= 0:
            raise ValueError("reference performance must be positive")

    def append(
        self, state: PerformanceState, caps: CapabilityVector, performance: float
    ) -> None:
        self.states.append(state)
        self.capabilities.append(caps)
        self.performance.append(performance)

    def __len__(self) -> int:
        return len(self.performance)


class CumulativeResilience(NamedTuple):
    raw: float
    clamped: float


def instantaneous_resilience(
    series: ResilienceSeries, t: int, window: int = 1
) -> float:
    """Mean performance over ``window`` steps starting at ``t``, relative to
    the reference level."""
    if window < 1:
        raise ValueError("window must be at least 1")
    if t < 0 or t + window > len(series):
        raise IndexError(
            f"window [{t}, {t + window}) outside series of length {len(series)}"
        )
    return sum(series.performance[t : t + window]) / (window * series.p_nor)


def cumulative_resilience(
    series: ResilienceSeries, start: int, horizon: int
) -> CumulativeResilience:
    """Accumulated relative performance over ``horizon`` steps from
    ``start``. Returned both raw and clamped to 1, since a network that
    evolves past its original level can score above unity."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if start < 0 or start + horizon > len(series):
        raise IndexError(
            f"range [{start}, {start + horizon}) outside series of length {len(series)}"
        )
    raw = sum(series.performance[start : start + horizon]) / (horizon * series.p_nor)
    return CumulativeResilience(raw=raw, clamped=min(raw, 1.0))
