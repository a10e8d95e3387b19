"""netresil: quantitative network resilience evaluation.

Score a network's capability to respond, resist, keep running, converge
back and evolve; propagate those scores through a two-slice performance
model; and drive full attack/recovery scenarios with stage labelling,
reference baselines and resilience summaries.
"""

from .capabilities import (
    CAP_MAX,
    RISK_EXPOSURE_FLOOR,
    CapabilityVector,
    RiskFreeWarning,
    capability_vector,
    continuous_running,
    dynamic_evolution,
    normalize_capabilities,
    rapid_convergence,
    rapid_response,
    sustained_resistance,
)
from .config import (
    SEED_STREAM_ATTRIBUTES,
    SEED_STREAM_SCENARIO,
    SEED_STREAM_SWEEP_BASE,
    SEED_STREAM_TOPOLOGY,
    ConfigError,
    OutputOptions,
    RunConfigFile,
    TopologySpec,
    build_topology,
    derive_seed,
    load_config,
)
from .dbn import (
    PERFORMANCE_ORDER,
    CumulativeResilience,
    PerformanceState,
    ResilienceSeries,
    TransitionModel,
    aggregate_performance,
    cumulative_resilience,
    dbn_step,
    instantaneous_resilience,
)
from .generators import generate_ba, generate_ba_classic, generate_er, load_graphml
from .graph import (
    ComponentPartition,
    SpectrumResult,
    Topology,
    UnionFind,
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
from .network import (
    RTT_FLOOR,
    AttributeRanges,
    EdgeAttributes,
    NetworkSnapshot,
    NodeCapacity,
    ResilientNetwork,
    RiskProfile,
    build_network,
    criticality_maps,
    edge_criticality,
    initialize_capacities,
    node_criticality,
)
from .output import (
    COMPARE_COLUMNS,
    RUN_COLUMNS,
    emit_compare_csv,
    emit_run_csv,
    emit_run_json,
    read_run_csv,
    record_as_dict,
)
from .scenario import (
    RunRecord,
    ScenarioConfig,
    StageThresholds,
    baseline_flow_robustness,
    baseline_relative_size,
    evolution_step,
    label_stages,
    recovery_step,
    run_scenario,
    select_attack_targets,
)

__version__ = "0.1.0"

__all__ = [
    "CAP_MAX",
    "COMPARE_COLUMNS",
    "PERFORMANCE_ORDER",
    "RISK_EXPOSURE_FLOOR",
    "RTT_FLOOR",
    "RUN_COLUMNS",
    "SEED_STREAM_ATTRIBUTES",
    "SEED_STREAM_SCENARIO",
    "SEED_STREAM_SWEEP_BASE",
    "SEED_STREAM_TOPOLOGY",
    "AttributeRanges",
    "CapabilityVector",
    "ComponentPartition",
    "ConfigError",
    "CumulativeResilience",
    "EdgeAttributes",
    "NetworkSnapshot",
    "NodeCapacity",
    "OutputOptions",
    "PerformanceState",
    "ResilienceSeries",
    "ResilientNetwork",
    "RiskFreeWarning",
    "RiskProfile",
    "RunConfigFile",
    "RunRecord",
    "ScenarioConfig",
    "SpectrumResult",
    "StageThresholds",
    "Topology",
    "TopologySpec",
    "TransitionModel",
    "UnionFind",
    "aggregate_performance",
    "baseline_flow_robustness",
    "baseline_relative_size",
    "betweenness_raw",
    "build_network",
    "build_topology",
    "capability_vector",
    "connected_components",
    "continuous_running",
    "criticality_maps",
    "cumulative_resilience",
    "dbn_step",
    "derive_seed",
    "dynamic_evolution",
    "edge_betweenness",
    "edge_criticality",
    "edge_key",
    "effective_graph_resistance",
    "emit_compare_csv",
    "emit_run_csv",
    "emit_run_json",
    "evolution_step",
    "flow_robustness",
    "generate_ba",
    "generate_ba_classic",
    "generate_er",
    "initialize_capacities",
    "instantaneous_resilience",
    "label_stages",
    "laplacian_matrix",
    "laplacian_spectrum",
    "load_config",
    "load_graphml",
    "node_betweenness",
    "node_criticality",
    "normalize_capabilities",
    "rapid_convergence",
    "rapid_response",
    "read_run_csv",
    "record_as_dict",
    "recovery_step",
    "run_scenario",
    "select_attack_targets",
    "structure_entropy",
    "sustained_resistance",
]
