"""Run configuration files (TOML) and seed-stream derivation.

A config file has up to five tables: ``topology`` (what graph to build or
load), ``scenario`` (attack/recovery parameters), ``dbn`` (propagation
parameters), ``attributes`` (sampling ranges) and ``output`` (where results
go). Unknown tables or keys are rejected so typos fail loudly.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

import numpy as np

from .dbn import TransitionModel
from .generators import generate_ba, generate_ba_classic, generate_er, load_graphml
from .graph import Topology
from .network import AttributeRanges
from .scenario import ScenarioConfig


class ConfigError(ValueError):
    """A configuration file or value is invalid."""


TOPOLOGY_KINDS = ("er", "ba", "file")

# seed streams: one master seed fans out into independent substreams
SEED_STREAM_TOPOLOGY = 0
SEED_STREAM_ATTRIBUTES = 1
SEED_STREAM_SCENARIO = 2
SEED_STREAM_SWEEP_BASE = 100


def derive_seed(master: int, stream: int) -> int:
    """Deterministic child seed for a named stream of a master seed."""
    return int(np.random.SeedSequence((int(master), int(stream))).generate_state(1)[0])


@dataclass
class TopologySpec:
    """Which topology to use: a generated random graph or a GraphML file.

    Exactly the parameters of the active ``kind`` may be present: ``er``
    uses ``er_n``/``er_p``, ``ba`` uses ``ba_n``/``ba_m``, ``file`` uses
    ``path``.
    """

    kind: str
    er_n: int | None = None
    er_p: float | None = None
    ba_n: int | None = None
    ba_m: int | None = None
    path: str | None = None

    _REQUIRED = {
        "er": ("er_n", "er_p"),
        "ba": ("ba_n", "ba_m"),
        "file": ("path",),
    }

    def validate(self, base_dir: Path | None = None) -> None:
        if self.kind not in TOPOLOGY_KINDS:
            raise ConfigError(f"unknown topology kind {self.kind!r}; expected one of {TOPOLOGY_KINDS}")
        required = self._REQUIRED[self.kind]
        for name in required:
            if getattr(self, name) is None:
                raise ConfigError(f"topology kind {self.kind!r} requires {name!r}")
        allowed = set(required) | {"kind"}
        for f in fields(self):
            if f.name.startswith("_") or f.name in allowed:
                continue
            if getattr(self, f.name) is not None:
                raise ConfigError(
                    f"topology key {f.name!r} does not belong to kind {self.kind!r}"
                )
        if self.kind == "file":
            resolved = self.resolved_path(base_dir)
            if not resolved.exists():
                raise ConfigError(f"topology file does not exist: {resolved}")

    def resolved_path(self, base_dir: Path | None = None) -> Path:
        p = Path(self.path or "")
        if not p.is_absolute() and base_dir is not None:
            p = base_dir / p
        return p


@dataclass
class OutputOptions:
    directory: str = "out"
    json: bool = False


@dataclass
class RunConfigFile:
    """Fully parsed and validated configuration."""

    topology: TopologySpec
    scenario: ScenarioConfig
    model: TransitionModel
    attributes: AttributeRanges
    output: OutputOptions
    base_dir: Path


def _take(section: Mapping[str, Any], allowed: dict[str, type | tuple], label: str) -> dict[str, Any]:
    unknown = set(section) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown key(s) in [{label}]: {', '.join(sorted(unknown))}")
    return dict(section)


_SCENARIO_KEYS = {
    "attack_time": int,
    "attacked_count": int,
    "recovery_per_step": int,
    "attack_prob": float,
    "recovery_prob": float,
    "attack_pattern": str,
    "recovery_pattern": str,
    "adaptation_policy": str,
    "adaptation_fraction": float,
    "evolution_enabled": bool,
    "evolution_fraction": float,
    "seed": int,
    "max_steps": int,
}

_TOPOLOGY_KEYS = {k: object for k in ("kind", "er_n", "er_p", "ba_n", "ba_m", "path")}
_DBN_KEYS = {"factor_alpha": float, "weights": list}
_ATTRIBUTE_KEYS = {
    "mai": float,
    "capacity_fraction": float,
    "max_bandwidth": list,
    "bandwidth_fraction": float,
    "rtt": list,
    "node_likelihood": list,
    "edge_likelihood": list,
    "node_repair": list,
    "edge_repair": list,
}
_OUTPUT_KEYS = {"directory": str, "json": bool}
_SECTIONS = ("topology", "scenario", "dbn", "attributes", "output")


def _pair(value: Any, label: str) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError(f"{label} must be a two-element [low, high] range")
    return (float(value[0]), float(value[1]))


def load_config(path: str | Path) -> RunConfigFile:
    """Parse and validate a TOML run configuration."""
    p = Path(path)
    if not p.exists():
        raise ConfigError(f"no such config file: {p}")
    try:
        with open(p, "rb") as handle:
            data = tomllib.load(handle)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"cannot parse {p}: {exc}") from exc

    unknown = set(data) - set(_SECTIONS)
    if unknown:
        raise ConfigError(f"unknown config section(s): {', '.join(sorted(unknown))}")
    if "topology" not in data:
        raise ConfigError("config must have a [topology] section")
    base_dir = p.resolve().parent

    topo_data = _take(data["topology"], _TOPOLOGY_KEYS, "topology")
    if "kind" not in topo_data:
        raise ConfigError("[topology] requires a 'kind'")
    spec = TopologySpec(**topo_data)
    spec.validate(base_dir)

    try:
        scenario = ScenarioConfig(**_take(data.get("scenario", {}), _SCENARIO_KEYS, "scenario"))

        dbn_data = _take(data.get("dbn", {}), _DBN_KEYS, "dbn")
        if "weights" in dbn_data:
            dbn_data["weights"] = tuple(float(w) for w in dbn_data["weights"])
        model = TransitionModel(**dbn_data)

        attr_data = _take(data.get("attributes", {}), _ATTRIBUTE_KEYS, "attributes")
        for key in ("max_bandwidth", "rtt", "node_likelihood", "edge_likelihood",
                    "node_repair", "edge_repair"):
            if key in attr_data:
                attr_data[key] = _pair(attr_data[key], f"attributes.{key}")
        attributes = AttributeRanges(**attr_data)

        output = OutputOptions(**_take(data.get("output", {}), _OUTPUT_KEYS, "output"))
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid configuration in {p}: {exc}") from exc

    return RunConfigFile(
        topology=spec,
        scenario=scenario,
        model=model,
        attributes=attributes,
        output=output,
        base_dir=base_dir,
    )


def build_topology(
    spec: TopologySpec,
    seed: int,
    ba_classic: bool = False,
    base_dir: Path | None = None,
) -> Topology:
    """Materialise the configured topology."""
    spec.validate(base_dir)
    if spec.kind == "er":
        return generate_er(int(spec.er_n), float(spec.er_p), seed=seed)
    if spec.kind == "ba":
        builder = generate_ba_classic if ba_classic else generate_ba
        return builder(int(spec.ba_n), int(spec.ba_m), seed=seed)
    return load_graphml(spec.resolved_path(base_dir))
