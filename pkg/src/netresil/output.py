"""Result serialisation: per-step CSV (and a JSON mirror) for run records.

Floats are written with ``repr`` (shortest round-trip form), so equal runs
produce byte-identical files and every value reads back exactly.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any

from .scenario import RunRecord

RUN_COLUMNS = [
    "step",
    "P_p",
    "P_s",
    "P_a",
    "P_r",
    "P_e",
    "P",
    "RRC_n",
    "SRC_n",
    "CRC_n",
    "RCC_n",
    "DEC_n",
    "baseline1",
    "baseline2",
    "stage",
]

COMPARE_COLUMNS = [
    "step",
    "proposed",
    "proposed_n",
    "baseline1",
    "baseline1_n",
    "baseline2",
    "baseline2_n",
    "stage",
]


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _run_rows(record: RunRecord) -> list[list[Any]]:
    rows = []
    for t in range(len(record)):
        state = record.series.states[t]
        caps = record.series.capabilities[t]
        rows.append(
            [
                t,
                state.prepare,
                state.resist,
                state.adapt,
                state.recover,
                state.evolve,
                record.series.performance[t],
                *caps.normalized(),
                record.baseline1[t],
                record.baseline2[t],
                record.stage_labels[t],
            ]
        )
    return rows


def emit_run_csv(record: RunRecord, path: str | Path) -> Path:
    """Write the full per-step trajectory of a run."""
    p = Path(path)
    with open(p, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(RUN_COLUMNS)
        for row in _run_rows(record):
            writer.writerow([_fmt(v) for v in row])
    return p


def emit_compare_csv(record: RunRecord, path: str | Path) -> Path:
    """Write the aggregate performance next to the two reference baselines,
    raw and normalised to their step-0 values."""
    p = Path(path)
    b1_ref = record.baseline1[0] or 1.0
    b2_ref = record.baseline2[0] or 1.0
    with open(p, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(COMPARE_COLUMNS)
        for t in range(len(record)):
            perf = record.series.performance[t]
            row = [
                t,
                perf,
                perf / record.series.p_nor,
                record.baseline1[t],
                record.baseline1[t] / b1_ref,
                record.baseline2[t],
                record.baseline2[t] / b2_ref,
                record.stage_labels[t],
            ]
            writer.writerow([_fmt(v) for v in row])
    return p


def record_as_dict(record: RunRecord) -> dict[str, Any]:
    """JSON-ready view of a run record."""
    steps = []
    for t in range(len(record)):
        state = record.series.states[t]
        caps = record.series.capabilities[t]
        norm = caps.normalized()
        steps.append(
            {
                "step": t,
                "performances": dict(
                    zip(("P_p", "P_s", "P_a", "P_r", "P_e"), state.as_tuple())
                ),
                "P": record.series.performance[t],
                "capabilities_normalized": dict(
                    zip(("RRC_n", "SRC_n", "CRC_n", "RCC_n", "DEC_n"), norm)
                ),
                "baseline1": record.baseline1[t],
                "baseline2": record.baseline2[t],
                "stage": record.stage_labels[t],
            }
        )
    return {
        "p_nor": record.series.p_nor,
        "attack_step": record.attack_step,
        "attacked_nodes": list(record.attacked_nodes),
        "restoration_step": record.restoration_step,
        "cumulative_resilience": {
            "raw": record.cumulative.raw,
            "clamped": record.cumulative.clamped,
        },
        "steps": steps,
    }


def emit_run_json(record: RunRecord, path: str | Path) -> Path:
    p = Path(path)
    with open(p, "w", encoding="utf-8") as handle:
        json.dump(record_as_dict(record), handle, indent=2, sort_keys=True)
        handle.write("\n")
    return p


def read_run_csv(path: str | Path) -> list[dict[str, Any]]:
    """Read a run CSV back; numeric columns become floats (step an int)."""
    rows: list[dict[str, Any]] = []
    with open(path, newline="", encoding="utf-8") as handle:
        for raw in csv.DictReader(handle):
            row: dict[str, Any] = {}
            for key, value in raw.items():
                if key == "step":
                    row[key] = int(value)
                elif key == "stage":
                    row[key] = value
                else:
                    row[key] = float(value)
            rows.append(row)
    return rows
