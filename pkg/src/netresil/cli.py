"""Command-line interface.

Three subcommands share one config file format: ``evaluate`` runs a single
scenario and writes its trajectory, ``compare`` writes the aggregate
performance next to the two reference baselines, and ``sweep`` runs the
attack-strength and recovery-strength grids across both attack/recovery
patterns (twelve runs) with optional process parallelism.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

from .config import (
    SEED_STREAM_ATTRIBUTES,
    SEED_STREAM_SCENARIO,
    SEED_STREAM_SWEEP_BASE,
    SEED_STREAM_TOPOLOGY,
    ConfigError,
    RunConfigFile,
    build_topology,
    derive_seed,
    load_config,
)
from .network import build_network
from .output import emit_compare_csv, emit_run_csv, emit_run_json
from .scenario import run_scenario

# sweep grid: attack strength varies at fixed recovery, then recovery
# strength varies at fixed attack; each cell runs under both patterns
ATTACK_LEVELS = {"high": (0.75, 0.8), "mid": (0.5, 0.5), "low": (0.25, 0.2)}
RECOVERY_LEVELS = {"high": (5, 0.8), "mid": (2, 0.5), "low": (1, 0.2)}
SWEEP_PATTERNS = ("random", "centrality")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netresil",
        description="Quantitative network resilience evaluation under attack "
        "and recovery scenarios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="TOML run configuration")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--out", default=None, help="output directory (default from config)")
        p.add_argument("--json", action="store_true", help="also write a JSON mirror")
        p.add_argument(
            "--ba-classic",
            action="store_true",
            help="use classic preferential attachment for 'ba' topologies",
        )

    p_eval = sub.add_parser("evaluate", help="run one scenario and write its trajectory")
    add_common(p_eval)
    p_eval.set_defaults(func=_cmd_evaluate)

    p_cmp = sub.add_parser(
        "compare", help="run one scenario and write it joined with the baselines"
    )
    add_common(p_cmp)
    p_cmp.set_defaults(func=_cmd_compare)

    p_sweep = sub.add_parser("sweep", help="run the attack/recovery strength grids")
    add_common(p_sweep)
    p_sweep.add_argument(
        "--parallel",
        type=int,
        default=1,
        metavar="K",
        help="number of worker processes (default 1: sequential)",
    )
    p_sweep.set_defaults(func=_cmd_sweep)
    return parser


def _prepare(args: argparse.Namespace) -> tuple[RunConfigFile, int, Path]:
    cfgfile = load_config(args.config)
    master = args.seed if args.seed is not None else cfgfile.scenario.seed
    outdir = Path(args.out if args.out is not None else cfgfile.output.directory)
    outdir.mkdir(parents=True, exist_ok=True)
    return cfgfile, master, outdir


def _build_run(cfgfile: RunConfigFile, master: int, ba_classic: bool):
    topo = build_topology(
        cfgfile.topology,
        seed=derive_seed(master, SEED_STREAM_TOPOLOGY),
        ba_classic=ba_classic,
        base_dir=cfgfile.base_dir,
    )
    net = build_network(
        topo, cfgfile.attributes, seed=derive_seed(master, SEED_STREAM_ATTRIBUTES)
    )
    cfg = replace(cfgfile.scenario, seed=derive_seed(master, SEED_STREAM_SCENARIO))
    return net, cfg


def _cmd_evaluate(args: argparse.Namespace) -> int:
    cfgfile, master, outdir = _prepare(args)
    net, cfg = _build_run(cfgfile, master, args.ba_classic)
    record = run_scenario(net, cfg, model=cfgfile.model)
    csv_path = emit_run_csv(record, outdir / "run.csv")
    if args.json or cfgfile.output.json:
        emit_run_json(record, outdir / "run.json")
    print(
        f"wrote {csv_path}: {len(record)} steps, cumulative resilience "
        f"raw={record.cumulative.raw:.6f} clamped={record.cumulative.clamped:.6f}"
    )
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    cfgfile, master, outdir = _prepare(args)
    net, cfg = _build_run(cfgfile, master, args.ba_classic)
    record = run_scenario(net, cfg, model=cfgfile.model)
    csv_path = emit_compare_csv(record, outdir / "compare.csv")
    if args.json or cfgfile.output.json:
        emit_run_json(record, outdir / "compare_run.json")
    print(
        f"wrote {csv_path}: proposed vs reference baselines over {len(record)} steps"
    )
    return 0


def _sweep_cells(cfgfile: RunConfigFile, master: int, n_nodes: int) -> list[dict]:
    """The twelve sweep cells as picklable work descriptions."""
    cells = []
    index = 0
    base = cfgfile.scenario
    for group, levels in (("attack", ATTACK_LEVELS), ("recovery", RECOVERY_LEVELS)):
        for level, params in levels.items():
            for pattern in SWEEP_PATTERNS:
                if group == "attack":
                    fraction, attack_prob = params
                    cfg = replace(
                        base,
                        attacked_count=int(fraction * n_nodes),
                        attack_prob=attack_prob,
                        recovery_per_step=2,
                        recovery_prob=1.0,
                    )
                else:
                    per_step, recovery_prob = params
                    cfg = replace(
                        base,
                        attacked_count=n_nodes // 2,
                        attack_prob=1.0,
                        recovery_per_step=per_step,
                        recovery_prob=recovery_prob,
                    )
                cfg = replace(
                    cfg,
                    attack_pattern=pattern,
                    recovery_pattern=pattern,
                    max_steps=None,
                    seed=derive_seed(master, SEED_STREAM_SWEEP_BASE + index),
                )
                cells.append(
                    {
                        "name": f"sweep_{group}_{level}_{pattern}",
                        "cfg": cfg,
                    }
                )
                index += 1
    return cells


def _run_sweep_cell(payload: dict) -> str:
    net = build_network(
        payload["topo"], payload["attributes"], seed=payload["attr_seed"]
    )
    record = run_scenario(net, payload["cfg"], model=payload["model"])
    csv_path = emit_run_csv(record, Path(payload["outdir"]) / f"{payload['name']}.csv")
    if payload["json"]:
        emit_run_json(record, Path(payload["outdir"]) / f"{payload['name']}.json")
    return str(csv_path)


def _cmd_sweep(args: argparse.Namespace) -> int:
    if args.parallel < 1:
        raise ConfigError("--parallel must be at least 1")
    cfgfile, master, outdir = _prepare(args)
    topo = build_topology(
        cfgfile.topology,
        seed=derive_seed(master, SEED_STREAM_TOPOLOGY),
        ba_classic=args.ba_classic,
        base_dir=cfgfile.base_dir,
    )
    attr_seed = derive_seed(master, SEED_STREAM_ATTRIBUTES)
    payloads = [
        {
            **cell,
            "topo": topo,
            "attributes": cfgfile.attributes,
            "attr_seed": attr_seed,
            "model": cfgfile.model,
            "outdir": str(outdir),
            "json": bool(args.json or cfgfile.output.json),
        }
        for cell in _sweep_cells(cfgfile, master, topo.n)
    ]
    if args.parallel > 1:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            paths = list(pool.map(_run_sweep_cell, payloads))
    else:
        paths = [_run_sweep_cell(p) for p in payloads]
    for path in paths:
        print(f"wrote {path}")
    print(f"sweep complete: {len(paths)} runs in {outdir}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
