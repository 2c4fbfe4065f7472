"""Command-line front end: check, simulate, diagnose.

One JSON config describes the process and the command parameters; flags only
control output location and overrides.  Exit codes: 0 for a definite result,
1 for usage/config errors, 2 for indeterminate outcomes (including regime
mismatches).  All outputs are byte-deterministic given config and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .conditions import INDET, run_all_checks
from .config import ConfigError, build_spec, load_config, trunc_from_config
from .diagnostics import (
    RegimeError,
    holder_estimate,
    increment_tail_scaling,
    moment_scaling,
    sup_divergence_experiment,
)
from .simulation import (
    ExistenceError,
    PathEngine,
    SimulationError,
    default_truncation,
    simulate_path,
    truncation_error_bound,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INDETERMINATE = 2


def _sanitize(obj):
    """JSON-ready copy: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        obj = float(obj)
    if isinstance(obj, float):
        if math.isnan(obj):
            return None
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    return obj


def _dump_json(obj) -> str:
    return json.dumps(_sanitize(obj), indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_check(args) -> int:
    cfg = load_config(args.config)
    spec = build_spec(cfg)
    check_cfg = cfg.get("check", {})
    alpha = check_cfg.get("alpha", 2.0)
    epsilon = check_cfg.get("epsilon", 0.5)
    reports = run_all_checks(spec, alpha=alpha, epsilon=epsilon)
    doc = {"reports": [r.to_json_dict() for r in reports]}
    _emit(_dump_json(doc), args.out)
    definite = any(r.conclusion != INDET for r in reports)
    return EXIT_OK if definite else EXIT_INDETERMINATE


def _grid_from_config(block: dict) -> np.ndarray:
    g = block["grid"]
    return np.linspace(g["t0"], g["t1"], g["n"])


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    spec = build_spec(cfg)
    block = cfg.get("simulate")
    if block is None:
        raise ConfigError("config lacks a 'simulate' block")
    grid = _grid_from_config(block)
    seed = args.seed if args.seed is not None else block["seed"]
    replicas = block.get("replicas", 1)
    trunc = trunc_from_config(block.get("trunc"))
    if trunc is None:
        trunc = default_truncation(spec)

    engine = PathEngine(spec, grid, trunc, force=args.force)
    bound = truncation_error_bound(spec, trunc)

    if args.summary:
        values = engine.sample_values(seed, replicas)
        replica_means = values.mean(axis=1)
        mean = float(replica_means.mean())
        var = float(values.var(ddof=1)) if values.size > 1 else 0.0
        se = float(replica_means.std(ddof=1) / math.sqrt(replicas)) if replicas > 1 else 0.0
        doc = {
            "replicas": replicas,
            "grid_points": int(grid.size),
            "mean": mean,
            "variance": var,
            "std_error_of_mean": se,
            "per_time_mean": [float(v) for v in values.mean(axis=0)],
            "seed": int(seed),
            "error_bound": bound,
        }
        _emit(_dump_json(doc), args.out)
        return EXIT_OK

    if args.out is None:
        raise ConfigError("simulate without --summary needs --out")
    base = Path(args.out)
    for r in range(replicas):
        path = engine.sample_path(seed, r)
        csv_path = base if (replicas == 1 and base.suffix == ".csv") else \
            base.with_name(base.stem + (f".r{r:04d}.csv" if replicas > 1 else ".csv"))
        csv_path.write_text(path.to_csv_text())
    meta = engine.sample_path(seed, 0).metadata()
    meta["replicas"] = replicas
    meta_path = base.with_name(base.stem + ".meta.json")
    meta_path.write_text(_dump_json(meta))
    return EXIT_OK


def cmd_diagnose(args) -> int:
    cfg = load_config(args.config)
    spec = build_spec(cfg)
    block = cfg.get("diagnose")
    if block is None:
        raise ConfigError("config lacks a 'diagnose' block")
    experiment = block["experiment"]
    seed = args.seed if args.seed is not None else block["seed"]
    trunc = trunc_from_config(block.get("trunc"))
    replicas = block.get("replicas", 100)

    if experiment == "sup_divergence":
        result = sup_divergence_experiment(
            spec, h=block.get("h", 1.0), ladder=block.get("ladder", [100, 1000, 10000]),
            replicas=replicas, seed=seed, trunc=trunc, force=args.force,
            grid_points=block.get("grid_points", 64),
        )
        doc = result.to_json_dict()
    elif experiment in ("increment_tail", "moment_scaling"):
        tg = block.get("t_grid", {"k_min": 1, "k_max": 8})
        t_grid = [2.0 ** -k for k in range(tg["k_max"], tg["k_min"] - 1, -1)]
        alpha = block.get("alpha", 2.0)
        if experiment == "increment_tail":
            fit = increment_tail_scaling(spec, alpha=alpha, y=block.get("y", 0.25),
                                         t_grid=t_grid, replicas=replicas, seed=seed,
                                         trunc=trunc)
        else:
            fit = moment_scaling(spec, alpha=alpha, t_grid=t_grid,
                                 replicas=replicas, seed=seed, trunc=trunc)
        doc = {"experiment": experiment, **fit.to_json_dict()}
    elif experiment == "holder":
        n = block.get("grid_points", 512)
        h = block.get("h", 1.0)
        grid = np.linspace(0.0, h, n)
        if trunc is None:
            trunc = default_truncation(spec)
        path = simulate_path(spec, grid, trunc, seed=seed, force=args.force)
        doc = {"experiment": "holder", "exponent": holder_estimate(path)}
    else:  # unreachable behind the schema
        raise ConfigError(f"unknown experiment {experiment!r}")

    doc["seed"] = int(seed)
    _emit(_dump_json(doc), args.out)
    if doc.get("status") == "indeterminate":
        return EXIT_INDETERMINATE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levymma",
        description="Levy-driven mixed moving averages: condition checks, "
                    "simulation and path diagnostics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run the condition checkers")
    p_check.add_argument("config")
    p_check.add_argument("--out", default=None, help="write the JSON report here")
    p_check.set_defaults(func=cmd_check)

    p_sim = sub.add_parser("simulate", help="simulate sample paths")
    p_sim.add_argument("config")
    p_sim.add_argument("--out", default=None, help="output path base (CSV + meta JSON)")
    p_sim.add_argument("--summary", action="store_true",
                       help="emit replica summary JSON instead of paths")
    p_sim.add_argument("--force", action="store_true",
                       help="simulate even when the existence check fails")
    p_sim.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_sim.set_defaults(func=cmd_simulate)

    p_diag = sub.add_parser("diagnose", help="run a statistical experiment")
    p_diag.add_argument("config")
    p_diag.add_argument("--out", default=None)
    p_diag.add_argument("--force", action="store_true",
                        help="run outside the experiment's natural regime")
    p_diag.add_argument("--seed", type=int, default=None)
    p_diag.set_defaults(func=cmd_diagnose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RegimeError as exc:
        print(f"regime mismatch: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except ExistenceError as exc:
        print(f"existence gate: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except SimulationError as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
