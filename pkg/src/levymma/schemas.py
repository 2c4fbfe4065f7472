"""Published JSON schemas for configs and emitted reports.

The dictionaries here are the single source of truth; the files under
``schemas/`` at the repository root are generated from them (``python -m
levymma.schemas schemas/``) and every document the CLI emits re-validates
against them.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

_NUM_OR_INF = {"oneOf": [{"type": "number"}, {"const": "inf"}]}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}
_NONNEG = {"type": "number", "minimum": 0}
_ATOMS = {
    "type": "array",
    "minItems": 1,
    "items": {
        "type": "array",
        "prefixItems": [_POSITIVE, _POSITIVE],
        "minItems": 2,
        "maxItems": 2,
    },
}

_HOLDER = {
    "type": "object",
    "additionalProperties": False,
    "required": ["delta", "const", "t0"],
    "properties": {
        "delta": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
        "const": _POSITIVE,
        "t0": _POSITIVE,
    },
}

_TRAWL = {
    "oneOf": [
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["form", "rate"],
            "properties": {
                "form": {"const": "exp_decay"},
                "rate": _POSITIVE,
                "a0": _POSITIVE,
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["form", "exponent"],
            "properties": {
                "form": {"const": "power_decay"},
                "exponent": {"type": "number", "exclusiveMinimum": 1},
                "scale": _POSITIVE,
                "a0": _POSITIVE,
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["form", "q"],
            "properties": {
                "form": {"const": "singular_power"},
                "q": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
                "support": _POSITIVE,
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["form", "s_grid", "a_values"],
            "properties": {
                "form": {"const": "tabulated"},
                "s_grid": {"type": "array", "minItems": 2, "items": _NONNEG},
                "a_values": {"type": "array", "minItems": 2, "items": _NONNEG},
                "holder": {"oneOf": [_HOLDER, {"type": "null"}]},
            },
        },
    ]
}

_KERNEL = {
    "oneOf": [
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family"],
            "properties": {"family": {"const": "supou"}},
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family"],
            "properties": {"family": {"const": "well_balanced"}},
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "kappa"],
            "properties": {"family": {"const": "power_weighted"}, "kappa": _POSITIVE},
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "trawl"],
            "properties": {"family": {"const": "trawl"}, "trawl": _TRAWL},
        },
    ]
}

_LEVY = {
    "oneOf": [
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "alpha"],
            "properties": {
                "family": {"const": "pareto_tail"},
                "alpha": _POSITIVE,
                "cutoff": _NONNEG,
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "shape", "rate"],
            "properties": {
                "family": {"const": "gamma"},
                "shape": _POSITIVE,
                "rate": _POSITIVE,
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "rate", "jump"],
            "properties": {
                "family": {"const": "compound_poisson"},
                "rate": _POSITIVE,
                "jump": {
                    "oneOf": [
                        {
                            "type": "object",
                            "additionalProperties": False,
                            "required": ["kind", "value"],
                            "properties": {"kind": {"const": "fixed"}, "value": _POSITIVE},
                        },
                        {
                            "type": "object",
                            "additionalProperties": False,
                            "required": ["kind", "rate"],
                            "properties": {"kind": {"const": "exponential"}, "rate": _POSITIVE},
                        },
                    ]
                },
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "alpha", "tempering"],
            "properties": {
                "family": {"const": "tempered_stable"},
                "alpha": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 2},
                "tempering": _NONNEG,
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "atoms"],
            "properties": {"family": {"const": "atomic"}, "atoms": _ATOMS},
        },
    ]
}

_DEPENDENCE = {
    "oneOf": [
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "rate"],
            "properties": {"family": {"const": "exp_density"}, "rate": _POSITIVE},
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "shape", "rate"],
            "properties": {
                "family": {"const": "gamma_density"},
                "shape": _POSITIVE,
                "rate": _POSITIVE,
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "exponent"],
            "properties": {
                "family": {"const": "power_density"},
                "exponent": {"type": "number"},
                "lo": _NONNEG,
                "hi": _NUM_OR_INF,
            },
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family"],
            "properties": {"family": {"const": "lebesgue"}, "upper": _NUM_OR_INF},
        },
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["family", "atoms"],
            "properties": {"family": {"const": "atomic"}, "atoms": _ATOMS},
        },
    ]
}

_TRUNC = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "small_jump_eps": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
        "past_window": _POSITIVE,
        "v_bound": _NUM_OR_INF,
        "gaussian_refine": {"type": "boolean"},
    },
}

CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "levymma/config",
    "title": "levymma run configuration",
    "type": "object",
    "additionalProperties": False,
    "required": ["kernel", "levy_measure", "dependence_measure"],
    "properties": {
        "kernel": _KERNEL,
        "levy_measure": _LEVY,
        "dependence_measure": _DEPENDENCE,
        "drift": {"type": "number"},
        "check": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "alpha": {"type": "number", "minimum": 1, "maximum": 2},
                "epsilon": _POSITIVE,
            },
        },
        "simulate": {
            "type": "object",
            "additionalProperties": False,
            "required": ["grid", "seed"],
            "properties": {
                "grid": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["t0", "t1", "n"],
                    "properties": {
                        "t0": {"type": "number"},
                        "t1": {"type": "number"},
                        "n": {"type": "integer", "minimum": 1},
                    },
                },
                "trunc": _TRUNC,
                "seed": {"type": "integer"},
                "replicas": {"type": "integer", "minimum": 1},
            },
        },
        "diagnose": {
            "type": "object",
            "additionalProperties": False,
            "required": ["experiment", "seed"],
            "properties": {
                "experiment": {
                    "enum": [
                        "sup_divergence",
                        "increment_tail",
                        "moment_scaling",
                        "holder",
                    ]
                },
                "seed": {"type": "integer"},
                "replicas": {"type": "integer", "minimum": 1},
                "h": _POSITIVE,
                "ladder": {"type": "array", "minItems": 1, "items": _POSITIVE},
                "y": _POSITIVE,
                "alpha": {"type": "number", "minimum": 1, "maximum": 2},
                "t_grid": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["k_min", "k_max"],
                    "properties": {
                        "k_min": {"type": "integer", "minimum": 0},
                        "k_max": {"type": "integer", "minimum": 1},
                    },
                },
                "grid_points": {"type": "integer", "minimum": 2},
                "trunc": _TRUNC,
            },
        },
    },
}

_VERDICT = {
    "type": "object",
    "additionalProperties": False,
    "required": ["status", "value", "growth_exponent", "evidence"],
    "properties": {
        "status": {"enum": ["finite", "divergent", "inconclusive"]},
        "value": {"type": ["number", "null"]},
        "growth_exponent": {"type": ["number", "null"]},
        "evidence": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "number"},
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
}

_SUB_RESULT = {
    "type": "object",
    "additionalProperties": False,
    "required": ["id", "status"],
    "properties": {
        "id": {"type": "string"},
        "status": {"enum": ["finite", "divergent", "inconclusive", "pass", "fail"]},
        "value": {"type": ["number", "null"]},
        "growth_exponent": {"type": ["number", "null"]},
        "slope": {"type": ["number", "null"]},
        "r_squared": {"type": ["number", "null"]},
        "threshold": {"type": ["number", "null"]},
    },
}

CONDITION_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "levymma/condition_report",
    "title": "single condition report",
    "type": "object",
    "additionalProperties": False,
    "required": ["condition_id", "conclusion", "verdict", "params", "subs"],
    "properties": {
        "condition_id": {"type": "string"},
        "conclusion": {
            "enum": [
                "cadlag_modification_exists",
                "continuous_modification_exists",
                "absolutely_continuous_paths",
                "no_absolutely_continuous_paths",
                "no_cadlag_modification",
                "existence_holds",
                "existence_fails",
                "indeterminate",
            ]
        },
        "verdict": _VERDICT,
        "params": {
            "type": "object",
            "additionalProperties": {
                "type": ["number", "string", "boolean", "null", "array"]
            },
        },
        "subs": {"type": "array", "items": _SUB_RESULT},
    },
}

CHECK_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "levymma/check_report",
    "title": "output of the check command",
    "type": "object",
    "additionalProperties": False,
    "required": ["reports"],
    "properties": {
        "reports": {
            "type": "array",
            "items": {k: v for k, v in CONDITION_REPORT_SCHEMA.items()
                      if not k.startswith("$")},
        }
    },
}

SIMULATE_META_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "levymma/simulate_meta",
    "title": "sidecar metadata for a simulated path",
    "type": "object",
    "additionalProperties": False,
    "required": ["seed", "trunc", "error_bound", "drift_constant", "grid_points",
                 "t0", "t1"],
    "properties": {
        "seed": {
            "oneOf": [
                {"type": "integer"},
                {"type": "array", "items": {"type": "integer"}},
            ]
        },
        "trunc": {
            "type": "object",
            "additionalProperties": False,
            "required": ["small_jump_eps", "past_window", "v_bound", "gaussian_refine"],
            "properties": {
                "small_jump_eps": {"type": "number"},
                "past_window": {"type": "number"},
                "v_bound": _NUM_OR_INF,
                "gaussian_refine": {"type": "boolean"},
            },
        },
        "error_bound": _NUM_OR_INF,
        "drift_constant": {"type": "number"},
        "grid_points": {"type": "integer"},
        "t0": {"type": "number"},
        "t1": {"type": "number"},
        "replicas": {"type": "integer"},
    },
}

SIMULATE_SUMMARY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "levymma/simulate_summary",
    "title": "replica summary of simulated paths",
    "type": "object",
    "additionalProperties": False,
    "required": ["replicas", "grid_points", "mean", "variance", "std_error_of_mean"],
    "properties": {
        "replicas": {"type": "integer"},
        "grid_points": {"type": "integer"},
        "mean": {"type": "number"},
        "variance": {"type": "number"},
        "std_error_of_mean": {"type": "number"},
        "per_time_mean": {"type": "array", "items": {"type": "number"}},
        "seed": {"type": "integer"},
        "error_bound": _NUM_OR_INF,
    },
}

DIAGNOSE_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "levymma/diagnose_report",
    "title": "output of the diagnose command",
    "type": "object",
    "additionalProperties": False,
    "required": ["experiment", "seed"],
    "properties": {
        "experiment": {
            "enum": ["sup_divergence", "increment_tail", "moment_scaling", "holder"]
        },
        "seed": {"type": "integer"},
        "ladder": {"type": "array", "items": {"type": "number"}},
        "medians": {"type": "array", "items": {"type": "number"}},
        "iqrs": {"type": "array", "items": {"type": "number"}},
        "point_max_medians": {"type": "array", "items": {"type": "number"}},
        "monotone_increasing": {"type": "boolean"},
        "last_increase": {"type": "number"},
        "replicas": {"type": "integer"},
        "h": {"type": "number"},
        "sup_dominates_point_max": {"type": "boolean"},
        "t": {"type": "array", "items": {"type": "number"}},
        "estimate": {"type": "array", "items": {"type": "number"}},
        "slope": {"type": ["number", "null"]},
        "ci_low": {"type": ["number", "null"]},
        "ci_high": {"type": ["number", "null"]},
        "r_squared": {"type": ["number", "null"]},
        "status": {"type": "string"},
        "reference": {"type": "object"},
        "extras": {"type": "object"},
        "exponent": {"type": "number"},
    },
}

ALL_SCHEMAS = {
    "config": CONFIG_SCHEMA,
    "condition_report": CONDITION_REPORT_SCHEMA,
    "check_report": CHECK_REPORT_SCHEMA,
    "simulate_meta": SIMULATE_META_SCHEMA,
    "simulate_summary": SIMULATE_SUMMARY_SCHEMA,
    "diagnose_report": DIAGNOSE_REPORT_SCHEMA,
}


def write_schemas(directory) -> list[Path]:
    out = []
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, schema in sorted(ALL_SCHEMAS.items()):
        path = directory / f"{name}.schema.json"
        path.write_text(json.dumps(schema, indent=2, sort_keys=True) + "\n")
        out.append(path)
    return out


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else "schemas"
    for p in write_schemas(target):
        print(p)
