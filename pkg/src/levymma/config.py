"""Config parsing: one JSON document per run, schema-validated, no unknown keys."""

from __future__ import annotations

import json
import math
from pathlib import Path

import jsonschema

from .conditions import MMASpec
from .kernels import kernel_from_config
from .measures import (
    AtomicDependence,
    AtomicLevy,
    CompoundPoisson,
    DependenceMeasure,
    ExpDensity,
    ExponentialJump,
    FixedJump,
    GammaDensity,
    GammaLevy,
    LebesgueMeasure,
    LevyMeasure,
    ParetoTail,
    PowerDensity,
    TemperedStable,
)
from .schemas import CONFIG_SCHEMA
from .simulation import TruncationParams


class ConfigError(ValueError):
    pass


def _num(v) -> float:
    return math.inf if v == "inf" else float(v)


def load_config(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    validate_config(cfg)
    return cfg


def validate_config(cfg: dict) -> None:
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config rejected: {exc.message}") from exc


def levy_from_config(cfg: dict) -> LevyMeasure:
    family = cfg["family"]
    try:
        if family == "pareto_tail":
            return ParetoTail(alpha=cfg["alpha"], cutoff=cfg.get("cutoff", 0.0))
        if family == "gamma":
            return GammaLevy(shape=cfg["shape"], rate=cfg["rate"])
        if family == "compound_poisson":
            j = cfg["jump"]
            jump = FixedJump(j["value"]) if j["kind"] == "fixed" else ExponentialJump(j["rate"])
            return CompoundPoisson(rate=cfg["rate"], jump=jump)
        if family == "tempered_stable":
            return TemperedStable(alpha=cfg["alpha"], tempering=cfg["tempering"])
        if family == "atomic":
            return AtomicLevy(atoms=tuple((z, m) for z, m in cfg["atoms"]))
    except ValueError as exc:
        raise ConfigError(f"bad levy_measure: {exc}") from exc
    raise ConfigError(f"unknown levy_measure family {family!r}")


def dependence_from_config(cfg: dict) -> DependenceMeasure:
    family = cfg["family"]
    try:
        if family == "exp_density":
            return ExpDensity(rate=cfg["rate"])
        if family == "gamma_density":
            return GammaDensity(shape=cfg["shape"], rate=cfg["rate"])
        if family == "power_density":
            return PowerDensity(exponent=cfg["exponent"], lo=cfg.get("lo", 0.0),
                                hi=_num(cfg.get("hi", "inf")))
        if family == "lebesgue":
            return LebesgueMeasure(upper=_num(cfg.get("upper", "inf")))
        if family == "atomic":
            return AtomicDependence(atoms=tuple((x, m) for x, m in cfg["atoms"]))
    except ValueError as exc:
        raise ConfigError(f"bad dependence_measure: {exc}") from exc
    raise ConfigError(f"unknown dependence_measure family {family!r}")


def build_spec(cfg: dict) -> MMASpec:
    try:
        kernel = kernel_from_config(cfg["kernel"])
    except ValueError as exc:
        raise ConfigError(f"bad kernel: {exc}") from exc
    levy = levy_from_config(cfg["levy_measure"])
    pi = dependence_from_config(cfg["dependence_measure"])
    try:
        return MMASpec(kernel=kernel, levy=levy, pi=pi, drift=cfg.get("drift", 0.0))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def trunc_from_config(cfg: dict | None) -> TruncationParams | None:
    if cfg is None:
        return None
    kwargs = {}
    if "small_jump_eps" in cfg:
        kwargs["small_jump_eps"] = cfg["small_jump_eps"]
    if "past_window" in cfg:
        kwargs["past_window"] = cfg["past_window"]
    if "v_bound" in cfg:
        kwargs["v_bound"] = _num(cfg["v_bound"])
    if "gaussian_refine" in cfg:
        kwargs["gaussian_refine"] = cfg["gaussian_refine"]
    try:
        return TruncationParams(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"bad trunc block: {exc}") from exc
