"""Executable checkers for existence, path regularity and irregularity.

Each checker turns an abstract finiteness/growth condition into a structured
``ConditionReport`` carrying numeric evidence.  Conclusions are asserted only
when every premise verdict is decisive; anything else is ``indeterminate``.
Positive conclusions certify a *sufficient* condition.  The single exception
is the stable-jump absolute-continuity branch, where the criterion is known to
be necessary and sufficient, so a divergent verdict yields a negative
conclusion rather than an indeterminate one.

Growth conditions of the form  I(t) <= C t^p  are operationalized as a
least-squares exponent fit of log I against log t over the dyadic grid
t in {2^-10, ..., 2^-1}; the condition passes when the fitted slope reaches
the target exponent minus ``fit_tol`` with R^2 at least 0.99.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kernels import (
    Kernel,
    SupOUKernel,
    TrawlKernel,
    WellBalancedKernel,
    increment_integral,
    min_increment_integral,
    trawl_union_area,
)
from .measures import (
    DependenceMeasure,
    LebesgueMeasure,
    LevyMeasure,
    ParetoTail,
)
from .quadrature import MomentVerdict, fit_loglog, verdict_sum

INF = math.inf

# conclusion labels (stable JSON strings)
CADLAG = "cadlag_modification_exists"
CONTINUOUS = "continuous_modification_exists"
ABS_CONT = "absolutely_continuous_paths"
NO_ABS_CONT = "no_absolutely_continuous_paths"
NO_CADLAG = "no_cadlag_modification"
EXISTS = "existence_holds"
EXISTS_NOT = "existence_fails"
INDET = "indeterminate"

FIT_T_GRID = tuple(2.0**-k for k in range(1, 11))
EPS_SCAN = (1.0, 0.5, 0.1, 0.01)
DEFAULT_SLACK = 0.01
DEFAULT_ETA_CAP = 10.0


@dataclass(frozen=True)
class MMASpec:
    """Full process specification: kernel, jump measure, mixing measure, drift."""

    kernel: Kernel
    levy: LevyMeasure
    pi: DependenceMeasure
    drift: float = 0.0

    def __post_init__(self):
        if isinstance(self.kernel, TrawlKernel) and not isinstance(self.pi, LebesgueMeasure):
            raise ValueError("trawl processes mix over Lebesgue measure on [0, inf)")

    def to_config(self) -> dict:
        return {
            "kernel": self.kernel.to_config(),
            "levy_measure": self.levy.to_config(),
            "dependence_measure": self.pi.to_config(),
            "drift": self.drift,
        }


@dataclass(frozen=True)
class SubResult:
    """One named sub-condition inside a report: a verdict or an exponent fit."""

    id: str
    status: str
    value: float | None = None
    growth_exponent: float | None = None
    slope: float | None = None
    r_squared: float | None = None
    threshold: float | None = None

    @staticmethod
    def from_verdict(sub_id: str, v: MomentVerdict) -> "SubResult":
        return SubResult(sub_id, v.status, v.value, v.growth_exponent)

    @staticmethod
    def from_fit(sub_id: str, passed: bool, slope: float, r2: float,
                 threshold: float) -> "SubResult":
        return SubResult(sub_id, "pass" if passed else "fail",
                         slope=slope, r_squared=r2, threshold=threshold)

    def to_json_dict(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "value": _jsonable(self.value),
            "growth_exponent": _jsonable(self.growth_exponent),
            "slope": _jsonable(self.slope),
            "r_squared": _jsonable(self.r_squared),
            "threshold": _jsonable(self.threshold),
        }


@dataclass(frozen=True)
class ConditionReport:
    condition_id: str
    conclusion: str
    verdict: MomentVerdict
    params: dict = field(default_factory=dict)
    subs: tuple[SubResult, ...] = ()

    def sub(self, sub_id: str) -> SubResult:
        for s in self.subs:
            if s.id == sub_id:
                return s
        raise KeyError(sub_id)

    def to_json_dict(self) -> dict:
        return {
            "condition_id": self.condition_id,
            "conclusion": self.conclusion,
            "verdict": self.verdict.to_json_dict(),
            "params": {k: _jsonable(v) for k, v in sorted(self.params.items())},
            "subs": [s.to_json_dict() for s in self.subs],
        }


def _jsonable(v):
    if v is None or isinstance(v, (bool, str, int)):
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return float(v)


def _mass_verdict(mass: float) -> MomentVerdict:
    if math.isinf(mass):
        return MomentVerdict.divergent()
    return MomentVerdict.finite(mass)


# ---------------------------------------------------------------------------
# The envelope tail functional: integral of (g(x,-u) z  wedge 1) over big jumps
# ---------------------------------------------------------------------------


def _log_tail(lm: LevyMeasure, r: float) -> MomentVerdict:
    if hasattr(lm, "log_tail"):
        try:
            return MomentVerdict.finite(lm.log_tail(r))  # type: ignore[attr-defined]
        except NotImplementedError:
            pass
    return lm.log_moment(max(r, 1.0))


def envelope_tail_mass(spec: MMASpec) -> tuple[MomentVerdict, list[SubResult]]:
    """Expected (capped) weight of big jumps seen through the envelope.

    Finiteness is the gate for the big-jump part of the process being a
    locally finite, well-behaved shot-noise sum.
    """
    lm, dm, kernel = spec.levy, spec.pi, spec.kernel
    lam_tail = lm.tail_mass(1.0)
    if isinstance(kernel, TrawlKernel):
        area = trawl_union_area(kernel.trawl, 1.0)
        v = _mass_verdict(lam_tail * area if not math.isinf(area) else INF)
        return v, [SubResult.from_verdict("trawl_window_area", _mass_verdict(area))]
    log_tail = _log_tail(lm, 1.0)
    if isinstance(kernel, WellBalancedKernel) or (
        isinstance(kernel, SupOUKernel) and kernel.kappa == 0.0
    ):
        sides = 2.0 if isinstance(kernel, WellBalancedKernel) else 1.0
        mass = _mass_verdict(dm.total_mass())
        inv = dm.moment(-1.0)
        subs = [
            SubResult.from_verdict("mixing_total_mass", mass),
            SubResult.from_verdict("inverse_mixing_moment", inv),
            SubResult.from_verdict("log_jump_moment", log_tail),
        ]
        if mass.is_finite and inv.is_finite and log_tail.is_finite:
            val = mass.value * lam_tail + sides * inv.value * (lam_tail + log_tail.value)
            return MomentVerdict.finite(val), subs
        if mass.is_divergent or inv.is_divergent or log_tail.is_divergent:
            return MomentVerdict.divergent(), subs
        return MomentVerdict.inconclusive(), subs
    # power-weighted kernel: integrate the exact per-x big-jump weight
    kappa = kernel.kappa
    box = _pw_bigjump_integrand(lm, kappa, include_box=True)
    v = dm.integrate(box)
    return v, [SubResult.from_verdict("log_jump_moment", log_tail)]


def _pw_bigjump_integrand(lm: LevyMeasure, kappa: float, include_box: bool):
    """Per-x weight of big jumps under the power-weighted kernel.

    tail part: x^{kappa-1} * int_{(1,T]} z dlambda
               + x^{-1} [ (1 + kappa log x) tail(T) + int_{(T,inf)} log z dlambda ],
    with T = max(1, x^{-kappa}); the box part adds the time-zero slab
    int (x^kappa z wedge 1) over z > 1.
    """

    def weight(x: float) -> float:
        T = max(1.0, x**-kappa)
        p1 = lm.moment(1.0, 1.0, T).value if T > 1.0 else 0.0
        tail_T = lm.tail_mass(T)
        lt = _log_tail(lm, T)
        if not lt.is_finite:
            return INF
        out = x ** (kappa - 1.0) * p1 + (
            (1.0 + kappa * math.log(x)) * tail_T + lt.value
        ) / x
        if include_box:
            out += x**kappa * p1 + tail_T
        return out

    return weight


# ---------------------------------------------------------------------------
# Existence
# ---------------------------------------------------------------------------


def check_existence(spec: MMASpec) -> ConditionReport:
    """Family-specific integrability conditions for the process to exist.

    supOU and well-balanced supOU: finite inverse mixing moment and finite
    log jump moment (necessary and sufficient).  Trawl: integrable trawl
    function.  Power-weighted: finiteness of the joint big-jump weight
    (necessary and sufficient for the big-jump part), mixing-moment bounds for
    the compensated small jumps, and a finite drift mass when drift is present.
    """
    lm, dm, kernel = spec.levy, spec.pi, spec.kernel
    params: dict = {}
    if isinstance(kernel, TrawlKernel):
        total = kernel.trawl.total()
        v = _mass_verdict(total)
        subs = [SubResult.from_verdict("trawl_integral", v)]
        concl = EXISTS if v.is_finite else EXISTS_NOT
        return ConditionReport("existence", concl, v, params, tuple(subs))

    if isinstance(kernel, WellBalancedKernel) or (
        isinstance(kernel, SupOUKernel) and kernel.kappa == 0.0
    ):
        inv = dm.moment(-1.0)
        logm = lm.log_moment()
        subs = [
            SubResult.from_verdict("inverse_mixing_moment", inv),
            SubResult.from_verdict("log_jump_moment", logm),
        ]
        combined = verdict_sum(inv, logm)
        if inv.is_finite and logm.is_finite:
            concl = EXISTS
        elif inv.is_divergent or logm.is_divergent:
            concl = EXISTS_NOT
        else:
            concl = INDET
        return ConditionReport("existence", concl, combined, params, tuple(subs))

    # power-weighted
    kappa = kernel.kappa
    bg = lm.bg_indices(DEFAULT_SLACK, DEFAULT_ETA_CAP)
    params.update({"kappa": kappa, "beta": bg.beta, "eta": bg.eta})
    big = dm.integrate(_pw_bigjump_integrand(lm, kappa, include_box=False))
    small0 = dm.moment(2.0 * kappa - 1.0, 0.0, 1.0)
    small_inf = dm.moment(max(bg.beta, 1.0) * kappa - 1.0, 1.0, INF)
    subs = [
        SubResult.from_verdict("big_jump_weight", big),
        SubResult.from_verdict("small_jump_mixing_origin", small0),
        SubResult.from_verdict("small_jump_mixing_tail", small_inf),
    ]
    if big.is_inconclusive:
        # sufficient fallback: log jump moment plus log-weighted mixing moments
        logm = lm.log_moment()
        eta1 = min(bg.eta, 1.0)
        lw0 = dm.log_weighted_moment(
            eta1 * kappa - 1.0, "loginvx" if bg.eta > 0 else "none", 0.0, 1.0
        )
        lw1 = dm.log_weighted_moment(
            bg.beta * kappa - 1.0, "logx" if bg.beta == 0.0 else "none", 1.0, INF
        )
        subs += [
            SubResult.from_verdict("log_jump_moment", logm),
            SubResult.from_verdict("mixing_logweight_origin", lw0),
            SubResult.from_verdict("mixing_logweight_tail", lw1),
        ]
        if logm.is_finite and lw0.is_finite and lw1.is_finite:
            big = verdict_sum(lw0, lw1)
    drift_ok = True
    if spec.drift != 0.0:
        drift_mass = dm.moment(kappa - 1.0)
        subs.append(SubResult.from_verdict("drift_mass", drift_mass))
        drift_ok = drift_mass.is_finite
    combined = verdict_sum(big, small0, small_inf)
    if big.is_divergent:
        concl = EXISTS_NOT
    elif big.is_finite and small0.is_finite and small_inf.is_finite and drift_ok:
        concl = EXISTS
    else:
        concl = INDET
    return ConditionReport("existence", concl, combined, params, tuple(subs))


# ---------------------------------------------------------------------------
# Cadlag / continuous modification via growth-exponent fits
# ---------------------------------------------------------------------------


def _fit_growth(values: list[MomentVerdict], t_grid, threshold: float,
                sub_id: str) -> tuple[SubResult, bool, bool]:
    """Fit log I(t) ~ slope log t; returns (sub, passed, decisive)."""
    if any(not v.is_finite for v in values):
        status = "divergent" if any(v.is_divergent for v in values) else "inconclusive"
        return SubResult(sub_id, status, threshold=threshold), False, False
    ys = np.array([v.value for v in values])
    if np.any(ys <= 0):
        return SubResult(sub_id, "inconclusive", threshold=threshold), False, False
    slope, _, r2 = fit_loglog(np.array(t_grid), ys)
    passed = slope >= threshold and r2 >= 0.99
    decisive = r2 >= 0.99
    return SubResult.from_fit(sub_id, passed, slope, r2, threshold), passed, decisive


def check_cadlag(spec: MMASpec, alpha: float = 2.0, epsilon: float = 0.5,
                 fit_tol: float = 0.05) -> ConditionReport:
    """Sufficient conditions for a cadlag modification.

    Premises: finite alpha-moment of small jumps, finite envelope tail mass,
    single-increment integral growing at least like t^{1/2 + eps/2}, and the
    minimum-increment integral growing at least like t^{1 + eps}.
    """
    params = {"alpha": alpha, "epsilon": epsilon, "fit_tol": fit_tol,
              "precondition_failed": False}
    small = spec.levy.moment(alpha, 0.0, 1.0)
    subs = [SubResult.from_verdict("small_jump_alpha_moment", small)]
    if not small.is_finite:
        params["precondition_failed"] = True
        return ConditionReport("cadlag", INDET, small, params, tuple(subs))

    env, env_subs = envelope_tail_mass(spec)
    subs.append(SubResult.from_verdict("envelope_tail_mass", env))
    subs.extend(env_subs)
    if not env.is_finite:
        return ConditionReport("cadlag", INDET, env, params, tuple(subs))

    single = [increment_integral(spec.kernel, spec.pi, 0.0, t, alpha) for t in FIT_T_GRID]
    sub1, ok1, dec1 = _fit_growth(single, FIT_T_GRID, 0.5 + epsilon / 2.0 - fit_tol,
                                  "single_increment_growth")
    subs.append(sub1)
    pairs = [min_increment_integral(spec.kernel, spec.pi, t / 2.0, t, alpha)
             for t in FIT_T_GRID]
    sub2, ok2, dec2 = _fit_growth(pairs, FIT_T_GRID, 1.0 + epsilon - fit_tol,
                                  "min_increment_growth")
    subs.append(sub2)

    concl = CADLAG if (ok1 and ok2) else INDET
    return ConditionReport("cadlag", concl, env, params, tuple(subs))


def check_continuous(spec: MMASpec, alpha: float = 2.0, epsilon: float = 0.5,
                     fit_tol: float = 0.05) -> ConditionReport:
    """Sufficient conditions for a continuous modification (continuous kernels)."""
    if not spec.kernel.continuous:
        raise ValueError("continuity check applies to continuous kernels only")
    params = {"alpha": alpha, "epsilon": epsilon, "fit_tol": fit_tol,
              "precondition_failed": False}
    small = spec.levy.moment(alpha, 0.0, 1.0)
    subs = [SubResult.from_verdict("small_jump_alpha_moment", small)]
    if not small.is_finite:
        params["precondition_failed"] = True
        return ConditionReport("continuous", INDET, small, params, tuple(subs))
    env, env_subs = envelope_tail_mass(spec)
    subs.append(SubResult.from_verdict("envelope_tail_mass", env))
    subs.extend(env_subs)
    if not env.is_finite:
        return ConditionReport("continuous", INDET, env, params, tuple(subs))
    single = [increment_integral(spec.kernel, spec.pi, 0.0, t, alpha) for t in FIT_T_GRID]
    sub1, ok1, _ = _fit_growth(single, FIT_T_GRID, 1.0 + epsilon - fit_tol,
                               "increment_growth")
    subs.append(sub1)
    concl = CONTINUOUS if ok1 else INDET
    return ConditionReport("continuous", concl, env, params, tuple(subs))


def check_corollary_fastpath(spec: MMASpec,
                             eps_scan: tuple[float, ...] = EPS_SCAN) -> ConditionReport:
    """Directly verifiable sufficient conditions per kernel family.

    Scans a fixed ladder of epsilon values and keeps the largest one for which
    the family's mixing-tail moment is finite.
    """
    lm, dm, kernel = spec.levy, spec.pi, spec.kernel
    params: dict = {"epsilon_scan": list(eps_scan)}

    if isinstance(kernel, TrawlKernel):
        tr = kernel.trawl
        total = _mass_verdict(tr.total())
        bounded = _mass_verdict(tr.a0 if not math.isinf(tr.a0) else INF)
        subs = [
            SubResult.from_verdict("trawl_integral", total),
            SubResult.from_verdict("trawl_bounded_at_zero", bounded),
            SubResult("holder_metadata", "pass" if tr.holder is not None else "fail"),
        ]
        if tr.holder is not None and total.is_finite and bounded.is_finite:
            params["holder_delta"] = tr.holder.delta
            return ConditionReport("fastpath", CADLAG, total, params, tuple(subs))
        return ConditionReport("fastpath", INDET, total, params, tuple(subs))

    if isinstance(kernel, WellBalancedKernel) or (
        isinstance(kernel, SupOUKernel) and kernel.kappa == 0.0
    ):
        inv = dm.moment(-1.0)
        logm = lm.log_moment()
        subs = [
            SubResult.from_verdict("inverse_mixing_moment", inv),
            SubResult.from_verdict("log_jump_moment", logm),
        ]
        chosen, tail = _scan_eps(dm, 0.0, eps_scan)
        subs.append(SubResult.from_verdict("mixing_tail_moment", tail))
        params["epsilon"] = chosen
        verdict = verdict_sum(inv, logm, tail)
        if inv.is_finite and logm.is_finite and tail.is_finite and chosen is not None:
            concl = CONTINUOUS if isinstance(kernel, WellBalancedKernel) else CADLAG
            return ConditionReport("fastpath", concl, verdict, params, tuple(subs))
        return ConditionReport("fastpath", INDET, verdict, params, tuple(subs))

    kappa = kernel.kappa
    bg = lm.bg_indices(DEFAULT_SLACK, DEFAULT_ETA_CAP)
    params.update({"kappa": kappa, "beta": bg.beta, "eta": bg.eta})
    logm = lm.log_moment()
    eta1 = min(bg.eta, 1.0)
    lw0 = dm.log_weighted_moment(eta1 * kappa - 1.0,
                                 "loginvx" if bg.eta > 0 else "none", 0.0, 1.0)
    lw1 = dm.log_weighted_moment(bg.beta * kappa - 1.0,
                                 "logx" if bg.beta == 0.0 else "none", 1.0, INF)
    subs = [
        SubResult.from_verdict("log_jump_moment", logm),
        SubResult.from_verdict("mixing_logweight_origin", lw0),
        SubResult.from_verdict("mixing_logweight_tail", lw1),
    ]
    chosen, tail = _scan_eps(dm, kappa, eps_scan)
    subs.append(SubResult.from_verdict("mixing_tail_moment", tail))
    params["epsilon"] = chosen
    verdict = verdict_sum(logm, lw0, lw1, tail)
    if all(v.is_finite for v in (logm, lw0, lw1, tail)) and chosen is not None:
        return ConditionReport("fastpath", CADLAG, verdict, params, tuple(subs))
    return ConditionReport("fastpath", INDET, verdict, params, tuple(subs))


def _scan_eps(dm: DependenceMeasure, kappa: float, eps_scan):
    last = MomentVerdict.inconclusive()
    for eps in eps_scan:
        v = dm.moment(kappa + eps, 1.0, INF)
        last = v
        if v.is_finite:
            return eps, v
    return None, last


def check_abs_continuity(spec: MMASpec) -> ConditionReport:
    """Absolute continuity of well-balanced supOU paths.

    The general sufficient condition integrates z (1 wedge z x) over small
    jumps against the mixing measure.  For a pure power-tail jump measure with
    stability index in (1, 2), the tail mixing moment of order alpha - 1 is
    necessary and sufficient, so both conclusions become available.
    """
    if not isinstance(spec.kernel, WellBalancedKernel):
        raise ValueError("absolute-continuity check applies to the well-balanced kernel")
    lm, dm = spec.levy, spec.pi
    params: dict = {}

    def inner(x: float) -> float:
        cut = min(1.0, 1.0 / x)
        quad = lm.moment(2.0, 0.0, cut)
        lin = lm.moment(1.0, cut, 1.0)
        if not (quad.is_finite and lin.is_finite):
            return INF
        return x * quad.value + lin.value

    general = dm.integrate(inner)
    subs = [SubResult.from_verdict("small_jump_weight", general)]

    if isinstance(lm, ParetoTail) and lm.cutoff == 0.0 and 1.0 < lm.alpha < 2.0:
        params["stable_alpha"] = lm.alpha
        iff = dm.moment(lm.alpha - 1.0, 1.0, INF)
        subs.append(SubResult.from_verdict("stable_tail_iff", iff))
        if iff.is_finite:
            concl = ABS_CONT
        elif iff.is_divergent:
            concl = NO_ABS_CONT
        else:
            concl = INDET
        return ConditionReport("abs_continuity", concl, iff, params, tuple(subs))

    concl = ABS_CONT if general.is_finite else INDET
    return ConditionReport("abs_continuity", concl, general, params, tuple(subs))


def check_noncadlag(spec: MMASpec) -> ConditionReport:
    """Supremum blow-up: conditions under which no cadlag modification exists.

    All branches additionally require the jump measure to have unbounded
    support; without it the checker does not conclude.
    """
    lm, dm, kernel = spec.levy, spec.pi, spec.kernel
    params = {"jump_support_unbounded": lm.unbounded_support}
    if isinstance(kernel, TrawlKernel):
        area = trawl_union_area(kernel.trawl, 1.0)
        head = _mass_verdict(area)
        subs = [SubResult.from_verdict("trawl_window_area", head)]
    elif isinstance(kernel, SupOUKernel) and kernel.kappa > 0.0:
        params["kappa"] = kernel.kappa
        head = dm.moment(kernel.kappa, 1.0, INF)
        subs = [SubResult.from_verdict("weighted_mixing_tail", head)]
    else:
        head = _mass_verdict(dm.total_mass())
        subs = [SubResult.from_verdict("mixing_total_mass", head)]
    if head.is_divergent and lm.unbounded_support:
        return ConditionReport("noncadlag", NO_CADLAG, head, params, tuple(subs))
    if head.is_inconclusive:
        return ConditionReport("noncadlag", INDET, head, params, tuple(subs))
    return ConditionReport("noncadlag", INDET, head, params, tuple(subs))


def run_all_checks(spec: MMASpec, alpha: float = 2.0, epsilon: float = 0.5) -> list[ConditionReport]:
    """The family-appropriate battery, in a stable order."""
    reports = [check_existence(spec), check_corollary_fastpath(spec)]
    if spec.kernel.continuous:
        reports.append(check_continuous(spec, alpha, epsilon))
        reports.append(check_abs_continuity(spec))
    else:
        reports.append(check_cadlag(spec, alpha, epsilon))
    reports.append(check_noncadlag(spec))
    return reports
