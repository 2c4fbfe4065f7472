"""Improper-integral evaluation with an explicit finite/divergent/inconclusive verdict.

Conditions on measures come as "is this integral finite" questions.  A numeric
artifact needs a decision procedure, not just a number: integrals are evaluated
over nested domains (decade boundaries 10^k towards infinity and 10^-k towards
an integrable-or-not origin) and the sequence of partial integrals is classified
by growth.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

FINITE = "finite"
DIVERGENT = "divergent"
INCONCLUSIVE = "inconclusive"

# Decision-rule constants: partial integrals that keep growing by more than
# GROWTH_FACTOR over GROWTH_RUNS consecutive decades, or exceed BLOWUP, are
# declared divergent; agreement of successive levels within RTOL is finite.
RTOL = 1e-9
ATOL = 1e-300
BLOWUP = 1e12
GROWTH_FACTOR = 1.5
GROWTH_RUNS = 3
MAX_DECADE = 12       # tails expand to 1e12 before giving up
MAX_DECADE_DOWN = 16  # origin side may need more decades to meet RTOL
INF_RATIO = math.inf


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class EvalBudget:
    """Shared integrand-evaluation budget for one condition check."""

    limit: int = 10**6
    spent: int = 0

    def charge(self, n: int = 1) -> None:
        self.spent += n
        if self.spent > self.limit:
            raise BudgetExceeded(f"integration budget of {self.limit} evaluations exceeded")


@dataclass(frozen=True)
class MomentVerdict:
    """Outcome of an integral-finiteness question.

    status is one of "finite", "divergent", "inconclusive".  ``value`` is set
    for finite verdicts, ``growth_exponent`` estimates the polynomial rate of
    divergence, and ``evidence`` records (domain bound, partial integral) pairs
    from the nested evaluation.
    """

    status: str
    value: float | None = None
    growth_exponent: float | None = None
    evidence: tuple[tuple[float, float], ...] = ()

    @property
    def is_finite(self) -> bool:
        return self.status == FINITE

    @property
    def is_divergent(self) -> bool:
        return self.status == DIVERGENT

    @property
    def is_inconclusive(self) -> bool:
        return self.status == INCONCLUSIVE

    @staticmethod
    def finite(value: float, evidence=()) -> "MomentVerdict":
        return MomentVerdict(FINITE, value=float(value), evidence=tuple(evidence))

    @staticmethod
    def divergent(growth_exponent: float | None = None, evidence=()) -> "MomentVerdict":
        g = None if growth_exponent is None else float(growth_exponent)
        return MomentVerdict(DIVERGENT, growth_exponent=g, evidence=tuple(evidence))

    @staticmethod
    def inconclusive(evidence=()) -> "MomentVerdict":
        return MomentVerdict(INCONCLUSIVE, evidence=tuple(evidence))

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "value": None if self.value is None else float(self.value),
            "growth_exponent": None
            if self.growth_exponent is None
            else float(self.growth_exponent),
            "evidence": [[float(b), float(v)] for b, v in self.evidence],
        }


def verdict_sum(*parts: MomentVerdict) -> MomentVerdict:
    """Combine verdicts of sub-integrals over disjoint domains."""
    if any(p.is_divergent for p in parts):
        g = max((p.growth_exponent or 0.0) for p in parts if p.is_divergent)
        ev = sum((p.evidence for p in parts if p.is_divergent), ())
        return MomentVerdict.divergent(g, ev)
    if any(p.is_inconclusive for p in parts):
        ev = sum((p.evidence for p in parts), ())
        return MomentVerdict.inconclusive(ev)
    total = sum(p.value for p in parts)
    ev = sum((p.evidence for p in parts), ())
    return MomentVerdict.finite(total, ev)


def _quad(f, a: float, b: float, budget: EvalBudget | None) -> float:
    if budget is not None:
        base = f

        def f(x, _base=base, _budget=budget):
            _budget.charge()
            return _base(x)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, _ = integrate.quad(f, a, b, limit=200, epsabs=1e-13, epsrel=1e-11)
    return val


def _slab(f, a: float, b: float, budget: EvalBudget | None) -> float:
    # Far tails are mapped to a bounded domain (x = 1/u) before quadrature;
    # adaptive rules are much more reliable there.
    if a >= 10.0:
        return _quad(lambda u: f(1.0 / u) / (u * u), 1.0 / b, 1.0 / a, budget)
    return _quad(f, a, b, budget)


def _growth_slope(bounds: list[float], partials: list[float]) -> float | None:
    pts = [(math.log(b), math.log(abs(p))) for b, p in zip(bounds, partials) if abs(p) > 0]
    if len(pts) < 2:
        return None
    pts = pts[-5:]
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    denom = float(np.sum((xs - xs.mean()) ** 2))
    if denom == 0.0:
        return None
    return abs(float(np.sum((xs - xs.mean()) * (ys - ys.mean())) / denom))


def _expand(f, start: float, direction: str, budget: EvalBudget | None):
    """Accumulate decade slabs away from ``start``; classify the partial sums.

    direction "up" walks towards +inf, "down" towards 0.  Returns a verdict for
    the improper piece beyond ``start``.
    """
    total = 0.0
    bounds: list[float] = []
    partials: list[float] = []
    small_streak = 0
    prev_total = None

    if direction == "up":
        k0 = max(0, math.ceil(math.log10(start)))
        edges = [start] + [10.0**k for k in range(k0, MAX_DECADE + 1) if 10.0**k > start]
    else:
        k0 = max(1, math.floor(-math.log10(start)))
        edges = [start] + [10.0**-k for k in range(k0, MAX_DECADE + 1) if 10.0**-k < start]

    for lo_edge, hi_edge in zip(edges[:-1], edges[1:]):
        a, b = (lo_edge, hi_edge) if direction == "up" else (hi_edge, lo_edge)
        piece = _slab(f, a, b, budget)
        if not math.isfinite(piece):
            return MomentVerdict.inconclusive(tuple(zip(bounds, partials)))
        total += piece
        bounds.append(hi_edge)
        partials.append(total)
        if abs(total) > BLOWUP:
            return MomentVerdict.divergent(
                _growth_slope(bounds, partials), tuple(zip(bounds, partials))
            )
        if prev_total is not None:
            # two consecutive negligible increments: converged
            if abs(total - prev_total) <= RTOL * abs(total) + ATOL:
                small_streak += 1
                if small_streak >= 2:
                    return MomentVerdict.finite(total, tuple(zip(bounds, partials)))
            else:
                small_streak = 0
        prev_total = total

    # ladder exhausted: still growing geometrically over the last levels
    # means divergence; anything else stays inconclusive
    if len(partials) > GROWTH_RUNS:
        tail_ratios = [
            abs(partials[i]) / abs(partials[i - 1]) if abs(partials[i - 1]) > 0 else INF_RATIO
            for i in range(len(partials) - GROWTH_RUNS, len(partials))
        ]
        if all(r > GROWTH_FACTOR for r in tail_ratios):
            return MomentVerdict.divergent(
                _growth_slope(bounds, partials), tuple(zip(bounds, partials))
            )
    return MomentVerdict.inconclusive(tuple(zip(bounds, partials)))


def improper_integral(
    f,
    lo: float,
    hi: float,
    *,
    budget: EvalBudget | None = None,
) -> MomentVerdict:
    """Verdict for the integral of ``f`` over (lo, hi).

    Endpoints 0 and +inf are treated as potentially improper; everything else
    is evaluated directly.  ``f`` must accept a scalar.
    """
    if not 0.0 <= lo < hi:
        raise ValueError(f"bad integration interval ({lo}, {hi})")
    try:
        parts: list[MomentVerdict] = []
        anchor_lo, anchor_hi = lo, hi
        if lo == 0.0:
            anchor_lo = min(1.0, hi / 2.0 if math.isfinite(hi) else 1.0)
            parts.append(_expand(f, anchor_lo, "down", budget))
        if math.isinf(hi):
            anchor_hi = max(1.0, lo)
            parts.append(_expand(f, anchor_hi, "up", budget))
        if anchor_hi > anchor_lo:
            core = _slab(f, anchor_lo, anchor_hi, budget)
            if not math.isfinite(core):
                parts.append(MomentVerdict.inconclusive())
            else:
                parts.append(MomentVerdict.finite(core))
        return verdict_sum(*parts)
    except BudgetExceeded:
        return MomentVerdict.inconclusive()


def fit_loglog(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """Least-squares slope of log y against log x.

    Returns (slope, intercept, r_squared).  Points with y <= 0 are the
    caller's problem; they must be filtered beforehand.
    """
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    if lx.size < 2:
        raise ValueError("need at least two points for a log-log fit")
    sxx = float(np.sum((lx - lx.mean()) ** 2))
    sxy = float(np.sum((lx - lx.mean()) * (ly - ly.mean())))
    syy = float(np.sum((ly - ly.mean()) ** 2))
    slope = sxy / sxx
    intercept = float(ly.mean() - slope * lx.mean())
    r2 = 1.0 if syy == 0.0 else (sxy * sxy) / (sxx * syy)
    return slope, intercept, r2
