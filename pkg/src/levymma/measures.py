"""Jump measures and dependence measures.

Two measure types drive a mixed moving average: the Levy (jump) measure
``lambda`` on (0, infinity) and the dependence measure ``pi`` on the mixing
space V, a subset of [0, infinity).  Both are immutable after construction;
samplers take an explicit numpy Generator, so instances are safe to share
across workers.

Moment functionals are exact where a closed form exists (power tails, gamma
kernels, atoms) and fall back to verdict-producing quadrature otherwise.
Infinite masses are first-class values (math.inf), never sentinel floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy import special

from .quadrature import (
    EvalBudget,
    MomentVerdict,
    improper_integral,
    verdict_sum,
)

INF = math.inf


class BGIndices(NamedTuple):
    """Blumenthal-Getoor-type activity indices of a jump measure.

    beta0: infimum of p with the small-jump p-moment finite (in [0, 2]).
    beta:  beta0 itself when the boundary moment converges, else beta0 + slack.
    eta_inf: supremum of p with the big-jump p-moment finite (may be +inf).
    eta:  eta_inf when attained, else eta_inf - slack; capped when infinite.
    """

    beta0: float
    beta: float
    eta_inf: float
    eta: float


def _power_integral(expo: float, lo: float, hi: float, coef: float = 1.0) -> MomentVerdict:
    """Verdict for coef * integral of x^expo over (lo, hi], 0 <= lo < hi <= inf."""
    if hi <= lo:
        return MomentVerdict.finite(0.0)
    e = expo + 1.0
    if math.isinf(hi):
        if lo == 0.0:
            # Diverges at one end whatever e is.
            g = abs(e) if e != 0.0 else 0.0
            return MomentVerdict.divergent(g)
        if e < 0.0:
            return MomentVerdict.finite(-coef * lo**e / e)
        return MomentVerdict.divergent(e)
    if lo == 0.0:
        if e > 0.0:
            return MomentVerdict.finite(coef * hi**e / e)
        return MomentVerdict.divergent(-e)
    if e == 0.0:
        return MomentVerdict.finite(coef * math.log(hi / lo))
    return MomentVerdict.finite(coef * (hi**e - lo**e) / e)


def _power_log_integral(expo: float, lo: float, hi: float, inverse_log: bool) -> MomentVerdict:
    """Verdict for the integral of x^expo * |log x| with log x or log(1/x) weight.

    The caller guarantees the log weight is nonnegative on (lo, hi].
    """
    if hi <= lo:
        return MomentVerdict.finite(0.0)
    e = expo + 1.0
    sign = -1.0 if inverse_log else 1.0

    def anti(x: float) -> float:
        # antiderivative of t^expo * log t
        if e == 0.0:
            return 0.5 * math.log(x) ** 2
        return x**e * (e * math.log(x) - 1.0) / (e * e)

    if math.isinf(hi):
        if e >= 0.0 or lo == 0.0:
            return MomentVerdict.divergent(abs(e))
        return MomentVerdict.finite(sign * (0.0 - anti(lo)))
    if lo == 0.0:
        if e <= 0.0:
            return MomentVerdict.divergent(abs(e))
        return MomentVerdict.finite(sign * anti(hi))
    return MomentVerdict.finite(sign * (anti(hi) - anti(lo)))


def _gamma_partial(s: float, rate: float, lo: float, hi: float) -> float:
    """integral of z^(s-1) e^(-rate z) over (lo, hi], for s > 0."""
    scale = math.exp(special.gammaln(s) - s * math.log(rate))
    a = rate * lo
    b = rate * hi
    if math.isinf(hi):
        return scale * special.gammaincc(s, a)
    # pick the better-conditioned regularized difference
    if b <= s + 1.0:
        return scale * (special.gammainc(s, b) - special.gammainc(s, a))
    return scale * (special.gammaincc(s, a) - special.gammaincc(s, b))


def _clip_interval(lo: float, hi: float, slo: float, shi: float) -> tuple[float, float]:
    return max(lo, slo), min(hi, shi)


# ---------------------------------------------------------------------------
# Levy measures
# ---------------------------------------------------------------------------


class LevyMeasure:
    """Base class for jump measures on (0, infinity).

    Subclasses provide ``tail_mass``, the partial moment functional ``moment``
    and a conditional sampler.  The generic quadrature fallbacks here assume a
    ``density`` method and the ``support`` attribute.
    """

    support: tuple[float, float] = (0.0, INF)
    unbounded_support: bool = True

    # -- density-based fallbacks -------------------------------------------
    def density(self, z: float) -> float:  # pragma: no cover - abstract-ish
        raise NotImplementedError

    def integrate(self, fn: Callable[[float], float], lo: float = 0.0, hi: float = INF,
                  budget: EvalBudget | None = None) -> MomentVerdict:
        """Verdict for integral of fn(z) lambda(dz) over (lo, hi]."""
        a, b = _clip_interval(lo, hi, *self.support)
        if b <= a:
            return MomentVerdict.finite(0.0)
        return improper_integral(lambda z: fn(z) * self.density(z), a, b, budget=budget)

    def moment(self, p: float, lo: float = 0.0, hi: float = INF) -> MomentVerdict:
        """Partial moment: integral of z^p lambda(dz) over (lo, hi]."""
        return self.integrate(lambda z: z**p, lo, hi)

    def tail_mass(self, r: float) -> float:
        """lambda((r, infinity)); exact per family."""
        if r <= 0:
            raise ValueError("tail_mass needs r > 0")
        v = self.moment(0.0, r, INF)
        return v.value if v.is_finite else INF

    def log_moment(self, lo: float = 1.0) -> MomentVerdict:
        """integral of log z lambda(dz) over (lo, infinity), lo >= 1."""
        if lo < 1.0:
            raise ValueError("log moment is taken over a tail (lo >= 1)")
        return self.integrate(lambda z: math.log(z), lo, INF)

    def bg_indices(self, slack: float = 0.01, eta_cap: float = 10.0) -> BGIndices:
        raise NotImplementedError

    # -- sampling -----------------------------------------------------------
    def sample_conditional(self, lo: float, hi: float, n: int,
                           rng: np.random.Generator) -> np.ndarray:
        """n i.i.d. draws from lambda restricted to (lo, hi], normalized."""
        raise NotImplementedError

    def sample_jumps(self, threshold: float, region_mass: float,
                     rng: np.random.Generator) -> np.ndarray:
        """Poisson(region_mass * tail_mass(threshold)) draws above threshold."""
        if threshold <= 0:
            raise ValueError("jump threshold must be positive")
        if region_mass < 0:
            raise ValueError("region mass must be nonnegative")
        tail = self.tail_mass(threshold)
        if math.isinf(tail):
            raise ValueError("threshold has infinite tail mass; raise it")
        n = int(rng.poisson(region_mass * tail)) if region_mass * tail > 0 else 0
        if n == 0:
            return np.empty(0)
        return self.sample_conditional(threshold, INF, n, rng)

    def to_config(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class ParetoTail(LevyMeasure):
    """lambda(dz) = z^(-alpha-1) dz on (cutoff, infinity); cutoff 0 means (0, inf).

    With cutoff 0 this is the positive alpha-stable jump measure, so alpha
    must stay below 2 for square-integrable small jumps.
    """

    alpha: float
    cutoff: float = 0.0

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if self.cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        if self.cutoff == 0.0 and self.alpha >= 2:
            raise ValueError("cutoff 0 requires alpha < 2 (Levy measure property)")
        object.__setattr__(self, "support", (self.cutoff, INF))
        object.__setattr__(self, "unbounded_support", True)

    def density(self, z: float) -> float:
        return z ** (-self.alpha - 1.0) if z > self.cutoff else 0.0

    def tail_mass(self, r: float) -> float:
        if r <= 0:
            raise ValueError("tail_mass needs r > 0")
        lo = max(r, self.cutoff)
        return lo ** (-self.alpha) / self.alpha

    def moment(self, p: float, lo: float = 0.0, hi: float = INF) -> MomentVerdict:
        return _power_integral(p - self.alpha - 1.0, max(lo, self.cutoff), hi)

    def log_tail(self, r: float) -> float:
        """integral of log z lambda(dz) over (r, inf), r >= 1."""
        lo = max(r, self.cutoff)
        a = self.alpha
        return lo ** (-a) * (a * math.log(lo) + 1.0) / (a * a)

    def log_moment(self, lo: float = 1.0) -> MomentVerdict:
        if lo < 1.0:
            raise ValueError("log moment is taken over a tail (lo >= 1)")
        return MomentVerdict.finite(self.log_tail(lo))

    def bg_indices(self, slack: float = 0.01, eta_cap: float = 10.0) -> BGIndices:
        if self.cutoff > 0:
            # no small-jump activity; exact power tail above the cutoff
            return BGIndices(0.0, 0.0, self.alpha, self.alpha - slack)
        return BGIndices(self.alpha, self.alpha + slack, self.alpha, self.alpha - slack)

    def sample_conditional(self, lo, hi, n, rng):
        a = self.alpha
        lo = max(lo, self.cutoff)
        u = rng.uniform(size=n)
        hi_term = 0.0 if math.isinf(hi) else hi ** (-a)
        return (lo ** (-a) - u * (lo ** (-a) - hi_term)) ** (-1.0 / a)

    def to_config(self) -> dict:
        return {"family": "pareto_tail", "alpha": self.alpha, "cutoff": self.cutoff}


@dataclass(frozen=True)
class GammaLevy(LevyMeasure):
    """lambda(dz) = z^(shape-1) e^(-rate z) dz on (0, infinity).

    Finite total mass for every shape > 0; exponential tails make all
    polynomial big-jump moments finite.
    """

    shape: float
    rate: float

    def __post_init__(self):
        if self.shape <= 0 or self.rate <= 0:
            raise ValueError("shape and rate must be positive")
        object.__setattr__(self, "support", (0.0, INF))
        object.__setattr__(self, "unbounded_support", True)

    def density(self, z: float) -> float:
        return z ** (self.shape - 1.0) * math.exp(-self.rate * z) if z > 0 else 0.0

    def total_mass(self) -> float:
        return math.exp(special.gammaln(self.shape) - self.shape * math.log(self.rate))

    def tail_mass(self, r: float) -> float:
        if r <= 0:
            raise ValueError("tail_mass needs r > 0")
        return _gamma_partial(self.shape, self.rate, r, INF)

    def moment(self, p: float, lo: float = 0.0, hi: float = INF) -> MomentVerdict:
        s = p + self.shape
        if s > 0:
            return MomentVerdict.finite(_gamma_partial(s, self.rate, lo, hi))
        if lo == 0.0:
            return MomentVerdict.divergent(-s)
        return self.integrate(lambda z: z**p, lo, hi)

    def bg_indices(self, slack: float = 0.01, eta_cap: float = 10.0) -> BGIndices:
        return BGIndices(0.0, 0.0, INF, eta_cap)

    def sample_conditional(self, lo, hi, n, rng):
        q_lo = special.gammaincc(self.shape, self.rate * lo)
        q_hi = 0.0 if math.isinf(hi) else special.gammaincc(self.shape, self.rate * hi)
        u = rng.uniform(size=n)
        return special.gammainccinv(self.shape, q_lo - u * (q_lo - q_hi)) / self.rate

    def to_config(self) -> dict:
        return {"family": "gamma", "shape": self.shape, "rate": self.rate}


@dataclass(frozen=True)
class FixedJump:
    value: float

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError("jump size must be positive")

    def to_config(self):
        return {"kind": "fixed", "value": self.value}


@dataclass(frozen=True)
class ExponentialJump:
    rate: float

    def __post_init__(self):
        if self.rate <= 0:
            raise ValueError("jump rate must be positive")

    def to_config(self):
        return {"kind": "exponential", "rate": self.rate}


@dataclass(frozen=True)
class CompoundPoisson(LevyMeasure):
    """Finite-activity jump measure: rate times a jump-size distribution."""

    rate: float
    jump: FixedJump | ExponentialJump

    def __post_init__(self):
        if self.rate <= 0:
            raise ValueError("rate must be positive")
        if isinstance(self.jump, FixedJump):
            object.__setattr__(self, "support", (0.0, self.jump.value))
            object.__setattr__(self, "unbounded_support", False)
        else:
            object.__setattr__(self, "support", (0.0, INF))
            object.__setattr__(self, "unbounded_support", True)

    def tail_mass(self, r: float) -> float:
        if r <= 0:
            raise ValueError("tail_mass needs r > 0")
        if isinstance(self.jump, FixedJump):
            return self.rate if self.jump.value > r else 0.0
        return self.rate * math.exp(-self.jump.rate * r)

    def moment(self, p: float, lo: float = 0.0, hi: float = INF) -> MomentVerdict:
        if isinstance(self.jump, FixedJump):
            v = self.jump.value
            inside = lo < v <= hi
            return MomentVerdict.finite(self.rate * v**p if inside else 0.0)
        s = p + 1.0
        if s > 0:
            r = self.jump.rate
            return MomentVerdict.finite(self.rate * r * _gamma_partial(s, r, lo, hi))
        if lo == 0.0:
            return MomentVerdict.divergent(-s)
        return self.integrate(lambda z: z**p, lo, hi)

    def density(self, z: float) -> float:
        if isinstance(self.jump, FixedJump):
            raise NotImplementedError("atomic jump distribution has no density")
        return self.rate * self.jump.rate * math.exp(-self.jump.rate * z)

    def log_moment(self, lo: float = 1.0) -> MomentVerdict:
        if isinstance(self.jump, FixedJump):
            v = self.jump.value
            return MomentVerdict.finite(self.rate * math.log(v) if v > lo else 0.0)
        return super().log_moment(lo)

    def bg_indices(self, slack: float = 0.01, eta_cap: float = 10.0) -> BGIndices:
        return BGIndices(0.0, 0.0, INF, eta_cap)

    def sample_conditional(self, lo, hi, n, rng):
        if isinstance(self.jump, FixedJump):
            v = self.jump.value
            if not lo < v <= hi:
                raise ValueError("conditioning region carries no mass")
            return np.full(n, v)
        # memoryless restriction, then reject anything past hi
        r = self.jump.rate
        u = rng.uniform(size=n)
        hi_term = 0.0 if math.isinf(hi) else math.exp(-r * (hi - lo))
        return lo - np.log1p(-u * (1.0 - hi_term)) / r

    def to_config(self) -> dict:
        return {"family": "compound_poisson", "rate": self.rate, "jump": self.jump.to_config()}


@dataclass(frozen=True)
class TemperedStable(LevyMeasure):
    """lambda(dz) = z^(-alpha-1) e^(-tempering z) dz on (0, infinity)."""

    alpha: float
    tempering: float

    def __post_init__(self):
        if not 0 < self.alpha < 2:
            raise ValueError("alpha must lie in (0, 2)")
        if self.tempering < 0:
            raise ValueError("tempering must be nonnegative")
        object.__setattr__(self, "support", (0.0, INF))
        object.__setattr__(self, "unbounded_support", True)

    def density(self, z: float) -> float:
        return z ** (-self.alpha - 1.0) * math.exp(-self.tempering * z) if z > 0 else 0.0

    def _pareto(self) -> ParetoTail:
        return ParetoTail(self.alpha)

    def moment(self, p: float, lo: float = 0.0, hi: float = INF) -> MomentVerdict:
        if self.tempering == 0.0:
            return self._pareto().moment(p, lo, hi)
        if lo == 0.0 and p <= self.alpha:
            return MomentVerdict.divergent(self.alpha - p)
        return self.integrate(lambda z: z**p, lo, hi)

    def tail_mass(self, r: float) -> float:
        if r <= 0:
            raise ValueError("tail_mass needs r > 0")
        v = self.moment(0.0, r, INF)
        return v.value

    def bg_indices(self, slack: float = 0.01, eta_cap: float = 10.0) -> BGIndices:
        if self.tempering == 0.0:
            return self._pareto().bg_indices(slack, eta_cap)
        return BGIndices(self.alpha, self.alpha + slack, INF, eta_cap)

    def sample_conditional(self, lo, hi, n, rng):
        # rejection from the untempered power tail; acceptance e^{-theta(z-lo)}
        theta = self.tempering
        pareto = self._pareto()
        if theta == 0.0:
            return pareto.sample_conditional(lo, hi, n, rng)
        out = np.empty(0)
        while out.size < n:
            m = max(n - out.size, 16) * 2
            z = pareto.sample_conditional(lo, hi, m, rng)
            keep = rng.uniform(size=m) <= np.exp(-theta * (z - lo))
            out = np.concatenate([out, z[keep]])
        return out[:n]

    def to_config(self) -> dict:
        return {"family": "tempered_stable", "alpha": self.alpha, "tempering": self.tempering}


@dataclass(frozen=True)
class AtomicLevy(LevyMeasure):
    """Finitely many atoms (z_i, mass_i), all positive; exact summation."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        atoms = tuple((float(z), float(m)) for z, m in self.atoms)
        if not atoms:
            raise ValueError("need at least one atom")
        if any(z <= 0 or m <= 0 for z, m in atoms):
            raise ValueError("atoms require positive location and mass")
        object.__setattr__(self, "atoms", atoms)
        zmax = max(z for z, _ in atoms)
        object.__setattr__(self, "support", (0.0, zmax))
        object.__setattr__(self, "unbounded_support", False)

    def integrate(self, fn, lo=0.0, hi=INF, budget=None) -> MomentVerdict:
        total = sum(m * fn(z) for z, m in self.atoms if lo < z <= hi)
        return MomentVerdict.finite(total)

    def moment(self, p: float, lo: float = 0.0, hi: float = INF) -> MomentVerdict:
        return self.integrate(lambda z: z**p, lo, hi)

    def tail_mass(self, r: float) -> float:
        if r <= 0:
            raise ValueError("tail_mass needs r > 0")
        return sum(m for z, m in self.atoms if z > r)

    def bg_indices(self, slack: float = 0.01, eta_cap: float = 10.0) -> BGIndices:
        return BGIndices(0.0, 0.0, INF, eta_cap)

    def sample_conditional(self, lo, hi, n, rng):
        zs = np.array([z for z, _ in self.atoms if lo < z <= hi])
        ms = np.array([m for z, m in self.atoms if lo < z <= hi])
        if zs.size == 0:
            raise ValueError("conditioning region carries no mass")
        idx = rng.choice(zs.size, size=n, p=ms / ms.sum())
        return zs[idx]

    def to_config(self) -> dict:
        return {"family": "atomic", "atoms": [[z, m] for z, m in self.atoms]}


# ---------------------------------------------------------------------------
# Dependence measures
# ---------------------------------------------------------------------------


class DependenceMeasure:
    """Base class for the mixing measure pi on V, a subset of [0, infinity).

    ``total_mass`` may legitimately be +inf; simulation then requires a finite
    truncation bound on V.
    """

    support: tuple[float, float] = (0.0, INF)

    def density(self, x: float) -> float:  # pragma: no cover - abstract-ish
        raise NotImplementedError

    def integrate(self, fn: Callable[[float], float], lo: float = 0.0, hi: float = INF,
                  budget: EvalBudget | None = None) -> MomentVerdict:
        """Verdict for integral of fn(x) pi(dx) over (lo, hi] within the support."""
        a, b = _clip_interval(lo, hi, *self.support)
        if b <= a:
            return MomentVerdict.finite(0.0)
        return improper_integral(lambda x: fn(x) * self.density(x), a, b, budget=budget)

    def moment(self, p: float, lo: float = 0.0, hi: float = INF) -> MomentVerdict:
        """integral of x^p pi(dx) over (lo, hi]."""
        return self.integrate(lambda x: x**p, lo, hi)

    def log_weighted_moment(self, p: float, log_side: str, lo: float = 0.0,
                            hi: float = INF) -> MomentVerdict:
        """integral of x^p (1 + w(x)) pi(dx) with w = log x, log(1/x) or 0.

        log_side is "logx", "loginvx" or "none"; the caller picks the side on
        which the weight is nonnegative.
        """
        if log_side not in ("logx", "loginvx", "none"):
            raise ValueError(f"unknown log weight {log_side!r}")
        if log_side == "none":
            return self.moment(p, lo, hi)
        sgn = 1.0 if log_side == "logx" else -1.0
        return self.integrate(lambda x: x**p * (1.0 + sgn * math.log(x)), lo, hi)

    def total_mass(self) -> float:
        v = self.moment(0.0)
        return v.value if v.is_finite else INF

    def interval_mass(self, lo: float, hi: float) -> float:
        v = self.moment(0.0, lo, hi)
        return v.value if v.is_finite else INF

    def sample(self, n: int, v_bound: float, rng: np.random.Generator) -> np.ndarray:
        """n i.i.d. draws from pi restricted to (support_lo, v_bound], normalized."""
        raise NotImplementedError

    def to_config(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class ExpDensity(DependenceMeasure):
    """pi(dx) = e^(-rate x) dx on (0, infinity)."""

    rate: float

    def __post_init__(self):
        if self.rate <= 0:
            raise ValueError("rate must be positive")
        object.__setattr__(self, "support", (0.0, INF))

    def density(self, x: float) -> float:
        return math.exp(-self.rate * x)

    def moment(self, p: float, lo: float = 0.0, hi: float = INF) -> MomentVerdict:
        s = p + 1.0
        if s > 0:
            return MomentVerdict.finite(_gamma_partial(s, self.rate, max(lo, 0.0), hi))
        if lo == 0.0:
            return MomentVerdict.divergent(-s)
        return super().moment(p, lo, hi)

    def total_mass(self) -> float:
        return 1.0 / self.rate

    def sample(self, n, v_bound, rng):
        u = rng.uniform(size=n)
        tail = 0.0 if math.isinf(v_bound) else math.exp(-self.rate * v_bound)
        return -np.log1p(-u * (1.0 - tail)) / self.rate

    def to_config(self) -> dict:
        return {"family": "exp_density", "rate": self.rate}


@dataclass(frozen=True)
class GammaDensity(DependenceMeasure):
    """pi(dx) = x^(shape-1) e^(-rate x) dx on (0, infinity)."""

    shape: float
    rate: float

    def __post_init__(self):
        if self.shape <= 0 or self.rate <= 0:
            raise ValueError("shape and rate must be positive")
        object.__setattr__(self, "support", (0.0, INF))

    def density(self, x: float) -> float:
        return x ** (self.shape - 1.0) * math.exp(-self.rate * x) if x > 0 else 0.0

    def moment(self, p: float, lo: float = 0.0, hi: float = INF) -> MomentVerdict:
        s = p + self.shape
        if s > 0:
            return MomentVerdict.finite(_gamma_partial(s, self.rate, max(lo, 0.0), hi))
        if lo == 0.0:
            return MomentVerdict.divergent(-s)
        return super().moment(p, lo, hi)

    def total_mass(self) -> float:
        return math.exp(special.gammaln(self.shape) - self.shape * math.log(self.rate))

    def sample(self, n, v_bound, rng):
        p_hi = 1.0 if math.isinf(v_bound) else special.gammainc(self.shape, self.rate * v_bound)
        u = rng.uniform(size=n)
        return special.gammaincinv(self.shape, u * p_hi) / self.rate

    def to_config(self) -> dict:
        return {"family": "gamma_density", "shape": self.shape, "rate": self.rate}


@dataclass(frozen=True)
class PowerDensity(DependenceMeasure):
    """pi(dx) = x^exponent dx on (lo, hi]; hi may be infinite.

    The workhorse for the near-optimality examples: exponent -1 on (1, inf)
    has infinite total mass while keeping the inverse moment finite.
    """

    exponent: float
    lo: float = 0.0
    hi: float = INF

    def __post_init__(self):
        if self.lo < 0 or self.hi <= self.lo:
            raise ValueError("need 0 <= lo < hi")
        object.__setattr__(self, "support", (self.lo, self.hi))

    def density(self, x: float) -> float:
        return x**self.exponent if self.lo < x <= self.hi else 0.0

    def moment(self, p: float, lo: float = 0.0, hi: float = INF) -> MomentVerdict:
        a, b = _clip_interval(lo, hi, self.lo, self.hi)
        if b <= a:
            return MomentVerdict.finite(0.0)
        return _power_integral(p + self.exponent, a, b)

    def log_weighted_moment(self, p, log_side, lo=0.0, hi=INF) -> MomentVerdict:
        if log_side == "none":
            return self.moment(p, lo, hi)
        a, b = _clip_interval(lo, hi, self.lo, self.hi)
        if b <= a:
            return MomentVerdict.finite(0.0)
        plain = _power_integral(p + self.exponent, a, b)
        logpart = _power_log_integral(p + self.exponent, a, b, log_side == "loginvx")
        return verdict_sum(plain, logpart)

    def total_mass(self) -> float:
        v = self.moment(0.0)
        return v.value if v.is_finite else INF

    def sample(self, n, v_bound, rng):
        b = min(self.hi, v_bound)
        if self.lo == 0.0 and self.exponent <= -1.0:
            raise ValueError("infinite mass at the origin; cannot sample")
        if math.isinf(b):
            raise ValueError("sampling needs a finite upper truncation")
        e = self.exponent + 1.0
        u = rng.uniform(size=n)
        if e == 0.0:
            return self.lo * (b / self.lo) ** u
        return (self.lo**e + u * (b**e - self.lo**e)) ** (1.0 / e)

    def to_config(self) -> dict:
        return {"family": "power_density", "exponent": self.exponent,
                "lo": self.lo, "hi": self.hi}


@dataclass(frozen=True)
class LebesgueMeasure(DependenceMeasure):
    """Lebesgue measure on [0, upper]; upper may be infinite (trawl setting)."""

    upper: float = INF

    def __post_init__(self):
        if self.upper <= 0:
            raise ValueError("upper must be positive")
        object.__setattr__(self, "support", (0.0, self.upper))

    def density(self, x: float) -> float:
        return 1.0 if 0 <= x <= self.upper else 0.0

    def moment(self, p: float, lo: float = 0.0, hi: float = INF) -> MomentVerdict:
        return _power_integral(p, max(lo, 0.0), min(hi, self.upper))

    def total_mass(self) -> float:
        return self.upper

    def interval_mass(self, lo: float, hi: float) -> float:
        return max(0.0, min(hi, self.upper) - max(lo, 0.0))

    def sample(self, n, v_bound, rng):
        b = min(self.upper, v_bound)
        if math.isinf(b):
            raise ValueError("sampling needs a finite upper truncation")
        return rng.uniform(0.0, b, size=n)

    def to_config(self) -> dict:
        return {"family": "lebesgue", "upper": self.upper}


@dataclass(frozen=True)
class AtomicDependence(DependenceMeasure):
    """Finitely many atoms (x_i, mass_i) with x_i > 0."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        atoms = tuple((float(x), float(m)) for x, m in self.atoms)
        if not atoms:
            raise ValueError("need at least one atom")
        if any(x <= 0 or m <= 0 for x, m in atoms):
            raise ValueError("atoms require positive location and mass")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "support", (0.0, max(x for x, _ in atoms)))

    def integrate(self, fn, lo=0.0, hi=INF, budget=None) -> MomentVerdict:
        total = sum(m * fn(x) for x, m in self.atoms if lo < x <= hi)
        return MomentVerdict.finite(total)

    def moment(self, p: float, lo: float = 0.0, hi: float = INF) -> MomentVerdict:
        return self.integrate(lambda x: x**p, lo, hi)

    def log_weighted_moment(self, p, log_side, lo=0.0, hi=INF) -> MomentVerdict:
        if log_side == "none":
            return self.moment(p, lo, hi)
        sgn = 1.0 if log_side == "logx" else -1.0
        return self.integrate(lambda x: x**p * (1.0 + sgn * math.log(x)), lo, hi)

    def total_mass(self) -> float:
        return sum(m for _, m in self.atoms)

    def interval_mass(self, lo: float, hi: float) -> float:
        return sum(m for x, m in self.atoms if lo < x <= hi)

    def sample(self, n, v_bound, rng):
        xs = np.array([x for x, _ in self.atoms if x <= v_bound])
        ms = np.array([m for x, m in self.atoms if x <= v_bound])
        if xs.size == 0:
            raise ValueError("truncation removed every atom")
        idx = rng.choice(xs.size, size=n, p=ms / ms.sum())
        return xs[idx]

    def to_config(self) -> dict:
        return {"family": "atomic", "atoms": [[x, m] for x, m in self.atoms]}
