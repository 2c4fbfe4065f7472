"""Sample-path generation via the small-jump / big-jump decomposition.

The driving random measure splits into a compensated part carrying jumps in
(0, 1] and a compound-Poisson part carrying jumps above 1.  Simulation
truncates three ways, all reported through an explicit error bound:

* jumps below ``small_jump_eps`` are dropped (or replaced by a Gaussian field
  with the exact covariance of the discarded compensated integral),
* the time window extends ``past_window`` beyond the evaluation grid (on both
  sides for non-causal kernels),
* the mixing space is cut at ``v_bound`` - mandatory when the mixing measure
  has infinite total mass, which is exactly the supremum-blow-up regime.

The compensator of the kept small jumps is computed exactly over the truncated
region, so the compensated component has mean zero by construction, including
window-edge effects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterator, NamedTuple

import numpy as np

from .conditions import EXISTS, MMASpec, check_existence
from .kernels import (
    Kernel,
    SupOUKernel,
    TrawlKernel,
    WellBalancedKernel,
    stationary_kernel_mass,
    stationary_square_mass,
    window_bilinear_integral,
    window_kernel_integral,
)
from .measures import LebesgueMeasure

INF = math.inf
MAX_EXPECTED_POINTS = 2 * 10**7


class SimulationError(RuntimeError):
    pass


class ExistenceError(SimulationError):
    """The process fails (or cannot be shown to satisfy) its existence check."""


@dataclass(frozen=True)
class TruncationParams:
    small_jump_eps: float = 1e-3
    past_window: float = 10.0
    v_bound: float = INF
    gaussian_refine: bool = True

    def __post_init__(self):
        if not 0.0 < self.small_jump_eps <= 1.0:
            raise ValueError("small_jump_eps must lie in (0, 1]")
        if self.past_window <= 0:
            raise ValueError("past_window must be positive")
        if self.v_bound <= 0:
            raise ValueError("v_bound must be positive")

    def to_json_dict(self) -> dict:
        return {
            "small_jump_eps": self.small_jump_eps,
            "past_window": self.past_window,
            "v_bound": "inf" if math.isinf(self.v_bound) else self.v_bound,
            "gaussian_refine": self.gaussian_refine,
        }


class PoissonPoint(NamedTuple):
    x: float
    tau: float
    z: float


@dataclass(frozen=True)
class PointSet:
    """Marks of the driving Poisson random measure, stored columnar."""

    x: np.ndarray
    tau: np.ndarray
    z: np.ndarray

    def __len__(self) -> int:
        return self.x.size

    def __iter__(self) -> Iterator[PoissonPoint]:
        return (PoissonPoint(*t) for t in zip(self.x, self.tau, self.z))

    @staticmethod
    def empty() -> "PointSet":
        return PointSet(np.empty(0), np.empty(0), np.empty(0))


@dataclass(frozen=True)
class SamplePath:
    grid: np.ndarray
    values: np.ndarray
    x1: np.ndarray
    x2: np.ndarray
    drift: float
    trunc: TruncationParams
    error_bound: float
    seed: object

    def to_csv_text(self) -> str:
        lines = ["t,x,x1,x2"]
        for t, x, a, b in zip(self.grid, self.values, self.x1, self.x2):
            lines.append(f"{t:.12g},{x:.12g},{a:.12g},{b:.12g}")
        return "\n".join(lines) + "\n"

    def metadata(self) -> dict:
        return {
            "seed": list(self.seed) if isinstance(self.seed, (tuple, list)) else self.seed,
            "trunc": self.trunc.to_json_dict(),
            "error_bound": "inf" if math.isinf(self.error_bound) else self.error_bound,
            "drift_constant": self.drift,
            "grid_points": int(self.grid.size),
            "t0": float(self.grid[0]),
            "t1": float(self.grid[-1]),
        }


def _window(spec: MMASpec, grid: np.ndarray, trunc: TruncationParams) -> tuple[float, float]:
    if spec.kernel.causal:
        return float(grid[0] - trunc.past_window), float(grid[-1])
    return float(grid[0] - trunc.past_window), float(grid[-1] + trunc.past_window)


def effective_v_bound(spec: MMASpec, trunc: TruncationParams) -> float:
    """Mixing-space cut actually needed: a trawl never sees x above a(0)."""
    if isinstance(spec.kernel, TrawlKernel):
        return min(trunc.v_bound, spec.kernel.trawl.a0)
    return trunc.v_bound


def generate_points(spec: MMASpec, window: tuple[float, float], z_range: tuple[float, float],
                    trunc: TruncationParams, rng: np.random.Generator) -> PointSet:
    """Draw the Poisson marks in window x (0, v_bound] x z_range.

    The count is Poisson with mean pi((0, M]) * |window| * lambda(z_range) and
    the marks are i.i.d. from the normalized product measure.
    """
    w0, w1 = window
    z_lo, z_hi = z_range
    if z_lo <= 0:
        raise ValueError("z_range must be bounded away from 0")
    if w1 <= w0:
        return PointSet.empty()
    v_cut = effective_v_bound(spec, trunc)
    pi_mass = spec.pi.interval_mass(0.0, v_cut)
    if math.isinf(pi_mass):
        raise SimulationError(
            "mixing measure has infinite mass below v_bound; tighten v_bound"
        )
    lam_mass = spec.levy.tail_mass(z_lo) - (
        0.0 if math.isinf(z_hi) else spec.levy.tail_mass(z_hi)
    )
    mean = pi_mass * (w1 - w0) * lam_mass
    if math.isinf(mean) or mean > MAX_EXPECTED_POINTS:
        raise SimulationError(f"expected point count {mean:.3g} is not tractable")
    n = int(rng.poisson(mean)) if mean > 0 else 0
    if n == 0:
        return PointSet.empty()
    xs = spec.pi.sample(n, v_cut, rng)
    taus = rng.uniform(w0, w1, size=n)
    zs = spec.levy.sample_conditional(z_lo, z_hi, n, rng)
    return PointSet(np.asarray(xs, float), taus, np.asarray(zs, float))


def shot_noise_sum(kernel: Kernel, points: PointSet, times: np.ndarray,
                   row_block: int = 2048) -> np.ndarray:
    """sum_i z_i f(x_i, t - tau_i) evaluated on all times, block by block."""
    out = np.zeros(times.size)
    for i in range(0, len(points), row_block):
        sl = slice(i, i + row_block)
        lags = times[None, :] - points.tau[sl, None]
        vals = kernel.evaluate(points.x[sl, None], lags)
        out += (points.z[sl, None] * vals).sum(axis=0)
    return out


class PathEngine:
    """Precomputes everything deterministic for one (spec, grid, truncation).

    Replica sampling then only draws Poisson marks and (optionally) one
    Gaussian vector, so Monte Carlo loops stay cheap.  Flags:

    include_big / include_small select the jump regions, ``compensate``
    subtracts the exact compensator of the kept small jumps (turn off to get
    the raw Poisson integral used by the blow-up experiments).
    """

    def __init__(self, spec: MMASpec, grid, trunc: TruncationParams, *,
                 include_big: bool = True, include_small: bool = True,
                 compensate: bool = True, force: bool = False):
        self.spec = spec
        self.grid = np.asarray(grid, dtype=float)
        if self.grid.ndim != 1 or self.grid.size < 1 or np.any(np.diff(self.grid) < 0):
            raise ValueError("grid must be a nondecreasing 1-d array")
        self.trunc = trunc
        self.include_big = include_big
        self.include_small = include_small
        self.compensate = compensate

        if not force:
            existence = check_existence(spec)
            if existence.conclusion != EXISTS:
                raise ExistenceError(
                    f"existence check concluded {existence.conclusion!r}; "
                    "pass force=True to simulate anyway"
                )

        self.window = _window(spec, self.grid, trunc)
        pi_mass = spec.pi.interval_mass(0.0, effective_v_bound(spec, trunc))
        if math.isinf(pi_mass):
            raise SimulationError(
                "mixing measure has infinite mass below v_bound; set a finite v_bound"
            )
        self.pi_mass = pi_mass

        eps = trunc.small_jump_eps
        self.small_range = (eps, 1.0)
        self.big_range = (1.0, INF)

        # drift adds the stationary mean m * int f dpi du; it must converge
        self.drift_const = 0.0
        if spec.drift != 0.0:
            mass = stationary_kernel_mass(spec.kernel, spec.pi)
            if not mass.is_finite:
                raise SimulationError(
                    "drift requested but the kernel mass integral does not converge"
                )
            self.drift_const = spec.drift * mass.value

        # exact compensator of kept small jumps over the truncated region
        m1 = spec.levy.moment(1.0, eps, 1.0)
        self._m1_small = m1.value if m1.is_finite else INF
        if include_small and compensate and eps < 1.0:
            if math.isinf(self._m1_small):
                raise SimulationError("small-jump first moment did not evaluate")
            self.compensator = self._m1_small * np.array(
                [window_kernel_integral(spec.kernel, spec.pi, t, self.window, trunc.v_bound)
                 for t in self.grid]
            )
        else:
            self.compensator = np.zeros(self.grid.size)

        self._error_bound: float | None = None

        # Gaussian refinement: exact covariance of the discarded z <= eps part
        self._gauss_factor = None
        if include_small and trunc.gaussian_refine:
            sig2 = spec.levy.moment(2.0, 0.0, eps)
            if not sig2.is_finite:
                raise SimulationError("residual small-jump variance did not evaluate")
            if sig2.value > 0.0:
                cov = np.empty((self.grid.size, self.grid.size))
                for i, ti in enumerate(self.grid):
                    for j in range(i, self.grid.size):
                        cov[i, j] = cov[j, i] = window_bilinear_integral(
                            spec.kernel, spec.pi, ti, self.grid[j],
                            self.window, trunc.v_bound)
                cov *= sig2.value
                w, v = np.linalg.eigh(cov)
                w = np.clip(w, 0.0, None)
                self._gauss_factor = v * np.sqrt(w)[None, :]

    @property
    def error_bound(self) -> float:
        if self._error_bound is None:
            self._error_bound = truncation_error_bound(self.spec, self.trunc)
        return self._error_bound

    def rng_for(self, seed: int, replica: int = 0) -> np.random.Generator:
        return np.random.default_rng([int(seed), int(replica)])

    def sample_components(self, rng: np.random.Generator):
        """One replica: returns (x1, x2, big_points, small_points)."""
        big = small = PointSet.empty()
        x2 = np.zeros(self.grid.size)
        x1 = np.zeros(self.grid.size)
        if self.include_big:
            big = generate_points(self.spec, self.window, self.big_range, self.trunc, rng)
            if len(big):
                x2 = shot_noise_sum(self.spec.kernel, big, self.grid)
        if self.include_small and self.trunc.small_jump_eps < 1.0:
            small = generate_points(self.spec, self.window, self.small_range, self.trunc, rng)
            if len(small):
                x1 = shot_noise_sum(self.spec.kernel, small, self.grid)
        x1 = x1 - self.compensator
        if self._gauss_factor is not None:
            x1 = x1 + self._gauss_factor @ rng.standard_normal(self.grid.size)
        return x1, x2, big, small

    def sample_path(self, seed: int, replica: int = 0) -> SamplePath:
        rng = self.rng_for(seed, replica)
        x1, x2, _, _ = self.sample_components(rng)
        values = x1 + x2 + self.drift_const
        return SamplePath(
            grid=self.grid.copy(), values=values, x1=x1, x2=x2,
            drift=self.drift_const, trunc=self.trunc,
            error_bound=self.error_bound,
            seed=(int(seed), int(replica)),
        )

    def sample_values(self, seed: int, replicas: int) -> np.ndarray:
        """(replicas, grid) matrix of full path values with per-replica substreams."""
        out = np.empty((replicas, self.grid.size))
        for r in range(replicas):
            x1, x2, _, _ = self.sample_components(self.rng_for(seed, r))
            out[r] = x1 + x2 + self.drift_const
        return out

    def sample_x1_values(self, seed: int, replicas: int) -> np.ndarray:
        out = np.empty((replicas, self.grid.size))
        for r in range(replicas):
            x1, _, _, _ = self.sample_components(self.rng_for(seed, r))
            out[r] = x1
        return out


def simulate_path(spec: MMASpec, grid, trunc: TruncationParams | None = None,
                  seed: int = 0, replica: int = 0, force: bool = False) -> SamplePath:
    """One sample path on the grid; deterministic in (spec, grid, trunc, seed)."""
    if trunc is None:
        trunc = default_truncation(spec)
    engine = PathEngine(spec, grid, trunc, force=force)
    return engine.sample_path(seed, replica)


# ---------------------------------------------------------------------------
# Truncation error accounting
# ---------------------------------------------------------------------------


def _big_jump_discard(spec: MMASpec, v_bound: float) -> float:
    """Envelope-weighted expected contribution of big jumps with x > v_bound."""
    if math.isinf(v_bound) and not isinstance(spec.kernel, TrawlKernel):
        return 0.0
    lm, dm, kernel = spec.levy, spec.pi, spec.kernel
    lam_tail = lm.tail_mass(1.0)
    if isinstance(kernel, TrawlKernel):
        tr = kernel.trawl
        cap = min(v_bound, dm.upper if isinstance(dm, LebesgueMeasure) else INF)
        full_head = tr.a0
        kept_head = min(tr.a0, cap)
        full_area = tr.total()
        kept_area = tr.cumulative_capped(INF, cap)
        discard = (full_head - kept_head) + (full_area - kept_area)
        return lam_tail * discard
    logm = lm.log_moment()
    if not logm.is_finite:
        return INF
    if isinstance(kernel, WellBalancedKernel) or (
        isinstance(kernel, SupOUKernel) and kernel.kappa == 0.0
    ):
        sides = 2.0 if isinstance(kernel, WellBalancedKernel) else 1.0
        mass = dm.interval_mass(v_bound, INF)
        if math.isinf(mass):
            return INF
        inv = dm.moment(-1.0, v_bound, INF)
        if not inv.is_finite:
            return INF
        return mass * lam_tail + sides * inv.value * (lam_tail + logm.value)
    from .conditions import _pw_bigjump_integrand  # shared closed form

    v = dm.integrate(_pw_bigjump_integrand(lm, kernel.kappa, include_box=True),
                     lo=v_bound)
    return v.value if v.is_finite else INF


def _past_window_term(spec: MMASpec, trunc: TruncationParams) -> float:
    """L1 bound for jump mass arriving before the simulated window."""
    m1 = spec.levy.moment(1.0, trunc.small_jump_eps, INF)
    if m1.is_divergent:
        return INF
    if m1.is_inconclusive:
        return INF
    lm_weight = m1.value
    kernel, dm = spec.kernel, spec.pi
    T = trunc.past_window
    if isinstance(kernel, TrawlKernel):
        cap = min(trunc.v_bound, dm.upper if isinstance(dm, LebesgueMeasure) else INF)
        tail_area = kernel.trawl.cumulative_capped(INF, cap) - \
            kernel.trawl.cumulative_capped(T, cap)
        return lm_weight * tail_area
    kappa = getattr(kernel, "kappa", 0.0)
    sides = 2.0 if isinstance(kernel, WellBalancedKernel) else 1.0

    def decayed(x: float) -> float:
        return x ** (kappa - 1.0) * math.exp(-x * T)

    v = dm.integrate(decayed, hi=trunc.v_bound)
    if not v.is_finite:
        return INF
    return sides * lm_weight * v.value


def truncation_error_bound(spec: MMASpec, trunc: TruncationParams) -> float:
    """Sum of the three truncation error terms; +inf flags an untruncatable spec.

    (i) envelope-weighted mass of discarded big jumps beyond v_bound,
    (ii) residual variance of dropped small jumps when no Gaussian refinement,
    (iii) L1 weight of jumps arriving before the past window.
    Infinite mixing mass below v_bound makes the bound infinite: that spec is
    in the blow-up regime and should be studied with the divergence ladder.
    """
    if math.isinf(spec.pi.interval_mass(0.0, effective_v_bound(spec, trunc))):
        return INF
    total = _big_jump_discard(spec, trunc.v_bound)
    if not trunc.gaussian_refine:
        sig2 = spec.levy.moment(2.0, 0.0, trunc.small_jump_eps)
        f2 = stationary_square_mass(spec.kernel, spec.pi)
        if sig2.is_finite and f2.is_finite:
            total += sig2.value * f2.value
        else:
            return INF
    total += _past_window_term(spec, trunc)
    return total


def default_truncation(spec: MMASpec, target: float = 1e-6) -> TruncationParams:
    """Spec-dependent defaults: eps 1e-3, past window grown until its error
    term drops below target.  A finite v_bound is mandatory (raised here) when
    the mixing measure has infinite mass."""
    base = TruncationParams()
    if math.isinf(spec.pi.interval_mass(0.0, effective_v_bound(spec, base))):
        raise SimulationError(
            "mixing measure has infinite total mass: choose v_bound explicitly "
            "(and consider the sup-divergence diagnostics instead)"
        )
    trunc = TruncationParams(small_jump_eps=1e-3, past_window=1.0, v_bound=INF,
                             gaussian_refine=True)
    t_past = 1.0
    for _ in range(40):
        term = _past_window_term(spec, replace(trunc, past_window=t_past))
        if term < target:
            return replace(trunc, past_window=t_past)
        if math.isinf(term):
            raise SimulationError(
                "past-window error bound is infinite for every window; "
                "choose the truncation explicitly"
            )
        t_past *= 2.0
    raise SimulationError("could not reach the past-window error target")
