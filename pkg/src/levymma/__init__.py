"""Levy-driven mixed moving average processes.

Modeling, numerical condition checking, shot-noise simulation and path
diagnostics for supOU, well-balanced supOU, trawl and power-weighted supOU
processes driven by a Levy basis.
"""

from .conditions import (
    ConditionReport,
    MMASpec,
    check_abs_continuity,
    check_cadlag,
    check_continuous,
    check_corollary_fastpath,
    check_existence,
    check_noncadlag,
    run_all_checks,
)
from .diagnostics import (
    ScalingFit,
    SupDivergenceResult,
    holder_estimate,
    increment_tail_scaling,
    moment_scaling,
    sup_divergence_experiment,
)
from .kernels import (
    EnvelopePair,
    ExpDecayTrawl,
    PowerDecayTrawl,
    PowerWeightedKernel,
    SingularTrawl,
    SupOUKernel,
    TabulatedTrawl,
    TrawlKernel,
    WellBalancedKernel,
    increment_integral,
    kernel_derivative,
    min_increment_integral,
    trawl_union_area,
)
from .measures import (
    AtomicDependence,
    AtomicLevy,
    BGIndices,
    CompoundPoisson,
    ExpDensity,
    ExponentialJump,
    FixedJump,
    GammaDensity,
    GammaLevy,
    LebesgueMeasure,
    ParetoTail,
    PowerDensity,
    TemperedStable,
)
from .quadrature import MomentVerdict, improper_integral
from .simulation import (
    PathEngine,
    PointSet,
    SamplePath,
    TruncationParams,
    default_truncation,
    generate_points,
    simulate_path,
    truncation_error_bound,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
