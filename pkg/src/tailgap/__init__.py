"""tailgap: the gap between tail probabilities and tail expectations under
heavy tails, and the propagation of Beta-distributed probability errors
through Pareto quantile maps.
"""

from .distributions import (
    DistributionSpec,
    Exponential,
    Lognormal,
    Spliced,
    StrongPareto,
    derived_rng,
    make_rng,
    spec_from_json,
)
from .errors import (
    ConfigError,
    DegenerateGridError,
    DomainError,
    InfiniteMomentError,
    TailgapError,
    UnboundedBandError,
)
from .experiments import (
    SweepRow,
    SweepTable,
    amplification_curve,
    nonconvergence_demo,
    pit_check,
    skewness_sweep,
    sum_of_bets,
)
from .extended import INFINITE, ExtendedReal, finite
from .propagation import (
    BetaErrorModel,
    ErrorBand,
    PushforwardResult,
    beta_moments,
    error_band,
    moment_exists,
    pushforward_density,
    pushforward_mean,
    pushforward_sample,
    pushforward_variance,
)
from .tail_measures import (
    IDENTITY,
    INDICATOR,
    ImpactFunction,
    TailDecomposition,
    moment_map,
    partial_expectation,
    tail_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "BetaErrorModel",
    "ConfigError",
    "DegenerateGridError",
    "DistributionSpec",
    "DomainError",
    "ErrorBand",
    "Exponential",
    "ExtendedReal",
    "IDENTITY",
    "INDICATOR",
    "INFINITE",
    "ImpactFunction",
    "InfiniteMomentError",
    "Lognormal",
    "PushforwardResult",
    "Spliced",
    "StrongPareto",
    "SweepRow",
    "SweepTable",
    "TailDecomposition",
    "TailgapError",
    "UnboundedBandError",
    "amplification_curve",
    "beta_moments",
    "derived_rng",
    "error_band",
    "finite",
    "make_rng",
    "moment_exists",
    "moment_map",
    "nonconvergence_demo",
    "partial_expectation",
    "pit_check",
    "pushforward_density",
    "pushforward_mean",
    "pushforward_sample",
    "pushforward_variance",
    "skewness_sweep",
    "spec_from_json",
    "sum_of_bets",
    "tail_decomposition",
    "__version__",
]
