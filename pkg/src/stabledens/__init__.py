"""Densities of strictly stable laws, including the far tails.

Large |x| is handled by a power series whose truncation error is bounded;
moderate |x| by a finite-interval integral evaluated with peak-aware
Gauss-Kronrod quadrature.
"""

__version__ = "0.1.0"

from ._jit import JIT_ENABLED, backend_name
from .errors import (
    AlphaOne,
    AlphaOutOfRange,
    DegenerateAtom,
    DivergedTerm,
    DomainError,
    LambdaNonPositive,
    NoBracket,
    NotConverged,
    NumericalError,
    SolverError,
    StableDensityError,
    ThetaBoundary,
    ThetaOutOfRange,
    ValidationError,
    ZeroCoordinate,
)
from .evaluator import (
    DensityValue,
    Strategy,
    closed_form_alpha1,
    density,
    density_at_zero,
    gaussian_closed_form,
)
from .numerics import LogScaled, compensated_sum, log_gamma, sin_half_pi
from .params import ReflectedPoint, StableParams, reflect, theta_max, validate
from .quadrature import (
    QuadResult,
    UKernelPoint,
    density_integral,
    fourier_oracle,
    peak_locate,
    u_kernel,
)
from .series import (
    Regime,
    TailSeriesResult,
    classify_regime,
    remainder_bound,
    tail_density,
    tail_term,
)
from .threshold import (
    ExplicitThreshold,
    ThresholdResult,
    optimal_terms,
    threshold_coordinate,
    threshold_explicit,
)

__all__ = [
    "__version__",
    "AlphaOne",
    "AlphaOutOfRange",
    "backend_name",
    "classify_regime",
    "closed_form_alpha1",
    "compensated_sum",
    "DegenerateAtom",
    "density",
    "density_at_zero",
    "density_integral",
    "DensityValue",
    "DivergedTerm",
    "DomainError",
    "ExplicitThreshold",
    "fourier_oracle",
    "gaussian_closed_form",
    "JIT_ENABLED",
    "LambdaNonPositive",
    "log_gamma",
    "LogScaled",
    "NoBracket",
    "NotConverged",
    "NumericalError",
    "optimal_terms",
    "peak_locate",
    "QuadResult",
    "reflect",
    "ReflectedPoint",
    "Regime",
    "remainder_bound",
    "sin_half_pi",
    "SolverError",
    "StableDensityError",
    "StableParams",
    "Strategy",
    "tail_density",
    "tail_term",
    "TailSeriesResult",
    "theta_max",
    "ThetaBoundary",
    "ThetaOutOfRange",
    "threshold_coordinate",
    "threshold_explicit",
    "ThresholdResult",
    "u_kernel",
    "UKernelPoint",
    "validate",
    "ValidationError",
    "ZeroCoordinate",
]
