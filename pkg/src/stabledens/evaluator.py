"""Point evaluation of the density with automatic choice of method."""

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DegenerateAtom, SolverError, ThetaOutOfRange, ValidationError
from .numerics import sin_half_pi
from .params import THETA_SLACK, StableParams, reflect, validate
from .quadrature import density_integral, fourier_oracle
from .series import tail_density
from .threshold import DEFAULT_N_MAX, optimal_terms, threshold_coordinate

DEFAULT_EPS = 1e-5
ATOM_TOL = 1e-12
_INV_2SQRTPI = 0.5 / math.sqrt(math.pi)


class Strategy(enum.Enum):
    ClosedFormAlpha1 = "ClosedFormAlpha1"
    ClosedFormGauss = "ClosedFormGauss"
    ClosedFormZero = "ClosedFormZero"
    SeriesTail = "SeriesTail"
    Integral = "Integral"
    Oracle = "Oracle"


@dataclass(frozen=True)
class DensityValue:
    value: float
    strategy: Strategy
    error_bound: Optional[float] = None
    n_terms: Optional[int] = None
    x_threshold: Optional[float] = None
    converged: bool = True


def closed_form_alpha1(x: float, theta: float) -> float:
    """Density of the generalized Cauchy law (alpha = 1).

    At |theta| = 1 the law is a point mass at x = sin(pi*theta/2): zero
    elsewhere, DegenerateAtom on the atom.
    """
    theta = float(theta)
    if not abs(theta) <= 1.0 + THETA_SLACK:
        raise ThetaOutOfRange(f"theta={theta!r} outside [-1, 1]")
    s = sin_half_pi(theta)
    if abs(theta) >= 1.0:
        if abs(x - s) <= ATOM_TOL:
            raise DegenerateAtom(f"alpha=1, theta={theta!r} has an atom at x={s!r}")
        return 0.0
    c = sin_half_pi(1.0 - theta)  # cos(pi*theta/2), exact 0 at theta = 1
    d = x - s
    return c / (math.pi * (d * d + c * c))


def density_at_zero(alpha: float, theta: float) -> float:
    """g(0) = cos(pi*theta/2) * Gamma(1/alpha + 1) / pi."""
    params = validate(alpha, theta)
    return sin_half_pi(1.0 - params.theta) * math.gamma(1.0 / params.alpha + 1.0) / math.pi


def gaussian_closed_form(x: float) -> float:
    """alpha = 2 density, exp(-x^2/4) / (2 sqrt(pi))."""
    return _INV_2SQRTPI * math.exp(-0.25 * x * x)


def _series(xs, alpha, theta, eps, n_terms):
    x_th = threshold_coordinate(alpha, n_terms, eps).x_threshold
    r = tail_density(xs, alpha, theta, n_terms)
    certified = abs(xs) >= x_th and r.remainder_bound + r.rounding_bound <= eps
    return r, x_th, certified


def density(
    x: float,
    params: StableParams,
    eps: float = DEFAULT_EPS,
    strategy_override: Optional[Strategy] = None,
    n_max: int = DEFAULT_N_MAX,
    n_terms: Optional[int] = None,
) -> DensityValue:
    """Density at x for the law ``params`` with absolute accuracy ``eps``.

    Automatic dispatch, after standardizing x_s = x * lam^(-1/alpha): closed
    forms for alpha = 1, x_s = 0 and alpha = 2; the large-|x| series with the
    best N <= n_max when |x_s| is beyond its threshold and the rounding error
    of the sum also fits within eps; otherwise the phi-integral with
    tolerance eps/10.

    ``strategy_override`` forces a method. A forced series below its
    threshold is still evaluated but comes back with ``converged=False``.
    ``n_terms`` fixes N for the series instead of optimizing it. The
    reported ``x_threshold`` is on the standardized scale of x_s.
    """
    if not (eps > 0.0 and math.isfinite(eps)):
        raise ValidationError("eps must be positive and finite")
    if not math.isfinite(x):
        raise ValidationError(f"x={x!r} must be finite")
    params = validate(params.alpha, params.theta, params.lam)
    alpha, theta = params.alpha, params.theta
    inv = 1.0 if params.lam == 1.0 else params.lam ** (-1.0 / alpha)
    xs = x * inv
    strategy = strategy_override

    if strategy is None:
        if alpha == 1.0:
            strategy = Strategy.ClosedFormAlpha1
        elif xs == 0.0:
            strategy = Strategy.ClosedFormZero
        elif alpha == 2.0:
            strategy = Strategy.ClosedFormGauss
        else:
            strategy = Strategy.Integral
            if abs(reflect(xs, theta).theta_star) < 1.0:
                try:
                    n_best, x_best = optimal_terms(alpha, eps, n_max)
                except SolverError:
                    n_best = None
                if n_terms is not None:
                    n_best = n_terms
                    x_best = threshold_coordinate(alpha, n_terms, eps).x_threshold
                if n_best is not None and abs(xs) >= x_best:
                    r = tail_density(xs, alpha, theta, n_best)
                    # beyond the threshold truncation is within eps; rounding
                    # in the sum is not, so it has to fit as well
                    bound = r.remainder_bound + r.rounding_bound
                    if bound <= eps:
                        return DensityValue(
                            value=max(r.value, 0.0) * inv,
                            strategy=Strategy.SeriesTail,
                            error_bound=bound * inv,
                            n_terms=n_best,
                            x_threshold=x_best,
                        )

    if strategy is Strategy.ClosedFormAlpha1:
        if alpha != 1.0:
            raise ValidationError("ClosedFormAlpha1 requires alpha = 1")
        return DensityValue(closed_form_alpha1(xs, theta) * inv, strategy)
    if strategy is Strategy.ClosedFormZero:
        if xs != 0.0:
            raise ValidationError("ClosedFormZero requires x = 0")
        return DensityValue(density_at_zero(alpha, theta) * inv, strategy)
    if strategy is Strategy.ClosedFormGauss:
        if alpha != 2.0:
            raise ValidationError("ClosedFormGauss requires alpha = 2")
        return DensityValue(gaussian_closed_form(xs) * inv, strategy)
    if strategy is Strategy.SeriesTail:
        n = n_terms if n_terms is not None else optimal_terms(alpha, eps, n_max)[0]
        r, x_th, certified = _series(xs, alpha, theta, eps, n)
        bound = r.remainder_bound + r.rounding_bound
        return DensityValue(
            value=max(r.value, 0.0) * inv,
            strategy=strategy,
            error_bound=bound * inv,
            n_terms=n,
            x_threshold=x_th,
            converged=certified,
        )
    if strategy is Strategy.Integral:
        q = density_integral(xs, alpha, theta, eps / 10.0)
        return DensityValue(q.value * inv, strategy, q.err_estimate * inv, converged=q.converged)
    if strategy is Strategy.Oracle:
        q = fourier_oracle(xs, alpha, theta, eps / 10.0)
        return DensityValue(
            max(q.value, 0.0) * inv, strategy, q.err_estimate * inv, converged=q.converged
        )
    raise ValidationError(f"unknown strategy {strategy!r}")
