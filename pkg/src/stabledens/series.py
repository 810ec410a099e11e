"""Large-|x| power series for the density and its remainder bound.

For x > 0 and |theta| < 1,

    g(x) = 1/pi * sum_{n>=0} (-1)^(n+1) / n! * Gamma(alpha n + 1)
                  * sin(pi/2 * alpha n (1 + theta)) * x^(-alpha n - 1)

truncated after N terms with

    |R_N(x)| <= x^(-alpha N - 1) / (pi N!) * (Gamma(alpha N + 1)
                + x^(-alpha) Gamma(alpha (N + 1) + 1)).

The series converges for every x when alpha < 1, for |x| > 1 when alpha = 1,
and is only asymptotic when alpha > 1.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._jit import kernel
from .errors import DivergedTerm, ThetaBoundary, ValidationError, ZeroCoordinate
from .numerics import LOG_PI, lgamma_kernel, logaddexp, neumaier_sum, series_phase, sin_half_pi_dd
from .params import reflect, validate

TERM_LIMIT = 1e300
_ULP = 2.0**-52
_LOG_MAX = 709.78
_LOG_TERM_LIMIT = math.log(TERM_LIMIT)


class Regime(enum.Enum):
    ConvergentAll = "ConvergentAll"
    ConvergentOutsideUnit = "ConvergentOutsideUnit"
    Asymptotic = "Asymptotic"


@dataclass(frozen=True)
class TailSeriesResult:
    value: float
    n_terms: int
    remainder_bound: float
    regime: Regime
    # floating-point error of the evaluated sum; the remainder bound
    # covers truncation only
    rounding_bound: float = 0.0


def classify_regime(alpha: float) -> Regime:
    if alpha < 1.0:
        return Regime.ConvergentAll
    if alpha == 1.0:
        return Regime.ConvergentOutsideUnit
    return Regime.Asymptotic


@kernel
def log_term_magnitude(n, log_x, alpha):
    """ln of Gamma(alpha n + 1) / (pi n!) * x^(-alpha n - 1)."""
    an = alpha * n
    return lgamma_kernel(an + 1.0) - lgamma_kernel(n + 1.0) - (an + 1.0) * log_x - LOG_PI


@kernel
def term_kernel(n, log_x, alpha, theta_star):
    if n == 0:
        return 0.0
    hi, lo = series_phase(alpha, theta_star, n)
    s = sin_half_pi_dd(hi, lo)
    if s == 0.0:
        return 0.0
    if n % 2 == 0:
        s = -s
    lm = log_term_magnitude(n, log_x, alpha)
    if lm > _LOG_MAX:
        return math.copysign(math.inf, s)
    return s * math.exp(lm)


@kernel
def fill_terms(out, log_x, alpha, theta_star):
    """Write terms 0..len(out)-1 into ``out``; return the index of the first
    term whose magnitude exceeds TERM_LIMIT, or -1."""
    for n in range(out.shape[0]):
        if n > 0 and log_term_magnitude(n, log_x, alpha) > _LOG_TERM_LIMIT:
            return n
        out[n] = term_kernel(n, log_x, alpha, theta_star)
    return -1


@kernel
def log_remainder_bound(log_x, alpha, n_terms):
    an = alpha * n_terms
    a = lgamma_kernel(an + 1.0)
    b = lgamma_kernel(an + alpha + 1.0) - alpha * log_x
    return logaddexp(a, b) - (an + 1.0) * log_x - LOG_PI - lgamma_kernel(n_terms + 1.0)


@kernel
def rounding_kernel(terms, log_x, alpha, total):
    """Bound on floating-point error in the summed series.

    Each term carries the error of exp() of a log-magnitude assembled from
    log-gamma values (a few ulp of their sizes); the compensated sum adds
    about one ulp of the total.
    """
    acc = 0.0
    for n in range(1, terms.shape[0]):
        an = alpha * n
        size = (
            abs(lgamma_kernel(an + 1.0))
            + abs(lgamma_kernel(n + 1.0))
            + abs((an + 1.0) * log_x)
            + LOG_PI
        )
        acc += abs(terms[n]) * (4.0 * size + 8.0)
    return _ULP * (acc + 2.0 * abs(total))


@kernel
def partial_sum_kernel(abs_x, alpha, theta_star, n_terms):
    """(value, status, rounding): status = -1 on success, else the index of
    the diverging term."""
    buf = np.zeros(n_terms)
    log_x = math.log(abs_x)
    bad = fill_terms(buf, log_x, alpha, theta_star)
    if bad >= 0:
        return math.nan, bad, math.inf
    total = neumaier_sum(buf)
    return total, -1, rounding_kernel(buf, log_x, alpha, total)


def tail_term(n: int, abs_x: float, alpha: float, theta_star: float) -> float:
    """n-th summand (1/pi included) of the large-x series at (abs_x, theta*).

    Overflowing terms come back as signed infinity.
    """
    if n < 0:
        raise ValidationError("n must be >= 0")
    if not abs_x > 0.0:
        raise ZeroCoordinate("abs_x must be positive")
    return float(term_kernel(int(n), math.log(abs_x), float(alpha), float(theta_star)))


def remainder_bound(abs_x: float, alpha: float, n_terms: int) -> float:
    """Upper bound on |g - g_N| at abs_x; independent of theta."""
    if n_terms < 1:
        raise ValidationError("n_terms must be >= 1")
    if not abs_x > 0.0:
        raise ZeroCoordinate("abs_x must be positive")
    lb = log_remainder_bound(math.log(abs_x), float(alpha), float(n_terms))
    if lb > _LOG_MAX:
        return math.inf
    return math.exp(lb)


def tail_density(x: float, alpha: float, theta: float, n_terms: int) -> TailSeriesResult:
    """N-term partial sum of the large-|x| series at x, with its remainder bound."""
    params = validate(alpha, theta)
    if n_terms < 1:
        raise ValidationError("n_terms must be >= 1")
    if x == 0.0:
        raise ZeroCoordinate("the large-x series is undefined at x = 0")
    pt = reflect(x, params.theta)
    if abs(pt.theta_star) >= 1.0:
        raise ThetaBoundary("the series excludes theta* = +-1")
    value, bad, rounding = partial_sum_kernel(pt.abs_x, params.alpha, pt.theta_star, int(n_terms))
    if bad >= 0:
        raise DivergedTerm(
            f"term {bad} exceeds {TERM_LIMIT:g} at |x|={pt.abs_x!r}, alpha={params.alpha!r}"
        )
    return TailSeriesResult(
        value=float(value),
        n_terms=int(n_terms),
        remainder_bound=remainder_bound(pt.abs_x, params.alpha, n_terms),
        regime=classify_regime(params.alpha),
        rounding_bound=float(rounding),
    )


def tail_mass(abs_x: float, alpha: float, theta_star: float, n_terms: int):
    """Probability mass beyond abs_x, integrating the series term by term.

    Returns (mass, bound) where bound integrates the remainder estimate over
    [abs_x, inf).
    """
    log_x = math.log(abs_x)
    terms = np.zeros(n_terms)
    for n in range(1, n_terms):
        # int_X^inf x^(-an-1) dx = X^(-an) / (an)
        terms[n] = float(term_kernel(n, log_x, alpha, theta_star)) * abs_x / (alpha * n)
    mass = float(neumaier_sum(terms))
    an = alpha * n_terms
    lead = lgamma_kernel(an + 1.0) - an * log_x - math.log(an)
    nxt = lgamma_kernel(an + alpha + 1.0) - (an + alpha) * log_x - math.log(an + alpha)
    bound = math.exp(logaddexp(lead, nxt) - LOG_PI - lgamma_kernel(n_terms + 1.0))
    return mass, bound
