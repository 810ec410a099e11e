"""Threshold coordinate: the |x| at which the remainder bound of the N-term
series equals a requested absolute accuracy eps.
"""

import functools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._jit import kernel
from .errors import NoBracket, SolverError, ValidationError
from .numerics import LOG_PI, lgamma_kernel, logaddexp
from .params import validate

DEFAULT_N_MAX = 128
MAX_ITER = 200
_BRACKET_HALF_WIDTH = 50.0


@dataclass(frozen=True)
class ThresholdResult:
    x_threshold: float
    n_terms: int
    eps: float
    residual: float
    iterations: int


class ExplicitThreshold(NamedTuple):
    x_threshold: float
    valid: bool


@kernel
def _log_rhs(u, alpha, n_terms, lg_a, lg_b, lg_n):
    # ln of the remainder bound at x = exp(u), gamma values precomputed
    an = alpha * n_terms
    return logaddexp(lg_a, lg_b - alpha * u) - (an + 1.0) * u - LOG_PI - lg_n


@kernel
def _explicit_log_x(alpha, n_terms, log_eps):
    an = alpha * n_terms
    lg_a = lgamma_kernel(an + 1.0)
    lg_b = lgamma_kernel(an + alpha + 1.0)
    num = logaddexp(lg_a, lg_b) - LOG_PI - log_eps - lgamma_kernel(n_terms + 1.0)
    return num / (an + 1.0)


@kernel
def solve_log_threshold(alpha, n_terms, log_eps):
    """Bisection in u = ln x. Returns (u, iterations, status); status 0 ok,
    1 no bracket, 2 iteration limit."""
    an = alpha * n_terms
    lg_a = lgamma_kernel(an + 1.0)
    lg_b = lgamma_kernel(an + alpha + 1.0)
    lg_n = lgamma_kernel(n_terms + 1.0)
    u0 = _explicit_log_x(alpha, n_terms, log_eps)
    if u0 < math.log(1e-6):
        u0 = math.log(1e-6)
    lo = u0 - _BRACKET_HALF_WIDTH
    hi = u0 + _BRACKET_HALF_WIDTH
    # f(u) = ln RHS(u) - ln eps is strictly decreasing
    expand = 0
    while _log_rhs(lo, alpha, n_terms, lg_a, lg_b, lg_n) - log_eps < 0.0:
        lo -= _BRACKET_HALF_WIDTH * 2.0 ** expand
        expand += 1
        if expand > 30:
            return math.nan, 0, 1
    expand = 0
    while _log_rhs(hi, alpha, n_terms, lg_a, lg_b, lg_n) - log_eps > 0.0:
        hi += _BRACKET_HALF_WIDTH * 2.0 ** expand
        expand += 1
        if expand > 30:
            return math.nan, 0, 1
    it = 0
    while it < MAX_ITER:
        it += 1
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid, it, 0
        f = _log_rhs(mid, alpha, n_terms, lg_a, lg_b, lg_n) - log_eps
        if f == 0.0:
            return mid, it, 0
        if f > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, abs(mid)):
            return 0.5 * (lo + hi), it, 0
    return 0.5 * (lo + hi), it, 2


@kernel
def _scan_thresholds(alpha, n_max, log_eps, out_u, out_status):
    for n in range(1, n_max + 1):
        u, _, status = solve_log_threshold(alpha, float(n), log_eps)
        out_u[n - 1] = u
        out_status[n - 1] = status


def _check(alpha: float, n_terms: int, eps: float) -> None:
    validate(alpha, 0.0)
    if n_terms < 1:
        raise ValidationError("n_terms must be >= 1")
    if not (eps > 0.0 and math.isfinite(eps)):
        raise ValidationError("eps must be positive and finite")


def threshold_coordinate(alpha: float, n_terms: int, eps: float) -> ThresholdResult:
    """Unique root x of remainder_bound(x, alpha, N) = eps."""
    _check(alpha, n_terms, eps)
    log_eps = math.log(eps)
    u, iterations, status = solve_log_threshold(float(alpha), float(n_terms), log_eps)
    if status == 1:
        raise NoBracket(f"no bracket for alpha={alpha}, N={n_terms}, eps={eps}")
    if status == 2:
        raise SolverError(f"bisection did not converge for alpha={alpha}, N={n_terms}, eps={eps}")
    an = alpha * n_terms
    lg = (lgamma_kernel(an + 1.0), lgamma_kernel(an + alpha + 1.0), lgamma_kernel(n_terms + 1.0))
    residual = math.expm1(_log_rhs(u, float(alpha), float(n_terms), *lg) - log_eps)
    return ThresholdResult(
        x_threshold=math.exp(u),
        n_terms=int(n_terms),
        eps=float(eps),
        residual=residual,
        iterations=int(iterations),
    )


def threshold_explicit(alpha: float, n_terms: int, eps: float) -> ExplicitThreshold:
    """Closed-form threshold from the coarser bound with x^(-alpha) replaced by 1.

    Only meaningful when the value exceeds 1; ``valid`` reports that.
    """
    _check(alpha, n_terms, eps)
    x = math.exp(_explicit_log_x(float(alpha), float(n_terms), math.log(eps)))
    return ExplicitThreshold(x, x > 1.0)


def threshold_table(alpha: float, eps: float, n_max: int) -> np.ndarray:
    """Thresholds for N = 1..n_max (index N-1)."""
    _check(alpha, n_max, eps)
    out_u = np.empty(n_max)
    status = np.empty(n_max, dtype=np.int64)
    _scan_thresholds(float(alpha), int(n_max), math.log(eps), out_u, status)
    if np.any(status != 0):
        bad = int(np.argmax(status != 0)) + 1
        raise SolverError(f"threshold solve failed at N={bad}")
    return np.exp(out_u)


@functools.lru_cache(maxsize=256)
def optimal_terms(alpha: float, eps: float, n_max: int = DEFAULT_N_MAX):
    """(N*, x*) with N* in [1, n_max] minimising the threshold; ties go to
    the smaller N."""
    xs = threshold_table(alpha, eps, n_max)
    best = int(np.argmin(xs))  # first occurrence -> smallest N
    return best + 1, float(xs[best])
