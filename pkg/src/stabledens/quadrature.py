"""Density as a definite integral over a finite phi-interval, plus an
independent Fourier-inversion oracle.

For alpha != 1 and x != 0, with phi0 = pi*theta*/2,

    g(x) = alpha / (pi |alpha - 1|) * int_{-phi0}^{pi/2}
               exp(-|x|^(alpha/(alpha-1)) U) U |x|^(1/(alpha-1)) dphi

    U(phi) = (sin(alpha (phi + phi0)) / cos phi)^(alpha/(1-alpha))
             * cos(phi (1 - alpha) - alpha phi0) / cos phi.

Writing t = |x|^(alpha/(alpha-1)) U the integrand is t e^-t / |x|, which
peaks where t = 1. t is monotone in phi, so there is one peak; for large
|x| it sits within ~|x|^-alpha of an endpoint and an adaptive rule working
in phi cannot find it. The production path measures the distance d from
the endpoint nearest the peak and integrates in ln d on both sides of it.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._jit import kernel
from .errors import AlphaOne, ZeroCoordinate
from .gk import DEFAULT_LIMIT, adaptive_gk15
from .integrands import (
    DENSITY,
    FOURIER,
    HALF_PI,
    MODE_LOWER,
    MODE_PHI,
    MODE_UPPER,
    log_t,
    log_u,
)
from .params import THETA_SLACK, reflect, validate

DEFAULT_TOL = 1e-10
DEFAULT_REL_TOL = 1e-12
BOUNDARY_ERR_FACTOR = 10.0
# furthest the endpoint-side panel reaches, in units of ln d
_INNER_SPAN = 745.0
# panels end where the log-integrand is this far below its peak
_CUTOFF_DROP = 60.0
_GOLDEN_LO = -700.0


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    evaluations: int
    converged: bool


@dataclass(frozen=True)
class UKernelPoint:
    phi: float
    log_u: float
    defined: bool


@kernel
def _peak_score(v, p):
    # log of t e^-t, continued monotonically once t is astronomically large
    lt = log_t(v, p)
    if math.isnan(lt):
        return -math.inf
    if lt > 30.0:
        return -math.exp(30.0) * (1.0 + (lt - 30.0))
    return lt - math.exp(lt)


@kernel
def _golden_max(p, a, b, tol):
    invphi = 0.6180339887498949
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = _peak_score(c, p)
    fd = _peak_score(d, p)
    while b - a > tol:
        if fc >= fd:
            b = d
            d = c
            fd = fc
            c = b - invphi * (b - a)
            fc = _peak_score(c, p)
        else:
            a = c
            c = d
            fc = fd
            d = a + invphi * (b - a)
            fd = _peak_score(d, p)
    return 0.5 * (a + b)


@kernel
def _anchor(alpha, phi0, log_x, width, p):
    """Pick the endpoint nearest the peak and return (mode, ln d_peak, ok)."""
    p[0] = alpha
    p[1] = phi0
    p[2] = log_x
    p[3] = width
    p[4] = MODE_PHI
    mid = 0.5 * (HALF_PI - phi0)
    lt_mid = log_t(mid, p)
    # t increases with phi when alpha < 1 and decreases when alpha > 1
    if (alpha < 1.0) == (lt_mid < 0.0):
        p[4] = MODE_UPPER
    else:
        p[4] = MODE_LOWER
    hi = math.log(0.5 * width)
    lo = max(_GOLDEN_LO, hi - 745.0)
    v = _golden_max(p, lo, hi, 1e-12)
    ok = (v - lo) > 1e-9 and (hi - v) > 1e-9
    if not ok:
        # the peak is at (or outside) the search window: fall back to the middle
        v = hi
    return v, ok


@kernel
def _log_f(v, p):
    lt = log_t(v, p)
    if math.isnan(lt):
        return -math.inf
    if lt > 700.0:
        return -math.exp(700.0)
    return lt - math.exp(lt) + v


@kernel
def _cutoff(p, near, far, level):
    """Point between near (the peak) and far where ln(integrand) first drops
    to ``level``; ``far`` if it never does. The integrand is monotone on each
    side of the peak, so bisection is enough."""
    if _log_f(far, p) > level:
        return far
    for _ in range(200):
        mid = 0.5 * (near + far)
        if mid == near or mid == far:
            break
        if _log_f(mid, p) > level:
            near = mid
        else:
            far = mid
    return far


@kernel
def _split_integral(alpha, phi0, log_x, width, abs_tol, rel_tol, limit):
    p = np.empty(5)
    v, _ = _anchor(alpha, phi0, log_x, width, p)
    v_end = math.log(width)
    level = _log_f(v, p) - _CUTOFF_DROP
    v_in = _cutoff(p, v, v - _INNER_SPAN, level)
    v_out = _cutoff(p, v, v_end, level)
    r, e, n, _ = adaptive_gk15(DENSITY, v_in, v, p, 0.5 * abs_tol, rel_tol, limit)
    r2, e2, n2, _ = adaptive_gk15(DENSITY, v, v_out, p, 0.5 * abs_tol, rel_tol, limit)
    r += r2
    e += e2
    n += n2
    if v_out < v_end:
        # far side beyond the cutoff: tiny, but not assumed to be zero
        tail_tol = min(0.5 * abs_tol, rel_tol * abs(r))
        r3, e3, n3, _ = adaptive_gk15(DENSITY, v_out, v_end, p, tail_tol, math.inf, limit)
        r += r3
        e += e3
        n += n3
    return r, e, n


@kernel
def _plain_integral(alpha, phi0, log_x, width, abs_tol, rel_tol, limit):
    p = np.empty(5)
    p[0] = alpha
    p[1] = phi0
    p[2] = log_x
    p[3] = width
    p[4] = MODE_PHI
    r, e, n, _ = adaptive_gk15(DENSITY, -phi0, HALF_PI, p, abs_tol, rel_tol, limit)
    return r, e, n


def u_kernel(phi: float, alpha: float, theta_star: float) -> UKernelPoint:
    """ln U(phi, alpha, theta*) evaluated in log-space."""
    if alpha == 1.0:
        raise AlphaOne("U is not defined for alpha = 1")
    phi0 = HALF_PI * theta_star
    lu = float(log_u(phi + phi0, HALF_PI - phi, phi, float(alpha), phi0))
    if math.isnan(lu):
        return UKernelPoint(float(phi), math.nan, False)
    return UKernelPoint(float(phi), lu, True)


def _prepare(x, alpha, theta):
    params = validate(alpha, theta)
    if params.alpha == 1.0:
        raise AlphaOne("the integral representation requires alpha != 1; use the closed form")
    if x == 0.0 or not math.isfinite(x):
        raise ZeroCoordinate("the integral representation requires finite x != 0")
    pt = reflect(x, params.theta)
    theta_star = max(-1.0, min(1.0, pt.theta_star))
    return params.alpha, theta_star, pt.abs_x


def peak_locate(x: float, alpha: float, theta_star: float) -> float:
    """phi at which the integrand t e^-t is largest (where t = 1).

    Found by golden-section search in the log-distance from the nearer
    endpoint; falls back to the interval midpoint when no interior maximum
    is bracketed.
    """
    if alpha == 1.0:
        raise AlphaOne("alpha = 1 has no integral representation here")
    if x == 0.0:
        raise ZeroCoordinate("x must be nonzero")
    phi0 = HALF_PI * theta_star
    width = HALF_PI + phi0
    if width <= 0.0:
        return HALF_PI
    p = np.empty(5)
    v, ok = _anchor(float(alpha), phi0, math.log(abs(x)), width, p)
    if not ok:
        return 0.5 * (HALF_PI - phi0)
    if p[4] == MODE_UPPER:
        return HALF_PI - math.exp(v)
    return math.exp(v) - phi0


def density_integral(
    x: float,
    alpha: float,
    theta: float,
    tol: float = DEFAULT_TOL,
    *,
    split_peak: bool = True,
    rel_tol: float = DEFAULT_REL_TOL,
    limit: int = DEFAULT_LIMIT,
) -> QuadResult:
    """Density at x from the phi-integral, absolute accuracy target ``tol``.

    Refinement also aims for ``rel_tol`` relative accuracy, but ``converged``
    reports only whether the absolute target was met.

    ``split_peak=False`` integrates directly in phi against the absolute
    target alone (``rel_tol`` is ignored). That is the textbook setup, and it
    loses the peak once |x| is large enough; it is kept to reproduce the
    breakdown.
    """
    alpha, theta_star, abs_x = _prepare(x, alpha, theta)
    phi0 = HALF_PI * theta_star
    width = HALF_PI + phi0
    if width <= 0.0:
        # theta* = -1 with alpha < 1: x lies outside the support
        return QuadResult(0.0, 0.0, 0, True)
    log_x = math.log(abs_x)
    log_scale = math.log(alpha / (math.pi * abs(alpha - 1.0))) - log_x
    scale_tol = tol * math.exp(-log_scale) if log_scale > -700.0 else math.inf
    if split_peak:
        kern = _split_integral
    else:
        kern = _plain_integral
        rel_tol = math.inf
    r, e, n = kern(alpha, phi0, log_x, width, scale_tol, rel_tol, int(limit))
    value = math.exp(math.log(r) + log_scale) if r > 0.0 else 0.0
    err = math.exp(math.log(e) + log_scale) if e > 0.0 else 0.0
    if abs(abs(theta_star) - 1.0) <= THETA_SLACK:
        err *= BOUNDARY_ERR_FACTOR
    return QuadResult(value, err, int(n), err <= tol)


# --- Fourier inversion ------------------------------------------------------

_AVERAGING_DEPTH = 12
_MAX_ARCHES = 200000


@kernel
def _fourier_kernel(x, alpha, theta, tol):
    psi = HALF_PI * alpha * theta
    p = np.empty(4)
    p[0] = alpha
    p[1] = math.cos(psi)
    p[2] = math.sin(psi)
    p[3] = x
    if p[1] <= 0.0:
        return math.nan, math.inf, 0, False
    panel_tol = 1e-3 * tol
    # beyond t_env the envelope is below e^-800
    t_env = (800.0 / p[1]) ** (1.0 / alpha)
    evals = 0
    err_sum = 0.0
    if x == 0.0:
        total = 0.0
        a = 0.0
        b = 1.0
        while a < t_env:
            r, e, n, _ = adaptive_gk15(FOURIER, a, b, p, panel_tol, 1e-14, 200)
            total += r
            err_sum += e
            evals += n
            a = b
            b *= 2.0
        return total, err_sum, evals, err_sum <= tol
    h = math.pi / abs(x)
    t_max = max(50.0, 50.0 / abs(x))
    hist = np.zeros(_AVERAGING_DEPTH + 1)
    work = np.zeros(_AVERAGING_DEPTH + 1)
    total = 0.0
    prev_acc = math.nan
    a = 0.0
    b = 0.5 * h
    k = 0
    while k < _MAX_ARCHES:
        r, e, n, _ = adaptive_gk15(FOURIER, a, b, p, panel_tol, 1e-14, 200)
        total += r
        err_sum += e
        evals += n
        if b >= t_env:
            return total, err_sum, evals, err_sum <= tol
        # shift the partial-sum history
        for i in range(_AVERAGING_DEPTH):
            hist[i] = hist[i + 1]
        hist[_AVERAGING_DEPTH] = total
        k += 1
        if k > _AVERAGING_DEPTH and b >= t_max:
            # repeated averaging of consecutive partial sums
            for i in range(_AVERAGING_DEPTH + 1):
                work[i] = hist[i]
            spread = 0.0
            for level in range(_AVERAGING_DEPTH):
                if level == _AVERAGING_DEPTH - 1:
                    spread = abs(work[0] - work[1])
                for i in range(_AVERAGING_DEPTH - level):
                    work[i] = 0.5 * (work[i] + work[i + 1])
            acc = work[0]
            if not math.isnan(prev_acc):
                delta = abs(acc - prev_acc)
                if delta < 0.1 * tol:
                    # the last averaging step's spread guards against two
                    # accelerated values agreeing away from the limit
                    err = delta + spread + err_sum
                    return acc, err, evals, err <= tol
            prev_acc = acc
        a = b
        b = a + h
    return total, math.inf, evals, False


def fourier_oracle(x: float, alpha: float, theta: float, tol: float = 1e-12) -> QuadResult:
    """Density by direct inversion of the characteristic function.

    Integrates arch by arch between zeros of cos(t x) and accelerates the
    alternating partial sums. Slow, and unusable for large |x|; meant as an
    independent check.
    """
    params = validate(alpha, theta)
    r, e, n, ok = _fourier_kernel(float(x), params.alpha, params.theta, math.pi * tol)
    return QuadResult(float(r) / math.pi, float(e) / math.pi, int(n), bool(ok))
