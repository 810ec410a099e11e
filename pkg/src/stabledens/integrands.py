"""Integrands for the adaptive rule, selected by an integer code so that the
integrator kernels never take functions as arguments (which numba cannot
cache across processes)."""

import math

from ._jit import kernel

HALF_PI = 0.5 * math.pi
ENDPOINT_GUARD = 1e-14

# integration variable of the phi-integral
MODE_PHI = 0  # s = phi
MODE_UPPER = 1  # s = ln(pi/2 - phi)
MODE_LOWER = 2  # s = ln(phi + phi0)

DENSITY = 0
FOURIER = 1


@kernel
def log_u(dl, dh, phi, alpha, phi0):
    """ln U given both endpoint distances dl = phi + phi0, dh = pi/2 - phi.

    Returns NaN where a logarithm argument is not positive.
    """
    if dl <= 0.0 or dh <= 0.0:
        return math.nan
    s = math.sin(alpha * dl)
    c = math.sin(dh)  # cos(phi)
    k = math.cos(phi * (1.0 - alpha) - alpha * phi0)
    if s <= 0.0 or c <= 0.0 or k <= 0.0:
        return math.nan
    lc = math.log(c)
    return alpha / (1.0 - alpha) * (math.log(s) - lc) + math.log(k) - lc


@kernel
def log_t(s, p):
    # p = (alpha, phi0, log_x, width, mode)
    alpha = p[0]
    phi0 = p[1]
    width = p[3]
    mode = p[4]
    if mode == MODE_UPPER:
        dh = math.exp(s)
        dl = width - dh
        phi = HALF_PI - dh
    elif mode == MODE_LOWER:
        dl = math.exp(s)
        dh = width - dl
        phi = dl - phi0
    else:
        phi = s
        dl = s + phi0
        dh = HALF_PI - s
    lu = log_u(dl, dh, phi, alpha, phi0)
    return alpha / (alpha - 1.0) * p[2] + lu


@kernel
def density_integrand(s, p):
    """t e^-t, times d when s = ln d. Zero where U is undefined or at the
    endpoint limits."""
    mode = p[4]
    if mode == MODE_PHI:
        if s - (-p[1]) < ENDPOINT_GUARD or HALF_PI - s < ENDPOINT_GUARD:
            return 0.0
    lt = log_t(s, p)
    if math.isnan(lt) or lt > 700.0:
        return 0.0
    val = lt - math.exp(lt)
    if mode != MODE_PHI:
        val += s
    if val < -745.0:
        return 0.0
    return math.exp(val)


@kernel
def fourier_integrand(t, p):
    # Re exp(i t x - t^alpha e^(i psi)), p = (alpha, cos psi, sin psi, x)
    if t == 0.0:
        return 1.0
    ta = t ** p[0]
    return math.exp(-ta * p[1]) * math.cos(t * p[3] - ta * p[2])


@kernel
def evaluate(kind, s, p):
    if kind == FOURIER:
        return fourier_integrand(s, p)
    return density_integrand(s, p)
