"""Shared scalar kernels: log-gamma, sin(pi*y/2) with exact range reduction,
error-free transformations and compensated summation.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._jit import kernel
from .errors import DomainError

LOG_PI = math.log(math.pi)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_SPLITTER = 134217729.0  # 2**27 + 1

# Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients)
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
# B_2k / (2k (2k-1)), k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_STIRLING_CUTOFF = 10.0


@kernel
def two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


@kernel
def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


@kernel
def two_prod(a, b):
    """Dekker's product: a*b == p + e exactly (barring over/underflow)."""
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


@kernel
def _lanczos_lgamma(z):
    # valid for z >= 0.5
    zz = z - 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    return HALF_LOG_2PI + (zz + 0.5) * math.log(t) - t + math.log(acc)


@kernel
def _stirling_lgamma(z):
    # (z - 1/2) ln z - z + ln(2 pi)/2 + sum B_2k / (2k(2k-1) z^(2k-1)), with the
    # leading product carried in double-double so the result is good to ~1 ulp
    lz = math.log(z)
    e = math.exp(lz)
    lz_lo = (z - e) / e
    a = z - 0.5
    p, p_err = two_prod(a, lz)
    p_err += a * lz_lo
    s, s_err = two_sum(p, -z)
    inv = 1.0 / z
    inv2 = inv * inv
    corr = 0.0
    for k in range(7, -1, -1):
        corr = corr * inv2 + _STIRLING[k]
    corr *= inv
    return s + (s_err + p_err + HALF_LOG_2PI + corr)


@kernel
def lgamma_kernel(z):
    """ln Gamma(z) for z > 0; NaN outside the domain."""
    if not (z > 0.0):
        return math.nan
    if z == math.inf:
        return math.inf
    if z < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return LOG_PI - math.log(math.sin(math.pi * z)) - _lanczos_lgamma(1.0 - z)
    if z < _STIRLING_CUTOFF:
        return _lanczos_lgamma(z)
    return _stirling_lgamma(z)


def log_gamma(z: float) -> float:
    """Natural log of Gamma(z) for real z > 0.

    Lanczos (g=7) below z=10, a compensated Stirling series above it.
    """
    z = float(z)
    if not (z > 0.0):
        raise DomainError(f"log_gamma requires z > 0, got {z!r}")
    return float(lgamma_kernel(z))


@kernel
def sin_half_pi_dd(hi, lo):
    """sin(pi/2 * (hi + lo)) for a double-double argument.

    The argument is reduced modulo 4 exactly, so the result is exact zero for
    even integers and does not lose accuracy for large |hi|.
    """
    k = 4.0 * math.floor(hi * 0.25 + 0.5)
    r_hi, r_lo = two_sum(hi - k, lo)  # hi - k is exact
    # now r in [-2, 2]; fold into [-1, 1] using sin(pi/2 (2 - r)) = sin(pi/2 r)
    if r_hi > 1.0:
        r_hi, r_lo = two_sum(2.0 - r_hi, -r_lo)
    elif r_hi < -1.0:
        r_hi, r_lo = two_sum(-2.0 - r_hi, -r_lo)
    if r_hi == 0.0 and r_lo == 0.0:
        return 0.0
    h = 0.5 * math.pi * r_hi
    return math.sin(h) + math.cos(h) * (0.5 * math.pi * r_lo)


def sin_half_pi(y: float) -> float:
    """sin(pi*y/2) with y reduced modulo 4 before the trig call."""
    return float(sin_half_pi_dd(float(y), 0.0))


@kernel
def series_phase(alpha, theta, n):
    """alpha * n * (1 + theta) as a double-double (hi, lo)."""
    s_hi, s_lo = two_sum(1.0, theta)
    c_hi, c_err = two_prod(alpha, s_hi)
    c_err += alpha * s_lo
    c_hi, c_lo = two_sum(c_hi, c_err)
    fn = float(n)
    p_hi, p_err = two_prod(c_hi, fn)
    p_err += c_lo * fn
    return two_sum(p_hi, p_err)


@kernel
def neumaier_sum(terms):
    s = 0.0
    comp = 0.0
    for i in range(terms.shape[0]):
        t = terms[i]
        u = s + t
        if abs(s) >= abs(t):
            comp += (s - u) + t
        else:
            comp += (t - u) + s
        s = u
    return s + comp


def compensated_sum(terms) -> float:
    """Neumaier-compensated sum of a finite sequence."""
    arr = np.ascontiguousarray(np.asarray(terms, dtype=np.float64).ravel())
    if arr.size == 0:
        return 0.0
    return float(neumaier_sum(arr))


@dataclass(frozen=True)
class LogScaled:
    """A real number stored as sign * exp(log_magnitude + log_lo).

    ``log_lo`` is the low-order part of the logarithm (|log_lo| is a few ulp
    of 1), so that a float survives the round trip through ``from_float``
    and ``to_float`` unchanged.
    """

    log_magnitude: float
    sign: int
    log_lo: float = 0.0

    @classmethod
    def from_float(cls, value: float) -> "LogScaled":
        if value == 0.0:
            return cls(-math.inf, 0)
        a = abs(value)
        hi = math.log(a)
        e = math.exp(hi)
        lo = 0.0
        if 0.0 < e < math.inf:
            # a and e agree to a few hundred ulp, so a - e is exact
            lo = math.log1p((a - e) / e)
        return cls(hi, 1 if value > 0 else -1, lo)

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        e = math.exp(self.log_magnitude)
        return self.sign * (e + e * math.expm1(self.log_lo))

    def __mul__(self, other: "LogScaled") -> "LogScaled":
        if self.sign == 0 or other.sign == 0:
            return LogScaled(-math.inf, 0)
        hi, lo = self.log_magnitude + other.log_magnitude, self.log_lo + other.log_lo
        return LogScaled(hi, self.sign * other.sign, lo)


@kernel
def logaddexp(a, b):
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    if a > b:
        return a + math.log1p(math.exp(b - a))
    return b + math.log1p(math.exp(a - b))
