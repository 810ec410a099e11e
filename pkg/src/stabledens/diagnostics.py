"""Comparison of the phi-integral against the large-|x| series, and the
coordinate where a plain adaptive rule stops agreeing with the series."""

import math
from dataclasses import dataclass

from .evaluator import closed_form_alpha1
from .params import reflect, validate
from .quadrature import density_integral
from .series import tail_density
from .threshold import threshold_coordinate

# absolute target for the plain (unsplit) rule; with it the critical
# coordinates land near 1e7, 1e5 and 1e4 for alpha = 0.5, 0.7, 0.9
NAIVE_TOL = 1e-12
REFERENCE_TOL = 1e-12
BREAKDOWN_REL = 1e-3


@dataclass(frozen=True)
class DiagnoseRow:
    x: float
    density_quad: float
    density_series: float
    abs_diff: float
    remainder_bound: float
    below_threshold: bool
    n_terms: int


def reference_density(x: float, alpha: float, theta: float, naive: bool = False) -> float:
    """Closed form at alpha = 1, else the phi-integral (peak-split unless
    ``naive``)."""
    if alpha == 1.0:
        return closed_form_alpha1(x, theta)
    if naive:
        return density_integral(x, alpha, theta, NAIVE_TOL, split_peak=False).value
    return density_integral(x, alpha, theta, REFERENCE_TOL).value


def diagnose_point(
    x: float, alpha: float, theta: float, n_terms: int, eps: float, naive: bool = False
) -> DiagnoseRow:
    params = validate(alpha, theta)
    x_th = threshold_coordinate(params.alpha, n_terms, eps).x_threshold
    quad = reference_density(x, params.alpha, params.theta, naive)
    s = tail_density(x, params.alpha, params.theta, n_terms)
    return DiagnoseRow(
        x=float(x),
        density_quad=quad,
        density_series=s.value,
        abs_diff=abs(quad - s.value),
        remainder_bound=s.remainder_bound,
        below_threshold=abs(x) < x_th,
        n_terms=int(n_terms),
    )


def critical_coordinate(rows) -> float:
    """First x at or beyond the threshold where the quadrature deviates from
    the series by more than BREAKDOWN_REL relatively; inf if none."""
    for row in sorted(rows, key=lambda r: abs(r.x)):
        if row.below_threshold:
            continue
        if row.density_series != 0.0 and row.abs_diff / abs(row.density_series) > BREAKDOWN_REL:
            return row.x
    return math.inf


def breakdown_scan(
    alpha: float,
    theta: float = 0.0,
    n_terms: int = 30,
    eps: float = 1e-5,
    x_max: float = 1e11,
    per_decade: int = 10,
    naive: bool = True,
) -> float:
    """x_cr of the quadrature (plain rule unless ``naive`` is False),
    scanning a log grid from the threshold coordinate up to x_max."""
    params = validate(alpha, theta)
    x0 = threshold_coordinate(params.alpha, n_terms, eps).x_threshold
    lo = math.log10(x0)
    n = max(2, int(math.ceil((math.log10(x_max) - lo) * per_decade)) + 1)
    step = (math.log10(x_max) - lo) / (n - 1)
    for i in range(n):
        x = 10.0 ** (lo + i * step)
        if abs(reflect(x, params.theta).theta_star) >= 1.0:
            return math.inf
        row = diagnose_point(x, params.alpha, params.theta, n_terms, eps, naive=naive)
        if row.abs_diff / abs(row.density_series) > BREAKDOWN_REL:
            return x
    return math.inf
