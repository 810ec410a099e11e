"""Adaptive 15-point Gauss-Kronrod quadrature (7-point Gauss embedded).

The error estimate follows QUADPACK's qk15. The adaptive driver bisects the
panel with the largest error until the target is met or ``limit`` panels
exist.
"""

import numpy as np

from ._jit import kernel
from .integrands import evaluate

XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)
_EPMACH = 2.220446049250313e-16
_UFLOW = 2.2250738585072014e-308
DEFAULT_LIMIT = 200


@kernel
def qk15(kind, a, b, p):
    """One GK15 panel. Returns (kronrod, error_estimate, resabs)."""
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    fc = evaluate(kind, centr, p)
    resg = fc * WG[3]
    resk = fc * WGK[7]
    resabs = abs(resk)
    fv1 = np.empty(7)
    fv2 = np.empty(7)
    for j in range(3):
        jtw = 2 * j + 1
        absc = hlgth * XGK[jtw]
        f1 = evaluate(kind, centr - absc, p)
        f2 = evaluate(kind, centr + absc, p)
        fv1[jtw] = f1
        fv2[jtw] = f2
        resg += WG[j] * (f1 + f2)
        resk += WGK[jtw] * (f1 + f2)
        resabs += WGK[jtw] * (abs(f1) + abs(f2))
    for j in range(4):
        jtwm1 = 2 * j
        absc = hlgth * XGK[jtwm1]
        f1 = evaluate(kind, centr - absc, p)
        f2 = evaluate(kind, centr + absc, p)
        fv1[jtwm1] = f1
        fv2[jtwm1] = f2
        resk += WGK[jtwm1] * (f1 + f2)
        resabs += WGK[jtwm1] * (abs(f1) + abs(f2))
    reskh = resk * 0.5
    resasc = WGK[7] * abs(fc - reskh)
    for j in range(7):
        resasc += WGK[j] * (abs(fv1[j] - reskh) + abs(fv2[j] - reskh))
    result = resk * hlgth
    resabs *= abs(hlgth)
    resasc *= abs(hlgth)
    abserr = abs((resk - resg) * hlgth)
    if resasc != 0.0 and abserr != 0.0:
        abserr = resasc * min(1.0, (200.0 * abserr / resasc) ** 1.5)
    if resabs > _UFLOW / (50.0 * _EPMACH):
        abserr = max(_EPMACH * 50.0 * resabs, abserr)
    return result, abserr, resabs


@kernel
def adaptive_gk15(kind, a, b, p, abs_tol, rel_tol, limit):
    """Integrate integrand ``kind`` (see integrands.evaluate) over [a, b].

    Refines until err <= min(abs_tol, rel_tol*|result|) or ``limit`` panels.
    Returns (result, err, n_evals, n_panels).
    """
    lo = np.empty(limit)
    hi = np.empty(limit)
    res = np.empty(limit)
    err = np.empty(limit)
    r0, e0, _ = qk15(kind, a, b, p)
    lo[0] = a
    hi[0] = b
    res[0] = r0
    err[0] = e0
    n = 1
    evals = 15
    total = r0
    total_err = e0
    while True:
        target = min(abs_tol, rel_tol * abs(total))
        if total_err <= target or n >= limit:
            break
        # bisect the worst panel
        k = 0
        for i in range(1, n):
            if err[i] > err[k]:
                k = i
        a1 = lo[k]
        b2 = hi[k]
        m = 0.5 * (a1 + b2)
        if m <= a1 or m >= b2:
            # panel cannot be split further in floating point
            break
        ra, ea, _ = qk15(kind, a1, m, p)
        rb, eb, _ = qk15(kind, m, b2, p)
        evals += 30
        hi[k] = m
        res[k] = ra
        err[k] = ea
        lo[n] = m
        hi[n] = b2
        res[n] = rb
        err[n] = eb
        n += 1
        total = 0.0
        total_err = 0.0
        for i in range(n):
            total += res[i]
            total_err += err[i]
    return total, total_err, evals, n


def integrate(kind, a, b, p, abs_tol=1e-10, rel_tol=1e-10, limit=DEFAULT_LIMIT):
    """Python-level wrapper returning (result, err, evaluations)."""
    r, e, n_eval, _ = adaptive_gk15(int(kind), float(a), float(b), p, abs_tol, rel_tol, int(limit))
    return float(r), float(e), int(n_eval)

