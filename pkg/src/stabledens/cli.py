"""Command-line front end.

Exit codes: 0 ok, 1 selftest failure, 2 invalid input, 3 numerical failure,
64 usage error.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .diagnostics import critical_coordinate, diagnose_point
from .errors import NumericalError, StableDensityError, ValidationError
from .evaluator import DEFAULT_EPS, Strategy, density
from .params import StableParams, validate
from .threshold import DEFAULT_N_MAX, optimal_terms, threshold_coordinate, threshold_explicit

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 64
MAX_POINTS = 10**7

SWEEP_FIELDS = ["x", "alpha", "theta", "lambda", "density", "strategy", "error_bound"]
EVAL_FIELDS = SWEEP_FIELDS + ["n_terms", "x_threshold", "converged"]
THRESHOLD_FIELDS = ["alpha", "N", "eps", "x_threshold", "method"]
DIAGNOSE_FIELDS = [
    "x",
    "density_quad",
    "density_series",
    "abs_diff",
    "remainder_bound",
    "below_threshold",
    "n_terms",
]

_METHODS = {
    "auto": None,
    "series": Strategy.SeriesTail,
    "quad": Strategy.Integral,
    "oracle": Strategy.Oracle,
    "closed": "closed",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


@dataclass(frozen=True)
class SweepSpec:
    x_min: float
    x_max: float
    points: int
    spacing: str
    params: StableParams
    eps: float

    def __post_init__(self):
        if self.points < 2:
            raise ValidationError("points must be >= 2")
        if self.points > MAX_POINTS:
            raise ValidationError(f"points must be <= {MAX_POINTS}")
        if self.spacing == "log" and not self.x_min > 0.0:
            raise ValidationError("log spacing requires x_min > 0")
        if not self.x_max > self.x_min:
            raise ValidationError("x_max must exceed x_min")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.x_min, self.x_max, self.points)
        return np.linspace(self.x_min, self.x_max, self.points)


def fmt(value) -> str:
    """Text form of a CSV cell; floats use 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, Strategy):
        return value.value
    return str(value)


def _jsonable(value):
    if isinstance(value, Strategy):
        return value.value
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def emit(rows, fields, fmt_name="csv", header=True, out=None):
    out = out or sys.stdout
    if fmt_name == "json":
        payload = [{k: _jsonable(r.get(k)) for k in fields} for r in rows]
        out.write(json.dumps(payload, indent=1) + "\n")
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if header:
        writer.writerow(fields)
    for r in rows:
        writer.writerow([fmt(r.get(k)) for k in fields])
    out.write(buf.getvalue())


def worker_count() -> int:
    raw = os.environ.get("STABLE_DENSITY_THREADS")
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise ValidationError(f"STABLE_DENSITY_THREADS={raw!r} is not an integer") from None
    if n < 1:
        raise ValidationError("STABLE_DENSITY_THREADS must be >= 1")
    return n


def parallel_map(fn, items):
    """Ordered map over a thread pool (kernels release the GIL)."""
    items = list(items)
    n = min(worker_count(), max(1, len(items)))
    if n == 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _strategy_for(method, params, x):
    choice = _METHODS[method]
    if choice != "closed":
        return choice
    xs = x * params.lam ** (-1.0 / params.alpha)
    if params.alpha == 1.0:
        return Strategy.ClosedFormAlpha1
    if xs == 0.0:
        return Strategy.ClosedFormZero
    if params.alpha == 2.0:
        return Strategy.ClosedFormGauss
    raise ValidationError(f"no closed form for alpha={params.alpha!r} at x={x!r}")


def _density_row(x, params, eps, method, n_terms, n_max):
    dv = density(
        x,
        params,
        eps,
        strategy_override=_strategy_for(method, params, x),
        n_max=n_max,
        n_terms=n_terms,
    )
    return {
        "x": float(x),
        "alpha": params.alpha,
        "theta": params.theta,
        "lambda": params.lam,
        "density": dv.value,
        "strategy": dv.strategy,
        "error_bound": dv.error_bound,
        "n_terms": dv.n_terms,
        "x_threshold": dv.x_threshold,
        "converged": dv.converged,
    }


def _error_name(exc):
    return type(exc).__name__


def _fail(exc) -> int:
    sys.stderr.write(f"error: {_error_name(exc)}: {exc}\n")
    if isinstance(exc, ValidationError):
        return EXIT_VALIDATION
    return EXIT_NUMERICAL


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def cmd_eval(args) -> int:
    try:
        params = validate(args.alpha, args.theta, args.lam)
        row = _density_row(args.x, params, args.eps, args.method, args.n_terms, args.n_max)
    except StableDensityError as exc:
        return _fail(exc)
    emit([row], EVAL_FIELDS, args.format, header=args.header)
    if args.strict and not row["converged"]:
        sys.stderr.write("error: NotConverged: result did not meet the requested accuracy\n")
        return EXIT_NUMERICAL
    return EXIT_OK


def _sweep_rows(spec, method, n_terms, n_max, keep_failures):
    def one(x):
        try:
            return _density_row(float(x), spec.params, spec.eps, method, n_terms, n_max)
        except StableDensityError as exc:
            if not keep_failures:
                raise
            return {
                "x": float(x),
                "alpha": spec.params.alpha,
                "theta": spec.params.theta,
                "lambda": spec.params.lam,
                "strategy": None,
                "reason": f"{_error_name(exc)}: {exc}",
                "converged": False,
            }

    rows = parallel_map(one, spec.grid())
    rows.sort(key=lambda r: r["x"])
    return rows


def cmd_sweep(args) -> int:
    try:
        params = validate(args.alpha, args.theta, args.lam)
        spec = SweepSpec(args.x_min, args.x_max, args.points, args.spacing, params, args.eps)
        rows = _sweep_rows(spec, args.method, args.n_terms, args.n_max, args.keep_failures)
    except StableDensityError as exc:
        return _fail(exc)
    fields = SWEEP_FIELDS + (["reason"] if args.keep_failures else [])
    emit(rows, fields, args.format)
    if args.strict and not all(r["converged"] for r in rows):
        return EXIT_NUMERICAL
    return EXIT_OK


def cmd_threshold(args) -> int:
    rows = []
    try:
        validate(args.alpha, 0.0)
        if args.optimize:
            n, x = optimal_terms(args.alpha, args.eps, args.n_max)
            rows.append({"alpha": args.alpha, "N": n, "eps": args.eps, "x_threshold": x,
                         "method": "optimal"})
        else:
            for n in args.n_terms or [30]:
                if args.explicit:
                    ex = threshold_explicit(args.alpha, n, args.eps)
                    method = "explicit" if ex.valid else "explicit-invalid"
                    x = ex.x_threshold
                else:
                    x = threshold_coordinate(args.alpha, n, args.eps).x_threshold
                    method = "bisection"
                rows.append({"alpha": args.alpha, "N": n, "eps": args.eps, "x_threshold": x,
                             "method": method})
    except StableDensityError as exc:
        return _fail(exc)
    emit(rows, THRESHOLD_FIELDS, args.format)
    return EXIT_OK


def cmd_diagnose(args) -> int:
    try:
        params = validate(args.alpha, args.theta)
        spec = SweepSpec(args.x_min, args.x_max, args.points, args.spacing, params, args.eps)
        tasks = [(n, float(x)) for n in args.n_terms for x in spec.grid()]

        def one(task):
            n, x = task
            try:
                row = diagnose_point(x, params.alpha, params.theta, n, args.eps, args.naive)
                return row, None
            except StableDensityError as exc:
                if not args.keep_failures:
                    raise
                return (n, x), f"{_error_name(exc)}: {exc}"

        results = parallel_map(one, tasks)
    except StableDensityError as exc:
        return _fail(exc)
    rows = []
    by_n = {}
    for res, reason in results:
        if reason is None:
            rows.append(dict(res.__dict__, reason=None))
            by_n.setdefault(res.n_terms, []).append(res)
        else:
            n, x = res
            rows.append({"x": x, "n_terms": n, "reason": reason})
    rows.sort(key=lambda r: (r["n_terms"], r["x"]))
    fields = DIAGNOSE_FIELDS + (["reason"] if args.keep_failures else [])
    emit(rows, fields, args.format)
    for n in args.n_terms:
        x_cr = critical_coordinate(by_n.get(n, []))
        label = "none" if math.isinf(x_cr) else format(x_cr, ".6g")
        sys.stderr.write(f"x_cr[N={n}]={label}\n")
    return EXIT_OK


def _selftest_checks():
    from .evaluator import closed_form_alpha1, gaussian_closed_form
    from .quadrature import density_integral
    from .series import tail_density, tail_mass

    def closed_forms():
        worst = 0.0
        for x in np.linspace(-20.0, 20.0, 41):
            worst = max(worst, abs(density(x, StableParams(1.0, 0.0)).value
                                   - 1.0 / (math.pi * (1.0 + x * x))))
            worst = max(worst, abs(density(x, StableParams(2.0, 0.0)).value
                                   - gaussian_closed_form(x)))
        return worst <= 1e-12, f"max diff {worst:.2e}"

    def reflection():
        worst = 0.0
        for a, t in [(0.6, 0.5), (1.3, -0.4), (1.0, 0.7)]:
            for x in (0.3, 2.0, 40.0):
                p, q = StableParams(a, t), StableParams(a, -t)
                worst = max(worst, abs(density(-x, p).value - density(x, q).value))
        return worst <= 1e-12, f"max diff {worst:.2e}"

    def normalization():
        a, t = 1.2, 0.3
        xmax = 200.0
        nodes, weights = np.polynomial.legendre.leggauss(40)
        edges = np.concatenate([-np.geomspace(xmax, 0.05, 40), [0.0], np.geomspace(0.05, xmax, 40)])
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            xs = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
            vals = [density(x, StableParams(a, t), eps=1e-11).value for x in xs]
            total += 0.5 * (hi - lo) * float(np.dot(weights, vals))
        for sgn in (1.0, -1.0):
            m, _ = tail_mass(xmax, a, sgn * t, 12)
            total += m
        return abs(total - 1.0) <= 1e-6, f"mass {total:.10f}"

    def overlap():
        worst = 0.0
        for a in (0.7, 1.3):
            x0 = threshold_coordinate(a, 30, 1e-5).x_threshold
            for x in np.geomspace(x0, 30.0 * x0, 6):
                s = tail_density(x, a, 0.0, 30).value
                q = density_integral(x, a, 0.0, 1e-12).value
                worst = max(worst, abs(s - q))
        return worst <= 1e-5, f"max diff {worst:.2e}"

    def cauchy_series():
        worst = 0.0
        for x in (1.5, 3.0, 10.0):
            worst = max(worst, abs(tail_density(x, 1.0, 0.3, 200).value
                                   - closed_form_alpha1(x, 0.3)))
        return worst <= 1e-10, f"max diff {worst:.2e}"

    return [
        ("closed_forms", closed_forms),
        ("reflection", reflection),
        ("normalization", normalization),
        ("overlap_agreement", overlap),
        ("cauchy_series", cauchy_series),
    ]


def cmd_selftest(args) -> int:
    ok_all = True
    out = sys.stdout
    out.write(f"{'check':<20} {'status':<6} detail\n")
    for name, check in _selftest_checks():
        t0 = time.perf_counter()
        try:
            ok, detail = check()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"{_error_name(exc)}: {exc}"
        ok_all &= ok
        out.write(f"{name:<20} {'PASS' if ok else 'FAIL':<6} {detail} "
                  f"({time.perf_counter() - t0:.2f}s)\n")
    return EXIT_OK if ok_all else EXIT_SELFTEST


def _add_law(p, with_lambda=True):
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--theta", type=float, default=0.0)
    if with_lambda:
        p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)


def _add_grid(p):
    p.add_argument("--x-min", type=float, required=True)
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--spacing", choices=["linear", "log"], default="linear")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stabledens", description="Densities of strictly stable laws.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common_out(p):
        p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("eval", help="density at one point")
    _add_law(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--method", choices=list(_METHODS), default="auto")
    p.add_argument("--n-terms", type=int, default=None)
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--header", action="store_true")
    p.add_argument("--strict", action="store_true", help="exit 3 when accuracy is not met")
    common_out(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="density on a grid")
    _add_law(p)
    _add_grid(p)
    p.add_argument("--method", choices=list(_METHODS), default="auto")
    p.add_argument("--n-terms", type=int, default=None)
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--keep-failures", action="store_true")
    p.add_argument("--strict", action="store_true")
    common_out(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="threshold coordinate of the large-|x| series")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--eps", type=float, default=DEFAULT_EPS)
    p.add_argument("--n-terms", type=_int_list, default=None)
    p.add_argument("--optimize", action="store_true")
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--explicit", action="store_true", help="use the closed-form estimate")
    common_out(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("diagnose", help="quadrature against the series")
    _add_law(p, with_lambda=False)
    _add_grid(p)
    p.add_argument("--n-terms", type=_int_list, default=[30])
    p.add_argument("--naive", action="store_true", help="plain adaptive rule without peak splitting")
    p.add_argument("--keep-failures", action="store_true")
    common_out(p)
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("selftest", help="run built-in consistency checks")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        return _fail(exc)
    except NumericalError as exc:
        return _fail(exc)


if __name__ == "__main__":
    sys.exit(main())
