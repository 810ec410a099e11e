"""Time the numba kernels against the pure-Python fallback.

Each backend runs in its own interpreter because the choice is fixed at
import time. Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
import stabledens as sd

repeat = int(sys.argv[1])

def best(fn):
    fn()  # compile or warm caches
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)

xs = np.geomspace(1e-2, 1e8, 40)
cases = {
    "tail_density N=90 x40": lambda: [sd.tail_density(float(x), 0.7, 0.2, 90) for x in xs],
    "threshold N=1..128": lambda: sd.optimal_terms.__wrapped__(1.3, 1e-5, 128),
    "density_integral x40": lambda: [sd.density_integral(float(x), 0.9, 0.1, 1e-10) for x in xs],
    "naive integral x40": lambda: [sd.density_integral(float(x), 0.9, 0.1, 1e-12, split_peak=False) for x in xs],
    "fourier_oracle x=2": lambda: sd.fourier_oracle(2.0, 0.7, 0.3, 1e-10),
    "density auto x40": lambda: [sd.density(float(x), sd.StableParams(1.3, 0.2)) for x in xs],
}
print(json.dumps({"backend": sd.backend_name(), "times": {k: best(f) for k, f in cases.items()}}))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, STABLE_DENSITY_DISABLE_JIT="1" if disable else "0")
    out = subprocess.run(
        [sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True
    )
    return json.loads(out.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    jit = run(False, args.repeat)
    pure = run(True, args.repeat)
    if jit["backend"] != "numba":
        print("numba is not installed; both columns use the Python path", file=sys.stderr)
    print(f"{'case':<26}{'numba [s]':>12}{'python [s]':>12}{'speedup':>10}")
    for name, t_jit in jit["times"].items():
        t_py = pure["times"][name]
        print(f"{name:<26}{t_jit:>12.4g}{t_py:>12.4g}{t_py / t_jit:>10.1f}")


if __name__ == "__main__":
    main()
