import json
import os
import subprocess
import sys

import pytest

SCRIPT = r"""
import json
import stabledens as sd
from stabledens.diagnostics import breakdown_scan
out = {
    "backend": sd.backend_name(),
    "series": sd.tail_density(7.5, 0.7, 0.3, 40).value,
    "bound": sd.remainder_bound(7.5, 0.7, 40),
    "threshold": sd.threshold_coordinate(1.3, 30, 1e-5).x_threshold,
    "integral": sd.density_integral(2.0, 0.7, 0.3, 1e-12).value,
    "integral_far": sd.density_integral(1e5, 0.9, 0.0, 1e-12).value,
    "naive": sd.density_integral(1e3, 0.8, 0.0, 1e-12, split_peak=False).value,
    "oracle": sd.fourier_oracle(1.0, 1.5, 0.2, 1e-10).value,
    "lgamma": sd.log_gamma(42.5),
    "density": sd.density(3.0, sd.StableParams(1.2, -0.3, 2.0)).value,
}
print(json.dumps(out))
"""


def _run(disable):
    env = dict(os.environ, STABLE_DENSITY_DISABLE_JIT="1" if disable else "0")
    r = subprocess.run([sys.executable, "-c", SCRIPT], capture_output=True, text=True, env=env, check=True)
    return json.loads(r.stdout)


@pytest.fixture(scope="module")
def both():
    return _run(False), _run(True)


def test_flag_selects_python(both):
    _, pure = both
    assert pure["backend"] == "python"


@pytest.mark.parametrize(
    "key", ["series", "bound", "threshold", "integral", "integral_far", "naive", "oracle", "lgamma", "density"]
)
def test_backends_agree(both, key):
    jit, pure = both
    assert pure[key] == pytest.approx(jit[key], rel=1e-12, abs=1e-15)
