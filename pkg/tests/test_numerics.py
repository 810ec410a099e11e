import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stabledens import DomainError, LogScaled, compensated_sum, log_gamma, sin_half_pi

mpmath.mp.dps = 40


def test_log_gamma_exact_points():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=2e-15)
    assert log_gamma(2.0) == pytest.approx(0.0, abs=1e-15)
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), abs=1e-15)


def test_log_gamma_171_matches_high_precision():
    # ln Gamma(171) = ln(170!), from mpmath at 40 digits
    assert log_gamma(171.0) == pytest.approx(706.5730622457873471107, rel=1e-15)


@pytest.mark.parametrize("z", [1e-8, 1e-3, 0.1, 0.3, 0.49, 0.5, 0.51, 1.5, 3.7, 9.99, 10.0, 10.01, 42.5, 100.2, 169.9, 170.0])
def test_gamma_relative_error(z):
    ref = mpmath.gamma(mpmath.mpf(z))
    got = mpmath.e ** mpmath.mpf(log_gamma(z))
    assert abs(got / ref - 1) <= 1e-13


@given(st.floats(min_value=1e-6, max_value=170.0))
def test_gamma_relative_error_random(z):
    # relative error of Gamma = absolute error of ln Gamma; the double holding
    # ln Gamma itself carries an ulp of up to ~1e-13 near z = 170
    ref = mpmath.loggamma(mpmath.mpf(z))
    assert abs(log_gamma(z) - float(ref)) <= 1e-13 + 2 * math.ulp(float(ref))


@given(st.floats(min_value=170.0, max_value=1e4))
def test_log_gamma_large_absolute(z):
    assert abs(log_gamma(z) - float(mpmath.loggamma(mpmath.mpf(z)))) <= 1e-10


def test_log_gamma_recurrence_grid():
    worst = 0.0
    for k in range(1, 501):
        z = k / 10.0
        worst = max(worst, abs(log_gamma(z + 1.0) - log_gamma(z) - math.log(z)))
    assert worst <= 1e-12


@pytest.mark.parametrize("z", [0.0, -1.0, -0.5, math.nan])
def test_log_gamma_domain(z):
    with pytest.raises(DomainError):
        log_gamma(z)


def test_sin_half_pi_examples():
    assert sin_half_pi(2.0) == 0.0
    assert sin_half_pi(1.0) == 1.0
    assert sin_half_pi(1e6 + 1.0) == 1.0
    assert sin_half_pi(4e15 + 3.0) == -1.0


@given(st.floats(min_value=-1e12, max_value=1e12))
def test_sin_half_pi_odd_and_periodic(y):
    assert sin_half_pi(-y) == -sin_half_pi(y)
    if (y + 4.0) - 4.0 == y:
        assert sin_half_pi(y + 4.0) == sin_half_pi(y)


@given(st.floats(min_value=-1e6, max_value=1e6))
def test_sin_half_pi_accuracy(y):
    ref = float(mpmath.sin(mpmath.pi * mpmath.mpf(y) / 2))
    assert abs(sin_half_pi(y) - ref) <= 4e-16


def test_compensated_sum_examples():
    assert compensated_sum([1e16, 1.0, -1e16]) == 1.0
    assert compensated_sum([]) == 0.0


def test_compensated_sum_alternating_harmonic():
    terms = [(-1) ** (k + 1) / k for k in range(1, 1001)]
    exact = sum(Fraction((-1) ** (k + 1), k) for k in range(1, 1001))
    assert abs(compensated_sum(terms) - float(exact)) <= 2 * math.ulp(float(exact))


@given(st.lists(st.floats(min_value=-1e10, max_value=1e10), min_size=1, max_size=400))
def test_compensated_sum_against_fractions(terms):
    exact = float(sum(Fraction(t) for t in terms))
    got = compensated_sum(terms)
    scale = max(abs(exact), max(abs(t) for t in terms) * 1e-16 * len(terms) * 1e-16)
    assert abs(got - exact) <= 2 * math.ulp(exact) + 1e-30 * scale


@given(st.floats(allow_nan=False, allow_infinity=False).filter(lambda v: v != 0.0))
def test_log_scaled_round_trip(v):
    r = LogScaled.from_float(v)
    back = r.to_float()
    assert abs(back - v) <= math.ulp(v)
    assert (back > 0) == (v > 0)


def test_log_scaled_zero_and_product():
    z = LogScaled.from_float(0.0)
    assert z.sign == 0 and z.to_float() == 0.0
    p = LogScaled.from_float(-1e200) * LogScaled.from_float(1e200)
    assert p.sign == -1
    assert p.log_magnitude == pytest.approx(2 * math.log(1e200))
    assert (LogScaled.from_float(3.0) * LogScaled.from_float(-0.5)).to_float() == pytest.approx(-1.5, rel=1e-15)
    assert (LogScaled.from_float(3.0) * z).to_float() == 0.0
