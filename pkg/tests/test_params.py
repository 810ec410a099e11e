import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stabledens import (
    AlphaOutOfRange,
    LambdaNonPositive,
    StableParams,
    ThetaOutOfRange,
    reflect,
    theta_max,
    validate,
)


@st.composite
def admissible(draw):
    alpha = draw(st.floats(min_value=1e-3, max_value=2.0))
    tm = theta_max(alpha)
    theta = draw(st.floats(min_value=-tm, max_value=tm))
    return alpha, theta


def test_interior_point_accepted():
    p = validate(0.7, 0.5, 1.0)
    assert (p.alpha, p.theta, p.lam) == (0.7, 0.5, 1.0)


def test_theta_bound_uses_two_over_alpha_minus_one():
    with pytest.raises(ThetaOutOfRange):
        validate(1.5, 0.5, 1.0)


def test_alpha_two_admits_only_symmetric():
    validate(2.0, 0.0, 1.0)
    with pytest.raises(ThetaOutOfRange):
        validate(2.0, 0.1, 1.0)


@pytest.mark.parametrize("alpha", [0.0, -1.0, 2.0000001, math.nan, math.inf])
def test_alpha_out_of_range(alpha):
    with pytest.raises(AlphaOutOfRange):
        validate(alpha, 0.0)


@pytest.mark.parametrize("lam", [0.0, -2.0, math.nan, math.inf])
def test_lambda_must_be_positive(lam):
    with pytest.raises(LambdaNonPositive):
        validate(1.0, 0.0, lam)


def test_boundary_theta_accepted_with_slack():
    alpha = 1.7
    validate(alpha, 2.0 / alpha - 1.0)
    validate(alpha, -(2.0 / alpha - 1.0))
    validate(0.5, 1.0)
    with pytest.raises(ThetaOutOfRange):
        validate(alpha, 2.0 / alpha - 1.0 + 1e-9)


def test_dataclass_constructor_validates():
    with pytest.raises(ThetaOutOfRange):
        StableParams(1.5, 0.9)
    assert StableParams(1.2, 0.1).scale == 1.0
    assert StableParams(0.5, 0.0, 4.0).scale == pytest.approx(16.0)


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        validate(3.0, 0.0)


@pytest.mark.parametrize(
    "x, theta, expected",
    [(-3.0, 0.4, (3.0, -0.4)), (3.0, 0.4, (3.0, 0.4)), (0.0, 0.4, (0.0, 0.4))],
)
def test_reflect_examples(x, theta, expected):
    pt = reflect(x, theta)
    assert (pt.abs_x, pt.theta_star) == expected


@given(admissible())
def test_region_symmetric_in_theta(at):
    alpha, theta = at
    validate(alpha, -theta)


@given(admissible(), st.floats(min_value=1e-300, max_value=1e300))
def test_reflect_flips_theta_star(at, x):
    _, theta = at
    assert reflect(-x, theta).theta_star == -reflect(x, theta).theta_star
    assert reflect(-x, theta).abs_x == reflect(x, theta).abs_x == x


@given(admissible(), st.floats(min_value=1e-3, max_value=1e3))
def test_validate_idempotent(at, lam):
    p = validate(at[0], at[1], lam)
    assert validate(p.alpha, p.theta, p.lam) == p
    assert p.reflected().reflected() == p
