"""Parameters of strictly stable laws in Zolotarev's form "C".

The characteristic function is

    g_hat(t) = exp(-lam * |t|**alpha * exp(-i * pi/2 * alpha * theta * sign(t)))

with 0 < alpha <= 2, |theta| <= min(1, 2/alpha - 1) and lam > 0.
"""

import math
from dataclasses import dataclass

from .errors import AlphaOutOfRange, LambdaNonPositive, ThetaOutOfRange

# absolute slack on the theta bound, so theta = 2/alpha - 1 computed in
# floating point is not rejected
THETA_SLACK = 1e-12


def theta_max(alpha: float) -> float:
    """Largest admissible |theta| for the given alpha."""
    return min(1.0, 2.0 / alpha - 1.0)


@dataclass(frozen=True)
class StableParams:
    alpha: float
    theta: float
    lam: float = 1.0

    def __post_init__(self):
        validate(self.alpha, self.theta, self.lam)

    @property
    def scale(self) -> float:
        """lam**(1/alpha); x_standard = x / scale."""
        return self.lam ** (1.0 / self.alpha)

    def reflected(self) -> "StableParams":
        return StableParams(self.alpha, -self.theta, self.lam)


@dataclass(frozen=True)
class ReflectedPoint:
    abs_x: float
    theta_star: float


def validate(alpha: float, theta: float, lam: float = 1.0) -> StableParams:
    """Check (alpha, theta, lam) and return them as :class:`StableParams`.

    Raises AlphaOutOfRange, ThetaOutOfRange or LambdaNonPositive; nothing is
    clamped.
    """
    alpha = float(alpha)
    theta = float(theta)
    lam = float(lam)
    if not (alpha > 0.0 and alpha <= 2.0):
        raise AlphaOutOfRange(f"alpha={alpha!r} outside (0, 2]")
    if not math.isfinite(theta) or abs(theta) > theta_max(alpha) + THETA_SLACK:
        raise ThetaOutOfRange(
            f"theta={theta!r} outside |theta| <= min(1, 2/alpha - 1) = {theta_max(alpha)!r}"
        )
    if not (lam > 0.0 and math.isfinite(lam)):
        raise LambdaNonPositive(f"lambda={lam!r} must be positive and finite")
    params = object.__new__(StableParams)
    object.__setattr__(params, "alpha", alpha)
    object.__setattr__(params, "theta", theta)
    object.__setattr__(params, "lam", lam)
    return params


def reflect(x: float, theta: float) -> ReflectedPoint:
    """Map (x, theta) to (|x|, theta*) using g(-x, a, t) = g(x, a, -t).

    sign(0) is taken as +1, so x = 0 keeps theta.
    """
    if x < 0.0:
        return ReflectedPoint(-x, -theta)
    return ReflectedPoint(abs(x), theta)
