"""
Normalized single-attribute utility curves
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Tuple, Union

import numpy as np

from prefcalc.errors import CurveError

logger = logging.getLogger(__name__)


class CurveFamily(Enum):
    """Supported curve families"""
    EXPONENTIAL = "exponential"  # params: (gamma,) risk aversion in 1/attribute units
    LINEAR = "linear"            # params: ()
    POWER = "power"              # params: (exponent,), exponent > 0


_PARAM_COUNTS = {
    CurveFamily.EXPONENTIAL: 1,
    CurveFamily.LINEAR: 0,
    CurveFamily.POWER: 1,
}


@dataclass(frozen=True)
class UtilityCurve:
    """
    Utility curve on [minimum, maximum], normalized so that
    curve(minimum) = 0 and curve(maximum) = 1 exactly
    """
    family: CurveFamily
    params: Tuple[float, ...] = field(default_factory=tuple)
    minimum: float = 0.0
    maximum: float = 1.0

    def __post_init__(self):
        try:
            family = CurveFamily(self.family)
        except ValueError as exc:
            valid = [f.value for f in CurveFamily]
            raise CurveError(f"curve family must be one of {valid}, got {self.family!r}") from exc
        object.__setattr__(self, "family", family)

        params = tuple(float(p) for p in self.params)
        expected = _PARAM_COUNTS[family]
        if len(params) != expected:
            raise CurveError(f"{family.value} curve takes {expected} parameter(s), got {len(params)}")
        if not all(math.isfinite(p) for p in params):
            raise CurveError(f"{family.value} curve parameters must be finite, got {params}")
        if family is CurveFamily.POWER and params[0] <= 0:
            raise CurveError(f"power curve exponent must be > 0, got {params[0]}")
        object.__setattr__(self, "params", params)

        minimum, maximum = float(self.minimum), float(self.maximum)
        if not (math.isfinite(minimum) and math.isfinite(maximum)):
            raise CurveError("curve range must be finite")
        if not minimum < maximum:
            raise CurveError(f"curve range must satisfy minimum < maximum, got [{minimum}, {maximum}]")
        object.__setattr__(self, "minimum", minimum)
        object.__setattr__(self, "maximum", maximum)

    @classmethod
    def exponential(cls, gamma: float, minimum: float, maximum: float) -> "UtilityCurve":
        return cls(CurveFamily.EXPONENTIAL, (gamma,), minimum, maximum)

    @classmethod
    def linear(cls, minimum: float, maximum: float) -> "UtilityCurve":
        return cls(CurveFamily.LINEAR, (), minimum, maximum)

    @classmethod
    def power(cls, exponent: float, minimum: float, maximum: float) -> "UtilityCurve":
        return cls(CurveFamily.POWER, (exponent,), minimum, maximum)

    @property
    def span(self) -> float:
        return self.maximum - self.minimum

    def __call__(self, x: float) -> float:
        return eval_curve(self, x)

    def evaluate_many(self, xs: Union[Sequence[float], np.ndarray]) -> np.ndarray:
        """Vectorized evaluation; every x must lie within the range"""
        xs = np.asarray(xs, dtype=np.float64)
        if np.any(xs < self.minimum) or np.any(xs > self.maximum):
            raise CurveError(f"arguments outside curve range [{self.minimum}, {self.maximum}]")
        offset = xs - self.minimum
        if self.family is CurveFamily.EXPONENTIAL and self.params[0] != 0.0:
            gamma = self.params[0]
            return np.expm1(-gamma * offset) / math.expm1(-gamma * self.span)
        if self.family is CurveFamily.POWER:
            return (offset / self.span) ** self.params[0]
        return offset / self.span


def eval_curve(c: UtilityCurve, x: float) -> float:
    """
    Evaluate a normalized curve

    Exponential: (1 - e^{-γx'}) / (1 - e^{-γ·span}) with x' = x - minimum;
    γ = 0 degenerates to linear. Power: (x'/span)^p. Linear: x'/span.

    Args:
        c: Curve
        x: Argument in [c.minimum, c.maximum]

    Returns:
        Utility in [0, 1]

    Raises:
        CurveError: If x is out of range or not finite
    """
    x = float(x)
    if not math.isfinite(x):
        raise CurveError(f"curve argument must be finite, got {x}")
    if not c.minimum <= x <= c.maximum:
        raise CurveError(f"curve argument {x} outside range [{c.minimum}, {c.maximum}]")

    offset = x - c.minimum
    if c.family is CurveFamily.EXPONENTIAL and c.params[0] != 0.0:
        gamma = c.params[0]
        # expm1 keeps small gamma accurate; same expression at x = maximum gives exactly 1
        return math.expm1(-gamma * offset) / math.expm1(-gamma * c.span)
    if c.family is CurveFamily.POWER:
        return (offset / c.span) ** c.params[0]
    return offset / c.span
