"""
Product (utility-independent) models and the exponential profit example
"""

import logging
import math
from typing import Iterable, Mapping, Sequence, Tuple, Union

from prefcalc.domain.space import AttributeSpace
from prefcalc.errors import CurveError, ModelValidationError
from prefcalc.utility.curves import UtilityCurve
from prefcalc.utility.model import DEFAULT_CONTEXT, ProductOfCurves, UtilityModel
from prefcalc.utility.validation import validate_model
from prefcalc.utils.validators import errors_of

logger = logging.getLogger(__name__)

CurveSpec = Union[Sequence[UtilityCurve], Mapping[str, UtilityCurve]]


def product_model(curves: CurveSpec, space: AttributeSpace, context: str = DEFAULT_CONTEXT) -> UtilityModel:
    """
    Joint utility as the product of one normalized curve per attribute

    Args:
        curves: Curves in attribute order, or a mapping attribute name -> curve
        space: Attribute space; each curve range must equal its attribute range
        context: State-of-preference label

    Returns:
        UtilityModel: A validated product model

    Raises:
        CurveError: Curve count or a curve range does not match the space
    """
    if isinstance(curves, Mapping):
        missing = [n for n in space.names if n not in curves]
        extra = [n for n in curves if n not in space]
        if missing or extra:
            raise CurveError(f"curves do not match the space (missing {missing}, unknown {extra})")
        ordered = [curves[n] for n in space.names]
    else:
        ordered = list(curves)
    if len(ordered) != len(space):
        raise CurveError(f"product model needs {len(space)} curves, got {len(ordered)}")

    for attr, curve in zip(space.attributes, ordered):
        if curve.minimum != attr.minimum or curve.maximum != attr.maximum:
            raise CurveError(
                f"curve for '{attr.name}' spans [{curve.minimum}, {curve.maximum}], "
                f"attribute spans [{attr.minimum}, {attr.maximum}]"
            )

    model = UtilityModel(space, ProductOfCurves(tuple(ordered)), context)
    diagnostics = validate_model(model)
    errors = errors_of(diagnostics)
    if errors:
        raise ModelValidationError(f"product model is invalid: {errors[0].message}", diagnostics)
    return model


def npv_disjunction_check(gamma: float, beta: float, x: float, y: float) -> Tuple[float, float]:
    """
    Disjunction of two exponential profit utilities, composed and closed form

    With U(x) = 1 - e^{-γx} and U(y) = 1 - e^{-βy} on [0, ∞), the
    disjunction U(x) + U(y) - U(x)U(y) collapses to 1 - e^{-(γx + βy)}.

    Args:
        gamma: Risk aversion for the first-year profit, > 0
        beta: Risk aversion for the second-year profit, > 0
        x: First-year profit, >= 0
        y: Second-year profit, >= 0

    Returns:
        tuple: (composed, closed_form)

    Raises:
        CurveError: On negative or non-finite inputs
    """
    values = {"gamma": gamma, "beta": beta, "x": x, "y": y}
    for name, value in values.items():
        if not math.isfinite(value):
            raise CurveError(f"{name} must be finite, got {value!r}")
    if gamma <= 0 or beta <= 0:
        raise CurveError(f"gamma and beta must be > 0, got gamma={gamma}, beta={beta}")
    if x < 0 or y < 0:
        raise CurveError(f"profits must be >= 0, got x={x}, y={y}")

    ux = -math.expm1(-gamma * x)
    uy = -math.expm1(-beta * y)
    composed = ux + uy - ux * uy
    closed_form = -math.expm1(-(gamma * x + beta * y))
    return composed, closed_form


def independent_disjunction(utilities: Iterable[float]) -> float:
    """
    Disjunction of utility-independent attributes: 1 - Π(1 - u_i)

    Raises:
        CurveError: If a utility lies outside [0, 1]
    """
    values = [float(u) for u in utilities]
    for u in values:
        if not 0.0 <= u <= 1.0:
            raise CurveError(f"utilities must lie in [0, 1], got {u!r}")
    return 1.0 - math.prod(1.0 - u for u in values)


def npv_model(
    gamma: float,
    beta: float,
    x_levels: Sequence[float],
    y_levels: Sequence[float],
    names: Tuple[str, str] = ("x", "y"),
    context: str = DEFAULT_CONTEXT,
) -> UtilityModel:
    """
    Two-attribute product model of normalized exponential profit curves

    Args:
        gamma: Risk aversion of the first attribute
        beta: Risk aversion of the second attribute
        x_levels: Grid of the first attribute
        y_levels: Grid of the second attribute
        names: Attribute names
        context: State-of-preference label
    """
    space = AttributeSpace.from_levels([(names[0], x_levels), (names[1], y_levels)])
    x_attr, y_attr = space.attributes
    curves = [
        UtilityCurve.exponential(gamma, x_attr.minimum, x_attr.maximum),
        UtilityCurve.exponential(beta, y_attr.minimum, y_attr.maximum),
    ]
    logger.debug(f"npv model gamma={gamma} beta={beta} on {space.shape} grid")
    return product_model(curves, space, context)
