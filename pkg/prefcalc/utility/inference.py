"""
Utility inference: conditionals, the Bayes analog, independence checks
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from prefcalc.algebra.expr import AttributeId, Atom, PreferenceExpr
from prefcalc.errors import InferenceError, UndefinedConditionalError
from prefcalc.utility.engine import engine_for
from prefcalc.utility.model import UtilityModel
from prefcalc.utils.config import config

logger = logging.getLogger(__name__)

AttributeRef = Union[str, AttributeId]


def conditional_utility(a: PreferenceExpr, given: PreferenceExpr, model: UtilityModel) -> float:
    """
    Utility of `a` once `given` is guaranteed

    Args:
        a: Expression whose utility is wanted
        given: Conditioning expression
        model: Utility model

    Returns:
        float: U(a·given) / U(given)

    Raises:
        UndefinedConditionalError: If U(given) is zero
    """
    return engine_for(model).conditional_utility(a, given)


def _unit(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
        raise InferenceError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def bayes_update(uY: float, uX_given_Y: float, uX: float) -> float:
    """
    Reverse a conditional: U(Y | X) = U(Y) · U(X | Y) / U(X)

    Raises:
        InferenceError: If an input lies outside [0, 1]
        UndefinedConditionalError: If uX is zero
    """
    uY = _unit("uY", uY)
    uX_given_Y = _unit("uX_given_Y", uX_given_Y)
    uX = _unit("uX", uX)
    if uX == 0.0:
        raise UndefinedConditionalError("bayes_update: U(X) is zero")
    return uY * uX_given_Y / uX


def disjunction_given(y: Atom, x: Atom, z: Atom, model: UtilityModel) -> float:
    """
    Utility of y ∨ x once z is guaranteed

    [U(y·z) + U(x·z) - U(y·x·z)] / U(z)

    Raises:
        UndefinedConditionalError: If U(z) is zero
    """
    engine = engine_for(model)
    uz = engine.eval_utility(z)
    if abs(uz) <= config.identity_atol:
        raise UndefinedConditionalError(f"conditioning on '{z}' whose utility is {uz!r}")
    numerator = (
        engine.eval_utility(y & z)
        + engine.eval_utility(x & z)
        - engine.eval_utility(y & x & z)
    )
    return numerator / uz


@dataclass
class IndependenceReport:
    """Outcome of a utility-independence check of `attribute` given `given`"""
    attribute: str
    given: str
    independent: bool
    max_deviation: float
    tolerance: float
    worst: Optional[Tuple[float, float]] = None
    skipped: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.independent

    def to_dict(self) -> Dict[str, Any]:
        return {
            "attribute": self.attribute,
            "given": self.given,
            "independent": self.independent,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "worst": list(self.worst) if self.worst else None,
            "skipped": list(self.skipped),
        }


def _name(ref: AttributeRef) -> str:
    return ref.name if isinstance(ref, AttributeId) else ref


def check_utility_independence(
    model: UtilityModel,
    a: AttributeRef,
    b: AttributeRef,
    tol: Optional[float] = None,
) -> IndependenceReport:
    """
    Check whether attribute a is utility independent of attribute b

    For every grid level of a and every conditioning level of b, compares
    U(a=level | b=level_b) against the marginal U(a=level). Conditioning
    atoms of zero utility (b at its minimum) are skipped and listed.

    Args:
        model: Utility model
        a: Attribute whose conditional utility is examined
        b: Conditioning attribute
        tol: Absolute tolerance; defaults to PREFCALC_INDEPENDENCE_TOL

    Returns:
        IndependenceReport
    """
    tolerance = config.independence_tol if tol is None else float(tol)
    engine = engine_for(model)
    attr_a = model.space.attribute(_name(a))
    attr_b = model.space.attribute(_name(b))

    max_deviation = 0.0
    worst: Optional[Tuple[float, float]] = None
    skipped: List[str] = []

    for level_b in attr_b.levels:
        given = Atom(attr_b.name, level_b)
        try:
            engine.conditional_utility(Atom(attr_a.name, attr_a.maximum), given)
        except UndefinedConditionalError:
            skipped.append(str(given))
            continue
        for level_a in attr_a.levels:
            target = Atom(attr_a.name, level_a)
            deviation = abs(engine.conditional_utility(target, given) - engine.eval_utility(target))
            if deviation > max_deviation:
                max_deviation = deviation
                worst = (level_a, level_b)

    if skipped:
        logger.info(f"independence {attr_a.name}|{attr_b.name}: skipped zero-utility conditioners {skipped}")

    return IndependenceReport(
        attribute=attr_a.name,
        given=attr_b.name,
        independent=max_deviation <= tolerance,
        max_deviation=max_deviation,
        tolerance=tolerance,
        worst=worst,
        skipped=skipped,
    )


@dataclass
class ConjunctionRuleReport:
    """Both factorizations of U(a·b); None where the conditioner has zero utility"""
    joint: float
    via_first: Optional[float]
    via_second: Optional[float]

    @property
    def max_deviation(self) -> float:
        values = [v for v in (self.via_first, self.via_second) if v is not None]
        return max((abs(v - self.joint) for v in values), default=0.0)


def conjunction_rule_check(model: UtilityModel, a: PreferenceExpr, b: PreferenceExpr) -> ConjunctionRuleReport:
    """
    Compare U(a·b) with U(a)·U(b | a) and with U(b)·U(a | b)

    Returns:
        ConjunctionRuleReport
    """
    engine = engine_for(model)
    joint = engine.eval_utility(a & b)

    def factor(first: PreferenceExpr, second: PreferenceExpr) -> Optional[float]:
        try:
            return engine.eval_utility(first) * engine.conditional_utility(second, first)
        except UndefinedConditionalError:
            return None

    return ConjunctionRuleReport(joint, factor(a, b), factor(b, a))


def complement_of_conjunction(model: UtilityModel, a: PreferenceExpr, b: PreferenceExpr) -> Tuple[float, float]:
    """
    U(a·b) and 1 - U(~a ∨ ~b), which agree by the complement rule

    Returns:
        tuple: (direct, via_complement)
    """
    engine = engine_for(model)
    direct = engine.eval_utility(a & b)
    via_complement = 1.0 - engine.eval_utility(~a | ~b)
    return direct, via_complement
