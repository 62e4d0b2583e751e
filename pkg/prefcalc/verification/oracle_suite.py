"""
Evaluator-versus-oracle equivalence

For random expressions the symbolic evaluator must agree with the signed sum
of Möbius masses over the expression's grid domain.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from prefcalc.domain.oracle import eval_domain, measure, mobius_masses
from prefcalc.syntax.formatter import format_expr
from prefcalc.utility.engine import UtilityEngine
from prefcalc.utility.model import UtilityModel, tabulate_model
from prefcalc.utils.config import config
from prefcalc.verification.generators import random_expression, random_model, random_space

logger = logging.getLogger(__name__)


# denominator floor for references at or near zero, e.g. U(BOT)
RELATIVE_ERROR_FLOOR = 1e-6


def relative_error(value: float, reference: float) -> float:
    """|value - reference| / max(|reference|, RELATIVE_ERROR_FLOOR)"""
    return abs(value - reference) / max(abs(reference), RELATIVE_ERROR_FLOOR)


@dataclass
class OracleMismatch:
    expression: str
    engine: float
    oracle: float
    error: float

    def to_dict(self) -> Dict[str, Any]:
        return {"expression": self.expression, "engine": self.engine, "oracle": self.oracle, "error": self.error}


@dataclass
class OracleSuiteResult:
    models: int = 0
    expressions: int = 0
    max_error: float = 0.0
    tolerance: float = 0.0
    mismatches: List[OracleMismatch] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance

    def merge(self, other: "OracleSuiteResult") -> None:
        self.models += other.models
        self.expressions += other.expressions
        self.max_error = max(self.max_error, other.max_error)
        self.mismatches.extend(other.mismatches)
        self.elapsed += other.elapsed

    def to_dict(self) -> Dict[str, Any]:
        return {
            "models": self.models,
            "expressions": self.expressions,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "mismatches": [m.to_dict() for m in self.mismatches],
            "elapsed": self.elapsed,
        }


def verify_model(
    model: UtilityModel,
    trials: int = 500,
    depth: int = 6,
    seed: Optional[int] = None,
    rtol: Optional[float] = None,
) -> OracleSuiteResult:
    """
    Compare eval_utility with the grid oracle on random expressions

    Expressions use grid atoms only, so product models are checked through
    the same grid the oracle sees.

    Args:
        model: Valid utility model
        trials: Number of random expressions
        depth: Maximum expression depth
        seed: Generator seed; defaults to PREFCALC_SEED
        rtol: Relative tolerance; defaults to PREFCALC_ORACLE_RTOL

    Returns:
        OracleSuiteResult
    """
    tolerance = config.oracle_rtol if rtol is None else rtol
    rng = np.random.default_rng(config.seed if seed is None else seed)
    masses = mobius_masses(model)
    engine = UtilityEngine(model)
    result = OracleSuiteResult(models=1, tolerance=tolerance)
    started = time.perf_counter()

    for _ in range(trials):
        e = random_expression(rng, model.space, depth)
        value = engine.eval_utility(e)
        reference = measure(eval_domain(e, model.space), masses)
        error = relative_error(value, reference)
        result.expressions += 1
        result.max_error = max(result.max_error, error)
        if error > tolerance:
            mismatch = OracleMismatch(format_expr(e), value, reference, error)
            logger.warning(f"oracle mismatch: {mismatch.expression}: engine {value!r}, oracle {reference!r}")
            result.mismatches.append(mismatch)

    result.elapsed = time.perf_counter() - started
    logger.debug(f"verify_model '{model.context}': max relative error {result.max_error:.3g}, {engine.cache_info()}")
    return result


def verify_random_models(
    models: int = 20,
    trials: int = 25,
    depth: int = 6,
    max_attributes: int = 3,
    max_levels: int = 6,
    seed: Optional[int] = None,
    rtol: Optional[float] = None,
) -> OracleSuiteResult:
    """
    verify_model over random product and table models

    Each product model is also checked in tabulated form.
    """
    tolerance = config.oracle_rtol if rtol is None else rtol
    rng = np.random.default_rng(config.seed if seed is None else seed)
    total = OracleSuiteResult(tolerance=tolerance)

    for _ in range(models):
        space = random_space(rng, max_attributes, max_levels)
        model = random_model(rng, space)
        sub_seed = int(rng.integers(2**31))
        total.merge(verify_model(model, trials, depth, sub_seed, tolerance))
        if model.is_product:
            total.merge(verify_model(tabulate_model(model), trials, depth, sub_seed, tolerance))

    logger.info(
        f"oracle suite: {total.models} models, {total.expressions} expressions, "
        f"max relative error {total.max_error:.3g}"
    )
    return total
