"""
Consistency checks for utility models
"""

import logging
from typing import List

from prefcalc.domain.oracle import grid_diagnostics
from prefcalc.errors import PrefCalcError
from prefcalc.utility.model import ProductOfCurves, TableJoint, UtilityModel
from prefcalc.utils.validators import Diagnostic, Severity

logger = logging.getLogger(__name__)


def validate_model(model: UtilityModel) -> List[Diagnostic]:
    """
    Check a model against the attribute-dominance invariants

    Errors: corner normalization (all-minimum 0, all-maximum 1), minimum
    slices that are not identically 0, coordinate-wise decreases, and curve
    ranges that do not match the space. Negative Möbius masses only warn.

    A product model is checked from its curves alone: curves are normalized
    and increasing by construction, so matching ranges make the product
    satisfy every grid invariant without tabulating it.

    Args:
        model: Model to check

    Returns:
        list: Diagnostics; empty for a valid model
    """
    space = model.space

    if isinstance(model.joint, ProductOfCurves):
        diagnostics: List[Diagnostic] = []
        for attr, curve in zip(space.attributes, model.joint.curves):
            if curve.minimum != attr.minimum or curve.maximum != attr.maximum:
                diagnostics.append(Diagnostic(
                    Severity.ERROR, "curve-range",
                    f"curve for '{attr.name}' spans [{curve.minimum}, {curve.maximum}] "
                    f"but the attribute spans [{attr.minimum}, {attr.maximum}]"
                ))
        return diagnostics

    if not isinstance(model.joint, TableJoint):
        return [Diagnostic(Severity.ERROR, "joint", f"unsupported joint {type(model.joint).__name__}")]

    try:
        values = model.grid_values()
    except PrefCalcError as e:
        return [Diagnostic(Severity.ERROR, "grid", str(e))]

    diagnostics = grid_diagnostics(space, values)
    for diagnostic in diagnostics:
        if diagnostic.code == "negative-mass":
            logger.warning(diagnostic.message)
    if diagnostics:
        logger.debug(f"validate_model: {len(diagnostics)} diagnostic(s) for context '{model.context}'")
    return diagnostics
