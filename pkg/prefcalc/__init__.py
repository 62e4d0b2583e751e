"""
prefcalc: algebra of preferences and utility inference

Parse expressions over attribute levels, canonicalize them, and compute their
utility from an attribute-dominance utility model, with a grid-domain oracle
to check every result.
"""

__version__ = "1.0.0"

from prefcalc.algebra.expr import (
    BOTTOM,
    TOP,
    Atom,
    AttributeId,
    Bottom,
    Complement,
    Conjunction,
    Disjunction,
    PreferenceExpr,
    Top,
    atom,
)
from prefcalc.algebra.normalize import canonical_equal, simplify, to_nnf
from prefcalc.domain.oracle import DomainSet, MassFunction, domains_equal, eval_domain, measure, mobius_masses
from prefcalc.domain.space import Attribute, AttributeSpace
from prefcalc.syntax.formatter import format_expr
from prefcalc.syntax.parser import ParseDiagnostic, parse
from prefcalc.utility.curves import CurveFamily, UtilityCurve, eval_curve
from prefcalc.utility.engine import UtilityEngine, eval_utility
from prefcalc.utility.families import independent_disjunction, npv_disjunction_check, npv_model, product_model
from prefcalc.utility.inference import (
    bayes_update,
    check_utility_independence,
    conditional_utility,
    disjunction_given,
)
from prefcalc.utility.model import UtilityModel, joint_utility, table_model, tabulate_model, with_context
from prefcalc.utility.validation import validate_model

__all__ = [
    "__version__",
    "BOTTOM", "TOP", "Atom", "AttributeId", "Bottom", "Complement", "Conjunction", "Disjunction",
    "PreferenceExpr", "Top", "atom",
    "canonical_equal", "simplify", "to_nnf",
    "DomainSet", "MassFunction", "domains_equal", "eval_domain", "measure", "mobius_masses",
    "Attribute", "AttributeSpace",
    "format_expr", "ParseDiagnostic", "parse",
    "CurveFamily", "UtilityCurve", "eval_curve",
    "UtilityEngine", "eval_utility",
    "independent_disjunction", "npv_disjunction_check", "npv_model", "product_model",
    "bayes_update", "check_utility_independence", "conditional_utility", "disjunction_given",
    "UtilityModel", "joint_utility", "table_model", "tabulate_model", "with_context",
    "validate_model",
]
