"""
Minimal-parentheses rendering of preference expressions
"""

from prefcalc.algebra.expr import (
    Atom,
    Bottom,
    Complement,
    Conjunction,
    Disjunction,
    PreferenceExpr,
    Top,
)
from prefcalc.errors import ExpressionError

# Binding strength; a child is parenthesized when it binds looser than its slot
_OR = 1
_AND = 2
_NOT = 3
_ATOMIC = 4


def format_level(level: float) -> str:
    """Integral levels print without a fractional part; others use repr"""
    if level.is_integer() and abs(level) < 1e15:
        return str(int(level))
    return repr(level)


def _render(e: PreferenceExpr) -> tuple[str, int]:
    if isinstance(e, Atom):
        return f"{e.attribute}={format_level(e.level)}", _ATOMIC
    if isinstance(e, Top):
        return "TOP", _ATOMIC
    if isinstance(e, Bottom):
        return "BOT", _ATOMIC
    if isinstance(e, Complement):
        return "~" + _wrap(e.child, _NOT), _NOT
    if isinstance(e, (Conjunction, Disjunction)):
        if not e.children:
            return ("TOP" if isinstance(e, Conjunction) else "BOT"), _ATOMIC
        if len(e.children) == 1:
            return _render(e.children[0])
        strength, joiner = (_AND, " . ") if isinstance(e, Conjunction) else (_OR, " | ")
        return joiner.join(_wrap(c, strength) for c in e.children), strength
    raise ExpressionError(f"unknown expression node {type(e).__name__}")


def _wrap(e: PreferenceExpr, slot: int) -> str:
    text, strength = _render(e)
    return f"({text})" if strength < slot else text


def format_expr(e: PreferenceExpr) -> str:
    """
    Render an expression in the parser's syntax

    parse(format_expr(e)) is canonically equal to e.
    """
    return _render(e)[0]
