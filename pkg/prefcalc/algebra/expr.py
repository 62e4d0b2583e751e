"""
Preference expression tree

Atoms name a level of one attribute (the domain of prospects between the
attribute minimum and that level); complement, conjunction and disjunction
combine domains by set complement, intersection and union.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, List, Set, Tuple

from prefcalc.errors import ExpressionError


class NodeKind(Enum):
    """Node kinds, in canonical sort order"""
    BOTTOM = 0
    TOP = 1
    ATOM = 2
    COMPLEMENT = 3
    CONJUNCTION = 4
    DISJUNCTION = 5


@dataclass(frozen=True)
class AttributeId:
    """Attribute name and its position within an AttributeSpace"""
    name: str
    index: int

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ExpressionError("attribute name must be a nonempty string")
        if self.index < 0:
            raise ExpressionError(f"attribute index must be non-negative, got {self.index}")


class PreferenceExpr:
    """Base class for every node of a preference expression"""

    __slots__ = ()
    kind: NodeKind

    def __invert__(self) -> "PreferenceExpr":
        return Complement(self)

    def __and__(self, other: "PreferenceExpr") -> "PreferenceExpr":
        if not isinstance(other, PreferenceExpr):
            return NotImplemented
        return Conjunction((self, other))

    def __or__(self, other: "PreferenceExpr") -> "PreferenceExpr":
        if not isinstance(other, PreferenceExpr):
            return NotImplemented
        return Disjunction((self, other))

    def __str__(self) -> str:
        from prefcalc.syntax.formatter import format_expr
        return format_expr(self)


@dataclass(frozen=True)
class Atom(PreferenceExpr):
    """Level `level` of attribute `attribute`: prospects no better than that level"""
    attribute: str
    level: float
    kind = NodeKind.ATOM

    def __post_init__(self):
        if not isinstance(self.attribute, str) or not self.attribute:
            raise ExpressionError("atom attribute must be a nonempty name")
        try:
            level = float(self.level)
        except (TypeError, ValueError) as exc:
            raise ExpressionError(f"atom level must be a real number, got {self.level!r}") from exc
        if not math.isfinite(level):
            raise ExpressionError(f"atom level must be finite, got {level}")
        object.__setattr__(self, "level", level)


@dataclass(frozen=True)
class Complement(PreferenceExpr):
    child: PreferenceExpr
    kind = NodeKind.COMPLEMENT

    def __post_init__(self):
        _require_expr(self.child)


@dataclass(frozen=True)
class Conjunction(PreferenceExpr):
    children: Tuple[PreferenceExpr, ...] = field(default_factory=tuple)
    kind = NodeKind.CONJUNCTION

    def __post_init__(self):
        children = tuple(self.children)
        for child in children:
            _require_expr(child)
        object.__setattr__(self, "children", children)


@dataclass(frozen=True)
class Disjunction(PreferenceExpr):
    children: Tuple[PreferenceExpr, ...] = field(default_factory=tuple)
    kind = NodeKind.DISJUNCTION

    def __post_init__(self):
        children = tuple(self.children)
        for child in children:
            _require_expr(child)
        object.__setattr__(self, "children", children)


@dataclass(frozen=True)
class Top(PreferenceExpr):
    """The full domain, X_b ∨ ~X_b"""
    kind = NodeKind.TOP


@dataclass(frozen=True)
class Bottom(PreferenceExpr):
    """The empty domain, X_b · ~X_b"""
    kind = NodeKind.BOTTOM


TOP = Top()
BOTTOM = Bottom()


def _require_expr(value) -> None:
    if not isinstance(value, PreferenceExpr):
        raise ExpressionError(f"expected a preference expression, got {type(value).__name__}")


def atom(attribute: str, level: float) -> Atom:
    """Shorthand constructor for an atom"""
    return Atom(attribute, level)


def is_literal(e: PreferenceExpr) -> bool:
    """True for an atom or a complemented atom"""
    return isinstance(e, Atom) or (isinstance(e, Complement) and isinstance(e.child, Atom))


def literal_parts(e: PreferenceExpr) -> Tuple[str, float, bool]:
    """
    Split a literal into its parts

    Args:
        e: Atom or complemented atom

    Returns:
        tuple: (attribute, level, negated)
    """
    if isinstance(e, Atom):
        return e.attribute, e.level, False
    if isinstance(e, Complement) and isinstance(e.child, Atom):
        return e.child.attribute, e.child.level, True
    raise ExpressionError(f"not a literal: {e!r}")


def iter_atoms(e: PreferenceExpr) -> Iterator[Atom]:
    """Yield every atom leaf, left to right"""
    stack: List[PreferenceExpr] = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            yield node
        elif isinstance(node, Complement):
            stack.append(node.child)
        elif isinstance(node, (Conjunction, Disjunction)):
            stack.extend(reversed(node.children))


def atoms_of(e: PreferenceExpr) -> Set[Atom]:
    return set(iter_atoms(e))


def literal_count(e: PreferenceExpr) -> int:
    """Number of atom leaves, counting repeats"""
    return sum(1 for _ in iter_atoms(e))


def depth(e: PreferenceExpr) -> int:
    if isinstance(e, Complement):
        return 1 + depth(e.child)
    if isinstance(e, (Conjunction, Disjunction)):
        return 1 + max((depth(c) for c in e.children), default=0)
    return 0


def canonical_key(e: PreferenceExpr) -> tuple:
    """
    Total-order sort key

    Literals sort by (attribute name, level, node kind); constants come
    first and compound nodes last.
    """
    if isinstance(e, (Top, Bottom)):
        return (0, e.kind.value)
    if is_literal(e):
        name, level, negated = literal_parts(e)
        kind = NodeKind.COMPLEMENT if negated else NodeKind.ATOM
        return (1, name, level, kind.value)
    if isinstance(e, Complement):
        return (2, e.kind.value, (canonical_key(e.child),))
    if isinstance(e, (Conjunction, Disjunction)):
        return (2, e.kind.value, tuple(canonical_key(c) for c in e.children))
    raise ExpressionError(f"unknown expression node {type(e).__name__}")


def sorted_children(children: Iterable[PreferenceExpr]) -> Tuple[PreferenceExpr, ...]:
    return tuple(sorted(children, key=canonical_key))
