"""
Canonicalization of preference expressions

simplify() rewrites an expression into a reduced disjunctive normal form:
a disjunction of terms, each term a conjunction of literals. A term is a box,
one half-open interval (lower, upper] per attribute it mentions, where a
positive literal x=a bounds the interval above and a negative literal ~x=b
bounds it below. Boxes make the rewrite rules of the algebra of preferences
(idempotence, absorption, annihilation, distributivity, De Morgan) mechanical:
conjunction intersects boxes, disjunction collects them, and a box contained
in another box is absorbed.
"""

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from prefcalc.algebra.expr import (
    BOTTOM,
    TOP,
    Atom,
    Bottom,
    Complement,
    Conjunction,
    Disjunction,
    PreferenceExpr,
    Top,
    literal_count,
    sorted_children,
)
from prefcalc.errors import ExpressionError, ExpressionTooLargeError
from prefcalc.utils.config import config

logger = logging.getLogger(__name__)

_INF = math.inf


def to_nnf(e: PreferenceExpr) -> PreferenceExpr:
    """
    Push complements down to the atoms

    Applies the double complement rule and De Morgan's laws for attributes;
    the shape of the tree is otherwise kept.

    Args:
        e: Expression to rewrite

    Returns:
        Domain-equivalent expression with Complement nodes only above atoms
    """
    return _nnf(e, False)


def _nnf(e: PreferenceExpr, negate: bool) -> PreferenceExpr:
    if isinstance(e, Atom):
        return Complement(e) if negate else e
    if isinstance(e, Top):
        return BOTTOM if negate else TOP
    if isinstance(e, Bottom):
        return TOP if negate else BOTTOM
    if isinstance(e, Complement):
        return _nnf(e.child, not negate)
    if isinstance(e, Conjunction):
        children = tuple(_nnf(c, negate) for c in e.children)
        return Disjunction(children) if negate else Conjunction(children)
    if isinstance(e, Disjunction):
        children = tuple(_nnf(c, negate) for c in e.children)
        return Conjunction(children) if negate else Disjunction(children)
    raise ExpressionError(f"unknown expression node {type(e).__name__}")


@dataclass(frozen=True)
class Box:
    """
    Conjunction of literals as per-attribute intervals

    bounds holds (attribute, lower, upper) triples sorted by attribute; an
    attribute absent from bounds is unconstrained. lower is -inf when the
    term carries no negative literal on that attribute, upper is +inf when
    it carries no positive literal.
    """
    bounds: Tuple[Tuple[str, float, float], ...] = ()

    @staticmethod
    def from_literal(attribute: str, level: float, negated: bool) -> "Box":
        if negated:
            return Box(((attribute, level, _INF),))
        return Box(((attribute, -_INF, level),))

    def attributes(self) -> FrozenSet[str]:
        return frozenset(name for name, _, _ in self.bounds)

    def as_dict(self) -> Dict[str, Tuple[float, float]]:
        return {name: (lo, hi) for name, lo, hi in self.bounds}

    @staticmethod
    def from_dict(mapping: Dict[str, Tuple[float, float]]) -> "Box":
        bounds = tuple(
            (name, lo, hi)
            for name, (lo, hi) in sorted(mapping.items())
            if not (lo == -_INF and hi == _INF)
        )
        return Box(bounds)

    def meet(self, other: "Box") -> Optional["Box"]:
        """Intersection, or None when empty"""
        merged = self.as_dict()
        for name, lo, hi in other.bounds:
            if name in merged:
                cur_lo, cur_hi = merged[name]
                lo, hi = max(cur_lo, lo), min(cur_hi, hi)
            # x=a · ~x=b is empty when a <= b
            if hi <= lo:
                return None
            merged[name] = (lo, hi)
        return Box.from_dict(merged)

    def contains(self, other: "Box") -> bool:
        """True when other ⊆ self"""
        theirs = other.as_dict()
        for name, lo, hi in self.bounds:
            o_lo, o_hi = theirs.get(name, (-_INF, _INF))
            if o_lo < lo or o_hi > hi:
                return False
        return True

    def single_literal(self) -> Optional[Tuple[str, float, bool]]:
        """(attribute, level, negated) when the box is exactly one literal"""
        if len(self.bounds) != 1:
            return None
        name, lo, hi = self.bounds[0]
        if lo == -_INF:
            return name, hi, False
        if hi == _INF:
            return name, lo, True
        return None

    def literals(self) -> List[PreferenceExpr]:
        out: List[PreferenceExpr] = []
        for name, lo, hi in self.bounds:
            if hi != _INF:
                out.append(Atom(name, hi))
            if lo != -_INF:
                out.append(Complement(Atom(name, lo)))
        return out

    def to_expr(self) -> PreferenceExpr:
        lits = self.literals()
        if not lits:
            return TOP
        if len(lits) == 1:
            return lits[0]
        return Conjunction(sorted_children(lits))


TOP_BOX = Box(())


def _maximal(boxes: Iterable[Box]) -> List[Box]:
    """Drop duplicates and every box contained in another"""
    unique = list(dict.fromkeys(boxes))
    # a box can only lie inside a box over a subset of its attributes
    buckets: Dict[FrozenSet[str], List[Box]] = defaultdict(list)
    for box in unique:
        buckets[box.attributes()].append(box)
    keys_by_size: Dict[int, List[FrozenSet[str]]] = defaultdict(list)
    for key in buckets:
        keys_by_size[len(key)].append(key)

    kept: List[Box] = []
    for box in unique:
        own = box.attributes()
        candidates = [own]
        for size in range(len(own)):
            candidates.extend(key for key in keys_by_size.get(size, ()) if key <= own)
        absorbed = any(
            other is not box and other.contains(box)
            for key in candidates
            for other in buckets[key]
        )
        if not absorbed:
            kept.append(box)
    return kept


def _eliminate(boxes: List[Box]) -> List[Box]:
    """
    Drop literals that a single-literal disjunct makes redundant

    S ∨ (L · R) = S ∨ R whenever S ∨ L covers the whole space. For a single
    literal x=a that holds for L = ~x=b with b <= a; for ~x=b it holds for
    L = x=a with b <= a.
    """
    singles = [s for s in (b.single_literal() for b in boxes) if s is not None]
    if not singles:
        return boxes
    widest_upper: Dict[str, float] = {}
    lowest_lower: Dict[str, float] = {}
    for name, level, negated in singles:
        if negated:
            lowest_lower[name] = min(level, lowest_lower.get(name, _INF))
        else:
            widest_upper[name] = max(level, widest_upper.get(name, -_INF))

    out: List[Box] = []
    for box in boxes:
        single = box.single_literal()
        mapping = box.as_dict()
        for name, (lo, hi) in list(mapping.items()):
            if single is not None and single[0] == name:
                # a single literal never eliminates itself, but its opposite may
                s_name, s_level, s_negated = single
                if s_negated and name in widest_upper and s_level <= widest_upper[name]:
                    lo = -_INF
                elif not s_negated and name in lowest_lower and lowest_lower[name] <= s_level:
                    hi = _INF
            else:
                if lo != -_INF and name in widest_upper and lo <= widest_upper[name]:
                    lo = -_INF
                if hi != _INF and name in lowest_lower and lowest_lower[name] <= hi:
                    hi = _INF
            mapping[name] = (lo, hi)
        out.append(Box.from_dict(mapping))
    return out


def reduce_boxes(boxes: Iterable[Box]) -> List[Box]:
    """Absorption and literal elimination to a fixpoint"""
    current = _maximal(boxes)
    while True:
        if any(b == TOP_BOX for b in current):
            return [TOP_BOX]
        eliminated = _maximal(_eliminate(current))
        if set(eliminated) == set(current):
            return current
        current = eliminated


def to_boxes(e: PreferenceExpr) -> List[Box]:
    """
    Reduced DNF of an expression as a list of boxes

    Args:
        e: Any expression

    Returns:
        list: Boxes whose union is the domain of e; [] for the empty domain

    Raises:
        ExpressionTooLargeError: e has more than PREFCALC_MAX_LITERALS
            literals, or its expansion needs more than PREFCALC_MAX_TERMS terms
    """
    count = literal_count(e)
    if count > config.max_literals:
        raise ExpressionTooLargeError(f"expression has {count} literals, cap is {config.max_literals}")
    return _dnf(to_nnf(e))


def _check_terms(count: int) -> None:
    if count > config.max_terms:
        raise ExpressionTooLargeError(
            f"normal form needs {count} terms, cap is {config.max_terms}"
        )


def _dnf(e: PreferenceExpr) -> List[Box]:
    if isinstance(e, Atom):
        return [Box.from_literal(e.attribute, e.level, False)]
    if isinstance(e, Complement):
        if not isinstance(e.child, Atom):
            raise ExpressionError("expression is not in negation normal form")
        return [Box.from_literal(e.child.attribute, e.child.level, True)]
    if isinstance(e, Top):
        return [TOP_BOX]
    if isinstance(e, Bottom):
        return []
    if isinstance(e, Conjunction):
        acc: List[Box] = [TOP_BOX]
        for child in e.children:
            right = _dnf(child)
            _check_terms(len(acc) * len(right))
            products = []
            for left_box in acc:
                for right_box in right:
                    met = left_box.meet(right_box)
                    if met is not None:
                        products.append(met)
            acc = reduce_boxes(products)
            if not acc:
                return []
        return acc
    if isinstance(e, Disjunction):
        collected: List[Box] = []
        for child in e.children:
            collected.extend(_dnf(child))
        _check_terms(len(collected))
        return reduce_boxes(collected)
    raise ExpressionError(f"unknown expression node {type(e).__name__}")


def from_boxes(boxes: List[Box]) -> PreferenceExpr:
    """Build the canonical expression for a reduced box list"""
    if not boxes:
        return BOTTOM
    terms = [b.to_expr() for b in boxes]
    if len(terms) == 1:
        return terms[0]
    return Disjunction(sorted_children(terms))


def simplify(e: PreferenceExpr) -> PreferenceExpr:
    """
    Canonical form of an expression

    The result is in negation normal form, flattened, sorted, with
    idempotence, absorption and annihilation applied, same-attribute
    literals merged, and conjunction distributed over disjunction.

    Args:
        e: Expression to canonicalize

    Returns:
        Domain-equivalent canonical expression
    """
    boxes = to_boxes(e)
    result = from_boxes(boxes)
    logger.debug(f"simplify: {len(boxes)} term(s)")
    return result


def canonical_equal(a: PreferenceExpr, b: PreferenceExpr) -> bool:
    """True iff simplify(a) and simplify(b) are structurally identical"""
    return simplify(a) == simplify(b)