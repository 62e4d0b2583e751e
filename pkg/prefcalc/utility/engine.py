"""
Utility of preference expressions

The engine evaluates the canonical form of an expression (a reduced list of
boxes, see prefcalc.algebra.normalize) with three rules:

- a disjunction of boxes folds left by inclusion-exclusion,
  U(H ∨ T) = U(H) + U(T) - U(H·T);
- a box with a lower bound ~x=b on some attribute expands as
  U(C·~x=b) = U(C) - U(C·x=b);
- a box of upper bounds only is the joint utility at the point that takes
  each bound as its level, with unmentioned attributes at their maximum.

A complement at the top of a query is evaluated as 1 - U(child), so the
complement rule holds to floating rounding.
"""

import logging
import math
import threading
import weakref
from collections import OrderedDict
from typing import Dict, FrozenSet, List, Optional

from prefcalc.algebra.expr import Complement, PreferenceExpr, iter_atoms, literal_count
from prefcalc.algebra.normalize import TOP_BOX, Box, reduce_boxes, to_boxes
from prefcalc.errors import ExpressionTooLargeError, UndefinedConditionalError
from prefcalc.utility.model import UtilityModel
from prefcalc.utils.config import config

logger = logging.getLogger(__name__)

_INF = math.inf


def _box_order(box: Box) -> tuple:
    return box.bounds


class UtilityEngine:
    """
    Evaluator bound to one utility model

    Results are memoized by canonical form. The memo is shared by every
    thread that queries the same engine and is guarded by a lock; values are
    computed outside the lock, and a value computed twice is identical.
    The memo keeps at most memo_size entries (PREFCALC_MEMO_SIZE by
    default) and drops the least recently used.
    """

    def __init__(self, model: UtilityModel, memo_size: Optional[int] = None):
        self.model = model
        self.memo_size = config.memo_size if memo_size is None else memo_size
        if self.memo_size < 1:
            raise ValueError(f"memo_size must be >= 1, got {self.memo_size}")
        self._memo: "OrderedDict[FrozenSet[Box], float]" = OrderedDict()
        self._lock = threading.Lock()
        self._hits = 0
        self._misses = 0

    def clear_cache(self) -> None:
        with self._lock:
            self._memo.clear()
            self._hits = 0
            self._misses = 0

    def cache_info(self) -> Dict[str, int]:
        with self._lock:
            return {"hits": self._hits, "misses": self._misses, "size": len(self._memo)}

    def _check_query(self, e: PreferenceExpr) -> None:
        count = literal_count(e)
        if count > config.max_literals:
            raise ExpressionTooLargeError(
                f"expression has {count} literals, cap is {config.max_literals}"
            )
        space = self.model.space
        for a in iter_atoms(e):
            attr = space.attribute(a.attribute)
            if self.model.is_product:
                attr.check_in_range(a.level)
            else:
                attr.index_of(a.level)

    def eval_utility(self, e: PreferenceExpr) -> float:
        """
        Utility of an expression under the model

        Args:
            e: Expression over attributes of the model's space

        Returns:
            float: Utility; within [0, 1] when every Möbius mass is nonnegative

        Raises:
            UnknownAttributeError: Atom names an attribute not in the space
            OffGridLevelError: Atom level is off the grid of a table model
            LevelOutOfRangeError: Atom level is outside the attribute range
            ExpressionTooLargeError: More literals than the configured cap
        """
        self._check_query(e)
        return self._eval(e)

    def _eval(self, e: PreferenceExpr) -> float:
        if isinstance(e, Complement):
            return 1.0 - self._eval(e.child)
        return self._eval_boxes(to_boxes(e))

    def conditional_utility(self, a: PreferenceExpr, given: PreferenceExpr) -> float:
        """
        U(a | given) = U(a·given) / U(given)

        Raises:
            UndefinedConditionalError: If U(given) is zero
        """
        denominator = self.eval_utility(given)
        if abs(denominator) <= config.identity_atol:
            raise UndefinedConditionalError(
                f"conditioning on '{given}' whose utility is {denominator!r}"
            )
        return self.eval_utility(a & given) / denominator

    def _eval_boxes(self, boxes: List[Box]) -> float:
        key = frozenset(boxes)
        with self._lock:
            cached = self._memo.get(key)
            if cached is not None:
                self._memo.move_to_end(key)
                self._hits += 1
                return cached
            self._misses += 1

        value = self._compute(sorted(boxes, key=_box_order))

        with self._lock:
            self._memo[key] = value
            self._memo.move_to_end(key)
            while len(self._memo) > self.memo_size:
                self._memo.popitem(last=False)
        return value

    def _compute(self, boxes: List[Box]) -> float:
        if not boxes:
            return 0.0
        if len(boxes) == 1:
            return self._eval_box(boxes[0])

        # U(H ∨ B) = U(H) + U(B) - U(H·B), folded over growing prefixes H
        total = self._eval_boxes([boxes[0]])
        for k in range(1, len(boxes)):
            last = boxes[k]
            overlap = [met for met in (h.meet(last) for h in boxes[:k]) if met is not None]
            total = total + self._eval_boxes([last]) - self._eval_boxes(reduce_boxes(overlap))
        return total

    def _eval_box(self, box: Box) -> float:
        if box == TOP_BOX:
            return 1.0

        bounds = box.as_dict()
        for name, (lo, hi) in bounds.items():
            if lo == -_INF:
                continue
            # C·~x=lo  =  C - C·x=lo
            without = dict(bounds)
            without[name] = (-_INF, hi)
            capped = dict(bounds)
            capped[name] = (-_INF, lo)
            return (
                self._eval_boxes([Box.from_dict(without)])
                - self._eval_boxes([Box.from_dict(capped)])
            )

        point = self.model.space.max_point()
        for name, (_, hi) in bounds.items():
            point[name] = hi
        return self.model.joint_utility(point)


_engines: "weakref.WeakKeyDictionary[UtilityModel, UtilityEngine]" = weakref.WeakKeyDictionary()
_engines_lock = threading.Lock()


def engine_for(model: UtilityModel) -> UtilityEngine:
    """Shared engine of a model, created on first use"""
    with _engines_lock:
        engine: Optional[UtilityEngine] = _engines.get(model)
        if engine is None:
            engine = UtilityEngine(model)
            _engines[model] = engine
            logger.debug(f"created utility engine for model context '{model.context}'")
        return engine


def eval_utility(e: PreferenceExpr, model: UtilityModel) -> float:
    """Utility of an expression; see UtilityEngine.eval_utility"""
    return engine_for(model).eval_utility(e)
