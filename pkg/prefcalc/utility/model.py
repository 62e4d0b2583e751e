"""
Attribute-dominance utility models
"""

import logging
from dataclasses import dataclass
from typing import Mapping, Sequence, Tuple, Union

import numpy as np

from prefcalc.domain.space import AttributeSpace
from prefcalc.errors import GridTooLargeError, LevelOutOfRangeError, ModelValidationError
from prefcalc.utility.curves import UtilityCurve, eval_curve
from prefcalc.utils.config import config

logger = logging.getLogger(__name__)

DEFAULT_CONTEXT = "default"


@dataclass(frozen=True)
class ProductOfCurves:
    """Joint utility as the product of one curve per attribute"""
    curves: Tuple[UtilityCurve, ...]

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))


@dataclass(frozen=True, eq=False)
class TableJoint:
    """Joint utility tabulated at every grid point (C order, last attribute fastest)"""
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)


JointSpec = Union[ProductOfCurves, TableJoint]
Point = Union[Mapping[str, float], Sequence[float]]


@dataclass(frozen=True, eq=False)
class UtilityModel:
    """
    Joint utility over an attribute space, tagged with the state of
    preference it was assessed under

    Models are immutable; swapping the state of preference means building a
    new model (see with_context).
    """
    space: AttributeSpace
    joint: JointSpec
    context: str = DEFAULT_CONTEXT

    def __post_init__(self):
        if isinstance(self.joint, ProductOfCurves):
            if len(self.joint.curves) != len(self.space):
                raise ModelValidationError(
                    f"product model needs {len(self.space)} curves, got {len(self.joint.curves)}"
                )
        elif isinstance(self.joint, TableJoint):
            if self.joint.values.shape != self.space.shape:
                raise ModelValidationError(
                    f"table shape {self.joint.values.shape} does not match space shape {self.space.shape}"
                )
        else:
            raise ModelValidationError(f"unsupported joint specification {type(self.joint).__name__}")

    @property
    def is_product(self) -> bool:
        return isinstance(self.joint, ProductOfCurves)

    def _levels_of(self, point: Point) -> Tuple[float, ...]:
        if isinstance(point, Mapping):
            missing = [n for n in self.space.names if n not in point]
            if missing:
                raise LevelOutOfRangeError(f"point is missing attributes {missing}")
            return tuple(float(point[n]) for n in self.space.names)
        levels = tuple(float(v) for v in point)
        if len(levels) != len(self.space):
            raise LevelOutOfRangeError(f"point has {len(levels)} levels, space has {len(self.space)}")
        return levels

    def joint_utility(self, point: Point) -> float:
        """
        Joint utility at one level per attribute

        Args:
            point: Mapping name -> level, or levels in attribute order

        Returns:
            Product of curve values (product model) or the stored value (table)

        Raises:
            LevelOutOfRangeError: Level outside the attribute range
            OffGridLevelError: Level not on the grid of a table model
        """
        levels = self._levels_of(point)
        if isinstance(self.joint, ProductOfCurves):
            value = 1.0
            for attr, curve, level in zip(self.space.attributes, self.joint.curves, levels):
                attr.check_in_range(level)
                value *= eval_curve(curve, level)
            return value
        index = tuple(
            attr.index_of(level) for attr, level in zip(self.space.attributes, levels)
        )
        return float(self.joint.values[index])

    def grid_values(self) -> np.ndarray:
        """Joint utility at every grid point, shaped like the space"""
        if self.space.size > config.max_grid_cells:
            raise GridTooLargeError(
                f"grid has {self.space.size} cells, cap is {config.max_grid_cells}"
            )
        if isinstance(self.joint, TableJoint):
            return self.joint.values
        result = np.ones(self.space.shape, dtype=np.float64)
        for axis, (attr, curve) in enumerate(zip(self.space.attributes, self.joint.curves)):
            column = curve.evaluate_many(attr.levels)
            shape = [1] * len(self.space)
            shape[axis] = len(attr.levels)
            result = result * column.reshape(shape)
        return result


def joint_utility(point: Point, model: UtilityModel) -> float:
    """Module-level form of UtilityModel.joint_utility"""
    return model.joint_utility(point)


def with_context(model: UtilityModel, context: str) -> UtilityModel:
    """Same joint utility under a different state-of-preference label"""
    return UtilityModel(model.space, model.joint, context)


def tabulate_model(model: UtilityModel) -> UtilityModel:
    """Table model with the same grid values"""
    if isinstance(model.joint, TableJoint):
        return model
    return UtilityModel(model.space, TableJoint(model.grid_values()), model.context)


def table_model(space: AttributeSpace, values, context: str = DEFAULT_CONTEXT) -> UtilityModel:
    """
    Table model from nested lists or a flat row-major sequence

    Args:
        space: Attribute space
        values: Array-like, either shaped like the space or flat
        context: State-of-preference label
    """
    array = np.asarray(values, dtype=np.float64)
    if array.ndim == 1 and array.size == space.size:
        array = array.reshape(space.shape)
    return UtilityModel(space, TableJoint(array), context)


