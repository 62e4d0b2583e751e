"""
Attribute spaces: ordered attributes with finite level grids
"""

import itertools
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from prefcalc.algebra.expr import AttributeId
from prefcalc.errors import (
    LevelOutOfRangeError,
    OffGridLevelError,
    SpaceError,
    UnknownAttributeError,
)

DEFAULT_NAMES = ["x", "y", "z", "w", "v", "u"]


@dataclass(frozen=True)
class Attribute:
    """One attribute and its strictly increasing level grid"""
    id: AttributeId
    levels: Tuple[float, ...]

    def __post_init__(self):
        levels = tuple(float(v) for v in self.levels)
        if len(levels) < 2:
            raise SpaceError(f"attribute '{self.id.name}' needs at least 2 levels, got {len(levels)}")
        for value in levels:
            if not math.isfinite(value):
                raise SpaceError(f"attribute '{self.id.name}' has a non-finite level {value}")
        for lower, upper in zip(levels, levels[1:]):
            if not lower < upper:
                raise SpaceError(
                    f"levels of attribute '{self.id.name}' must be strictly increasing "
                    f"({lower} followed by {upper})"
                )
        object.__setattr__(self, "levels", levels)

    @property
    def name(self) -> str:
        return self.id.name

    @property
    def minimum(self) -> float:
        return self.levels[0]

    @property
    def maximum(self) -> float:
        return self.levels[-1]

    def index_of(self, level: float) -> int:
        """
        Grid index of a level

        Raises:
            OffGridLevelError: If the level is not one of the grid levels
        """
        level = float(level)
        # levels are few; exact equality is the contract
        for i, value in enumerate(self.levels):
            if value == level:
                return i
        raise OffGridLevelError(
            f"level {level} is not on the grid of attribute '{self.name}' {list(self.levels)}"
        )

    def check_in_range(self, level: float) -> None:
        if not self.minimum <= level <= self.maximum:
            raise LevelOutOfRangeError(
                f"level {level} of attribute '{self.name}' is outside "
                f"[{self.minimum}, {self.maximum}]"
            )


LevelSpec = Union[Mapping[str, Sequence[float]], Iterable[Tuple[str, Sequence[float]]]]


@dataclass(frozen=True)
class AttributeSpace:
    """Ordered attributes, each with its own level grid"""
    attributes: Tuple[Attribute, ...]

    def __post_init__(self):
        attributes = tuple(self.attributes)
        if not attributes:
            raise SpaceError("an attribute space needs at least one attribute")
        names = [a.name for a in attributes]
        if len(set(names)) != len(names):
            raise SpaceError(f"attribute names must be unique, got {names}")
        for i, attr in enumerate(attributes):
            if attr.id.index != i:
                raise SpaceError(f"attribute '{attr.name}' has index {attr.id.index}, expected {i}")
        object.__setattr__(self, "attributes", attributes)

    @classmethod
    def from_levels(cls, spec: LevelSpec) -> "AttributeSpace":
        """
        Build a space from attribute names and level lists

        Args:
            spec: Mapping or sequence of (name, levels) pairs, in attribute order
        """
        items = spec.items() if isinstance(spec, Mapping) else spec
        attributes = [
            Attribute(AttributeId(name, i), tuple(levels))
            for i, (name, levels) in enumerate(items)
        ]
        return cls(tuple(attributes))

    @classmethod
    def uniform(cls, n_attributes: int, n_levels: int) -> "AttributeSpace":
        """Attributes x, y, z, ... each with levels 0..n_levels-1"""
        if n_attributes < 1:
            raise SpaceError("n_attributes must be at least 1")
        names = default_names(n_attributes)
        return cls.from_levels([(name, [float(i) for i in range(n_levels)]) for name in names])

    @property
    def names(self) -> List[str]:
        return [a.name for a in self.attributes]

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(a.levels) for a in self.attributes)

    @property
    def size(self) -> int:
        return math.prod(self.shape)

    def __len__(self) -> int:
        return len(self.attributes)

    def __contains__(self, name: object) -> bool:
        return any(a.name == name for a in self.attributes)

    def attribute(self, name: Union[str, AttributeId]) -> Attribute:
        """
        Look up an attribute by name or AttributeId

        Raises:
            UnknownAttributeError: If the attribute is not in the space
        """
        key = name.name if isinstance(name, AttributeId) else name
        for attr in self.attributes:
            if attr.name == key:
                return attr
        raise UnknownAttributeError(f"unknown attribute '{key}' (space has {self.names})")

    def index_of(self, name: str, level: float) -> int:
        return self.attribute(name).index_of(level)

    def max_point(self) -> Dict[str, float]:
        return {a.name: a.maximum for a in self.attributes}

    def grid_indices(self) -> Iterator[Tuple[int, ...]]:
        """Index tuples in lexicographic (row-major, last attribute fastest) order"""
        return itertools.product(*(range(n) for n in self.shape))

    def grid_points(self) -> Iterator[Tuple[float, ...]]:
        """Level tuples in lexicographic order"""
        return itertools.product(*(a.levels for a in self.attributes))


def default_names(count: int) -> List[str]:
    if count <= len(DEFAULT_NAMES):
        return DEFAULT_NAMES[:count]
    return [f"a{i}" for i in range(count)]
