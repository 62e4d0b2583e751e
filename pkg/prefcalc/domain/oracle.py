"""
Brute-force set semantics on finite grids

Every expression denotes a set of grid cells: an atom x=b is the slab of
cells whose x-index is at most index(b), unconstrained elsewhere; complement,
conjunction and disjunction are set complement, intersection and union. A
mass function assigns each cell the finite-difference increment of the joint
utility, so that the measure of a lower-orthant rectangle is the joint utility
at its top corner.
"""

import logging
import math
from dataclasses import dataclass
from typing import FrozenSet, List, Tuple

import numpy as np

from prefcalc.algebra.expr import (
    Atom,
    Bottom,
    Complement,
    Conjunction,
    Disjunction,
    PreferenceExpr,
    Top,
)
from prefcalc.domain.space import AttributeSpace
from prefcalc.errors import (
    ExpressionError,
    GridTooLargeError,
    ModelValidationError,
    SpaceMismatchError,
)
from prefcalc.utility.model import UtilityModel
from prefcalc.utils.config import config
from prefcalc.utils.validators import Diagnostic, Severity, errors_of

logger = logging.getLogger(__name__)

MASS_TOLERANCE = 1e-12


def _check_grid(space: AttributeSpace) -> None:
    if space.size > config.max_grid_cells:
        raise GridTooLargeError(f"grid has {space.size} cells, cap is {config.max_grid_cells}")


@dataclass(frozen=True, eq=False)
class DomainSet:
    """Subset of the grid cells of a space, stored as a boolean mask"""
    space: AttributeSpace
    mask: np.ndarray

    def __post_init__(self):
        mask = np.array(self.mask, dtype=bool, copy=True)
        if mask.shape != self.space.shape:
            raise SpaceMismatchError(f"mask shape {mask.shape} does not match space {self.space.shape}")
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def full(cls, space: AttributeSpace) -> "DomainSet":
        _check_grid(space)
        return cls(space, np.ones(space.shape, dtype=bool))

    @classmethod
    def empty(cls, space: AttributeSpace) -> "DomainSet":
        _check_grid(space)
        return cls(space, np.zeros(space.shape, dtype=bool))

    @classmethod
    def from_cells(cls, space: AttributeSpace, cells) -> "DomainSet":
        mask = np.zeros(space.shape, dtype=bool)
        for cell in cells:
            if len(cell) != len(space) or any(not 0 <= i < n for i, n in zip(cell, space.shape)):
                raise SpaceMismatchError(f"cell {cell} is outside the grid {space.shape}")
            mask[tuple(cell)] = True
        return cls(space, mask)

    @property
    def cells(self) -> FrozenSet[Tuple[int, ...]]:
        return frozenset(tuple(int(i) for i in idx) for idx in np.argwhere(self.mask))

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.mask))

    def _same_space(self, other: "DomainSet") -> None:
        if self.space != other.space:
            raise SpaceMismatchError("domain sets belong to different spaces")

    def __and__(self, other: "DomainSet") -> "DomainSet":
        self._same_space(other)
        return DomainSet(self.space, self.mask & other.mask)

    def __or__(self, other: "DomainSet") -> "DomainSet":
        self._same_space(other)
        return DomainSet(self.space, self.mask | other.mask)

    def __sub__(self, other: "DomainSet") -> "DomainSet":
        self._same_space(other)
        return DomainSet(self.space, self.mask & ~other.mask)

    def __invert__(self) -> "DomainSet":
        return DomainSet(self.space, ~self.mask)

    def is_subset(self, other: "DomainSet") -> bool:
        self._same_space(other)
        return not bool(np.any(self.mask & ~other.mask))

    def is_disjoint(self, other: "DomainSet") -> bool:
        self._same_space(other)
        return not bool(np.any(self.mask & other.mask))


def _atom_mask(a: Atom, space: AttributeSpace) -> np.ndarray:
    attr = space.attribute(a.attribute)
    k = attr.index_of(a.level)
    axis = attr.id.index
    shape = [1] * len(space)
    shape[axis] = len(attr.levels)
    slab = (np.arange(len(attr.levels)) <= k).reshape(shape)
    return np.broadcast_to(slab, space.shape)


def _mask(e: PreferenceExpr, space: AttributeSpace) -> np.ndarray:
    if isinstance(e, Atom):
        return _atom_mask(e, space)
    if isinstance(e, Top):
        return np.ones(space.shape, dtype=bool)
    if isinstance(e, Bottom):
        return np.zeros(space.shape, dtype=bool)
    if isinstance(e, Complement):
        return ~_mask(e.child, space)
    if isinstance(e, Conjunction):
        out = np.ones(space.shape, dtype=bool)
        for child in e.children:
            out = out & _mask(child, space)
        return out
    if isinstance(e, Disjunction):
        out = np.zeros(space.shape, dtype=bool)
        for child in e.children:
            out = out | _mask(child, space)
        return out
    raise ExpressionError(f"unknown expression node {type(e).__name__}")


def eval_domain(e: PreferenceExpr, space: AttributeSpace) -> DomainSet:
    """
    Set of grid cells an expression denotes

    Args:
        e: Expression whose atoms sit on the grid of the space
        space: Attribute space

    Returns:
        DomainSet of the expression

    Raises:
        UnknownAttributeError: Atom names an attribute not in the space
        OffGridLevelError: Atom level is not a grid level
        GridTooLargeError: Space exceeds the cell cap
    """
    _check_grid(space)
    return DomainSet(space, _mask(e, space))


def domains_equal(a: DomainSet, b: DomainSet) -> bool:
    """
    Exact set equality

    Raises:
        SpaceMismatchError: If the sets belong to different spaces
    """
    if a.space != b.space:
        raise SpaceMismatchError("cannot compare domain sets over different spaces")
    return bool(np.array_equal(a.mask, b.mask))


@dataclass(frozen=True, eq=False)
class MassFunction:
    """Signed mass per grid cell; masses sum to 1"""
    space: AttributeSpace
    masses: np.ndarray

    def __post_init__(self):
        masses = np.array(self.masses, dtype=np.float64, copy=True)
        if masses.shape != self.space.shape:
            raise SpaceMismatchError(f"mass shape {masses.shape} does not match space {self.space.shape}")
        masses.setflags(write=False)
        object.__setattr__(self, "masses", masses)

    @property
    def total(self) -> float:
        return math.fsum(self.masses.ravel())

    @property
    def has_negative_mass(self) -> bool:
        return bool(np.any(self.masses < -MASS_TOLERANCE))


def finite_differences(values: np.ndarray) -> np.ndarray:
    """
    Alternating-sign finite difference over each cell's lower-orthant step

    Out-of-range neighbours count as 0, so summing the result over the
    rectangle {0..i} x {0..j} x ... telescopes back to values[i, j, ...].
    """
    masses = np.asarray(values, dtype=np.float64)
    for axis in range(masses.ndim):
        masses = np.diff(masses, axis=axis, prepend=0.0)
    return masses


def grid_diagnostics(space: AttributeSpace, values: np.ndarray) -> List[Diagnostic]:
    """
    Attribute-dominance invariants of a tabulated joint utility

    Errors for non-finite values, corner normalization, nonzero minimum
    slices and coordinate-wise decreases; a warning for negative masses.
    """
    values = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        return [Diagnostic(Severity.ERROR, "non-finite", "joint utility has non-finite values")]

    diagnostics: List[Diagnostic] = []
    ndim = values.ndim
    low_corner = float(values[(0,) * ndim])
    high_corner = float(values[(-1,) * ndim])
    if abs(low_corner) > MASS_TOLERANCE:
        diagnostics.append(Diagnostic(
            Severity.ERROR, "corner-normalization",
            f"utility at the all-minimum point is {low_corner}, expected 0"
        ))
    if abs(high_corner - 1.0) > MASS_TOLERANCE:
        diagnostics.append(Diagnostic(
            Severity.ERROR, "corner-normalization",
            f"utility at the all-maximum point is {high_corner}, expected 1"
        ))

    for axis, attr in enumerate(space.attributes):
        slice_values = np.take(values, 0, axis=axis)
        worst = float(np.max(np.abs(slice_values)))
        if worst > MASS_TOLERANCE:
            diagnostics.append(Diagnostic(
                Severity.ERROR, "minimum-slice",
                f"utility is {worst} somewhere on the slice {attr.name}={attr.minimum}, expected 0"
            ))

        steps = np.diff(values, axis=axis)
        if steps.size and float(steps.min()) < -MASS_TOLERANCE:
            where = np.unravel_index(int(np.argmin(steps)), steps.shape)
            diagnostics.append(Diagnostic(
                Severity.ERROR, "monotonicity",
                f"utility decreases by {-float(steps.min())} along '{attr.name}' at grid index {tuple(int(i) for i in where)}"
            ))

    masses = finite_differences(values)
    negative = int(np.count_nonzero(masses < -MASS_TOLERANCE))
    if negative:
        diagnostics.append(Diagnostic(
            Severity.WARNING, "negative-mass",
            f"{negative} grid cell(s) carry negative Möbius mass (min {float(masses.min())})"
        ))
    return diagnostics


def mobius_masses(model: UtilityModel) -> MassFunction:
    """
    Finite-difference masses reproducing the joint utility

    The mass of a cell is the alternating-sign difference of the joint
    utility over the 2^n corners of its lower-orthant step, with indices
    below 0 contributing 0.

    Args:
        model: Valid utility model over a finite space

    Returns:
        MassFunction whose rectangle measures equal the joint utility

    Raises:
        ModelValidationError: If the tabulated utility breaks a model invariant
    """
    values = model.grid_values()
    diagnostics = grid_diagnostics(model.space, values)
    errors = errors_of(diagnostics)
    if errors:
        raise ModelValidationError(
            f"cannot build masses for an invalid model: {errors[0].message}", diagnostics
        )

    result = MassFunction(model.space, finite_differences(values))
    if result.has_negative_mass:
        logger.warning(f"model '{model.context}' has negative Möbius masses; measures are signed sums")
    return result


def measure(d: DomainSet, m: MassFunction) -> float:
    """
    Sum of masses over the cells of a domain set

    Raises:
        SpaceMismatchError: If the set and the masses belong to different spaces
    """
    if d.space != m.space:
        raise SpaceMismatchError("domain set and mass function belong to different spaces")
    return math.fsum(m.masses[d.mask])
