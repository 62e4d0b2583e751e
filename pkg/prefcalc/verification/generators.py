"""
Seeded random spaces, expressions and models for the property suites
"""

from typing import List

import numpy as np

from prefcalc.algebra.expr import BOTTOM, TOP, Atom, Complement, Conjunction, Disjunction, PreferenceExpr
from prefcalc.domain.space import AttributeSpace, default_names
from prefcalc.utility.curves import UtilityCurve
from prefcalc.utility.families import product_model
from prefcalc.utility.model import UtilityModel, table_model

CONSTANT_PROBABILITY = 0.05
LEAF_PROBABILITY = 0.3


def random_space(rng: np.random.Generator, max_attributes: int = 3, max_levels: int = 6) -> AttributeSpace:
    """Between 1 and max_attributes attributes with 2..max_levels integer-valued levels each"""
    n_attributes = int(rng.integers(1, max_attributes + 1))
    spec = []
    for name in default_names(n_attributes):
        n_levels = int(rng.integers(2, max_levels + 1))
        start = float(rng.integers(0, 3))
        steps = rng.integers(1, 4, size=n_levels - 1)
        levels = [start, *(start + float(s) for s in np.cumsum(steps))]
        spec.append((name, levels))
    return AttributeSpace.from_levels(spec)


def random_atom(rng: np.random.Generator, space: AttributeSpace) -> Atom:
    attr = space.attributes[int(rng.integers(len(space)))]
    return Atom(attr.name, attr.levels[int(rng.integers(len(attr.levels)))])


def random_expression(
    rng: np.random.Generator,
    space: AttributeSpace,
    depth: int = 6,
    constants: bool = True,
) -> PreferenceExpr:
    """
    Random binary expression tree over grid atoms

    With binary nodes and depth <= 6 the tree has at most 64 literals.
    """
    if depth <= 0 or rng.random() < LEAF_PROBABILITY:
        if constants and rng.random() < CONSTANT_PROBABILITY:
            return TOP if rng.random() < 0.5 else BOTTOM
        return random_atom(rng, space)
    choice = rng.random()
    if choice < 0.2:
        return Complement(random_expression(rng, space, depth - 1, constants))
    left = random_expression(rng, space, depth - 1, constants)
    right = random_expression(rng, space, depth - 1, constants)
    if choice < 0.6:
        return Conjunction((left, right))
    return Disjunction((left, right))


def random_curve(rng: np.random.Generator, minimum: float, maximum: float) -> UtilityCurve:
    span = maximum - minimum
    family = int(rng.integers(3))
    if family == 0:
        # negative gamma is a risk-seeking, still increasing curve
        return UtilityCurve.exponential(float(rng.uniform(-2.0, 2.0)) / span, minimum, maximum)
    if family == 1:
        return UtilityCurve.power(float(rng.uniform(0.5, 3.0)), minimum, maximum)
    return UtilityCurve.linear(minimum, maximum)


def random_product_model(rng: np.random.Generator, space: AttributeSpace) -> UtilityModel:
    curves = [random_curve(rng, a.minimum, a.maximum) for a in space.attributes]
    return product_model(curves, space, context="random-product")


def random_table_model(rng: np.random.Generator, space: AttributeSpace) -> UtilityModel:
    """
    Table built from nonnegative random masses off the minimum slices

    Cumulative sums of the masses give a joint utility that is 0 on every
    minimum slice, nondecreasing, and 1 at the all-maximum corner.
    """
    masses = rng.exponential(1.0, size=space.shape)
    for axis in range(len(space)):
        index: List[object] = [slice(None)] * len(space)
        index[axis] = 0
        masses[tuple(index)] = 0.0
    masses /= masses.sum()
    values = masses
    for axis in range(len(space)):
        values = np.cumsum(values, axis=axis)
    values[(-1,) * len(space)] = 1.0
    return table_model(space, values, context="random-table")


def random_model(rng: np.random.Generator, space: AttributeSpace) -> UtilityModel:
    """Product or table model with equal probability"""
    if rng.random() < 0.5:
        return random_product_model(rng, space)
    return random_table_model(rng, space)
