"""
Shared fixtures and hypothesis strategies
"""

import logging
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from prefcalc.algebra.expr import BOTTOM, TOP, Atom, Complement, Conjunction, Disjunction
from prefcalc.domain.space import AttributeSpace
from prefcalc.storage.model_file import load_model
from prefcalc.utility.curves import UtilityCurve
from prefcalc.utility.families import product_model
from prefcalc.utility.model import table_model

GRID_LEVELS = (0.0, 1.0, 2.0, 3.0, 4.0)

# 3x3 table with U(x1, y1) = 0.2 and U(x1, y_max) = 0.5
TABLE_3X3 = [[0, 0, 0], [0, 0.2, 0.5], [0, 0.6, 1]]


@pytest.fixture(autouse=True)
def reset_console_logging():
    """Drop the CLI console handler so it never outlives a captured stream"""
    yield
    logger = logging.getLogger("prefcalc")
    for handler in list(logger.handlers):
        if handler.get_name() == "prefcalc-console":
            logger.removeHandler(handler)
    logger.setLevel(logging.NOTSET)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def line_space():
    return AttributeSpace.from_levels({"x": [0, 1, 2, 3, 4]})


@pytest.fixture
def grid_space():
    return AttributeSpace.uniform(2, 5)


@pytest.fixture
def cube_space():
    return AttributeSpace.uniform(3, 4)


@pytest.fixture
def linear_model(grid_space):
    """Product of linear curves on the 5x5 grid: U_x(b) = b/4, U_y(c) = c/4"""
    curves = [UtilityCurve.linear(0, 4), UtilityCurve.linear(0, 4)]
    return product_model(curves, grid_space)


@pytest.fixture
def cube_model(cube_space):
    curves = [
        UtilityCurve.exponential(0.7, 0, 3),
        UtilityCurve.power(2.0, 0, 3),
        UtilityCurve.linear(0, 3),
    ]
    return product_model(curves, cube_space)


@pytest.fixture
def table_3x3():
    space = AttributeSpace.uniform(2, 3)
    return table_model(space, TABLE_3X3, context="assessed")


@pytest.fixture
def npv_file_model():
    return load_model(Path(__file__).resolve().parent.parent / "models" / "npv_exponential.json")


# -- hypothesis strategies ------------------------------------------------

def atoms(names=("x", "y"), levels=GRID_LEVELS):
    return st.builds(Atom, st.sampled_from(names), st.sampled_from(levels))


def expressions(names=("x", "y"), levels=GRID_LEVELS, max_leaves=12, constants=True):
    leaves = atoms(names, levels)
    if constants:
        leaves = leaves | st.sampled_from([TOP, BOTTOM])

    def extend(children):
        pairs = st.tuples(children, children)
        return (
            st.builds(Complement, children)
            | st.builds(lambda p: Conjunction(p), pairs)
            | st.builds(lambda p: Disjunction(p), pairs)
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)
