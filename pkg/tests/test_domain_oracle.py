"""
Tests for attribute spaces and the grid-domain oracle
"""

import math

import numpy as np
import pytest
from hypothesis import given

from prefcalc.algebra.expr import BOTTOM, TOP, Atom
from prefcalc.domain.oracle import DomainSet, MassFunction, domains_equal, eval_domain, measure, mobius_masses
from prefcalc.domain.space import AttributeSpace
from prefcalc.errors import (
    GridTooLargeError,
    LevelOutOfRangeError,
    ModelValidationError,
    OffGridLevelError,
    SpaceError,
    SpaceMismatchError,
    UnknownAttributeError,
)
from prefcalc.utility.curves import UtilityCurve
from prefcalc.utility.engine import eval_utility
from prefcalc.utility.families import product_model
from prefcalc.utility.model import table_model
from prefcalc.utils.config import config
from tests.conftest import expressions

x2, y3 = Atom("x", 2), Atom("y", 3)
GRID = AttributeSpace.uniform(2, 5)


class TestAttributeSpace:
    def test_shape_and_size(self, cube_space):
        assert cube_space.shape == (4, 4, 4)
        assert cube_space.size == 64
        assert cube_space.names == ["x", "y", "z"]

    def test_index_of(self):
        space = AttributeSpace.from_levels({"profit": [0, 2.5, 10]})
        assert space.index_of("profit", 2.5) == 1

    def test_off_grid_level(self, line_space):
        with pytest.raises(OffGridLevelError):
            line_space.index_of("x", 2.5)

    def test_unknown_attribute(self, line_space):
        with pytest.raises(UnknownAttributeError):
            line_space.attribute("q")

    def test_out_of_range(self, line_space):
        with pytest.raises(LevelOutOfRangeError):
            line_space.attribute("x").check_in_range(7)

    @pytest.mark.parametrize("levels", [[0], [0, 0], [2, 1], [0, float("inf")]])
    def test_rejects_bad_levels(self, levels):
        with pytest.raises(SpaceError):
            AttributeSpace.from_levels({"x": levels})

    def test_rejects_duplicate_names(self):
        with pytest.raises(SpaceError):
            AttributeSpace.from_levels([("x", [0, 1]), ("x", [0, 1])])

    def test_grid_points_are_lexicographic(self):
        space = AttributeSpace.uniform(2, 2)
        assert list(space.grid_points()) == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]


class TestEvalDomain:
    def test_atom_is_lower_interval(self, line_space):
        assert eval_domain(x2, line_space).cells == {(0,), (1,), (2,)}

    def test_complement(self, line_space):
        assert eval_domain(~x2, line_space).cells == {(3,), (4,)}

    def test_conjunction_is_rectangle(self):
        domain = eval_domain(x2 & y3, GRID)
        assert domain.count == 12
        assert domain.cells == {(i, j) for i in range(3) for j in range(4)}

    def test_disjunction_is_union(self):
        assert eval_domain(x2 | y3, GRID).count == 15 + 20 - 12

    def test_constants(self):
        assert eval_domain(TOP, GRID).count == 25
        assert eval_domain(BOTTOM, GRID).count == 0

    def test_unknown_attribute(self, line_space):
        with pytest.raises(UnknownAttributeError):
            eval_domain(Atom("y", 1), line_space)

    def test_off_grid(self, line_space):
        with pytest.raises(OffGridLevelError):
            eval_domain(Atom("x", 1.5), line_space)

    def test_grid_cap(self, monkeypatch):
        monkeypatch.setattr(config, "max_grid_cells", 10)
        with pytest.raises(GridTooLargeError):
            eval_domain(x2, GRID)

    @given(expressions())
    def test_complement_is_full_minus_domain(self, e):
        full = DomainSet.full(GRID)
        assert domains_equal(eval_domain(~e, GRID), full - eval_domain(e, GRID))


class TestDomainsEqual:
    def test_de_morgan(self):
        assert domains_equal(eval_domain(~(x2 & y3), GRID), eval_domain(~x2 | ~y3, GRID))

    def test_absorption(self):
        assert domains_equal(eval_domain((x2 & y3) | x2, GRID), eval_domain(x2, GRID))

    def test_distinct(self):
        assert not domains_equal(eval_domain(x2, GRID), eval_domain(Atom("x", 3), GRID))

    def test_mismatched_spaces(self, line_space):
        with pytest.raises(SpaceMismatchError):
            domains_equal(eval_domain(x2, line_space), eval_domain(x2, GRID))


class TestDomainSet:
    def test_set_operators(self):
        a, b = eval_domain(x2, GRID), eval_domain(y3, GRID)
        assert (a & b).count == 12
        assert (a | b).count == 23
        assert (a - b).count == 3
        assert (~a).count == 10
        assert (a & b).is_subset(a)
        assert not a.is_subset(b)
        assert (a - b).is_disjoint(b)
        assert not a.is_disjoint(b)

    def test_from_cells(self, line_space):
        assert DomainSet.from_cells(line_space, [(0,), (4,)]).count == 2
        with pytest.raises(SpaceMismatchError):
            DomainSet.from_cells(line_space, [(5,)])


class TestMobiusMasses:
    def test_one_attribute(self):
        space = AttributeSpace.from_levels({"x": [0, 1, 2]})
        masses = mobius_masses(table_model(space, [0, 0.5, 1]))
        np.testing.assert_allclose(masses.masses, [0, 0.5, 0.5])

    def test_product_masses_factor(self, linear_model):
        masses = mobius_masses(linear_model).masses
        step = np.diff([0.0, 0.0, 0.25, 0.5, 0.75, 1.0])
        np.testing.assert_allclose(masses, np.outer(step, step), atol=1e-15)

    def test_total_mass_is_one(self, cube_model):
        assert math.isclose(mobius_masses(cube_model).total, 1.0, abs_tol=1e-12)

    def test_rectangle_measure_reproduces_joint_utility(self, cube_model):
        masses = mobius_masses(cube_model)
        for i, j, k in cube_model.space.grid_points():
            e = Atom("x", i) & Atom("y", j) & Atom("z", k)
            expected = cube_model.joint_utility((i, j, k))
            assert measure(eval_domain(e, cube_model.space), masses) == pytest.approx(expected, abs=1e-12)

    def test_invalid_model_rejected(self):
        space = AttributeSpace.uniform(1, 3)
        with pytest.raises(ModelValidationError):
            mobius_masses(table_model(space, [0.1, 0.5, 1]))

    def test_negative_masses_warn(self, caplog):
        space = AttributeSpace.uniform(2, 3)
        # supermodularity fails at the top corner cell
        model = table_model(space, [[0, 0, 0], [0, 0.1, 0.7], [0, 0.7, 1]])
        with caplog.at_level("WARNING", logger="prefcalc"):
            masses = mobius_masses(model)
        assert masses.has_negative_mass
        assert any("negative" in r.message for r in caplog.records)

    def test_measure_bounds(self, linear_model):
        masses = mobius_masses(linear_model)
        assert measure(DomainSet.full(GRID), masses) == pytest.approx(1.0)
        assert measure(DomainSet.empty(GRID), masses) == 0.0

    def test_measure_space_mismatch(self, linear_model, line_space):
        masses = mobius_masses(linear_model)
        with pytest.raises(SpaceMismatchError):
            measure(DomainSet.full(line_space), masses)

    @given(expressions(), expressions())
    def test_measure_is_additive_over_disjoint_sets(self, a, b):
        model = product_model([UtilityCurve.power(1.5, 0, 4), UtilityCurve.linear(0, 4)], GRID)
        masses = mobius_masses(model)
        da = eval_domain(a, GRID)
        db = eval_domain(b, GRID) - da
        assert measure(da | db, masses) == pytest.approx(measure(da, masses) + measure(db, masses), abs=1e-12)

    def test_mass_function_shape_checked(self):
        with pytest.raises(SpaceMismatchError):
            MassFunction(GRID, np.zeros((2, 2)))


class TestOracleEquivalence:
    @given(expressions())
    def test_engine_matches_oracle(self, e):
        model = table_model(GRID, np.outer([0, 0.1, 0.4, 0.7, 1.0], [0, 0.3, 0.5, 0.9, 1.0]))
        masses = mobius_masses(model)
        value = eval_utility(e, model)
        reference = measure(eval_domain(e, GRID), masses)
        assert abs(value - reference) <= 1e-9 * max(1.0, abs(reference))
