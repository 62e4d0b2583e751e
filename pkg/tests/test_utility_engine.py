"""
Tests for utility models, the evaluator and utility inference
"""

import itertools
import math
import threading

import numpy as np
import pytest
from hypothesis import given, settings

from prefcalc.algebra.expr import BOTTOM, TOP, Atom
from prefcalc.domain.oracle import eval_domain, mobius_masses
from prefcalc.domain.space import AttributeSpace
from prefcalc.errors import (
    ExpressionTooLargeError,
    GridTooLargeError,
    InferenceError,
    LevelOutOfRangeError,
    ModelValidationError,
    OffGridLevelError,
    UndefinedConditionalError,
    UnknownAttributeError,
)
from prefcalc.utility.curves import UtilityCurve
from prefcalc.utility.engine import UtilityEngine, eval_utility
from prefcalc.utility.families import product_model
from prefcalc.utility.inference import (
    bayes_update,
    check_utility_independence,
    complement_of_conjunction,
    conditional_utility,
    conjunction_rule_check,
    disjunction_given,
)
from prefcalc.utility.model import (
    ProductOfCurves,
    TableJoint,
    UtilityModel,
    joint_utility,
    table_model,
    tabulate_model,
    with_context,
)
from prefcalc.utility.validation import validate_model
from prefcalc.utils.config import config
from prefcalc.utils.validators import Severity
from tests.conftest import expressions

GRID = AttributeSpace.uniform(2, 5)
LINEAR = product_model([UtilityCurve.linear(0, 4), UtilityCurve.linear(0, 4)], GRID)
TABLE = tabulate_model(product_model([UtilityCurve.power(2.0, 0, 4), UtilityCurve.exponential(0.5, 0, 4)], GRID))


def perturbed_linear_table():
    """3x3 product of linear curves, raised by 0.05 at the centre cell"""
    space = AttributeSpace.uniform(2, 3)
    values = np.outer([0, 0.5, 1], [0, 0.5, 1])
    values[1, 1] += 0.05
    return table_model(space, values)


def nearly_independent_table():
    """3x3 product table with every interior utility positive, centre raised by 1e-4"""
    space = AttributeSpace.uniform(2, 3)
    values = np.outer([0, 0.5, 1], [0, 0.4, 1])
    values[1, 1] += 1e-4
    return table_model(space, values)


class TestJointUtility:
    def test_product_of_curve_values(self):
        space = AttributeSpace.from_levels({"x": [0, 6, 10], "y": [0, 5, 10]})
        model = product_model([UtilityCurve.linear(0, 10), UtilityCurve.linear(0, 10)], space)
        assert joint_utility({"x": 6, "y": 5}, model) == pytest.approx(0.3)

    def test_minimum_slice_is_zero(self, cube_model):
        assert joint_utility((0, 2, 3), cube_model) == 0.0

    def test_all_maximum_is_one(self, cube_model):
        assert joint_utility((3, 3, 3), cube_model) == 1.0

    def test_product_model_accepts_off_grid_levels(self):
        assert LINEAR.joint_utility((2.5, 4)) == pytest.approx(0.625)

    def test_table_rejects_off_grid_level(self, table_3x3):
        with pytest.raises(OffGridLevelError):
            table_3x3.joint_utility((0.5, 1))

    def test_product_rejects_out_of_range(self):
        with pytest.raises(LevelOutOfRangeError):
            LINEAR.joint_utility((5, 1))

    def test_with_context_keeps_values(self, table_3x3):
        swapped = with_context(table_3x3, "after update")
        assert swapped.context == "after update"
        assert swapped.joint_utility((1, 1)) == table_3x3.joint_utility((1, 1))

    def test_tabulate_model_matches_grid(self, cube_model):
        table = tabulate_model(cube_model)
        assert isinstance(table.joint, TableJoint)
        np.testing.assert_array_equal(table.grid_values(), cube_model.grid_values())

    def test_model_shape_checks(self):
        with pytest.raises(ModelValidationError):
            UtilityModel(GRID, ProductOfCurves((UtilityCurve.linear(0, 4),)))
        with pytest.raises(ModelValidationError):
            UtilityModel(GRID, TableJoint(np.zeros((3, 3))))


class TestValidateModel:
    def test_product_model_is_valid(self, cube_model):
        assert validate_model(cube_model) == []

    def test_corner_violation(self):
        space = AttributeSpace.uniform(2, 2)
        diagnostics = validate_model(table_model(space, [[0.1, 0.1], [0.1, 1]]))
        codes = {d.code for d in diagnostics if d.severity is Severity.ERROR}
        assert "corner-normalization" in codes
        assert "minimum-slice" in codes

    def test_decreasing_in_x(self):
        space = AttributeSpace.uniform(2, 3)
        diagnostics = validate_model(table_model(space, [[0, 0, 0], [0, 0.6, 0.7], [0, 0.4, 1]]))
        assert any(d.code == "monotonicity" for d in diagnostics)

    def test_negative_mass_is_only_a_warning(self):
        space = AttributeSpace.uniform(2, 3)
        diagnostics = validate_model(table_model(space, [[0, 0, 0], [0, 0.1, 0.7], [0, 0.7, 1]]))
        assert [d.severity for d in diagnostics] == [Severity.WARNING]

    def test_curve_range_mismatch(self):
        model = UtilityModel(GRID, ProductOfCurves((UtilityCurve.linear(0, 4), UtilityCurve.linear(0, 5))))
        assert [d.code for d in validate_model(model)] == ["curve-range"]

    def test_product_model_beyond_grid_cap(self):
        # 200^3 cells is over the oracle cap; a product needs no tabulation
        space = AttributeSpace.uniform(3, 200)
        assert space.size > config.max_grid_cells
        model = product_model([UtilityCurve.linear(0, 199)] * 3, space)
        assert validate_model(model) == []
        assert eval_utility(Atom("x", 99.5) & Atom("y", 199), model) == pytest.approx(0.5)
        with pytest.raises(GridTooLargeError):
            mobius_masses(model)


class TestEvalUtility:
    def test_excluded_middle(self):
        assert eval_utility(Atom("x", 2) | ~Atom("x", 2), LINEAR) == 1.0

    def test_constants(self):
        assert eval_utility(TOP, LINEAR) == 1.0
        assert eval_utility(BOTTOM, LINEAR) == 0.0

    def test_disjunction(self):
        space = AttributeSpace.from_levels({"x": [0, 6, 10], "y": [0, 5, 10]})
        model = product_model([UtilityCurve.linear(0, 10), UtilityCurve.linear(0, 10)], space)
        x, y = Atom("x", 6), Atom("y", 5)
        assert eval_utility(x | y, model) == pytest.approx(0.8, abs=1e-12)
        assert eval_utility(~x & y, model) == pytest.approx(0.2, abs=1e-12)
        assert eval_utility(x & y, model) == pytest.approx(0.3, abs=1e-12)

    def test_single_atom_sets_others_to_maximum(self):
        assert eval_utility(Atom("y", 1), LINEAR) == pytest.approx(0.25)

    def test_unknown_attribute(self):
        with pytest.raises(UnknownAttributeError):
            eval_utility(Atom("q", 1), LINEAR)

    def test_off_grid_on_table(self, table_3x3):
        with pytest.raises(OffGridLevelError):
            eval_utility(Atom("x", 0.5), table_3x3)

    def test_literal_cap(self, monkeypatch):
        monkeypatch.setattr(config, "max_literals", 4)
        e = Atom("x", 1)
        for level in (2, 3, 4, 1):
            e = e | Atom("y", level)
        with pytest.raises(ExpressionTooLargeError):
            eval_utility(e, LINEAR)

    @given(expressions())
    @settings(max_examples=300)
    def test_complement_rule(self, e):
        assert abs(eval_utility(e, TABLE) + eval_utility(~e, TABLE) - 1.0) <= 1e-15

    def test_inclusion_exclusion_for_all_atom_pairs(self):
        atoms = [Atom(n, float(v)) for n in ("x", "y") for v in range(5)]
        for a, b in itertools.product(atoms, repeat=2):
            lhs = eval_utility(a | b, TABLE) + eval_utility(a & b, TABLE)
            rhs = eval_utility(a, TABLE) + eval_utility(b, TABLE)
            assert abs(lhs - rhs) <= 1e-12

    @given(expressions(), expressions())
    def test_monotone_in_domain_inclusion(self, a, b):
        if eval_domain(a, GRID).is_subset(eval_domain(b, GRID)):
            assert eval_utility(a, TABLE) <= eval_utility(b, TABLE) + 1e-12

    @given(expressions())
    def test_range_for_nonnegative_masses(self, e):
        assert -1e-12 <= eval_utility(e, LINEAR) <= 1 + 1e-12

    def test_memo_is_reused(self):
        engine = UtilityEngine(TABLE)
        e = (Atom("x", 2) | Atom("y", 3)) & ~Atom("x", 1)
        first = engine.eval_utility(e)
        misses = engine.cache_info()["misses"]
        assert engine.eval_utility(e) == first
        assert engine.cache_info()["misses"] == misses
        assert engine.cache_info()["hits"] > 0
        engine.clear_cache()
        assert engine.cache_info() == {"hits": 0, "misses": 0, "size": 0}

    def test_memo_drops_least_recently_used(self):
        engine = UtilityEngine(LINEAR, memo_size=2)
        for level in (1, 2, 3):
            engine.eval_utility(Atom("x", level))
        assert engine.cache_info() == {"hits": 0, "misses": 3, "size": 2}
        engine.eval_utility(Atom("x", 3))
        assert engine.cache_info()["hits"] == 1
        # x=1 was evicted first
        engine.eval_utility(Atom("x", 1))
        assert engine.cache_info() == {"hits": 1, "misses": 4, "size": 2}

    def test_memo_size_from_configuration(self, monkeypatch):
        monkeypatch.setattr(config, "memo_size", 3)
        assert UtilityEngine(LINEAR).memo_size == 3
        with pytest.raises(ValueError):
            UtilityEngine(LINEAR, memo_size=0)

    def test_concurrent_queries_agree(self):
        engine = UtilityEngine(TABLE)
        queries = [Atom("x", i) | Atom("y", j) for i in range(5) for j in range(5)]
        expected = [UtilityEngine(TABLE).eval_utility(q) for q in queries]
        results = {}

        def worker(index):
            results[index] = [engine.eval_utility(q) for q in queries]

        threads = [threading.Thread(target=worker, args=(i,)) for i in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert all(r == expected for r in results.values())


class TestConditionalUtility:
    def test_independent_model_keeps_marginal(self):
        assert conditional_utility(Atom("y", 1), Atom("x", 3), LINEAR) == pytest.approx(0.25)

    def test_self_conditioning(self):
        assert conditional_utility(Atom("x", 3), Atom("x", 3), LINEAR) == pytest.approx(1.0)

    def test_table_ratio(self, table_3x3):
        assert conditional_utility(Atom("y", 1), Atom("x", 1), table_3x3) == pytest.approx(0.4)

    def test_zero_conditioner(self):
        with pytest.raises(UndefinedConditionalError):
            conditional_utility(Atom("y", 1), Atom("x", 0), LINEAR)

    def test_product_rule(self):
        atoms = [Atom(n, float(v)) for n in ("x", "y") for v in range(1, 5)]
        for a, b in itertools.product(atoms, repeat=2):
            lhs = conditional_utility(a, b, TABLE) * eval_utility(b, TABLE)
            assert abs(lhs - eval_utility(a & b, TABLE)) <= 1e-12


class TestBayesUpdate:
    def test_reverses_conditional(self):
        assert bayes_update(0.5, 0.6, 0.75) == pytest.approx(0.4)

    def test_agrees_with_table_model(self):
        # U(y1) = 0.5, U(x1) = 0.75, U(x1 | y1) = 0.6 so U(x1·y1) = 0.3
        space = AttributeSpace.uniform(2, 3)
        model = table_model(space, [[0, 0, 0], [0, 0.3, 0.75], [0, 0.5, 1]])
        x1, y1 = Atom("x", 1), Atom("y", 1)
        uY = eval_utility(y1, model)
        uX = eval_utility(x1, model)
        uX_given_Y = conditional_utility(x1, y1, model)
        assert bayes_update(uY, uX_given_Y, uX) == pytest.approx(conditional_utility(y1, x1, model), abs=1e-12)
        assert bayes_update(uY, uX_given_Y, uX) == pytest.approx(0.4)

    def test_independence_returns_prior(self):
        assert bayes_update(0.3, 0.7, 0.7) == pytest.approx(0.3)

    def test_zero_denominator(self):
        with pytest.raises(UndefinedConditionalError):
            bayes_update(0.5, 0.5, 0.0)

    @pytest.mark.parametrize("args", [(1.5, 0.5, 0.5), (0.5, -0.1, 0.5), (0.5, 0.5, float("nan"))])
    def test_inputs_outside_unit_interval(self, args):
        with pytest.raises(InferenceError):
            bayes_update(*args)


class TestDisjunctionGiven:
    def test_z_on_same_attribute_as_x(self):
        y, x, z = Atom("y", 2), Atom("x", 1), Atom("x", 3)
        direct = eval_utility((y | x) & z, LINEAR) / eval_utility(z, LINEAR)
        assert disjunction_given(y, x, z, LINEAR) == pytest.approx(direct, abs=1e-12)

    def test_z_cancels_for_independent_attributes(self, cube_model):
        y, x, z = Atom("y", 2), Atom("x", 1), Atom("z", 2)
        uy, ux = eval_utility(y, cube_model), eval_utility(x, cube_model)
        assert disjunction_given(y, x, z, cube_model) == pytest.approx(uy + ux - uy * ux, abs=1e-12)

    def test_matches_direct_ratio(self, table_3x3):
        y, x, z = Atom("y", 1), Atom("x", 1), Atom("y", 2)
        direct = eval_utility((y | x) & z, table_3x3) / eval_utility(z, table_3x3)
        assert disjunction_given(y, x, z, table_3x3) == pytest.approx(direct, abs=1e-12)

    def test_z_at_maximum_is_plain_disjunction(self, cube_model):
        y, x, z = Atom("y", 2), Atom("x", 1), Atom("z", 3)
        assert disjunction_given(y, x, z, cube_model) == pytest.approx(eval_utility(y | x, cube_model), abs=1e-12)

    def test_z_at_minimum(self, cube_model):
        with pytest.raises(UndefinedConditionalError):
            disjunction_given(Atom("y", 2), Atom("x", 1), Atom("z", 0), cube_model)


class TestUtilityIndependence:
    def test_product_model_both_directions(self, cube_model):
        assert check_utility_independence(cube_model, "x", "y", 1e-9).independent
        assert check_utility_independence(cube_model, "y", "x", 1e-9).independent

    def test_perturbed_table_fails_both_directions(self):
        model = perturbed_linear_table()
        forward = check_utility_independence(model, "x", "y", 1e-9)
        backward = check_utility_independence(model, "y", "x", 1e-9)
        assert not forward.independent
        assert not backward.independent
        assert forward.max_deviation == pytest.approx(0.1)

    def test_vacuous_tolerance(self):
        assert check_utility_independence(perturbed_linear_table(), "x", "y", 1.0).independent

    def test_zero_conditioners_skipped(self, cube_model):
        report = check_utility_independence(cube_model, "x", "y")
        assert report.skipped == ["y=0"]

    def test_symmetry_on_product_model(self, cube_model):
        t = 1e-9
        assert check_utility_independence(cube_model, "x", "z", t)
        assert check_utility_independence(cube_model, "z", "x", 10 * t)

    def test_symmetry_on_nearly_independent_table(self):
        model = nearly_independent_table()
        assert validate_model(model) == []
        t = 3e-4
        forward = check_utility_independence(model, "x", "y", t)
        backward = check_utility_independence(model, "y", "x", 10 * t)
        assert forward.independent
        assert backward.independent
        # both directions see the raised cell
        assert forward.max_deviation == pytest.approx(2.5e-4, rel=1e-6)
        assert backward.max_deviation == pytest.approx(2e-4, rel=1e-6)
        assert forward.worst == (1.0, 1.0)
        assert not check_utility_independence(model, "x", "y", 2e-4).independent


class TestConjunctionRules:
    def test_both_factorizations_agree(self, cube_model):
        report = conjunction_rule_check(cube_model, Atom("x", 2), Atom("y", 1))
        assert report.max_deviation <= 1e-12
        assert report.via_first is not None and report.via_second is not None

    def test_zero_conditioner_factorization_is_undefined(self, cube_model):
        report = conjunction_rule_check(cube_model, Atom("x", 0), Atom("y", 1))
        assert report.via_first is None
        assert report.joint == 0.0

    def test_complement_of_conjunction(self, table_3x3):
        direct, via_complement = complement_of_conjunction(table_3x3, Atom("x", 1), Atom("y", 2))
        assert math.isclose(direct, via_complement, abs_tol=1e-12)
