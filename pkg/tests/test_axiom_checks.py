"""
Tests for the combination-rule checks
"""

import math

import pytest

from prefcalc.algebra.expr import Atom
from prefcalc.axioms.checks import (
    AxiomReport,
    CheckStatus,
    check_associativity,
    check_complementarity,
    check_conjunction_rule,
    run_axiom_suite,
)


class TestAssociativity:
    def test_product_passes(self):
        report = check_associativity(lambda x, y: x * y, trials=2000, seed=1)
        assert report.status is CheckStatus.PASSED
        assert report.counterexample is None
        assert report.samples == 2008

    def test_probabilistic_sum_passes(self):
        report = check_associativity(lambda x, y: x + y - x * y, trials=2000, seed=1)
        assert report.passed

    def test_mean_fails_on_the_lattice(self):
        report = check_associativity(lambda x, y: (x + y) / 2, trials=100, seed=1)
        assert report.status is CheckStatus.FAILED
        assert report.counterexample == (0.0, 0.0, 1.0)

    def test_undefined_combiner_fails(self):
        report = check_associativity(lambda x, y: x / y, trials=10, seed=1)
        assert report.status is CheckStatus.FAILED
        assert any("undefined" in d for d in report.details)

    def test_same_seed_same_report(self):
        a = check_associativity(lambda x, y: max(x, y) ** 1.5, trials=200, seed=7)
        b = check_associativity(lambda x, y: max(x, y) ** 1.5, trials=200, seed=7)
        assert a.to_dict() == b.to_dict()

    def test_trials_must_be_positive(self):
        with pytest.raises(ValueError):
            check_associativity(lambda x, y: x * y, trials=0)


class TestComplementarity:
    def test_one_minus_u_passes(self):
        report = check_complementarity(lambda u: 1.0 - u, trials=2000, seed=3)
        assert report.status is CheckStatus.PASSED
        assert "direction: decreasing" in report.details

    def test_identity_is_trivial(self):
        report = check_complementarity(lambda u: u, trials=500, seed=3)
        assert report.status is CheckStatus.TRIVIAL
        assert report.passed

    def test_reciprocal_fails_at_one_half(self):
        report = check_complementarity(lambda u: 1.0 / u, trials=500, seed=3)
        assert report.status is CheckStatus.FAILED
        assert report.counterexample == (0.5,)
        assert any("undefined" in d for d in report.details)

    def test_non_involution(self):
        report = check_complementarity(lambda u: (1.0 - u) ** 2, trials=100, seed=3)
        assert report.status is CheckStatus.FAILED
        assert report.counterexample == (0.5,)

    def test_engine_queries(self, cube_model):
        report = check_complementarity(lambda u: 1.0 - u, trials=100, seed=3, model=cube_model)
        assert report.status is CheckStatus.PASSED

    def test_engine_check_rejects_wrong_regrade(self, cube_model):
        # the identity passes the scalar checks but not U(e) = S(U(~e))
        report = check_complementarity(
            lambda u: u, trials=100, seed=3, model=cube_model, expressions=[Atom("x", 1)]
        )
        assert report.status is CheckStatus.FAILED
        assert any(d.startswith("engine:") for d in report.details)


class TestConjunctionRule:
    def test_product_passes(self, cube_model):
        report = check_conjunction_rule(lambda x, y: x * y, cube_model)
        assert report.status is CheckStatus.PASSED
        # 3 attribute pairs, 3 positive levels each
        assert report.samples == 27

    def test_min_fails(self, cube_model):
        report = check_conjunction_rule(min, cube_model)
        assert report.status is CheckStatus.FAILED
        x, y = report.counterexample
        assert x.startswith("x=") and y.startswith("y=")


class TestAxiomSuite:
    def test_every_outcome_as_expected(self):
        reports = run_axiom_suite(seed=11, trials=1000)
        assert len(reports) == 8
        assert all(r.as_expected for r in reports), [r.summary() for r in reports if not r.as_expected]

    def test_expected_statuses(self):
        statuses = {r.name: r.status for r in run_axiom_suite(seed=11, trials=200)}
        assert statuses["associativity: mean"] is CheckStatus.FAILED
        assert statuses["complementarity: identity"] is CheckStatus.TRIVIAL
        assert statuses["conjunction rule: min"] is CheckStatus.FAILED


class TestAxiomReport:
    def test_expected_overrides_passed(self):
        report = AxiomReport("sample", CheckStatus.FAILED, 1, (0.5,), expected=CheckStatus.FAILED)
        assert not report.passed
        assert report.as_expected

    def test_to_dict(self):
        report = AxiomReport("sample", CheckStatus.PASSED, 10, max_deviation=1e-17)
        data = report.to_dict()
        assert data["status"] == "passed"
        assert data["counterexample"] is None
        assert math.isclose(data["max_deviation"], 1e-17)

    def test_summary_shows_counterexample_exactly(self):
        report = AxiomReport("sample", CheckStatus.FAILED, 1, (0.1,))
        assert "counterexample (0.1,)" in report.summary()
