from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from src import config
from src.services import props
from src.services.catalog import AGGREGATION_SAMPLES, catalog_get
from src.services.funcspec import is_rational_spec
from src.services.grid import grid_from_values, make_grid_spec, sample
from src.utils.errors import AddilopeError
from tests.conftest import catalog_grid, exact_grid, integer_grids


class TestAggregation:
    def test_example1_holds(self, example1_grid):
        assert props.check_aggregation(example1_grid).holds

    def test_skew_quadratic_axis_witness(self):
        report = props.check_aggregation(catalog_grid("skew_quadratic", count=4))
        assert report.verdict == "fails"
        witness = report.witness
        assert witness.kind == "axis-pair"
        assert witness.points == ((0, 1), (1, 1))
        assert witness.values == (5, 4)
        assert witness.slack == 1

    def test_constant_zero_holds(self):
        assert props.check_aggregation(exact_grid([[0, 0], [0, 0]])).holds

    def test_origin(self):
        report = props.check_aggregation(exact_grid([2, 3]))
        assert report.witness.kind == "origin"
        assert report.witness.slack == 2


class TestAdditivity:
    def test_skew_quadratic_pair_witness(self):
        report = props.check_superadditive(catalog_grid("skew_quadratic", count=4))
        assert report.verdict == "fails"
        witness = report.witness
        assert witness.points == ((1, 0), (0, 1), (1, 1))
        assert witness.values == (1, 5, 4)
        assert witness.slack == 2

    def test_power_strictly_superadditive(self):
        report = props.check_superadditive(catalog_grid("power(2)", step="0.5", count=8), strict=True)
        assert report.holds
        # tightest eligible pair: p = 1, q = 0.5
        assert report.margin == 1

    def test_linear_boundary(self):
        a = catalog_grid("linear", count=6, parameters=[1])
        assert props.check_superadditive(a).holds
        strict = props.check_superadditive(a, strict=True)
        assert strict.verdict == "fails"
        assert strict.witness.slack == 0
        assert "(strict)" in strict.witness.relation

    def test_example1_f_subadditive(self):
        assert props.check_subadditive(catalog_grid("example1_f", count=40)).holds

    def test_example1_g_not_subadditive(self):
        report = props.check_subadditive(catalog_grid("example1_g", count=40))
        assert report.verdict == "fails"
        assert report.witness.points == ((11,), (10,), (21,))
        assert report.witness.slack == Fraction(1, 4)

    def test_sqrt_subadditive(self):
        assert props.check_subadditive(catalog_grid("sqrt", step="0.25", count=16, exact=False)).holds


class TestSecondDifferences:
    def test_product_coordinatewise(self):
        a = catalog_grid("product_minus_one", step="0.5", count=6)
        assert props.check_coordinatewise_convex(a).holds
        assert not props.check_coordinatewise_convex(a, strict=True).holds

    def test_power_strict_coordinatewise(self):
        assert props.check_coordinatewise_convex(catalog_grid("power(2)", step="0.5", count=8), strict=True).holds

    def test_example1_kink_at_four(self, example1_grid):
        report = props.check_coordinatewise_convex(example1_grid)
        assert report.witness.points == ((3,), (5,), (4,), (4,))
        assert report.witness.slack == Fraction(1, 2)

    def test_axes_with_one_step_are_noted(self):
        a = exact_grid([[0, 1], [1, 2], [2, 3]])
        report = props.check_coordinatewise_convex(a)
        assert report.holds
        assert report.notes == ["axis 2 not evaluable (fewer than 2 steps)"]

    def test_supermodular(self):
        assert props.check_supermodular(catalog_grid("product_minus_one", count=4), strict=True).holds
        skew = props.check_supermodular(catalog_grid("skew_quadratic", count=4))
        assert skew.verdict == "fails"
        assert skew.witness.slack == 2
        linear = catalog_grid("linear(2,3)", count=3)
        assert props.check_supermodular(linear).holds
        assert not props.check_supermodular(linear, strict=True).holds

    def test_supermodular_one_dimension_is_vacuous(self):
        report = props.check_supermodular(catalog_grid("power(2)", count=4), strict=True)
        assert report.holds
        assert report.notes


class TestDirectional:
    def test_product_convex_not_strict(self):
        a = catalog_grid("product_minus_one", step="0.5", count=6)
        assert props.check_directionally_convex(a).holds
        assert not props.check_directionally_convex(a, strict=True).holds

    def test_skew_quad_strict(self):
        a = catalog_grid("skew_quad_strict", step="0.5", count=6, exact=False)
        report = props.check_directionally_convex(a, strict=True)
        assert report.holds
        assert report.margin == pytest.approx(0.25)

    def test_linear(self):
        a = catalog_grid("linear(2,3)", count=3)
        assert props.check_directionally_convex(a).holds
        assert not props.check_directionally_convex(a, strict=True).holds
        assert props.check_directionally_concave(a).holds

    def test_sqrt_strictly_concave(self):
        report = props.check_directionally_concave(catalog_grid("sqrt", step="0.25", count=16, exact=False), strict=True)
        assert report.holds
        assert any("quadruple scan agrees" in note for note in report.notes)

    def test_power_not_concave(self):
        report = props.check_directionally_concave(catalog_grid("power(2)", step="0.5", count=8))
        assert report.verdict == "fails"
        assert report.witness.kind == "quadruple"
        assert report.witness.slack > 0

    def test_oracle_skipped_above_limit(self, monkeypatch):
        monkeypatch.setattr(config, "ORACLE_QUADRUPLE_LIMIT", 10)
        report = props.check_directionally_convex(catalog_grid("power(2)", count=8))
        assert not any("quadruple scan" in note for note in report.notes)

    def test_infinite_values_rejected(self):
        spec = make_grid_spec(1, 2, 1)
        a = grid_from_values(spec, [0, 1, 0], exact=True, infinite=[False, False, True])
        with pytest.raises(AddilopeError):
            props.check_directionally_convex(a)


class TestLinear:
    def test_fitted_gradient(self):
        report = props.check_linear(catalog_grid("linear(2,3)", step="0.5", count=4))
        assert report.holds
        assert report.fitted == [2, 3]

    def test_example1_f_not_linear(self):
        report = props.check_linear(catalog_grid("example1_f", count=40))
        assert report.verdict == "fails"
        assert report.witness.kind == "point"
        assert report.witness.points == ((5,),)
        assert report.witness.slack == Fraction(-1, 2)

    def test_power_not_linear(self):
        assert not props.check_linear(catalog_grid("power(2)", count=4)).holds


class TestRatio:
    def test_power_along_axis(self):
        assert props.check_ratio_monotone(catalog_grid("power(2)", count=6)).holds

    def test_example1_drops_after_four(self, example1_grid):
        report = props.check_ratio_monotone(example1_grid)
        assert report.witness.points == ((4,), (5,))
        assert report.witness.slack == Fraction(1, 10)

    def test_product_along_diagonal(self):
        a = catalog_grid("product_minus_one", step="0.5", count=6, exact=False)
        assert props.check_ratio_monotone(a, "diagonal").holds

    def test_diagonal_needs_equal_steps(self):
        a = sample(catalog_get("linear(2,3)").body, make_grid_spec([1, "0.5"], [2, 4]), exact=True)
        assert props.check_ratio_monotone(a, "axis:2").holds
        with pytest.raises(AddilopeError):
            props.check_ratio_monotone(a, "diagonal")

    @pytest.mark.parametrize("ray", ["axis:3", "axis:0", "axis", "north"])
    def test_bad_ray(self, ray):
        with pytest.raises(AddilopeError):
            props.check_ratio_monotone(catalog_grid("product_minus_one", count=2), ray)


class TestSegments:
    def test_product_anti_diagonal(self):
        a = catalog_grid("product_minus_one", count=4)
        report = props.check_segment_midpoint_convex(a, (0, 2), (2, 0))
        assert report.verdict == "fails"
        assert report.witness.kind == "triple"
        assert report.witness.values == (2, 2, 3)
        assert report.witness.slack == 1

    def test_skew_quadratic_convex(self):
        assert props.check_segment_convex(catalog_grid("skew_quadratic", count=4)).holds

    def test_midpoint_must_be_on_grid(self):
        with pytest.raises(AddilopeError):
            props.check_segment_midpoint_convex(catalog_grid("product_minus_one", count=4), (0, 0), (1, 0))


class TestTolerance:
    def test_exact_default_is_zero(self):
        assert props.default_tolerance(catalog_grid("power(2)", count=4)) == 0

    def test_float_default_scales_with_values(self):
        a = catalog_grid("power(2)", count=4, exact=False)
        assert props.default_tolerance(a) == pytest.approx(config.TOLERANCE_FACTOR * 17)

    def test_negative_rejected(self):
        with pytest.raises(AddilopeError):
            props.check_superadditive(catalog_grid("power(2)", count=4), tau=-1)

    def test_tau_absorbs_violation(self):
        a = catalog_grid("skew_quadratic", count=4)
        assert props.check_superadditive(a, tau=100).holds


def test_pointwise_needs_same_grid():
    with pytest.raises(AddilopeError):
        props.check_pointwise_le(catalog_grid("power(2)", count=4), catalog_grid("power(2)", count=5))


def test_run_check_unknown_property():
    with pytest.raises(AddilopeError):
        props.run_check(catalog_grid("power(2)", count=4), "concave")


WITNESS_PROPERTIES = ["super", "sub", "cconvex", "supermod", "dirconvex", "dirconcave", "segconvex"]


@settings(max_examples=200, deadline=None)
@given(a=integer_grids(), prop=st.sampled_from(WITNESS_PROPERTIES), strict=st.booleans())
def test_witness_reproduces_slack(a, prop, strict):
    report = props.run_check(a, prop, strict=strict)
    if report.holds:
        return
    witness = report.witness
    raw = tuple(a.values[p] for p in witness.points)
    assert raw == witness.values
    assert witness.recompute() == witness.slack
    if strict:
        assert witness.slack >= 0
    else:
        assert witness.slack > 0


@settings(max_examples=200, deadline=None)
@given(a=integer_grids(max_1d=8, max_2d=3), strict=st.booleans(), concave=st.booleans())
def test_second_differences_agree_with_quadruple_scan(a, strict, concave):
    check = props.check_directionally_concave if concave else props.check_directionally_convex
    assert check(a, strict=strict).verdict == props.quadruple_oracle(a, strict=strict, concave=concave).verdict


CATALOG_ORACLE_CASES = list(AGGREGATION_SAMPLES) + [("skew_quadratic", None)]


@pytest.mark.parametrize("strict", [False, True])
@pytest.mark.parametrize("name, parameters", CATALOG_ORACLE_CASES)
def test_catalog_second_differences_agree_with_quadruple_scan(name, parameters, strict):
    entry = catalog_get(name, parameters)
    a = sample(entry.body, make_grid_spec(1, 6 if entry.arity == 1 else 3, entry.arity), exact=is_rational_spec(entry.body))
    assert props.quadruple_count(a) <= config.ORACLE_QUADRUPLE_LIMIT
    for concave in (False, True):
        check = props.check_directionally_concave if concave else props.check_directionally_convex
        report = check(a, strict=strict)
        assert report.verdict == props.quadruple_oracle(a, strict=strict, concave=concave).verdict
        assert not any("disagrees" in note for note in report.notes)


def test_quadruple_count():
    a = exact_grid(np.zeros((3, 2), dtype=int).tolist())
    assert props.quadruple_count(a) == 10 * 4
