from fractions import Fraction

import pytest

from src.services.catalog import AGGREGATION_SAMPLES, catalog_get, catalog_names, parse_param_flags
from src.services.funcspec import LiftedSpec, PL1DSpec, evaluate
from src.utils.errors import CatalogError


def test_example1_g_knots():
    entry = catalog_get("example1_g")
    assert isinstance(entry.body, PL1DSpec)
    assert entry.body.knots == ((0, 0), (20, 20))
    assert entry.body.tail_slope == Fraction(5, 4)


def test_skew_quadratic():
    entry = catalog_get("skew_quadratic")
    assert entry.arity == 2
    assert evaluate(entry.body, (0, 1), exact=True) == 5
    assert evaluate(entry.body, (1, 1), exact=True) == 4


def test_lifted_defaults_to_two_dimensions():
    entry = catalog_get("lifted(example1_A)")
    assert isinstance(entry.body, LiftedSpec)
    assert entry.arity == 2
    assert evaluate(entry.body, (8, 4), exact=True) == Fraction(20, 3) + 4


def test_lifted_with_named_arity():
    assert catalog_get("lifted(example1_g)", {"n": "4"}).arity == 4


@pytest.mark.parametrize(
    "name, parameters, arity",
    [
        ("power(2)", None, 1),
        ("power", [3], 1),
        ("power", {"p": "0.5"}, 1),
        ("linear", {"c": "2"}, 1),
        ("linear(2,3)", None, 2),
        ("linear", {"c1": 1, "c2": 2, "c3": 3}, 3),
    ],
)
def test_parameterised_entries(name, parameters, arity):
    assert catalog_get(name, parameters).arity == arity


def test_linear_coefficients():
    entry = catalog_get("linear", [2, 3])
    assert entry.parameters == (("c1", Fraction(2)), ("c2", Fraction(3)))
    assert evaluate(entry.body, (1, 1), exact=True) == 5


@pytest.mark.parametrize(
    "name, parameters",
    [
        ("nope", None),
        ("power", None),
        ("power", {"q": 2}),
        ("power(0)", None),
        ("linear", {"d": 1}),
        ("linear(-1)", None),
        ("sqrt", [1]),
        ("power(2)", [3]),
        ("lifted(skew_quadratic)", None),
        ("lifted(example1_A)", {"n": "1.5"}),
        ("lifted()", None),
        ("1abc", None),
    ],
)
def test_bad_lookups(name, parameters):
    with pytest.raises(CatalogError):
        catalog_get(name, parameters)


def test_names_are_unique_and_sorted():
    names = catalog_names()
    assert names == sorted(set(names))
    assert "example1_A" in names and "lifted" in names


@pytest.mark.parametrize("name, parameters", AGGREGATION_SAMPLES)
def test_aggregation_samples_vanish_at_origin(name, parameters):
    entry = catalog_get(name, parameters)
    assert evaluate(entry.body, (0,) * entry.arity) == 0


def test_parse_param_flags():
    assert parse_param_flags(["c=2", " p = 0.5 "]) == {"c": "2", "p": "0.5"}
    with pytest.raises(CatalogError):
        parse_param_flags(["c"])
