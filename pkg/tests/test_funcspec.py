from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from src.services.catalog import catalog_get
from src.services.funcspec import (
    LiftedSpec,
    PL1DSpec,
    dump_pl_spec,
    evaluate,
    format_expr,
    is_rational_spec,
    load_pl_spec,
    parse_expr,
)
from src.utils.errors import (
    AddilopeError,
    EvaluationDomainError,
    ExactArithmeticError,
    ExpressionSyntaxError,
    VariableIndexError,
)


class TestParser:
    def test_quadratic_form(self):
        expr = parse_expr("x1^2 + x2^2 + x1*x2", 2)
        assert evaluate(expr, (1, 2), exact=True) == 7
        assert evaluate(expr, (0.5, 0.5)) == pytest.approx(0.75)

    def test_product_counterexample(self):
        expr = parse_expr("(x1+1)*(x2+1) - 1", 2)
        assert evaluate(expr, (1, 1), exact=True) == 3
        assert evaluate(expr, (2, 0), exact=True) == 2

    def test_variable_out_of_range(self):
        with pytest.raises(VariableIndexError):
            parse_expr("x3", 2)

    @pytest.mark.parametrize(
        "text, position",
        [
            ("x1 +", 4),
            ("x1 $ 2", 3),
            ("(x1 + 1", 7),
            ("foo(x1, 1)", 0),
        ],
    )
    def test_syntax_errors_carry_position(self, text, position):
        with pytest.raises(ExpressionSyntaxError) as info:
            parse_expr(text, 1)
        assert info.value.position == position

    def test_empty_expression(self):
        with pytest.raises(ExpressionSyntaxError):
            parse_expr("   ", 1)

    def test_power_is_right_associative(self):
        expr = parse_expr("2^3^2", 1)
        assert evaluate(expr, (0,), exact=True) == 512

    def test_power_binds_tighter_than_unary_minus(self):
        expr = parse_expr("4 - -x1^2", 1)
        assert evaluate(expr, (3,), exact=True) == 13

    def test_precedence(self):
        expr = parse_expr("1 + 2*x1 - x1/2", 1)
        assert evaluate(expr, (4,), exact=True) == 7

    def test_min_max(self):
        expr = parse_expr("min(x1, 2) + max(x2, 1)", 2)
        assert evaluate(expr, (5, 0), exact=True) == 3

    def test_decimal_constants_are_exact(self):
        expr = parse_expr("0.1*x1", 1)
        assert evaluate(expr, (3,), exact=True) == Fraction(3, 10)


class TestEvaluate:
    def test_example1_values(self):
        a = catalog_get("example1_A").body
        assert evaluate(a, (5,), exact=True) == Fraction(9, 2)
        assert evaluate(a, (12,), exact=True) == 10
        assert evaluate(a, (0,), exact=True) == 0
        assert evaluate(a, (8,), exact=True) == Fraction(20, 3)
        assert evaluate(a, (20,), exact=True) == 20

    def test_division_by_zero(self):
        with pytest.raises(EvaluationDomainError) as info:
            evaluate(parse_expr("1/x1", 1), (0,))
        assert info.value.point == (0.0,)

    def test_zero_to_negative_power(self):
        with pytest.raises(EvaluationDomainError):
            evaluate(parse_expr("x1^-1", 1), (0,))

    def test_negative_result_is_an_error(self):
        with pytest.raises(EvaluationDomainError):
            evaluate(parse_expr("x1 - 1", 1), (0,))

    def test_negative_point_rejected(self):
        with pytest.raises(EvaluationDomainError):
            evaluate(parse_expr("x1", 1), (-1,))

    def test_exact_root_refused(self):
        with pytest.raises(ExactArithmeticError):
            evaluate(parse_expr("x1^0.5", 1), (4,), exact=True)

    def test_float_root(self):
        assert evaluate(parse_expr("x1^0.5", 1), (0.25,)) == pytest.approx(0.5)

    def test_float_overflow_is_an_error(self):
        with pytest.raises(EvaluationDomainError) as info:
            evaluate(parse_expr("1e300*x1*x1", 1), (1e10,))
        assert "Overflow" in str(info.value)
        assert info.value.point == (1e10,)

    def test_huge_constant(self):
        with pytest.raises(EvaluationDomainError):
            evaluate(parse_expr("1e400*x1", 1), (1,))
        assert evaluate(parse_expr("1e400*x1", 1), (1,), exact=True) == 10 ** 400

    def test_arity_mismatch(self):
        with pytest.raises(AddilopeError):
            evaluate(parse_expr("x1", 1), (1, 2))

    def test_lifted(self):
        lifted = LiftedSpec(catalog_get("example1_A").body, 3)
        assert evaluate(lifted, (5, 1, 2), exact=True) == Fraction(15, 2)


class TestRationality:
    def test_integer_powers_are_rational(self):
        assert is_rational_spec(parse_expr("x1^2 / (1 + x1)", 1))

    def test_fractional_power_is_not(self):
        assert not is_rational_spec(parse_expr("x1^0.5", 1))

    def test_pl_and_lifted(self):
        base = catalog_get("example1_f").body
        assert is_rational_spec(base)
        assert is_rational_spec(LiftedSpec(base, 2))


class TestPLDocuments:
    def test_load_with_rational_pairs(self):
        spec = load_pl_spec({"knots": [["0", "0"], [4, 4], [[6, 1], [5, 1]]], "tail_slope": [5, 6]})
        assert spec.knots[-1] == (Fraction(6), Fraction(5))
        assert spec.tail_slope == Fraction(5, 6)
        assert evaluate(spec, (12,), exact=True) == 10

    def test_dump_then_load(self):
        spec = catalog_get("example1_A").body
        assert load_pl_spec(dump_pl_spec(spec)) == spec

    @pytest.mark.parametrize(
        "document",
        [
            {},
            {"knots": []},
            {"knots": [[1, 0]]},
            {"knots": [[0, 0], [2, 1], [1, 3]]},
            {"knots": [[0, 0], [1, -1]]},
            {"knots": [[0, 0]], "tail_slope": "-1"},
            {"knots": [[0, 0], [1, [1, 0]]]},
            {"knots": [[0, 0], ["one", 1]]},
        ],
    )
    def test_invalid_documents(self, document):
        with pytest.raises(AddilopeError):
            load_pl_spec(document)

    def test_interpolation_and_tail(self):
        spec = PL1DSpec(knots=((Fraction(0), Fraction(0)), (Fraction(2), Fraction(1))), tail_slope=Fraction(3))
        assert evaluate(spec, (1,), exact=True) == Fraction(1, 2)
        assert evaluate(spec, (4,), exact=True) == 7


EXPRESSION_ENTRIES = ["product_minus_one", "skew_quadratic", "skew_quad_strict", "sqrt", "power(2)", "power(0.5)"]


@pytest.mark.parametrize("name", EXPRESSION_ENTRIES + ["linear(2,3)"])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_print_then_parse_evaluates_identically(name, data):
    expr = catalog_get(name).body
    reparsed = parse_expr(format_expr(expr), expr.arity)
    point = data.draw(
        st.tuples(*[st.fractions(min_value=0, max_value=10, max_denominator=16) for _ in range(expr.arity)])
    )
    exact = is_rational_spec(expr)
    assert evaluate(reparsed, point, exact=exact) == evaluate(expr, point, exact=exact)
