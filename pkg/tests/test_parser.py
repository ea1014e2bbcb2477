from fractions import Fraction

import pytest

from starbundle import (
    Chart,
    Coefficient,
    EquivariantFunction,
    GaussianRational,
    ParseError,
    format_function,
    lower_expression,
    parse_expression,
)
from starbundle.parser import JetSymbol, LoweringContext, Mul
from starbundle.scalars import HBAR_OVER_I

CH = Chart.real(1)
CH2 = Chart.real(2)
BC = Chart.bargmann()


class TestParsing:
    def test_polynomial_with_rational(self):
        f = lower_expression("p1^2*q1 + (1/2)*hbar", CH)
        expected = CH.var("p1") ** 2 * CH.var("q1") \
            + CH.constant(Coefficient.hbar(1, Fraction(1, 2)))
        assert f == expected

    def test_jet_symbol(self):
        ast = parse_expression("psi(2)", CH)
        assert ast == JetSymbol((2,))
        f = LoweringContext(CH, ("q1",)).lower(ast)
        assert f == EquivariantFunction.jet(CH, ("q1",), (2,))

    def test_bargmann_variables(self):
        f = lower_expression("3*z*zb", BC)
        assert f == 3 * BC.var("z") * BC.var("zb")

    def test_hbar_over_i_atom(self):
        f = lower_expression("(hbar/i)*q1", CH)
        assert f == CH.var("q1") * HBAR_OVER_I

    def test_angular_phase(self):
        f = lower_expression("q1*e(1)", CH)
        assert f == EquivariantFunction(CH, CH.var("q1").terms, theta_weight=1)
        g = lower_expression("e(-2)", CH)
        assert g.theta_weight == -2

    def test_negative_hbar_power(self):
        f = lower_expression("i*hbar^-1*p1", CH)
        assert f == CH.var("p1") * Coefficient.hbar(-1, GaussianRational(0, 1))

    def test_unary_minus(self):
        assert lower_expression("-p1 + q1", CH) == CH.var("q1") - CH.var("p1")
        assert lower_expression("-(1/2)", CH) == CH.constant(Fraction(-1, 2))

    def test_power_binds_tighter_than_product(self):
        ast = parse_expression("2*q1^3", CH)
        assert isinstance(ast, Mul)
        assert lower_expression("2*q1^3", CH) == 2 * CH.var("q1") ** 3

    def test_multi_index_jets(self):
        f = lower_expression("psi(1,2)", CH2, jet_vars=CH2.position_vars)
        assert f == EquivariantFunction.jet(CH2, CH2.position_vars, (1, 2))


class TestParseErrors:
    def test_syntax_error_carries_column(self):
        with pytest.raises(ParseError) as err:
            parse_expression("p1 + * q1", CH)
        assert err.value.column == 6

    def test_unknown_variable(self):
        with pytest.raises(ParseError, match="unknown variable"):
            parse_expression("x1", CH)

    def test_dimension_out_of_range(self):
        with pytest.raises(ParseError, match="out of range"):
            parse_expression("p2", CH)
        parse_expression("p2", CH2)  # fine at dimension 2

    def test_real_variables_rejected_on_bargmann(self):
        with pytest.raises(ParseError):
            parse_expression("p1", BC)

    def test_jet_arity_checked(self):
        with pytest.raises(ParseError, match="derivative orders"):
            lower_expression("psi(1)", CH2, jet_vars=CH2.position_vars)

    def test_jets_need_a_family(self):
        with pytest.raises(ParseError, match="not allowed"):
            lower_expression("psi(1)", CH)

    def test_negative_power_of_variable_rejected(self):
        with pytest.raises(ParseError, match="negative powers"):
            lower_expression("q1^-1", CH)

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_expression("p1 q1", CH)

    def test_unexpected_character(self):
        with pytest.raises(ParseError) as err:
            parse_expression("p1 @ q1", CH)
        assert err.value.column == 4

    def test_implicit_multiplication_rejected(self):
        with pytest.raises(ParseError):
            parse_expression("2q1", CH)


class TestRoundTrip:
    CASES = [
        "p1^2*q1 + (1/2)*hbar",
        "(hbar/i)*q1*psi(1)*e(1)",
        "-p1 + 2*q1 - (3/2)",
        "i*hbar^-2*p1",
        "(1/2 - 3*i)*q1",
        "psi(0)^2*e(-1)",
    ]

    @pytest.mark.parametrize("text", CASES)
    def test_reparse_fixed_cases(self, text):
        f = lower_expression(text, CH, jet_vars=CH.position_vars)
        printed = format_function(f)
        again = lower_expression(printed, CH, jet_vars=CH.position_vars)
        assert again == f
        assert format_function(again) == printed

    def test_canonical_output_examples(self):
        f = lower_expression("q1*p1 + hbar/i*1/2", CH)
        assert format_function(f) == "p1*q1 + (1/2)*(hbar/i)"

    def test_zero_prints_as_zero(self):
        assert format_function(CH.zero()) == "0"
        assert lower_expression("q1 - q1", CH).is_zero()
