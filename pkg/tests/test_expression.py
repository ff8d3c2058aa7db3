import pytest

from src.steencalc.chow_ring import CycleClass, product_ring, projective_space_ring
from src.steencalc.errors import (
    DomainError,
    ExpressionSyntaxError,
    InputError,
    UnknownGeneratorError,
)
from src.steencalc.expression import parse_expression, parse_line_bundles


@pytest.fixture
def p2(mod2):
    return projective_space_ring(2, mod2)


@pytest.fixture
def p1xp1(mod3):
    return product_ring([projective_space_ring(1, mod3), projective_space_ring(1, mod3)])


class TestParseExpression:
    """Unit tests for parse_expression."""

    @pytest.mark.unit
    def test_power_of_sum(self, p2):
        """Test "(1+h)^3" on P^2 mod 2."""
        assert parse_expression("(1+h)^3", p2).to_json() == {"1": 1, "h": 1, "h^2": 1}

    @pytest.mark.unit
    def test_precedence(self, mod3):
        """Test that ^ binds tighter than * and * tighter than +."""
        ring = projective_space_ring(4, mod3)
        h = CycleClass.generator(ring, "h")
        assert parse_expression("1 + 2*h^2", ring) == 1 + 2 * h**2
        assert parse_expression("2*h*h - h^2", ring) == h**2

    @pytest.mark.unit
    def test_leading_sign_and_whitespace(self, p1xp1):
        """Test unary minus and spaces."""
        h1 = CycleClass.generator(p1xp1, "h1")
        h2 = CycleClass.generator(p1xp1, "h2")
        assert parse_expression(" - h1 +  h2 ", p1xp1) == h2 - h1
        assert parse_expression("h1*h2", p1xp1).to_json() == {"h1*h2": 1}

    @pytest.mark.unit
    def test_constants_reduced(self, p2):
        """Test that integer literals are taken mod p."""
        assert parse_expression("3", p2) == 1
        assert parse_expression("4*h", p2).is_zero()

    @pytest.mark.unit
    def test_unknown_generator(self, p2):
        """Test that undeclared names are rejected."""
        with pytest.raises(UnknownGeneratorError) as exc_info:
            parse_expression("h + x", p2)
        assert exc_info.value.name == "x"

    @pytest.mark.unit
    def test_syntax_errors(self, p2):
        """Test malformed expressions."""
        for text in ("", "h +", "(h", "h^", "h ** 2"):
            with pytest.raises(ExpressionSyntaxError):
                parse_expression(text, p2)

    @pytest.mark.unit
    def test_division_not_allowed_for_classes(self, p2):
        """Test that '/' is refused in a Chow ring."""
        with pytest.raises(InputError):
            parse_expression("h/h", p2)


class TestParseLineBundles:
    """Unit tests for parse_line_bundles."""

    @pytest.mark.unit
    def test_sum_of_line_bundles(self, mod3):
        """Test "O(h) + O(2*h)"."""
        ring = projective_space_ring(3, mod3)
        h = CycleClass.generator(ring, "h")
        assert parse_line_bundles("O(h) + O(2*h)", ring) == [h, 2 * h]

    @pytest.mark.unit
    def test_zero_bundle(self, p2):
        """Test that "0" is the zero bundle."""
        assert parse_line_bundles("0", p2) == []

    @pytest.mark.unit
    def test_codimension_check(self, p2):
        """Test that a line bundle needs a divisor class."""
        with pytest.raises(DomainError):
            parse_line_bundles("O(h^2)", p2)
