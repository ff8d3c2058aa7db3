import random

import galois
import pytest

from src.steencalc.arith import pth_power_class
from src.steencalc.errors import DomainError, UnknownGeneratorError
from src.steencalc.milnor_k import (
    Place,
    RationalFunction,
    SymbolChain,
    alpha_apply,
    anticommute_check,
    bilinearity_check,
    degree_formula_check,
    divisor_map,
    milnor_residue,
    parse_rational,
    places_of_support,
    random_rational_function,
    reciprocity_check,
    residues,
    steinberg_check,
    tame_symbol,
    valuation,
)


@pytest.fixture
def t(f7):
    return RationalFunction.t(f7)


def _place(f7, coeffs):
    return Place.finite(f7, galois.Poly(coeffs, field=f7.gf))


class TestRationalFunction:
    """Unit tests for RationalFunction class."""

    @pytest.mark.unit
    def test_reduced_form(self, f7, t):
        """Test that num/den is stored in lowest terms."""
        f = parse_rational("(t^2 - 1)/(t + 1)", f7)
        assert f == t - 1
        assert f.den.degree == 0

    @pytest.mark.unit
    def test_denominator_is_monic(self, f7, t):
        """Test normalization of the denominator."""
        f = t / (2 * t)
        assert f == RationalFunction.constant(f7, 4)
        assert int(parse_rational("1/(3*t)", f7).den.coeffs[0]) == 1

    @pytest.mark.unit
    def test_arithmetic(self, f7, t):
        """Test field operations."""
        assert (t + 1) * (t - 1) == t**2 - 1
        assert (t**-2) * t**2 == 1
        assert 1 - t == -(t - 1)
        assert str(t**2 + 3) == "t^2 + 3"

    @pytest.mark.unit
    def test_division_by_zero(self, f7, t):
        """Test that 1/0 is refused."""
        with pytest.raises(DomainError):
            t / 0
        with pytest.raises(DomainError):
            parse_rational("1/(t - t)", f7)

    @pytest.mark.unit
    def test_only_t_is_a_variable(self, f7):
        """Test that other names are unknown."""
        with pytest.raises(UnknownGeneratorError):
            parse_rational("x + 1", f7)


class TestPlaces:
    """Unit tests for places, valuations and divisors."""

    @pytest.mark.unit
    def test_valuations(self, f7, t):
        """Test v_t(t) = 1 and v_inf(t) = -1."""
        assert valuation(t, _place(f7, [1, 0])) == 1
        assert valuation(t, Place.infinity(f7)) == -1
        assert valuation(t**2 / (t + 1), _place(f7, [1, 1])) == -1

    @pytest.mark.unit
    def test_places_must_be_irreducible(self, f7):
        """Test that reducible or non-monic polynomials are not places."""
        with pytest.raises(DomainError):
            _place(f7, [1, 0, 6])
        with pytest.raises(DomainError):
            _place(f7, [2, 1])
        assert _place(f7, [1, 0, 1]).degree == 2

    @pytest.mark.unit
    def test_support(self, f7, t):
        """Test places of support, infinity last."""
        places = places_of_support([t**2 + 1, t])
        assert [str(x) for x in places] == ["t", "t^2 + 1", "inf"]

    @pytest.mark.unit
    def test_divisor(self, f7, t, mod3):
        """Test div(t) = [0] - [inf] mod 3."""
        assert divisor_map(t, mod3).to_json() == {"t": 1, "inf": 2}
        assert divisor_map(t**3, mod3).is_zero()

    @pytest.mark.unit
    def test_degree_formula(self, f7, t):
        """Test that principal divisors have degree zero."""
        assert degree_formula_check(t**2 + 1)
        assert degree_formula_check((t**2 + 1) / (t - 3) ** 4)


class TestResidues:
    """Unit tests for tame symbols, residues and the relations among them."""

    @pytest.mark.unit
    def test_residue_of_uniformizer_and_unit(self, f7, t, mod3):
        """Test that the residue of {t, 3} at t is the class of 3."""
        x = _place(f7, [1, 0])
        three = RationalFunction.constant(f7, 3)
        residue = milnor_residue(t, three, x, mod3)
        assert residue == pth_power_class(galois.Poly([3], field=f7.gf), mod3, x.residue_field())
        assert residues(SymbolChain.symbol(mod3, t, three)).to_json() == {"t": [2], "inf": [4]}

    @pytest.mark.unit
    def test_tame_symbol_sign(self, f7, t, mod3):
        """Test {t, t} at t is the class of -1, trivial mod cubes."""
        assert tame_symbol(t, t, _place(f7, [1, 0]), mod3).is_trivial

    @pytest.mark.unit
    def test_anticommute(self, f7, t, mod3):
        """Test d alpha + alpha d = 0 for a = 3, f = t."""
        assert anticommute_check(RationalFunction.constant(f7, 3), t, mod3)
        assert anticommute_check(t + 2, t**2 - 3, mod3)

    @pytest.mark.unit
    def test_reciprocity_steinberg_bilinearity(self, f7, t, mod3):
        """Test Weil reciprocity, Steinberg and bilinearity on fixed functions."""
        assert reciprocity_check(t, t + 1, mod3)
        assert reciprocity_check(t**2 + 1, (t - 2) / (t + 3), mod3)
        assert steinberg_check(t, mod3)
        assert steinberg_check(3 * t**2, mod3)
        assert bilinearity_check(t, t + 1, t**2 + 1, mod3)
        with pytest.raises(DomainError):
            steinberg_check(RationalFunction.constant(f7, 1), mod3)

    @pytest.mark.unit
    def test_random_functions(self, f7, mod3):
        """Test the relations on a handful of random functions."""
        rng = random.Random(3)
        for _ in range(5):
            a = random_rational_function(f7, rng)
            f = random_rational_function(f7, rng)
            assert not f.is_zero()
            assert anticommute_check(a, f, mod3)
            assert reciprocity_check(a, f, mod3)
            assert degree_formula_check(f)


class TestSymbolChain:
    """Unit tests for SymbolChain and alpha_apply."""

    @pytest.mark.unit
    def test_degrees(self, t, mod3):
        """Test chain degrees and alpha."""
        chain = SymbolChain.symbol(mod3, t)
        assert chain.degree == 1
        assert alpha_apply(t + 1, chain).degree == 2
        with pytest.raises(DomainError):
            alpha_apply(t, alpha_apply(t, chain))

    @pytest.mark.unit
    def test_mixed_degrees_rejected(self, t, mod3):
        """Test that a chain has one degree."""
        with pytest.raises(DomainError):
            SymbolChain.symbol(mod3, t) + SymbolChain.symbol(mod3, t, t)

    @pytest.mark.unit
    def test_zero_entries_rejected(self, f7, t, mod3):
        """Test that symbol entries are nonzero."""
        with pytest.raises(DomainError):
            SymbolChain.symbol(mod3, t, RationalFunction.constant(f7, 0))

    @pytest.mark.unit
    def test_linear_combination_of_divisors(self, t, mod3):
        """Test that residues add over a chain."""
        chain = SymbolChain.symbol(mod3, t) + SymbolChain.symbol(mod3, t).scale(2)
        assert residues(chain).is_zero()
