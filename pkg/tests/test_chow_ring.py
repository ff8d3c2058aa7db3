import pytest

from src.steencalc.arith import PrimeModulus
from src.steencalc.chow_ring import (
    CycleClass,
    EquivariantClass,
    Generator,
    RewriteRule,
    RingSpec,
    degree,
    invert_unit_series,
    lift_class,
    product_ring,
    projective_bundle_ring,
    projective_space_ring,
)
from src.steencalc.errors import (
    DomainError,
    MalformedSpecError,
    RingMismatchError,
    UnknownGeneratorError,
    UnsupportedOperationError,
)


@pytest.fixture
def p2_mod2(mod2):
    return projective_space_ring(2, mod2)


@pytest.fixture
def p2_mod3(mod3):
    return projective_space_ring(2, mod3)


class TestRingSpec:
    """Unit tests for RingSpec class."""

    @pytest.mark.unit
    def test_projective_space_ring(self, p2_mod3):
        """Test the presentation of Ch(P^2)."""
        assert p2_mod3.names == ("h",)
        assert p2_mod3.dimension == 2
        assert p2_mod3.factors == (2,)
        assert p2_mod3.name == "P2"
        assert p2_mod3.monomials() == [(0,), (1,), (2,)]
        assert p2_mod3.monomials(1) == [(1,)]

    @pytest.mark.unit
    def test_point_has_no_generators(self, mod3):
        """Test that Ch(P^0) is just F_p."""
        ring = projective_space_ring(0, mod3)
        assert ring.generators == ()
        assert CycleClass.one(ring).to_json() == {"1": 1}

    @pytest.mark.unit
    def test_invalid_presentations(self, mod3):
        """Test validation of generators and rules."""
        with pytest.raises(MalformedSpecError):
            RingSpec(mod3, 2, (Generator("h", 1, 3), Generator("h", 1, 3)))
        with pytest.raises(MalformedSpecError):
            RingSpec(mod3, 2, (Generator("h", 0, 3),))
        with pytest.raises(MalformedSpecError):
            RingSpec(mod3, -1, ())
        # a rule that does not decrease the order
        with pytest.raises(MalformedSpecError):
            RingSpec(
                mod3,
                2,
                (Generator("a", 1, 3), Generator("b", 1, 3)),
                (RewriteRule((1, 0), (((0, 1), 1),)),),
            )

    @pytest.mark.unit
    def test_unknown_generator(self, p2_mod3):
        """Test lookup of a generator the ring does not have."""
        with pytest.raises(UnknownGeneratorError):
            p2_mod3.index("x")

    @pytest.mark.unit
    def test_monomial_keys(self, mod3):
        """Test the sorted monomial key format."""
        ring = product_ring([projective_space_ring(2, mod3), projective_space_ring(1, mod3)])
        assert ring.names == ("h1", "h2")
        assert ring.monomial_key((2, 1)) == "h1^2*h2"
        assert ring.monomial_key((0, 0)) == "1"


class TestCycleClass:
    """Unit tests for CycleClass class."""

    @pytest.mark.unit
    def test_binomial_expansion_mod_2(self, p2_mod2):
        """Test (1+h)^3 = 1 + h + h^2 in Ch(P^2) mod 2."""
        h = CycleClass.generator(p2_mod2, "h")
        assert ((1 + h) ** 3).to_json() == {"1": 1, "h": 1, "h^2": 1}

    @pytest.mark.unit
    def test_truncation(self, p2_mod3):
        """Test that h^3 vanishes on P^2."""
        h = CycleClass.generator(p2_mod3, "h")
        assert (h**3).is_zero()
        assert h**2 != 0

    @pytest.mark.unit
    def test_coefficients_reduced(self, p2_mod3):
        """Test reduction of coefficients mod p."""
        a = CycleClass(p2_mod3, {(1,): 4, (2,): 3})
        assert a.to_json() == {"h": 1}
        assert int(a.coefficient((1,))) == 1
        assert int(a.coefficient({"h": 2})) == 0

    @pytest.mark.unit
    def test_arithmetic_with_integers(self, p2_mod3):
        """Test mixing integers and classes."""
        h = CycleClass.generator(p2_mod3, "h")
        assert 2 - h == CycleClass(p2_mod3, {(0,): 2, (1,): 2})
        assert 3 * h == 0
        assert (h + 1) - 1 == h

    @pytest.mark.unit
    def test_grading(self, p2_mod3):
        """Test graded components, truncation and homogeneity."""
        h = CycleClass.generator(p2_mod3, "h")
        a = 1 + 2 * h + h**2
        assert a.codimensions() == [0, 1, 2]
        assert a.graded_component(1) == 2 * h
        assert a.truncate(1) == 1 + 2 * h
        assert not a.is_homogeneous()
        assert (h**2).is_homogeneous(2)
        assert CycleClass.zero(p2_mod3).is_homogeneous(5)
        assert a.constant_term() == 1

    @pytest.mark.unit
    def test_ring_mismatch(self, p2_mod3, mod3):
        """Test that classes from different rings do not mix."""
        other = projective_space_ring(3, mod3)
        with pytest.raises(RingMismatchError):
            CycleClass.generator(p2_mod3, "h") + CycleClass.generator(other, "h")

    @pytest.mark.unit
    def test_negative_power(self, p2_mod3):
        """Test that negative powers are refused."""
        with pytest.raises(DomainError):
            CycleClass.generator(p2_mod3, "h") ** -1

    @pytest.mark.unit
    def test_str(self, p2_mod3):
        """Test the human-readable form."""
        h = CycleClass.generator(p2_mod3, "h")
        assert str(1 + 2 * h) == "1 + 2*h"
        assert str(CycleClass.zero(p2_mod3)) == "0"


class TestRingBuilders:
    """Unit tests for inverse series, degrees and ring constructions."""

    @pytest.mark.unit
    def test_invert_unit_series(self, p2_mod3):
        """Test (1+h)^{-1} = 1 - h + h^2."""
        h = CycleClass.generator(p2_mod3, "h")
        inverse = invert_unit_series(1 + h)
        assert inverse == 1 - h + h**2
        assert inverse * (1 + h) == 1

    @pytest.mark.unit
    def test_invert_needs_unit(self, p2_mod3):
        """Test the constant-term check."""
        h = CycleClass.generator(p2_mod3, "h")
        with pytest.raises(DomainError):
            invert_unit_series(2 + h)

    @pytest.mark.unit
    def test_product_and_degree(self, mod3):
        """Test degree on P^1 x P^1."""
        ring = product_ring([projective_space_ring(1, mod3), projective_space_ring(1, mod3)])
        h1 = CycleClass.generator(ring, "h1")
        h2 = CycleClass.generator(ring, "h2")
        assert ring.factors == (1, 1)
        assert (h1**2).is_zero()
        assert int(degree((h1 + h2) ** 2)) == 2
        assert int(degree(h1)) == 0

    @pytest.mark.unit
    def test_degree_needs_product_of_projective_spaces(self, p2_mod3):
        """Test that degree refuses a projective bundle."""
        h = CycleClass.generator(p2_mod3, "h")
        ring = projective_bundle_ring(p2_mod3, [h, h**2])
        with pytest.raises(UnsupportedOperationError):
            degree(CycleClass.one(ring))

    @pytest.mark.unit
    def test_projective_bundle_relation(self, mod3):
        """Test z = -h on P(O(h)) over P^1."""
        base = projective_space_ring(1, mod3)
        h = CycleClass.generator(base, "h")
        ring = projective_bundle_ring(base, [h])
        assert ring.dimension == 1
        assert CycleClass.generator(ring, "z") == -lift_class(h, ring, 0)

    @pytest.mark.unit
    def test_projective_bundle_rank_two(self, p2_mod3):
        """Test z^2 + h z + h^2 = 0 on P(V) over P^2."""
        h = CycleClass.generator(p2_mod3, "h")
        ring = projective_bundle_ring(p2_mod3, [h, h**2])
        z = CycleClass.generator(ring, "z")
        hl = lift_class(h, ring, 0)
        assert z**2 + hl * z + hl**2 == 0
        assert ring.dimension == 3

    @pytest.mark.unit
    def test_projective_bundle_validation(self, p2_mod3):
        """Test rank and homogeneity checks."""
        h = CycleClass.generator(p2_mod3, "h")
        with pytest.raises(MalformedSpecError):
            projective_bundle_ring(p2_mod3, [])
        with pytest.raises(MalformedSpecError):
            projective_bundle_ring(p2_mod3, [h**2])

    @pytest.mark.unit
    def test_mixed_primes_rejected(self):
        """Test that product factors share p."""
        with pytest.raises(RingMismatchError):
            product_ring(
                [
                    projective_space_ring(1, PrimeModulus(2)),
                    projective_space_ring(1, PrimeModulus(3)),
                ]
            )


class TestEquivariantClass:
    """Unit tests for EquivariantClass class."""

    @pytest.mark.unit
    def test_l_arithmetic(self, p2_mod3):
        """Test products and epsilon in Ch(X)[l]."""
        h = CycleClass.generator(p2_mod3, "h")
        l = EquivariantClass.l_power(p2_mod3)
        sigma = (l + h) * (l - h)
        assert sigma.l_degrees() == [0, 2]
        assert sigma.coefficient(2) == 1
        assert sigma.coefficient(0) == -(h**2)
        assert sigma.epsilon() == 1 - h**2

    @pytest.mark.unit
    def test_inverse_up_to(self, p2_mod3):
        """Test the truncated inverse of 1 + l + h."""
        h = CycleClass.generator(p2_mod3, "h")
        series = 1 + EquivariantClass.l_power(p2_mod3) + h
        inverse = series.inverse_up_to(3)
        assert (series * inverse).truncate(3) == EquivariantClass.one(p2_mod3)

    @pytest.mark.unit
    def test_inverse_needs_unit(self, p2_mod3):
        """Test the constant-term check."""
        with pytest.raises(DomainError):
            EquivariantClass.l_power(p2_mod3).inverse_up_to(2)
