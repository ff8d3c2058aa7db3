import pytest

from src.steencalc.arith import FqField, PrimeModulus, pth_power_class
from src.steencalc.errors import DomainError, MalformedSpecError, UnsupportedOperationError
from src.steencalc.graded_mup import (
    GradedIdeal,
    Subspace,
    _deformed_ideal,
    _powers,
    component_product,
    deformation_check,
    deformation_report,
    direct_product,
    fiber_decomposition,
    fiber_orbits,
    fixed_ideal,
    fixed_point_quotient,
    group_algebra,
    is_field,
    kummer_algebra,
    kummer_parameter,
    monomial_algebra,
    tensor_product,
    torsor_check,
    truncated_cone,
    twist,
)
from src.steencalc.variety_io import load_algebra


@pytest.fixture
def kummer_f7(fixtures_dir):
    return load_algebra(fixtures_dir / "kummer_f7_p3.json")


@pytest.fixture
def cone_f7(fixtures_dir):
    return load_algebra(fixtures_dir / "cone_f7_p3.json")


class TestGradedAlgebra:
    """Unit tests for GradedAlgebra construction and validation."""

    @pytest.mark.unit
    def test_load_kummer_fixture(self, kummer_f7):
        """Test the F_7 Kummer fixture loads with one-dimensional components."""
        assert kummer_f7.names == ("e", "t", "t2")
        assert kummer_f7.grades == (0, 1, 2)
        assert [kummer_f7.component_dim(i) for i in range(3)] == [1, 1, 1]
        assert kummer_f7.name == "F7[t]/(t^3-3)"

    @pytest.mark.unit
    def test_non_associative_rejected(self, fixtures_dir):
        """Test that associativity is checked."""
        with pytest.raises(MalformedSpecError):
            load_algebra(fixtures_dir / "nonassociative.json")

    @pytest.mark.unit
    def test_grading_violation_rejected(self, temp_json):
        """Test that t * t must land in R_2."""
        path = temp_json(
            {
                "p": 3,
                "q": 7,
                "components": {"0": ["e"], "1": ["t"]},
                "products": [["e", "e", "e"], ["e", "t", "t"], ["t", "t", "t"]],
                "unit": "e",
            }
        )
        with pytest.raises(MalformedSpecError):
            load_algebra(path)

    @pytest.mark.unit
    def test_unit_law_checked(self, temp_json):
        """Test that the declared unit must act as identity."""
        path = temp_json(
            {
                "p": 2,
                "q": 5,
                "components": {"0": ["e"]},
                "products": [["e", "e", "e"]],
                "unit": "2*e",
            }
        )
        with pytest.raises(MalformedSpecError):
            load_algebra(path)

    @pytest.mark.unit
    def test_unknown_basis_element(self, temp_json):
        """Test that products name declared basis elements."""
        path = temp_json(
            {"p": 2, "q": 5, "components": {"0": ["e"]}, "products": [["e", "x", "e"]]}
        )
        with pytest.raises(MalformedSpecError):
            load_algebra(path)

    @pytest.mark.unit
    def test_characteristic_must_differ_from_p(self):
        """Test that char F_q = p is refused."""
        with pytest.raises(DomainError):
            kummer_algebra(FqField(9), PrimeModulus(3), 1)

    @pytest.mark.unit
    def test_builders(self, f7, mod3):
        """Test the shapes of the algebra builders."""
        assert kummer_algebra(f7, mod3, 3).names == ("1", "t", "t^2")
        assert truncated_cone(f7, mod3, 4).dim == 4
        assert truncated_cone(f7, mod3, 4).component_dim(0) == 2
        product = direct_product(group_algebra(f7, mod3), truncated_cone(f7, mod3, 1))
        assert product.dim == 4
        assert product.component_dim(0) == 2
        assert tensor_product(group_algebra(f7, mod3), group_algebra(f7, mod3)).dim == 9
        with pytest.raises(DomainError):
            truncated_cone(f7, mod3, 0)


class TestFixedIdeal:
    """Unit tests for the fixed ideal and the fixed-point quotient."""

    @pytest.mark.unit
    def test_kummer_has_no_fixed_points(self, kummer_f7):
        """Test I = R_0 for a torsor."""
        assert fixed_ideal(kummer_f7) == kummer_f7.component(0)
        assert fixed_point_quotient(kummer_f7).dim == 0

    @pytest.mark.unit
    def test_cone_is_all_fixed(self, cone_f7):
        """Test I = 0 and R^G = R_0 for the cone."""
        assert fixed_ideal(cone_f7).dim == 0
        quotient = fixed_point_quotient(cone_f7)
        assert quotient.names == ("e",)
        assert component_product(cone_f7, 1, 1) == cone_f7.component(2)

    @pytest.mark.unit
    def test_ideal_closure_checked(self, cone_f7):
        """Test that GradedIdeal rejects non-ideals."""
        parts = [cone_f7.component(0)] + [Subspace.zero(cone_f7, i) for i in (1, 2)]
        with pytest.raises(MalformedSpecError):
            GradedIdeal(cone_f7, parts)


class TestTorsorCheck:
    """Unit tests for torsor_check and kummer_parameter."""

    @pytest.mark.unit
    def test_kummer_is_a_torsor(self, kummer_f7):
        """Test that every condition holds for F_7[t]/(t^3 - 3)."""
        conditions = torsor_check(kummer_f7)
        assert conditions.all_true
        assert not conditions.mixed
        assert conditions.field_dimensions is True
        assert is_field(kummer_f7)

    @pytest.mark.unit
    def test_cone_fails_everything(self, cone_f7):
        """Test that every condition fails for the cone."""
        conditions = torsor_check(cone_f7)
        assert not any(conditions.values())
        assert not conditions.mixed
        assert conditions.to_json()["1"] is False

    @pytest.mark.unit
    def test_product_of_fields_skips_dimension_condition(self, f7, mod3):
        """Test that condition 7 is only evaluated when R_0 is a field."""
        algebra = direct_product(kummer_algebra(f7, mod3, 3), group_algebra(f7, mod3))
        conditions = torsor_check(algebra)
        assert conditions.field_dimensions is None
        assert conditions.all_true
        assert conditions.to_json()["7"] is None

    @pytest.mark.unit
    def test_kummer_parameter(self, kummer_f7, f7, mod3):
        """Test that the parameter of t^3 = 3 is the class of 3."""
        assert kummer_parameter(kummer_f7) == pth_power_class(f7.element(3), mod3)
        assert kummer_parameter(group_algebra(f7, mod3)).is_trivial

    @pytest.mark.unit
    def test_kummer_parameter_guards(self, cone_f7, f7, mod3):
        """Test the preconditions of kummer_parameter."""
        with pytest.raises(DomainError):
            kummer_parameter(cone_f7)
        algebra = direct_product(group_algebra(f7, mod3), group_algebra(f7, mod3))
        with pytest.raises(UnsupportedOperationError):
            kummer_parameter(algebra)


class TestTwist:
    """Unit tests for twist."""

    @pytest.mark.unit
    def test_twist_by_two(self, kummer_f7, f7, mod3):
        """Test R'_1 = R_2 = t^2 and the parameter 3^2 = 2."""
        twisted = twist(kummer_f7, 2)
        assert twisted.names == ("e", "t2", "t")
        assert twisted.grades == (0, 1, 2)
        assert kummer_parameter(twisted) == pth_power_class(f7.element(2), mod3)

    @pytest.mark.unit
    def test_twist_raises_parameter_to_kth_power_at_p5(self):
        """Test twist(F_11[t]/(t^5 - 2), 2) has R'_1 = t^2 and parameter 2^2 = 4."""
        f11, mod5 = FqField(11), PrimeModulus(5)
        algebra = kummer_algebra(f11, mod5, 2)
        twisted = twist(algebra, 2)
        assert twisted.names == ("1", "t^2", "t^4", "t", "t^3")
        assert kummer_parameter(twisted) == pth_power_class(f11.element(4), mod5)
        # 2^3 = 8 lies in another class: fifth powers in F_11 are +-1
        assert kummer_parameter(twisted) != pth_power_class(f11.element(8), mod5)

    @pytest.mark.unit
    def test_twist_law_for_every_k_at_p5(self):
        """Test kummer_parameter(twist(A, k)) = kummer_parameter(A)^k for k = 1..4."""
        f11, mod5 = FqField(11), PrimeModulus(5)
        algebra = kummer_algebra(f11, mod5, 2)
        base = kummer_parameter(algebra)
        for k in range(1, 5):
            assert kummer_parameter(twist(algebra, k)) == base**k

    @pytest.mark.unit
    def test_twist_by_inverse_restores_grading(self):
        """Test that twisting by k and then by k^{-1} gives the original basis order."""
        algebra = kummer_algebra(FqField(11), PrimeModulus(5), 2)
        assert twist(twist(algebra, 2), 3).names == algebra.names

    @pytest.mark.unit
    def test_twist_by_one_is_identity(self, kummer_f7):
        """Test that k = 1 keeps the grading."""
        assert twist(kummer_f7, 1).names == kummer_f7.names

    @pytest.mark.unit
    def test_twist_needs_unit_index(self, kummer_f7):
        """Test that k must be invertible mod p."""
        with pytest.raises(DomainError):
            twist(kummer_f7, 3)


class TestDeformation:
    """Unit tests for deformation_check and deformation_report."""

    @pytest.mark.unit
    def test_monomial_example(self, f7, mod3):
        """Test F_q[x,y]/(x^2, y^2, xy) with degrees (1, 2)."""
        algebra = monomial_algebra(f7, mod3, [1, 2], [2, 2], killed=[(1, 1)])
        assert algebra.names == ("1", "x1", "x2")
        assert deformation_check(algebra, 3)

    @pytest.mark.unit
    def test_torsor_report(self, kummer_f7):
        """Test that a torsor has zero deformed quotient everywhere."""
        assert deformation_check(kummer_f7, 4)
        assert deformation_report(kummer_f7, 2) == {-2: 0, -1: 0, 0: 0, 1: 0}

    @pytest.mark.unit
    def test_cone_report_degrees(self, cone_f7):
        """Test the report keys and the fixed-point dimension of the cone."""
        report = deformation_report(cone_f7, 3)
        assert sorted(report) == [-3, -2, -1, 0, 1]
        assert report[0] == report[1] == 1

    @pytest.mark.unit
    def test_cone_with_nonzero_fixed_ideal(self, f7, mod3):
        """Test F_7[t]/(t^4), where I = span(t^3) and R_0/I is one-dimensional."""
        algebra = truncated_cone(f7, mod3, 4)
        assert fixed_ideal(algebra).dim == 1
        assert deformation_report(algebra, 2) == {-2: 0, -1: 0, 0: 1, 1: 1}
        assert deformation_check(algebra, 4)

    @pytest.mark.unit
    def test_deformed_ideal_in_nonnegative_degrees_is_fixed_ideal(self, f7, mod3):
        """Test that the deformed fixed ideal in t-degrees 0 and 1 is I."""
        algebra = truncated_cone(f7, mod3, 4)
        powers = _powers(algebra, 1)
        assert _deformed_ideal(algebra, powers, 0) == fixed_ideal(algebra)
        assert _deformed_ideal(algebra, powers, 1) == fixed_ideal(algebra)
        assert _deformed_ideal(algebra, powers, -1) == powers[1][0]

    @pytest.mark.unit
    def test_check_compares_report_with_fixed_point_quotient(self, cone_f7, mocker):
        """Test that a degree-0 quotient differing from R_0/I fails the check."""
        mocker.patch(
            "src.steencalc.graded_mup.deformation_report",
            return_value={-1: 0, 0: 2, 1: 1},
        )
        assert not deformation_check(cone_f7, 1)

    @pytest.mark.unit
    def test_kmax_positive(self, kummer_f7):
        """Test that kmax must be at least one."""
        with pytest.raises(DomainError):
            deformation_check(kummer_f7, 0)


class TestFibers:
    """Unit tests for fiber_decomposition and fiber_orbits."""

    @pytest.mark.unit
    def test_inert_fiber(self):
        """Test t^3 = 3 over F_7: one point of degree 3."""
        assert fiber_decomposition(7, 3, 3) == [(3, 1)]
        assert fiber_orbits(7, 3, 3) == []

    @pytest.mark.unit
    def test_split_fiber(self):
        """Test t^3 = 1 over F_7: three rational points in one orbit."""
        assert fiber_decomposition(7, 3, 1) == [(1, 3)]
        assert fiber_orbits(7, 3, 1) == [[1, 2, 4]]

    @pytest.mark.unit
    def test_mixed_fiber(self):
        """Test t^3 = 2 over F_5: degrees 1 + 2."""
        assert fiber_decomposition(5, 3, 2) == [(1, 1), (2, 1)]
        assert fiber_orbits(5, 3, 2) == [[3]]
