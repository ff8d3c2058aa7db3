import pytest

from src.steencalc.arith import PrimeModulus
from src.steencalc.chow_ring import CycleClass
from src.steencalc.errors import MalformedSpecError, SteencalcError
from src.steencalc.steenrod import steenrod_coh_total
from src.steencalc.variety_io import (
    load_algebra,
    load_variety,
    read_json,
    ring_from_preset,
    variety_from_json,
    variety_from_preset,
)


class TestPresets:
    """Unit tests for preset names."""

    @pytest.mark.unit
    def test_projective_space(self, mod3):
        """Test "P3"."""
        x = variety_from_preset("P3", mod3)
        assert x.dimension == 3
        assert x.ring.names == ("h",)

    @pytest.mark.unit
    def test_product(self, mod3):
        """Test "P1xP2xP1"."""
        ring = ring_from_preset("P1xP2xP1", mod3)
        assert ring.names == ("h1", "h2", "h3")
        assert ring.factors == (1, 2, 1)

    @pytest.mark.unit
    def test_projective_bundle(self, mod3):
        """Test "ProjBundle(P2; 2*h, h^2)"."""
        x = variety_from_preset("ProjBundle(P2; 2*h, h^2)", mod3)
        assert x.dimension == 3
        assert x.ring.names == ("h", "z")
        assert x.ring.factors is None

    @pytest.mark.unit
    def test_unknown_preset(self, mod3):
        """Test that unknown names are malformed."""
        for text in ("Q3", "P2xQ1", "ProjBundle(P2)"):
            with pytest.raises(MalformedSpecError):
                variety_from_preset(text, mod3)


class TestVarietyFiles:
    """Unit tests for variety JSON files."""

    @pytest.mark.unit
    def test_explicit_file(self, fixtures_dir):
        """Test the explicit P^2 description with the Wu contract."""
        x = load_variety(fixtures_dir / "p2.json")
        h = CycleClass.generator(x.ring, "h")
        assert x.modulus == PrimeModulus(2)
        assert x.name == "P2"
        assert steenrod_coh_total(x, h) == h + h**2

    @pytest.mark.unit
    def test_preset_file(self, fixtures_dir):
        """Test a file that names a preset."""
        x = load_variety(fixtures_dir / "p1xp1_preset.json")
        assert x.ring.names == ("h1", "h2")
        assert x.modulus.p == 3

    @pytest.mark.unit
    def test_relation_must_decrease_order(self):
        """Test that relations rewrite towards smaller monomials."""
        data = {
            "prime": 3,
            "name": "Q",
            "dimension": 2,
            "generators": [["a", 1, 3], ["b", 1, 3]],
            "relations": [["a^2", "b^2"]],
            "tangent_chern": "1",
            "steenrod_seeds": {"a": "a", "b": "b"},
        }
        # a^2 -> b^2 does not decrease the monomial order
        with pytest.raises(MalformedSpecError):
            variety_from_json(data)

    @pytest.mark.unit
    def test_missing_seed_contract(self):
        """Test that a file needs seeds or "divisor": true."""
        data = {
            "prime": 2,
            "dimension": 1,
            "generators": [["h", 1, 2]],
            "tangent_chern": "1",
        }
        with pytest.raises(MalformedSpecError):
            variety_from_json(data)

    @pytest.mark.unit
    def test_missing_keys(self):
        """Test that missing fields become MalformedSpecError."""
        with pytest.raises(MalformedSpecError):
            variety_from_json({"prime": 2, "generators": [["h", 1, 2]]})
        with pytest.raises(SteencalcError):
            variety_from_json({"prime": 4, "preset": "P1"})

    @pytest.mark.unit
    def test_missing_and_invalid_files(self, temp_json):
        """Test file errors."""
        with pytest.raises(MalformedSpecError):
            read_json("/nonexistent/variety.json")
        with pytest.raises(MalformedSpecError):
            read_json(temp_json("{not json"))

    @pytest.mark.unit
    def test_load_algebra(self, fixtures_dir):
        """Test that algebra files go through the algebra reader."""
        algebra = load_algebra(fixtures_dir / "cone_f7_p3.json")
        assert algebra.field.q == 7
        assert algebra.p == 3
