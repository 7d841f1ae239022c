"""
Tests for the group catalog and weighted group cohomology.
"""

import pytest
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from engine.assembly import assemble_cohomology, betti_numbers, purity_check
from engine.koszul import koszul_tor
from geometry.groups import (
    GroupCatalog,
    catalog_lookup,
    classifying_ring,
    classifying_series,
    complexity_filtration,
    exterior_table,
    flag_variety_module,
    group_cohomology,
    group_cohomology_via_tor,
    homogeneous_space_cohomology,
    homogeneous_space_module,
    maximal_torus_restriction,
    torus_homogeneous_module,
)
from models.errors import InvalidModule, UnknownGroup
from models.groups import WeightedExteriorAlgebra
from utils.validators import validate_module


class TestGroupCatalog:
    """Test parsing of group spec strings."""

    @pytest.mark.parametrize("spec,degrees", [
        ("torus:3", [2, 2, 2]),
        ("GL:2", [2, 4]),
        ("SL:3", [4, 6]),
        ("Sp:4", [4, 8]),
        ("SO:3", [4]),
        ("SO:4", [4, 4]),
        ("SO:2", [2]),
        ("G2", [4, 12]),
        ("custom:[6,4]", [4, 6]),
        ("trivial", []),
    ])
    def test_lookup(self, catalog, spec, degrees):
        assert catalog.lookup(spec).bg_generator_degrees == degrees

    @pytest.mark.parametrize("spec", ["O:3", "XY:2", "Sp:3", "SL:0", "custom:[3]", "custom:[x]", "", "E9"])
    def test_unknown(self, catalog, spec):
        with pytest.raises(UnknownGroup):
            catalog.lookup(spec)

    def test_missing_table(self, temp_dir):
        with pytest.raises(FileNotFoundError):
            GroupCatalog(temp_dir / "missing.yaml")

    def test_custom_table(self, temp_dir):
        path = temp_dir / "groups.yaml"
        path.write_text("catalog:\n  exceptional:\n    X1: [4, 8]\n", encoding="utf-8")
        catalog = GroupCatalog(path)
        assert catalog.lookup("X1").bg_generator_degrees == [4, 8]

    def test_table_without_catalog_section(self, temp_dir):
        path = temp_dir / "groups.yaml"
        path.write_text("groups: []\n", encoding="utf-8")
        with pytest.raises(ValueError):
            GroupCatalog(path)


class TestGroupCohomology:
    """Test H*(G), H*(BG) and the complexity filtration."""

    def test_sl2(self):
        """H*(SL2) has one class in degree 3 of weight 4."""
        table = exterior_table(group_cohomology(catalog_lookup("SL:2")))
        assert table.entries == {(0, 0): 1, (3, 4): 1}

    def test_sl3(self):
        table = exterior_table(group_cohomology(catalog_lookup("SL:3")))
        assert table.entries == {(0, 0): 1, (3, 4): 1, (5, 6): 1, (8, 10): 1}
        assert table.degree_bound == 8

    def test_exterior_weights_are_checked(self):
        with pytest.raises(ValueError):
            WeightedExteriorAlgebra(generator_degrees=[3], generator_weights=[3])

    def test_classifying_series_is_pure(self):
        series = classifying_series(catalog_lookup("GL:2"), 12)
        assert [series.betti(k) for k in range(13)] == [1, 0, 1, 0, 2, 0, 2, 0, 3, 0, 3, 0, 4]
        assert purity_check(series).is_pure

    @pytest.mark.parametrize("spec", ["torus:2", "SL:2", "SL:3", "GL:2"])
    def test_free_action_on_itself(self, spec):
        """Tor over H*(BG) of (Q, Q) reproduces the exterior algebra."""
        group = catalog_lookup(spec)
        via_tor = group_cohomology_via_tor(group, 20)
        expected = exterior_table(group_cohomology(group))
        for n in range(via_tor.degree_bound + 1):
            assert via_tor.weights(n) == expected.weights(n)

    def test_complexity_filtration(self):
        torus = catalog_lookup("torus:2")
        assert complexity_filtration(torus, 1, 1) == 2
        assert complexity_filtration(torus, 2, 1) == 0
        assert complexity_filtration(torus, 2, 2) == 1
        assert complexity_filtration(catalog_lookup("SL:3"), 8, 1) == 0


class TestHomogeneousSpaces:
    """Test homogeneous spaces G/H through H*(BH) as an H*(BG)-module."""

    def test_quotient_by_diagonal_circle(self):
        """T^2 modulo the diagonal circle is C*."""
        module = torus_homogeneous_module(2, [[1], [1]], 12)
        assert module.ring == classifying_ring(catalog_lookup("torus:2"))
        cohomology = assemble_cohomology(koszul_tor(module))
        assert cohomology.entries == {(0, 0): 1, (1, 2): 1}

    def test_character_rows_checked(self):
        with pytest.raises(InvalidModule):
            torus_homogeneous_module(3, [[1], [1]], 8)

    def test_gl3_flag_variety(self):
        """GL(3)/B retracts onto GL(3)/T: the full flag variety of C^3."""
        module = flag_variety_module(catalog_lookup("GL:3"), 18)
        assert validate_module(module)["is_valid"]
        cohomology = homogeneous_space_cohomology(module)
        assert betti_numbers(cohomology) == [1, 0, 2, 0, 2, 0, 1]
        assert purity_check(cohomology).is_pure

    def test_sl2_flag_variety(self):
        """SL(2)/T: c_2 restricts to -y^2 and the quotient is P^1."""
        g = catalog_lookup("SL:2")
        assert maximal_torus_restriction(g) == (1, [{(2,): -1}])
        cohomology = homogeneous_space_cohomology(flag_variety_module(g, 8))
        assert cohomology.entries == {(0, 0): 1, (2, 2): 1}

    def test_gl_restriction_is_elementary_symmetric(self):
        s, images = maximal_torus_restriction(catalog_lookup("GL:2"))
        assert s == 2
        assert images == [{(1, 0): 1, (0, 1): 1}, {(1, 1): 1}]

    def test_explicit_restriction(self):
        """GL(2) over its diagonal circle t -> (t, t): c_1 -> 2y, c_2 -> y^2."""
        g = catalog_lookup("GL:2")
        module = homogeneous_space_module(g, 1, [{(1,): 2}, {(2,): 1}], 12)
        cohomology = homogeneous_space_cohomology(module)
        assert betti_numbers(cohomology)[:4] == [1, 0, 0, 1]

    def test_restriction_length_checked(self):
        with pytest.raises(InvalidModule):
            homogeneous_space_module(catalog_lookup("GL:2"), 1, [{(1,): 1}], 8)

    def test_untabulated_family(self):
        with pytest.raises(UnknownGroup):
            maximal_torus_restriction(catalog_lookup("Sp:4"))
