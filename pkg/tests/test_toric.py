"""
Tests for fans, Stanley-Reisner modules and toric cohomology.
"""

import pytest
from pydantic import ValidationError
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from engine.assembly import weight_filtration
from engine.modules import poincare_series
from geometry.groups import catalog_lookup, complexity_filtration
from geometry.strata import equivariant_series
from geometry.toric import (
    affine_minus_origin_fan,
    affine_space_fan,
    blowup_p2_fan,
    fan_orbit_stratification,
    h_vector,
    hirzebruch_fan,
    is_complete,
    is_smooth,
    product_fan,
    projective_space_fan,
    required_degree,
    stanley_reisner_module,
    toric_cohomology,
    toric_report,
    torus_fan,
    validate_fan,
)
from models.errors import NonSimplicial, ValidationFailure
from models.fan import Fan
from utils.validators import validate_fan_data, validate_module


class TestFanModel:
    """Test Fan validation."""

    def test_non_primitive_ray(self):
        with pytest.raises(ValidationError):
            Fan(rank=2, rays=[[2, 0]], max_cones=[[0]])

    def test_missing_ray(self):
        with pytest.raises(ValidationError):
            Fan(rank=1, rays=[[1]], max_cones=[[0, 1]])

    def test_wrong_dimension(self):
        with pytest.raises(ValidationError):
            Fan(rank=2, rays=[[1]], max_cones=[[0]])

    def test_cones_and_f_vector(self, p2_fan):
        assert p2_fan.f_vector() == [1, 3, 3]
        assert len(p2_fan.cones()) == 7
        assert p2_fan.is_cone_supported(frozenset({0, 2}))
        assert not p2_fan.is_cone_supported(frozenset({0, 1, 2}))

    def test_dependent_rays(self):
        fan = Fan(rank=2, rays=[[1, 0], [0, 1], [1, 1]], max_cones=[[0, 1, 2]])
        with pytest.raises(NonSimplicial):
            validate_fan(fan)

    def test_overlapping_cones(self):
        """A ray of one cone inside another cone is not a fan."""
        fan = Fan(rank=2, rays=[[1, 0], [0, 1], [1, 1]], max_cones=[[0, 1], [2]])
        with pytest.raises(ValidationFailure):
            validate_fan(fan)


    def test_cones_crossing_in_their_interiors(self):
        """Two 2-cones in rank 3 sharing no ray but meeting along (2, 2, 0)."""
        fan = Fan(rank=3, rays=[[1, 0, 0], [0, 1, 0], [1, 1, 1], [1, 1, -1]], max_cones=[[0, 1], [2, 3]])
        with pytest.raises(ValidationFailure):
            validate_fan(fan)

    def test_cones_meeting_in_a_shared_face(self):
        fan = Fan(rank=3, rays=[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, -1]], max_cones=[[0, 1, 2], [0, 1, 3]])
        assert validate_fan(fan) is fan

    def test_cones_touching_only_at_the_origin(self):
        fan = Fan(rank=2, rays=[[1, 0], [-1, 0]], max_cones=[[0], [1]])
        assert validate_fan(fan) is fan

class TestFanPredicates:
    """Test smoothness, completeness and h-vectors."""

    def test_smooth_complete_corpus(self):
        fans = [projective_space_fan(1), projective_space_fan(2), projective_space_fan(3), blowup_p2_fan()]
        fans += [hirzebruch_fan(a) for a in range(4)]
        fans.append(product_fan(projective_space_fan(1), projective_space_fan(1)))
        for fan in fans:
            assert is_smooth(fan), fan.name
            assert is_complete(fan), fan.name

    def test_weighted_projective_plane_is_singular(self):
        fan = Fan(rank=2, rays=[[1, 0], [0, 1], [-1, -2]], max_cones=[[0, 1], [1, 2], [0, 2]])
        assert not is_smooth(fan)
        assert is_complete(fan)

    def test_incomplete_fans(self, c2_minus_origin):
        assert not is_complete(affine_space_fan(2))
        assert not is_complete(c2_minus_origin)
        assert not is_complete(torus_fan(2))
        assert is_complete(torus_fan(0))

    def test_h_vectors(self, p2_fan, c2_minus_origin):
        assert h_vector(p2_fan) == [1, 1, 1]
        assert h_vector(blowup_p2_fan()) == [1, 2, 1]
        assert h_vector(c2_minus_origin) == [1, 0, -1]
        assert h_vector(torus_fan(2)) == [1, -2, 1]

    def test_validator_warnings(self):
        report = validate_fan_data({"rank": 2, "rays": [[1, 0], [0, 1]], "max_cones": [[0], [1]]})
        assert report["is_valid"]
        assert len(report["warnings"]) == 1
        bad = validate_fan_data({"rank": 2, "rays": [[2, 0]], "max_cones": [[0]]})
        assert not bad["is_valid"]


class TestStanleyReisner:
    """Test the Stanley-Reisner module."""

    def test_p2_series(self, p2_fan):
        module = stanley_reisner_module(p2_fan, 6)
        assert poincare_series(module, 6) == [1, 0, 3, 0, 6, 0, 9]
        assert validate_module(module)["is_valid"]

    def test_torus_is_the_residue_field(self):
        module = stanley_reisner_module(torus_fan(2), 6)
        assert poincare_series(module, 6) == [1, 0, 0, 0, 0, 0, 0]

    def test_orbit_series_matches_module(self, p2_fan):
        """Summing the torus orbits gives the Stanley-Reisner series."""
        series = equivariant_series(fan_orbit_stratification(p2_fan, 12), 12)
        module = stanley_reisner_module(p2_fan, 12)
        assert [series.betti(k) for k in range(13)] == poincare_series(module, 12)


class TestToricCohomology:
    """Test Betti numbers and weights of toric varieties."""

    def test_p2(self, p2_fan):
        report = toric_report(p2_fan, 0)
        assert report.degree == required_degree(p2_fan) == 10
        assert report.betti == [1, 0, 1, 0, 1]
        assert report.is_pure
        assert report.checks_pass
        assert report.poincare_duality

    def test_p3(self):
        report = toric_report(projective_space_fan(3), 14)
        assert report.betti == [1, 0, 1, 0, 1, 0, 1]

    def test_blowup_and_hirzebruch(self):
        for fan in [blowup_p2_fan(), hirzebruch_fan(2)]:
            report = toric_report(fan, 10)
            assert report.betti == [1, 0, 2, 0, 1]
            assert report.betti_matches_h

    def test_affine_minus_origin(self, c2_minus_origin):
        """C^2 minus the origin: H^3 of weight 4."""
        cohomology = toric_cohomology(c2_minus_origin, 10)
        assert cohomology.entries == {(0, 0): 1, (3, 4): 1}
        report = toric_report(c2_minus_origin, 10)
        assert not report.is_pure
        assert report.betti_matches_h is None
        assert report.notes

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_affine_minus_origin_in_every_rank(self, n):
        cohomology = toric_cohomology(affine_minus_origin_fan(n), 4 * n + 2)
        assert cohomology.entries == {(0, 0): 1, (2 * n - 1, 2 * n): 1}

    def test_torus_weights_follow_complexity(self):
        """W_{k+a} H^k((C*)^2) counts products of at most a primitives."""
        cohomology = toric_cohomology(torus_fan(2), 10)
        assert cohomology.entries == {(0, 0): 1, (1, 2): 2, (2, 4): 1}
        group = catalog_lookup("torus:2")
        for k in range(3):
            for a in range(3):
                assert weight_filtration(cohomology, k, k + a) == complexity_filtration(group, k, a)

    def test_metadata_carries_tor(self, p2_fan):
        cohomology = toric_cohomology(p2_fan, 10)
        assert cohomology.metadata["fan"] == "P2"
        assert cohomology.metadata["tor"]["trusted_q"] == 8


def relabel(fan, order):
    """Same fan with ray order[k] listed as ray k."""
    position = {old: new for new, old in enumerate(order)}
    cones = [sorted(position[i] for i in cone) for cone in fan.max_cones]
    return Fan(rank=fan.rank, rays=[fan.rays[i] for i in order], max_cones=cones, name=fan.name)


def change_basis(fan, g):
    """Image of the fan under the unimodular matrix g acting on columns."""
    rays = [[sum(g[r][c] * ray[c] for c in range(fan.rank)) for r in range(fan.rank)] for ray in fan.rays]
    return Fan(rank=fan.rank, rays=rays, max_cones=fan.max_cones, name=fan.name)


class TestFanInvariance:
    """Test that cohomology depends on the fan, not on its presentation."""

    FANS = [
        (blowup_p2_fan, [[2, 1], [1, 1]]),
        (lambda: hirzebruch_fan(1), [[1, 3], [0, 1]]),
        (lambda: affine_minus_origin_fan(2), [[0, 1], [-1, 0]]),
    ]

    @pytest.mark.parametrize("build,g", FANS)
    def test_ray_relabelling(self, build, g):
        fan = build()
        order = list(reversed(range(len(fan.rays))))
        assert toric_cohomology(relabel(fan, order), 10).entries == toric_cohomology(fan, 10).entries

    @pytest.mark.parametrize("build,g", FANS)
    def test_lattice_basis_change(self, build, g):
        fan = build()
        moved = change_basis(fan, g)
        assert is_smooth(moved) == is_smooth(fan)
        assert is_complete(moved) == is_complete(fan)
        assert toric_cohomology(moved, 10).entries == toric_cohomology(fan, 10).entries

    def test_basis_change_in_rank_three(self):
        fan = projective_space_fan(3)
        g = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
        moved = change_basis(relabel(fan, [2, 0, 3, 1]), g)
        assert toric_report(moved, 14).betti == [1, 0, 1, 0, 1, 0, 1]
