"""
Tests for graded rings, modules, algebras and weighted vector spaces.
"""

import pytest
from pydantic import ValidationError
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from engine.koszul import koszul_tor
from engine.linalg import rank
from engine.modules import (
    direct_sum,
    free_module,
    module_action,
    poincare_series,
    polynomial_action_module,
    polynomial_algebra,
    shift_module,
    trivial_module,
    truncate,
)
from models.errors import InvalidModule, RingMismatch, TruncationExceeded
from models.graded import GradedAlgebra, GradedModule, PolynomialRingData, WeightedGradedVectorSpace
from models.matrix import RatMatrix
from utils.validators import get_validation_summary, validate_algebra, validate_module


class TestPolynomialRing:
    """Test PolynomialRingData."""

    def test_odd_degree_rejected(self):
        with pytest.raises(ValidationError):
            PolynomialRingData(generator_degrees=[2, 3])

    def test_dimensions(self):
        """Q[a, b] with |a| = 4 and |b| = 6 has two monomials in degree 12."""
        ring = PolynomialRingData(generator_degrees=[4, 6])
        assert ring.dim(12) == 2
        assert ring.dim(2) == 0
        assert ring.dim(0) == 1
        assert ring.monomial_degree((3, 0)) == 12

    def test_monomial_order(self, ring_t2):
        assert ring_t2.monomials(4) == ((2, 0), (1, 1), (0, 2))


class TestGradedModule:
    """Test module constructors and the truncation contract."""

    def test_free_module_series(self, ring_t):
        module = free_module(ring_t, [0, 2], 6)
        assert poincare_series(module, 6) == [1, 0, 2, 0, 2, 0, 2]

    def test_series_beyond_truncation(self, free_t):
        assert poincare_series(free_t, 8) == [1, 0, 1, 0, 1, 0, 1, 0, 1]
        with pytest.raises(TruncationExceeded):
            poincare_series(free_t, 9)

    def test_dim_beyond_truncation(self, trivial_t):
        with pytest.raises(TruncationExceeded):
            trivial_t.dim(9)
        with pytest.raises(TruncationExceeded):
            trivial_t.action(0, 8)

    def test_free_module_actions_are_injective(self, ring_t2):
        module = free_module(ring_t2, [0, 2], 10)
        for i, d in enumerate(ring_t2.generator_degrees):
            for k in range(10 - d + 1):
                action = module.action(i, k)
                assert rank(action) == module.dim(k)

    def test_truncation_is_invisible_below_the_cut(self, ring_t2):
        """Truncating at D' < D gives the module built at D' directly."""
        big = free_module(ring_t2, [0, 2], 10)
        small = free_module(ring_t2, [0, 2], 6)
        cut = truncate(big, 6)
        assert cut.dims == small.dims
        for i, d in enumerate(ring_t2.generator_degrees):
            for k in range(6 - d + 1):
                assert cut.action(i, k) == small.action(i, k)
        assert koszul_tor(cut).dims == koszul_tor(small).dims == {(0, 0): 1, (0, 2): 1}

    def test_trivial_module_acts_by_zero(self, trivial_t):
        assert trivial_t.dim(0) == 1
        assert trivial_t.action(0, 0).shape == (0, 1)
        assert validate_module(trivial_t)["is_valid"]

    def test_monomial_action_on_free_module(self, ring_t2):
        module = free_module(ring_t2, [0], 6)
        x = module_action(module, (1, 2), 0)
        assert x.shape == (module.dim(6), 1)
        assert not x.is_zero()

    def test_shift_and_truncate(self, trivial_t):
        shifted = shift_module(trivial_t, 2)
        assert shifted.truncation_degree == 10
        assert shifted.dims == {2: 1}
        assert truncate(shifted, 4).truncation_degree == 4
        with pytest.raises(TruncationExceeded):
            truncate(shifted, 12)
        with pytest.raises(InvalidModule):
            shift_module(trivial_t, -2)

    def test_direct_sum(self, trivial_t, free_t):
        total = direct_sum(trivial_t, free_t)
        assert poincare_series(total, 4) == [2, 0, 1, 0, 1]
        assert validate_module(total)["is_valid"]

    def test_direct_sum_ring_mismatch(self, trivial_t, ring_t2):
        with pytest.raises(RingMismatch):
            direct_sum(trivial_t, trivial_module(ring_t2, 8))

    def test_polynomial_action_module_checks_homogeneity(self, ring_t):
        with pytest.raises(InvalidModule):
            polynomial_action_module(ring_t, 1, [{(2,): 1}], 6)

    def test_quotient_by_diagonal(self, ring_t2):
        """Q[y] with t1 = t2 = y is a valid module with one class per even degree."""
        module = polynomial_action_module(ring_t2, 1, [{(1,): 1}, {(1,): 1}], 6)
        assert poincare_series(module, 6) == [1, 0, 1, 0, 1, 0, 1]
        assert validate_module(module)["is_valid"]

    def test_json_keeps_exact_entries(self, ring_t):
        module = polynomial_action_module(ring_t, 1, [{(1,): "3/2"}], 4, name="scaled")
        data = module.to_json()
        assert data["actions"][0][0] == [["3/2"]]
        restored = GradedModule.from_json(data)
        assert restored.action(0, 2) == module.action(0, 2)
        assert restored.name == "scaled"

    def test_json_drops_zero_degrees(self, free_t):
        data = free_t.to_json()
        assert data["dims"]["1"] == 0
        assert GradedModule.from_json(data).dims == free_t.dims

    def test_malformed_json(self):
        with pytest.raises(InvalidModule):
            GradedModule.from_json({"ring": {"generator_degrees": [2]}})
        with pytest.raises(InvalidModule):
            GradedModule.from_json(
                {"ring": {"generator_degrees": [2]}, "truncation": 2, "dims": {"0": 1, "2": 1}, "actions": [[]]}
            )


class TestModuleValidation:
    """Test validate_module."""

    def test_noncommuting_actions_reported(self, noncommuting_module):
        report = validate_module(noncommuting_module)
        assert not report["is_valid"]
        assert report["first_violation"] == {"generators": (0, 1), "degree": 0}
        assert "❌" in get_validation_summary(report)

    def test_wrong_shape_reported(self, ring_t):
        module = GradedModule(
            ring=ring_t, truncation_degree=2, dims={0: 1, 2: 1}, actions=[{0: RatMatrix.zeros(2, 1)}]
        )
        report = validate_module(module)
        assert not report["is_valid"]
        assert "shape" in report["errors"][0]

    def test_zero_module_warns(self, ring_t):
        module = GradedModule(ring=ring_t, truncation_degree=4, dims={}, actions=[{}])
        report = validate_module(module)
        assert report["is_valid"]
        assert report["warnings"]


class TestGradedAlgebra:
    """Test polynomial algebras and algebra validation."""

    def test_polynomial_algebra_is_valid(self, ring_t2):
        algebra = polynomial_algebra(ring_t2, 6)
        assert algebra.dim(4) == 3
        assert algebra.labels[2] == [(1, 0), (0, 1)]
        assert validate_algebra(algebra)["is_valid"]

    def test_unit_required(self):
        with pytest.raises(ValidationError):
            GradedAlgebra(dims={0: 2}, truncation_degree=2)

    def test_broken_unit_detected(self):
        one = RatMatrix.identity(1)
        algebra = GradedAlgebra(
            dims={0: 1, 2: 1, 4: 1},
            truncation_degree=4,
            products={
                (0, 0): one, (0, 2): one.scaled(2), (2, 0): one,
                (0, 4): one, (4, 0): one, (2, 2): one,
            },
        )
        report = validate_algebra(algebra)
        assert not report["is_valid"]
        assert report["first_violation"]["law"] == "unit"


class TestWeightedGradedVectorSpace:
    """Test the weighted Poincaré data model."""

    def test_weight_range_enforced(self):
        with pytest.raises(ValidationError):
            WeightedGradedVectorSpace(entries={(1, 3): 1}, degree_bound=2)
        with pytest.raises(ValidationError):
            WeightedGradedVectorSpace(entries={(2, 1): 1}, degree_bound=2)

    def test_zero_entries_dropped(self):
        w = WeightedGradedVectorSpace(entries={(0, 0): 1, (1, 2): 0}, degree_bound=1)
        assert w.entries == {(0, 0): 1}

    def test_accessors(self):
        w = WeightedGradedVectorSpace(entries={(0, 0): 1, (1, 1): 2, (1, 2): 1}, degree_bound=1)
        assert w.betti(1) == 3
        assert w.weights(1) == {1: 2, 2: 1}
        assert w.dim(1, 2) == 1

    def test_json(self):
        w = WeightedGradedVectorSpace(entries={(0, 0): 1, (3, 4): 1}, degree_bound=4)
        data = w.to_json()
        assert data["entries"][1] == {"n": 3, "weight": 4, "dim": 1}
        assert WeightedGradedVectorSpace.from_json(data).entries == w.entries
