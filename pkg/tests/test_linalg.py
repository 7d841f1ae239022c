"""
Tests for exact rational linear algebra.
"""

from fractions import Fraction

import pytest
from sympy import Matrix
import sys
from pathlib import Path

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from engine.linalg import (
    block_diagonal,
    complement_basis,
    coordinates,
    homology_dim,
    in_span,
    intersection,
    inverse,
    kernel_basis,
    kernel_matrix,
    kron,
    preimage,
    rank,
    span_sum,
)
from models.errors import CompositionNotZero
from models.matrix import RatMatrix
from utils.random_inputs import random_invertible


def random_product(rng, rows, cols, inner):
    """Random integer matrix of rank at most inner."""
    left = RatMatrix.from_rows([[rng.randint(-3, 3) for _ in range(inner)] for _ in range(rows)], cols=inner)
    right = RatMatrix.from_rows([[rng.randint(-3, 3) for _ in range(cols)] for _ in range(inner)], cols=cols)
    return left @ right


class TestRatMatrix:
    """Test the matrix wrapper."""

    def test_fractions_are_exact(self):
        """Entries keep exact rational values."""
        m = RatMatrix.from_rows([[Fraction(1, 3), 2], [0, "5/7"]])
        assert m.entry(0, 0) == Fraction(1, 3)
        assert m.entry(1, 1) == Fraction(5, 7)
        assert (m + m).entry(0, 0) == Fraction(2, 3)

    def test_shape_and_zero(self):
        """Empty and zero matrices keep their shape."""
        m = RatMatrix.zeros(3, 0)
        assert m.shape == (3, 0)
        assert m.is_zero()
        with pytest.raises(ValueError):
            RatMatrix.from_rows([])

    def test_from_dok_rejects_out_of_range(self):
        """Entries outside the shape are rejected."""
        with pytest.raises(IndexError):
            RatMatrix.from_dok({(2, 0): 1}, (2, 2))


class TestRankAndKernel:
    """Test rank and null space computations."""

    def test_rank_of_dependent_rows(self):
        m = RatMatrix.from_rows([[1, 2], [2, 4]])
        assert rank(m) == 1
        assert rank(RatMatrix.zeros(0, 4)) == 0

    def test_kernel_is_annihilated(self):
        """Every kernel column maps to zero and the nullity is right."""
        m = RatMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
        kernel = kernel_matrix(m)
        assert kernel.shape == (3, 2)
        assert (m @ kernel).is_zero()
        assert rank(kernel) == 2

    def test_kernel_of_injective_map(self):
        assert kernel_matrix(RatMatrix.identity(3)).shape == (3, 0)

    @pytest.mark.parametrize("shape", [(3, 5), (5, 3), (4, 4), (1, 6)])
    def test_rank_nullity(self, rng, shape):
        m = random_product(rng, *shape, inner=2)
        basis = kernel_basis(m)
        assert rank(m) + len(basis) == shape[1]
        assert all((m @ v).is_zero() for v in basis)

    def test_rank_of_transpose(self, rng):
        for _ in range(10):
            m = random_product(rng, rng.randint(1, 6), rng.randint(1, 6), inner=rng.randint(1, 4))
            assert rank(m.transpose()) == rank(m)


class TestHomology:
    """Test homology dimensions of two composable maps."""

    def test_exact_sequence(self):
        """Q -> Q^2 -> Q exact in the middle."""
        d_in = RatMatrix.from_rows([[1], [0]])
        d_out = RatMatrix.from_rows([[0, 1]])
        assert homology_dim(d_in, d_out) == 0

    def test_nonzero_homology(self):
        d_in = RatMatrix.from_rows([[1], [0]])
        d_out = RatMatrix.zeros(1, 2)
        assert homology_dim(d_in, d_out) == 1

    def test_nonzero_composite_raises(self):
        """d∘d != 0 is reported, never silently absorbed."""
        d_in = RatMatrix.from_rows([[1], [1]])
        d_out = RatMatrix.from_rows([[1, 0]])
        with pytest.raises(CompositionNotZero):
            homology_dim(d_in, d_out)

    def test_shape_mismatch_raises(self):
        with pytest.raises(ValueError):
            homology_dim(RatMatrix.zeros(2, 1), RatMatrix.zeros(1, 3))

    def test_invariant_under_change_of_basis(self, rng):
        """Conjugating the middle space and moving the ends keeps the homology."""
        d_in = RatMatrix.from_dok({(0, 0): 1, (1, 1): 1}, (6, 3))
        d_out = RatMatrix.from_dok({(0, 4): 1, (1, 5): 1}, (2, 6))
        expected = homology_dim(d_in, d_out)
        assert expected == 2
        for _ in range(5):
            g = random_invertible(rng, 6)
            h_in, h_out = random_invertible(rng, 3), random_invertible(rng, 2)
            moved_in = g @ d_in @ h_in
            moved_out = h_out @ d_out @ inverse(g)
            assert homology_dim(moved_in, moved_out) == expected

    def test_agrees_with_independent_elimination(self, rng):
        """Six-dimensional middle space, ranks recomputed by sympy Matrix.rank."""
        for _ in range(10):
            a = rng.randint(0, 3)
            b = rng.randint(0, 6 - a)
            d_in = RatMatrix.from_dok({(i, i): 1 for i in range(a)}, (6, 4))
            d_out = RatMatrix.from_dok({(i, a + i): 1 for i in range(b)}, (3 if b <= 3 else b, 6))
            g = random_invertible(rng, 6)
            d_in, d_out = g @ d_in, d_out @ inverse(g)
            oracle = 6 - Matrix(d_out.to_fractions()).rank() - Matrix(d_in.to_fractions()).rank()
            assert homology_dim(d_in, d_out) == oracle == 6 - a - b


class TestSubspaces:
    """Test span arithmetic."""

    def test_coordinates(self):
        basis = RatMatrix.from_rows([[1, 0], [1, 1]])
        vector = RatMatrix.column([2, 3])
        coords = coordinates(basis, vector)
        assert basis @ coords == vector
        assert coords == RatMatrix.column([2, 1])

    def test_coordinates_outside_span(self):
        basis = RatMatrix.column([1, 0])
        with pytest.raises(ValueError):
            coordinates(basis, RatMatrix.column([0, 1]))

    def test_in_span(self):
        basis = RatMatrix.from_rows([[1, 0], [0, 1], [0, 0]])
        assert in_span(basis, RatMatrix.column([3, -1, 0]))
        assert not in_span(basis, RatMatrix.column([0, 0, 1]))

    def test_intersection_and_sum(self):
        """span(e1, e2) ∩ span(e2, e3) = span(e2) in Q^3."""
        e = RatMatrix.identity(3)
        a = e.select_columns([0, 1])
        b = e.select_columns([1, 2])
        meet = intersection(a, b)
        assert meet.cols == 1
        assert in_span(e.select_columns([1]), meet)
        assert span_sum(a, b).cols == 3

    def test_complement_basis(self):
        sub = RatMatrix.column([1, 1, 0])
        complement = complement_basis(sub)
        assert complement.cols == 2
        assert rank(RatMatrix.hstack([sub, complement])) == 3

    def test_preimage(self):
        """Vectors mapped into span(e1) by a projection."""
        m = RatMatrix.from_rows([[1, 0, 0], [0, 1, 0]])
        pre = preimage(m, RatMatrix.column([1, 0]))
        assert pre.cols == 2
        assert in_span(RatMatrix.column([1, 0]), m @ pre)


class TestConstructions:
    """Test inverse, Kronecker products and block sums."""

    def test_inverse(self):
        m = RatMatrix.from_rows([[2, 1], [1, 1]])
        assert m @ inverse(m) == RatMatrix.identity(2)

    def test_singular_inverse_raises(self):
        with pytest.raises(ValueError):
            inverse(RatMatrix.from_rows([[1, 2], [2, 4]]))

    def test_kron_shape_and_entries(self):
        a = RatMatrix.from_rows([[1, 2]])
        b = RatMatrix.from_rows([[0, 1], [1, 0]])
        k = kron(a, b)
        assert k.shape == (2, 4)
        assert k.entry(0, 3) == 2
        assert k.entry(1, 0) == 1

    def test_block_diagonal(self):
        m = block_diagonal([RatMatrix.identity(1), RatMatrix.zeros(2, 0), RatMatrix.identity(2)])
        assert m.shape == (5, 3)
        assert rank(m) == 3
