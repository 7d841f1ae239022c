"""
Exact Linear Algebra

Rank, kernels, homology dimensions and subspace arithmetic over the rationals.
Subspaces are passed around as RatMatrix objects whose columns span them.
Every function is pure and safe to call from several threads at once.
"""

from typing import List, Tuple
import logging

from sympy.polys.domains import QQ

from models.errors import CompositionNotZero
from models.matrix import RatMatrix

logger = logging.getLogger(__name__)


def rref(m: RatMatrix) -> Tuple[RatMatrix, Tuple[int, ...]]:
    """Reduced row echelon form and pivot columns."""
    if m.rows == 0 or m.cols == 0:
        return RatMatrix.zeros(m.rows, m.cols), ()
    if m.is_zero():
        return m, ()
    reduced, pivots = m.domain_matrix.rref()
    return RatMatrix(reduced), tuple(pivots)


def rank(m: RatMatrix) -> int:
    if m.rows == 0 or m.cols == 0 or m.is_zero():
        return 0
    return int(m.domain_matrix.rank())


def kernel_matrix(m: RatMatrix) -> RatMatrix:
    """Columns form a basis of the null space of m (cols x nullity)."""
    n = m.cols
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    # row i of the reduced matrix expresses pivot column pivots[i]
    rows_by_pivot = {}
    for (i, j), value in reduced.dok().items():
        if i < len(pivots):
            rows_by_pivot.setdefault(i, {})[j] = value
    entries = {}
    for k, f in enumerate(free):
        entries[(f, k)] = QQ.one
        for i, p in enumerate(pivots):
            value = rows_by_pivot.get(i, {}).get(f)
            if value:
                entries[(p, k)] = -value
    return RatMatrix.from_dok(entries, (n, len(free)))


def kernel_basis(m: RatMatrix) -> List[RatMatrix]:
    return kernel_matrix(m).columns()


def homology_dim(d_in: RatMatrix, d_out: RatMatrix) -> int:
    """
    Dimension of ker(d_out) / im(d_in).

    d_in maps into the middle space (rows = middle dimension) and d_out maps
    out of it (cols = middle dimension).

    Raises:
        CompositionNotZero: if d_out @ d_in is not exactly zero
    """
    if d_in.rows != d_out.cols:
        raise ValueError(f"differentials do not meet: {d_in.shape} then {d_out.shape}")
    composite = d_out @ d_in
    if not composite.is_zero():
        (i, j), _ = next(iter(composite.dok().items()))
        raise CompositionNotZero(
            f"consecutive differentials compose to a nonzero map (entry ({i}, {j}) of a {composite.rows}x{composite.cols} product)"
        )
    return d_in.rows - rank(d_out) - rank(d_in)


def column_basis(m: RatMatrix) -> RatMatrix:
    """Independent columns of m spanning its column space."""
    _, pivots = rref(m)
    return m.select_columns(pivots)


def coordinates(basis: RatMatrix, vectors: RatMatrix) -> RatMatrix:
    """
    Solve basis @ X = vectors for X.

    The columns of `basis` must be independent.

    Raises:
        ValueError: if some vector is not in the span of the basis
    """
    k = basis.cols
    if vectors.cols == 0:
        return RatMatrix.zeros(k, 0)
    if k == 0:
        if not vectors.is_zero():
            raise ValueError("vector outside the span of an empty basis")
        return RatMatrix.zeros(0, vectors.cols)
    augmented = RatMatrix.hstack([basis, vectors])
    reduced, pivots = rref(augmented)
    if tuple(pivots[:k]) != tuple(range(k)):
        raise ValueError("basis columns are linearly dependent")
    if len(pivots) > k:
        raise ValueError("vector outside the span of the basis")
    return reduced.select_rows(range(k)).select_columns(range(k, k + vectors.cols))


def in_span(basis: RatMatrix, vectors: RatMatrix) -> bool:
    if vectors.cols == 0:
        return True
    return rank(RatMatrix.hstack([basis, vectors])) == rank(basis)


def complement_basis(sub: RatMatrix, ambient: RatMatrix = None) -> RatMatrix:
    """
    Columns of `ambient` (identity by default) extending a basis of span(sub)
    to a basis of span(sub) + span(ambient).
    """
    if ambient is None:
        ambient = RatMatrix.identity(sub.rows)
    _, pivots = rref(RatMatrix.hstack([sub, ambient]))
    chosen = [p - sub.cols for p in pivots if p >= sub.cols]
    return ambient.select_columns(chosen)


def span_sum(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    return column_basis(RatMatrix.hstack([a, b]))


def intersection(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Basis of span(a) ∩ span(b); both live in the same ambient space."""
    if a.cols == 0 or b.cols == 0:
        return RatMatrix.zeros(a.rows, 0)
    relations = kernel_matrix(RatMatrix.hstack([a, -b]))
    return column_basis(a @ relations.select_rows(range(a.cols)))


def preimage(m: RatMatrix, sub: RatMatrix) -> RatMatrix:
    """Basis of {x : m x ∈ span(sub)}."""
    if sub.cols == 0:
        return kernel_matrix(m)
    relations = kernel_matrix(RatMatrix.hstack([m, -sub]))
    return column_basis(relations.select_rows(range(m.cols)))


def inverse(m: RatMatrix) -> RatMatrix:
    n = m.rows
    if n != m.cols:
        raise ValueError("only square matrices can be inverted")
    if n == 0:
        return m
    reduced, pivots = rref(RatMatrix.hstack([m, RatMatrix.identity(n)]))
    if tuple(pivots) != tuple(range(n)):
        raise ValueError("matrix is singular")
    return reduced.select_columns(range(n, 2 * n))


def kron(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Kronecker product; row (i, k) of the result is i * b.rows + k."""
    entries = {}
    b_items = list(b.dok().items())
    for (i, j), u in a.dok().items():
        for (k, l), v in b_items:
            entries[(i * b.rows + k, j * b.cols + l)] = u * v
    return RatMatrix.from_dok(entries, (a.rows * b.rows, a.cols * b.cols))


def block_diagonal(blocks: List[RatMatrix]) -> RatMatrix:
    entries = {}
    row, col = 0, 0
    for block in blocks:
        for (i, j), v in block.dok().items():
            entries[(row + i, col + j)] = v
        row += block.rows
        col += block.cols
    return RatMatrix.from_dok(entries, (row, col))
