"""
Two-Sided Bar Complex

Bar_p(M, A, N) = M ⊗ Ā^{⊗p} ⊗ N with

    d(m ⊗ a_1 ⊗ ... ⊗ a_p ⊗ n) = m a_1 ⊗ ... ⊗ n
                               + Σ_{0<i<p} (-1)^i m ⊗ ... ⊗ a_i a_{i+1} ⊗ ... ⊗ n
                               + (-1)^p m ⊗ ... ⊗ a_{p-1} ⊗ a_p n.

A must be evenly graded, so no Koszul signs enter. Modules act through
the monomial labels of A, which is why A has to come from
polynomial_algebra over the same ring as both modules.
"""

from functools import lru_cache
from typing import Dict, List, Optional, Tuple
import logging

from models.errors import InvalidModule, NonSimplyConnectedBase, RingMismatch, TruncationExceeded
from models.graded import GradedAlgebra, GradedModule
from models.matrix import RatMatrix, SparseAssembler
from models.tor import BigradedTor, ChainComplexBundle
from .complexes import bundle_homology, map_slices
from .linalg import kron
from .modules import module_action

logger = logging.getLogger(__name__)

BarBlock = Tuple[int, ...]  # (k_left, a_1, ..., a_p, k_right)


def check_bar_inputs(m_left: GradedModule, a: GradedAlgebra, m_right: GradedModule) -> None:
    """
    Raises:
        RingMismatch: if the algebra has no polynomial labels or the rings differ
        NonSimplyConnectedBase: if the algebra has classes in degree 1
        InvalidModule: if the algebra has odd-degree classes
    """
    if a.ring is None or a.labels is None:
        raise RingMismatch("bar complex needs an algebra built from a polynomial ring (monomial labels missing)")
    if m_left.ring != a.ring or m_right.ring != a.ring:
        raise RingMismatch("modules and algebra live over different polynomial rings")
    if a.dims.get(1, 0):
        raise NonSimplyConnectedBase("base algebra has classes in degree 1")
    odd = [k for k in a.reduced_degrees() if k % 2]
    if odd:
        raise InvalidModule(f"base algebra must be evenly graded, found classes in degree {odd[0]}")


def _compositions(total: int, parts: List[int], length: int) -> List[Tuple[int, ...]]:
    """Ordered tuples of `length` allowed part sizes summing to `total`."""
    if length == 0:
        return [()] if total == 0 else []
    result = []
    for part in parts:
        if part <= total:
            for rest in _compositions(total - part, parts, length - 1):
                result.append((part,) + rest)
    return result


def bar_complex(
    m_left: GradedModule,
    a: GradedAlgebra,
    m_right: GradedModule,
    bound: Optional[int] = None,
    workers: int = 1,
) -> ChainComplexBundle:
    """
    Bar complexes in every internal degree q <= bound.

    Raises:
        TruncationExceeded: if bound exceeds any truncation degree
    """
    check_bar_inputs(m_left, a, m_right)
    limit = min(m_left.truncation_degree, a.truncation_degree, m_right.truncation_degree)
    if bound is None:
        bound = limit
    if bound > limit:
        raise TruncationExceeded(f"bound {bound} beyond input truncation {limit}")

    reduced = [k for k in a.reduced_degrees() if k <= bound]

    @lru_cache(maxsize=None)
    def left_action(k: int, deg: int) -> RatMatrix:
        """M_k ⊗ A_deg -> M_{k+deg}, column x * dim A_deg + y."""
        width = a.dim(deg)
        entries = {}
        for y, label in enumerate(a.labels[deg]):
            for (i, x), v in module_action(m_left, label, k).dok().items():
                entries[(i, x * width + y)] = v
        return RatMatrix.from_dok(entries, (m_left.dim(k + deg), m_left.dim(k) * width))

    @lru_cache(maxsize=None)
    def right_action(deg: int, k: int) -> RatMatrix:
        """A_deg ⊗ N_k -> N_{k+deg}, column y * dim N_k + z."""
        width = m_right.dim(k)
        entries = {}
        for y, label in enumerate(a.labels[deg]):
            for (i, z), v in module_action(m_right, label, k).dok().items():
                entries[(i, y * width + z)] = v
        return RatMatrix.from_dok(entries, (m_right.dim(k + deg), a.dim(deg) * width))

    def block_dim(block: BarBlock) -> int:
        dim = m_left.dim(block[0]) * m_right.dim(block[-1])
        for deg in block[1:-1]:
            dim *= a.dim(deg)
        return dim

    def faces(block: BarBlock) -> List[Tuple[BarBlock, RatMatrix, int]]:
        k_left, middle, k_right = block[0], block[1:-1], block[-1]
        p = len(middle)
        dims = [a.dim(deg) for deg in middle]
        right_size = m_right.dim(k_right)
        result = []

        rest = right_size
        for d in dims[1:]:
            rest *= d
        result.append(
            ((k_left + middle[0],) + middle[1:] + (k_right,),
             kron(left_action(k_left, middle[0]), RatMatrix.identity(rest)), 1)
        )

        for i in range(1, p):
            before = m_left.dim(k_left)
            for d in dims[:i - 1]:
                before *= d
            after = right_size
            for d in dims[i + 1:]:
                after *= d
            merged = middle[i - 1] + middle[i]
            face = kron(RatMatrix.identity(before), kron(a.product(middle[i - 1], middle[i]), RatMatrix.identity(after)))
            result.append(((k_left,) + middle[:i - 1] + (merged,) + middle[i + 1:] + (k_right,), face, (-1) ** i))

        before = m_left.dim(k_left)
        for d in dims[:-1]:
            before *= d
        result.append(
            ((k_left,) + middle[:-1] + (k_right + middle[-1],),
             kron(RatMatrix.identity(before), right_action(middle[-1], k_right)), (-1) ** p)
        )
        return result

    def build_slice(q: int):
        offsets: Dict[int, Dict[BarBlock, int]] = {}
        sizes: Dict[int, int] = {}
        for p in range(q // 2 + 1):
            offsets[p] = {}
            offset = 0
            for used in range(2 * p, q + 1):
                for middle in _compositions(used, reduced, p):
                    for k_left in range(q - used + 1):
                        block = (k_left,) + middle + (q - used - k_left,)
                        dim = block_dim(block)
                        if dim:
                            offsets[p][block] = offset
                            offset += dim
            if offset:
                sizes[p] = offset

        differentials = {}
        for p in range(1, q // 2 + 1):
            if not sizes.get(p) or not sizes.get(p - 1):
                continue
            assembler = SparseAssembler(sizes[p - 1], sizes[p])
            for block, col in offsets[p].items():
                for target, matrix, sign in faces(block):
                    row = offsets[p - 1].get(target)
                    if row is not None:
                        assembler.add_block(row, col, matrix, sign)
            differentials[(p, q)] = assembler.build()
        logger.debug(f"bar: degree {q} chain dims {sizes}")
        return sizes, differentials

    # degree-q chains use only degrees <= q of each factor: exact up to the truncation, not truncation - 2·p_max
    slices = map_slices(build_slice, range(bound + 1), workers)
    return ChainComplexBundle(
        chain_dims={q: sizes for q, (sizes, _) in slices.items() if sizes},
        differentials={key: d for _, (_, ds) in slices.items() for key, d in ds.items()},
        trusted_q_bound=bound,
        method="bar",
    )


def bar_tor(
    m_left: GradedModule,
    a: GradedAlgebra,
    m_right: GradedModule,
    bound: Optional[int] = None,
    workers: int = 1,
) -> BigradedTor:
    """Tor^{q,A}_p(M, N) through the two-sided bar complex."""
    return bundle_homology(bar_complex(m_left, a, m_right, bound, workers), workers)
