"""
Koszul Complex

Tor^H_p(M, Q) over a polynomial ring H = Q[f_1..f_r] as the homology of
M ⊗ Λ(e_1..e_r), where e_i sits in homological degree 1 and internal
degree deg f_i, and

    d(x ⊗ e_S) = Σ_j (-1)^j f_{S[j]} x ⊗ e_{S minus S[j]}    (j counted from 0).
"""

from itertools import combinations
from typing import Dict, List, Optional, Tuple
import logging

from models.errors import TruncationExceeded
from models.graded import GradedModule
from models.matrix import SparseAssembler
from models.tor import BigradedTor, ChainComplexBundle
from .complexes import bundle_homology, map_slices

logger = logging.getLogger(__name__)


def _subsets_by_size(r: int) -> Dict[int, List[Tuple[int, ...]]]:
    return {p: list(combinations(range(r), p)) for p in range(r + 1)}


def koszul_complex(m: GradedModule, bound: Optional[int] = None, workers: int = 1) -> ChainComplexBundle:
    """
    Koszul complexes of m in every trusted internal degree.

    Trusted range: q <= bound - max generator degree, or nothing (-1) when the
    bound is below the largest generator degree.

    Raises:
        TruncationExceeded: if bound exceeds the truncation degree of m
    """
    if bound is None:
        bound = m.truncation_degree
    if bound > m.truncation_degree:
        raise TruncationExceeded(f"bound {bound} beyond module truncation {m.truncation_degree}")

    degrees = m.ring.generator_degrees
    trusted = max(bound - m.ring.max_degree, -1)
    subsets = _subsets_by_size(len(degrees))

    def subset_degree(S: Tuple[int, ...]) -> int:
        return sum(degrees[i] for i in S)

    def build_slice(q: int):
        offsets: Dict[int, Dict[Tuple[int, ...], int]] = {}
        sizes: Dict[int, int] = {}
        for p, family in subsets.items():
            offset = 0
            offsets[p] = {}
            for S in family:
                dim = m.dim(q - subset_degree(S))
                if dim:
                    offsets[p][S] = offset
                    offset += dim
            if offset:
                sizes[p] = offset

        differentials = {}
        for p in range(1, len(degrees) + 1):
            if not sizes.get(p) or not sizes.get(p - 1):
                continue
            assembler = SparseAssembler(sizes[p - 1], sizes[p])
            for S, col in offsets[p].items():
                k = q - subset_degree(S)
                for j, s in enumerate(S):
                    target = S[:j] + S[j + 1:]
                    row = offsets[p - 1].get(target)
                    if row is None:
                        continue
                    assembler.add_block(row, col, m.action(s, k), sign=(-1) ** j)
            differentials[(p, q)] = assembler.build()
        return sizes, differentials

    slices = map_slices(build_slice, range(trusted + 1), workers)
    chain_dims = {q: sizes for q, (sizes, _) in slices.items() if sizes}
    differentials = {key: d for _, (_, ds) in slices.items() for key, d in ds.items()}
    return ChainComplexBundle(
        chain_dims=chain_dims,
        differentials=differentials,
        trusted_q_bound=trusted,
        method="koszul",
    )


def koszul_tor(m: GradedModule, bound: Optional[int] = None, workers: int = 1) -> BigradedTor:
    """Tor^{q,H}_p(M, Q) through the Koszul complex."""
    bundle = koszul_complex(m, bound, workers)
    return bundle_homology(bundle, workers)
