"""
Cohomology Assembly

Reads off H^n = ⊕_{q-p=n} Tor_p^{q} with its weight filtration: the piece
Tor_p^{q} lands in degree n = q - p with weight q, so
W_ν H^n = ⊕_{q-p=n, q<=ν} Tor_p^{q}.
"""

from typing import Dict, List, Optional, Tuple
import logging

from pydantic import BaseModel

from models.errors import TruncationExceeded
from models.graded import WeightedGradedVectorSpace
from models.tor import BigradedTor

logger = logging.getLogger(__name__)


class PurityReport(BaseModel):
    is_pure: bool
    first_violation: Optional[Tuple[int, int]] = None


def assemble_cohomology(t: BigradedTor) -> WeightedGradedVectorSpace:
    """
    Weighted cohomology from a trusted Tor table.

    Every Tor entry feeding H^n has q <= 2n, so degrees n <= trusted // 2
    are complete and nothing beyond them is reported.

    Raises:
        TruncationExceeded: if the table trusts no internal degree at all
    """
    if t.trusted_q_bound < 0:
        raise TruncationExceeded(
            f"{t.method} table trusts no internal degree; raise the truncation degree D"
        )
    degree_bound = t.trusted_q_bound // 2
    entries: Dict[Tuple[int, int], int] = {}
    for p, q, dim in t.entries():
        n = q - p
        if q <= t.trusted_q_bound and n <= degree_bound:
            entries[(n, q)] = entries.get((n, q), 0) + dim
    return WeightedGradedVectorSpace(
        entries=entries,
        degree_bound=degree_bound,
        metadata={"method": t.method, "trusted_q": t.trusted_q_bound},
    )


def purity_check(w: WeightedGradedVectorSpace) -> PurityReport:
    """Pure iff every nonzero piece has weight equal to its degree."""
    for n, weight, _ in w.sorted_entries():
        if weight != n:
            return PurityReport(is_pure=False, first_violation=(n, weight))
    return PurityReport(is_pure=True)


def weight_filtration(w: WeightedGradedVectorSpace, n: int, weight: int) -> int:
    """dim W_weight H^n."""
    return sum(dim for w_, dim in w.weights(n).items() if w_ <= weight)


def betti_numbers(w: WeightedGradedVectorSpace) -> List[int]:
    return [w.betti(n) for n in range(w.degree_bound + 1)]
