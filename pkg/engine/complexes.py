"""
Chain Complex Homology

Turns a ChainComplexBundle into a BigradedTor. Internal degrees are
independent slices and may be evaluated on a thread pool; results are
collected by degree, so the output does not depend on scheduling.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, TypeVar
import logging

from models.tor import BigradedTor, ChainComplexBundle
from .linalg import homology_dim

logger = logging.getLogger(__name__)

T = TypeVar("T")


def map_slices(fn: Callable[[int], T], degrees: Iterable[int], workers: int = 1) -> Dict[int, T]:
    """Evaluate fn on every internal degree, optionally in parallel."""
    degrees = list(degrees)
    if workers <= 1 or len(degrees) <= 1:
        return {q: fn(q) for q in degrees}
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(fn, degrees))
    return dict(zip(degrees, results))


def slice_homology(bundle: ChainComplexBundle, q: int) -> Dict[int, int]:
    """Homology dims H_p of the degree-q complex, for every p carrying chains."""
    result = {}
    for p in sorted(bundle.chain_dims.get(q, {})):
        dim = homology_dim(bundle.differential(p + 1, q), bundle.differential(p, q))
        if dim:
            result[p] = dim
    logger.debug(f"{bundle.method}: degree {q} homology {result}")
    return result


def bundle_homology(bundle: ChainComplexBundle, workers: int = 1) -> BigradedTor:
    """
    Raises:
        CompositionNotZero: if some d∘d is nonzero
        VanishingViolation: if the result is nonzero below q = 2p
    """
    slices = map_slices(lambda q: slice_homology(bundle, q), bundle.degrees(), workers)
    dims = {(p, q): dim for q, row in slices.items() for p, dim in row.items()}
    table = BigradedTor(dims=dims, trusted_q_bound=bundle.trusted_q_bound, method=bundle.method)
    table.check_vanishing()
    logger.info(f"{bundle.method}: computed Tor up to internal degree {bundle.trusted_q_bound}")
    return table


def euler_check(bundle: ChainComplexBundle, table: BigradedTor) -> List[int]:
    """Internal degrees where the homology and chain Euler characteristics differ."""
    chains = bundle.euler_characteristics()
    homology = table.euler_characteristics()
    return [q for q in bundle.degrees() if q <= table.trusted_q_bound and chains[q] != homology.get(q, 0)]
