"""
Free Resolutions by Iterated Covers

M_0 = M; Q_p is a free module mapping onto M_p; M_{p+1} is the kernel.
The cover is either the full one (free on a basis of M_p) or the minimal one
(free on a complement of the decomposables H⁺M_p). Tor against a second
module N is then the homology of Q_• ⊗_H N ≅ ⊕_g N[-deg g].
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple
import logging

from pydantic import BaseModel, ConfigDict, Field

from models.errors import RingMismatch, TruncationExceeded, VanishingViolation
from models.graded import Exponent, GradedModule, PolynomialRingData
from models.matrix import RatMatrix, SparseAssembler
from models.tor import BigradedTor, ChainComplexBundle
from .complexes import bundle_homology, map_slices
from .linalg import complement_basis, coordinates, kernel_matrix
from .modules import free_module, free_module_basis, module_action

logger = logging.getLogger(__name__)


class CoverKind(str, Enum):
    """How each free cover Q_p -> M_p is chosen."""
    MINIMAL = "minimal"
    FULL = "full"


class ResolutionStep(BaseModel):
    """Q_p with its generators, the module M_p it covers, and M_p ⊂ Q_{p-1}."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    p: int
    generator_degrees: List[int]
    generator_vectors: List[RatMatrix] = Field(..., description="Images of the generators, in M_p coordinates")
    module: GradedModule
    inclusion: Optional[Dict[int, RatMatrix]] = Field(
        default=None, description="Basis of M_p as columns in Q_{p-1} coordinates, per degree"
    )

    @property
    def rank(self) -> int:
        return len(self.generator_degrees)


class FreeResolution(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    ring: PolynomialRingData
    truncation_degree: int
    cover: CoverKind
    steps: List[ResolutionStep] = Field(default_factory=list)
    terminated: bool = False
    trusted_q_bound: int

    @property
    def length(self) -> int:
        return len(self.steps)

    def free_ranks(self) -> List[List[int]]:
        return [step.generator_degrees for step in self.steps]

    def boundary_terms(self, p: int) -> List[List[Tuple[int, Exponent, object]]]:
        """
        For each generator g of Q_p (p >= 1), its boundary in Q_{p-1} as
        (generator j of Q_{p-1}, monomial, coefficient) triples.
        """
        step, previous = self.steps[p], self.steps[p - 1]
        result = []
        for degree, vector in zip(step.generator_degrees, step.generator_vectors):
            image = step.inclusion[degree] @ vector
            basis = free_module_basis(self.ring, previous.generator_degrees, degree)
            result.append([(basis[i][0], basis[i][1], v) for (i, _), v in sorted(image.dok().items())])
        return result


def _cover_generators(M: GradedModule, cover: CoverKind) -> List[Tuple[int, RatMatrix]]:
    generators = []
    degrees = M.ring.generator_degrees
    for k in range(M.truncation_degree + 1):
        dim = M.dim(k)
        if not dim:
            continue
        if cover == CoverKind.FULL:
            chosen = RatMatrix.identity(dim)
        else:
            images = [M.action(i, k - d) for i, d in enumerate(degrees) if k - d >= 0 and M.dim(k - d)]
            decomposable = RatMatrix.hstack(images) if images else RatMatrix.zeros(dim, 0)
            chosen = complement_basis(decomposable)
        generators.extend((k, column) for column in chosen.columns())
    return generators


def smith_resolution(m: GradedModule, steps: int, cover: CoverKind = CoverKind.MINIMAL) -> FreeResolution:
    """
    Free resolution Q_0 <- Q_1 <- ... <- Q_steps of m, truncated at its
    truncation degree D.

    Trusted range: q <= min(D, 2 * steps + 1), or all of D when the
    resolution terminates.

    Raises:
        TruncationExceeded: if 2 * steps > D
        VanishingViolation: if some M_p is nonzero below degree 2p
    """
    cover = CoverKind(cover)
    D = m.truncation_degree
    if 2 * steps > D:
        raise TruncationExceeded(f"{steps} resolution steps need truncation at least {2 * steps}, have {D}")

    ring = m.ring
    resolution_steps: List[ResolutionStep] = []
    M, inclusion = m, None
    terminated = False

    for p in range(steps + 1):
        low = M.lowest_degree()
        if low is None:
            terminated = True
            break
        if low < 2 * p:
            raise VanishingViolation(f"M_{p} is nonzero in degree {low} < {2 * p}")

        generators = _cover_generators(M, cover)
        generator_degrees = [k for k, _ in generators]
        Q = free_module(ring, generator_degrees, D, name=f"Q_{p}")
        resolution_steps.append(
            ResolutionStep(
                p=p,
                generator_degrees=generator_degrees,
                generator_vectors=[v for _, v in generators],
                module=M,
                inclusion=inclusion,
            )
        )
        logger.debug(f"Q_{p}: generators in degrees {generator_degrees}")

        # augmentation Q_p -> M_p and its kernel, degree by degree
        kernels = {}
        for k in range(D + 1):
            columns = []
            for g, exponent in free_module_basis(ring, generator_degrees, k):
                degree, vector = generators[g]
                columns.append(module_action(M, exponent, degree) @ vector)
            augmentation = RatMatrix.hstack(columns) if columns else RatMatrix.zeros(M.dim(k), 0)
            kernels[k] = kernel_matrix(augmentation)

        if all(K.cols == 0 for K in kernels.values()):
            terminated = True
            break
        if p == steps:
            break

        actions = []
        for i, d in enumerate(ring.generator_degrees):
            family = {}
            for k in range(D - d + 1):
                family[k] = coordinates(kernels[k + d], Q.action(i, k) @ kernels[k])
            actions.append(family)
        M = GradedModule(
            ring=ring,
            truncation_degree=D,
            dims={k: K.cols for k, K in kernels.items() if K.cols},
            actions=actions,
            name=f"M_{p + 1}",
        )
        inclusion = kernels

    # step p is generated in degree >= 2p, so an unterminated tower is exact through 2·steps + 1, not truncation - 2·p_max
    trusted = D if terminated else min(D, 2 * steps + 1)
    logger.info(f"Resolution with {len(resolution_steps)} free modules, trusted up to degree {trusted}")
    return FreeResolution(
        ring=ring,
        truncation_degree=D,
        cover=cover,
        steps=resolution_steps,
        terminated=terminated,
        trusted_q_bound=trusted,
    )


def resolution_complex(res: FreeResolution, n: GradedModule, workers: int = 1) -> ChainComplexBundle:
    """
    Q_• ⊗_H N in every trusted internal degree.

    Raises:
        RingMismatch: if n lives over another ring
    """
    if n.ring != res.ring:
        raise RingMismatch("second Tor argument lives over a different ring than the resolution")
    bound = min(res.trusted_q_bound, n.truncation_degree)
    boundaries = {p: res.boundary_terms(p) for p in range(1, res.length)}

    def build_slice(q: int):
        offsets: Dict[int, List[Optional[int]]] = {}
        sizes: Dict[int, int] = {}
        for step in res.steps:
            offset = 0
            offsets[step.p] = []
            for degree in step.generator_degrees:
                dim = n.dim(q - degree)
                offsets[step.p].append(offset if dim else None)
                offset += dim
            if offset:
                sizes[step.p] = offset

        differentials = {}
        for p in range(1, res.length):
            if not sizes.get(p) or not sizes.get(p - 1):
                continue
            assembler = SparseAssembler(sizes[p - 1], sizes[p])
            for g, degree in enumerate(res.steps[p].generator_degrees):
                col = offsets[p][g]
                if col is None:
                    continue
                for j, exponent, coefficient in boundaries[p][g]:
                    row = offsets[p - 1][j]
                    if row is None:
                        continue
                    block = module_action(n, exponent, q - degree).scaled(coefficient)
                    assembler.add_block(row, col, block)
            differentials[(p, q)] = assembler.build()
        return sizes, differentials

    slices = map_slices(build_slice, range(bound + 1), workers)
    return ChainComplexBundle(
        chain_dims={q: sizes for q, (sizes, _) in slices.items() if sizes},
        differentials={key: d for _, (_, ds) in slices.items() for key, d in ds.items()},
        trusted_q_bound=bound,
        method=f"smith-{res.cover.value}",
    )


def tor_from_resolution(res: FreeResolution, n: GradedModule, workers: int = 1) -> BigradedTor:
    """Tor^{q,H}_p(M, N) as the homology of res ⊗_H n."""
    return bundle_homology(resolution_complex(res, n, workers), workers)
