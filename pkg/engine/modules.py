"""
Module Constructors

Builders for the graded modules and algebras fed into the Tor engines:
free and trivial modules, quotients of polynomial rings acting through
polynomial images, shifts, direct sums, truncations, and polynomial algebras
with monomial labels.
"""

from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union
import logging

from models.errors import InvalidModule, RingMismatch, TruncationExceeded
from models.graded import (
    Exponent,
    GradedAlgebra,
    GradedModule,
    GradedVectorSpace,
    PolynomialRingData,
    monomials_of_degree,
)
from models.matrix import RatMatrix, Scalar, to_qq
from .linalg import block_diagonal

logger = logging.getLogger(__name__)

Graded = Union[GradedVectorSpace, GradedModule, GradedAlgebra, PolynomialRingData]


def poincare_series(v: Graded, up_to: int) -> List[int]:
    """
    Coefficients of t^0 .. t^up_to.

    Raises:
        TruncationExceeded: if up_to is beyond the truncation degree of v
    """
    bound = getattr(v, "truncation_degree", None)
    if bound is not None and up_to > bound:
        raise TruncationExceeded(f"series requested up to {up_to}, data truncated at {bound}")
    return [v.dim(k) for k in range(up_to + 1)]


def free_module_basis(
    ring: PolynomialRingData, generator_degrees: Sequence[int], k: int
) -> List[Tuple[int, Exponent]]:
    """Basis of degree k: (module generator index, ring monomial) pairs."""
    basis = []
    for g, degree in enumerate(generator_degrees):
        for exponent in ring.monomials(k - degree):
            basis.append((g, exponent))
    return basis


def free_module(
    ring: PolynomialRingData, generator_degrees: Sequence[int], D: int, name: Optional[str] = None
) -> GradedModule:
    """Free module on generators of the given degrees, truncated at D."""
    if any(d < 0 for d in generator_degrees):
        raise InvalidModule("module generator degrees must be nonnegative")
    bases = {k: free_module_basis(ring, generator_degrees, k) for k in range(D + 1)}
    index = {k: {b: n for n, b in enumerate(basis)} for k, basis in bases.items()}
    actions = []
    for i, d in enumerate(ring.generator_degrees):
        family = {}
        for k in range(D - d + 1):
            entries = {}
            for col, (g, exponent) in enumerate(bases[k]):
                raised = tuple(e + (1 if j == i else 0) for j, e in enumerate(exponent))
                entries[(index[k + d][(g, raised)], col)] = 1
            family[k] = RatMatrix.from_dok(entries, (len(bases[k + d]), len(bases[k])))
        actions.append(family)
    return GradedModule(
        ring=ring,
        truncation_degree=D,
        dims={k: len(b) for k, b in bases.items() if b},
        actions=actions,
        name=name or f"free{list(generator_degrees)}",
    )


def trivial_module(ring: PolynomialRingData, D: int) -> GradedModule:
    """The residue field: one dimension in degree 0, every generator acting by zero."""
    actions = [
        {k: RatMatrix.zeros(1 if k + d == 0 else 0, 1 if k == 0 else 0) for k in range(D - d + 1)}
        for d in ring.generator_degrees
    ]
    return GradedModule(ring=ring, truncation_degree=D, dims={0: 1}, actions=actions, name="trivial")


def module_action(m: GradedModule, exponent: Exponent, k: int) -> RatMatrix:
    """Matrix of the monomial x^exponent from degree k to degree k + deg."""
    matrix = RatMatrix.identity(m.dim(k))
    degree = k
    for i, e in enumerate(exponent):
        for _ in range(e):
            matrix = m.action(i, degree) @ matrix
            degree += m.ring.generator_degrees[i]
    return matrix


def polynomial_action_module(
    ring: PolynomialRingData,
    variable_count: int,
    images: Sequence[Dict[Exponent, Scalar]],
    D: int,
    allowed: Optional[Callable[[Exponent], bool]] = None,
    name: Optional[str] = None,
) -> GradedModule:
    """
    Quotient of Q[x_1..x_m] (every x in degree 2) by the monomials outside
    `allowed`, with ring generator j acting by multiplication with images[j].

    `allowed` must be closed under taking divisors; the default keeps every
    monomial. images[j] maps exponent vectors in the x variables to
    coefficients and must be homogeneous of degree deg t_j.
    """
    if len(images) != ring.rank:
        raise InvalidModule(f"expected {ring.rank} images, got {len(images)}")
    x_degrees = (2,) * variable_count
    for j, (d, image) in enumerate(zip(ring.generator_degrees, images)):
        for exponent in image:
            if len(exponent) != variable_count or 2 * sum(exponent) != d:
                raise InvalidModule(f"image of generator {j} is not homogeneous of degree {d}")

    keep = allowed or (lambda exponent: True)
    bases = {k: [b for b in monomials_of_degree(x_degrees, k) if keep(b)] for k in range(D + 1)}
    index = {k: {b: n for n, b in enumerate(basis)} for k, basis in bases.items()}

    actions = []
    for d, image in zip(ring.generator_degrees, images):
        terms = [(exponent, to_qq(c)) for exponent, c in image.items()]
        family = {}
        for k in range(D - d + 1):
            entries = {}
            for col, b in enumerate(bases[k]):
                for exponent, c in terms:
                    row = index[k + d].get(tuple(x + y for x, y in zip(exponent, b)))
                    if row is not None and c:
                        entries[(row, col)] = entries.get((row, col), 0) + c
            family[k] = RatMatrix.from_dok(entries, (len(bases[k + d]), len(bases[k])))
        actions.append(family)

    logger.debug(f"Built quotient module on {variable_count} variables up to degree {D}")
    return GradedModule(
        ring=ring,
        truncation_degree=D,
        dims={k: len(b) for k, b in bases.items() if b},
        actions=actions,
        name=name,
    )


def shift_module(m: GradedModule, s: int) -> GradedModule:
    """Degree shift M[-s]: the degree-k piece moves to degree k + s."""
    if s < 0:
        raise InvalidModule("only nonnegative shifts keep modules in nonnegative degrees")
    D = m.truncation_degree + s
    actions = [
        {k + s: m.action(i, k) for k in range(m.truncation_degree - d + 1)}
        for i, d in enumerate(m.ring.generator_degrees)
    ]
    return GradedModule(
        ring=m.ring,
        truncation_degree=D,
        dims={k + s: v for k, v in m.dims.items() if v},
        actions=actions,
        name=f"{m.name or 'module'}[{s}]",
    )


def direct_sum(m1: GradedModule, m2: GradedModule) -> GradedModule:
    if m1.ring != m2.ring:
        raise RingMismatch("direct sum of modules over different rings")
    D = min(m1.truncation_degree, m2.truncation_degree)
    actions = [
        {k: block_diagonal([m1.action(i, k), m2.action(i, k)]) for k in range(D - d + 1)}
        for i, d in enumerate(m1.ring.generator_degrees)
    ]
    dims = {k: m1.dim(k) + m2.dim(k) for k in range(D + 1)}
    return GradedModule(
        ring=m1.ring,
        truncation_degree=D,
        dims={k: v for k, v in dims.items() if v},
        actions=actions,
        name=f"{m1.name or 'module'}+{m2.name or 'module'}",
    )


def truncate(m: GradedModule, D: int) -> GradedModule:
    if D > m.truncation_degree:
        raise TruncationExceeded(f"cannot extend truncation from {m.truncation_degree} to {D}")
    actions = [
        {k: m.action(i, k) for k in range(D - d + 1)}
        for i, d in enumerate(m.ring.generator_degrees)
    ]
    return GradedModule(
        ring=m.ring,
        truncation_degree=D,
        dims={k: v for k, v in m.dims.items() if k <= D and v},
        actions=actions,
        name=m.name,
    )


def polynomial_algebra(ring: PolynomialRingData, D: int) -> GradedAlgebra:
    """The ring itself as a graded algebra, basis vectors labelled by monomials."""
    labels = {k: list(ring.monomials(k)) for k in range(D + 1)}
    index = {k: {a: n for n, a in enumerate(basis)} for k, basis in labels.items()}
    products = {}
    for i in range(D + 1):
        for j in range(D - i + 1):
            if not labels[i] or not labels[j]:
                continue
            width = len(labels[j])
            entries = {}
            for a_index, a in enumerate(labels[i]):
                for b_index, b in enumerate(labels[j]):
                    target = tuple(x + y for x, y in zip(a, b))
                    entries[(index[i + j][target], a_index * width + b_index)] = 1
            products[(i, j)] = RatMatrix.from_dok(entries, (len(labels[i + j]), len(labels[i]) * width))
    return GradedAlgebra(
        dims={k: len(b) for k, b in labels.items() if b},
        truncation_degree=D,
        products=products,
        ring=ring,
        labels={k: b for k, b in labels.items() if b},
    )
