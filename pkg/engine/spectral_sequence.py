"""
Spectral Sequence Engine

Pages of a finitely filtered cochain complex computed from explicit
subquotients:

    Z_r^{s,n} = F^s C^n ∩ d^{-1}(F^{s+r} C^{n+1})
    E_r^{s,n} = Z_r^{s,n} / (Z_{r-1}^{s+1,n} + d Z_{r-1}^{s-r+1,n-1})

with d_r induced by d. For a filtration of length L the page E_L is E_∞.
Also builds the bar-degree filtered complex of a two-sided bar
construction and the weight certificate for pure inputs.
"""

from typing import Dict, List, Optional, Tuple
import logging

from models.errors import ImpureInput, InvalidFiltration, PageIncoherence, WeightMixing
from models.graded import GradedAlgebra, GradedModule
from models.matrix import RatMatrix, SparseAssembler
from models.spectral import (
    DegenerationCertificate,
    FilteredComplex,
    Page,
    SpotConvention,
    WeightObligation,
)
from models.tor import BigradedTor
from .bar import bar_complex
from .linalg import column_basis, complement_basis, coordinates, homology_dim, in_span, preimage, rank, span_sum

logger = logging.getLogger(__name__)


def validate_filtered_complex(fc: FilteredComplex) -> None:
    """
    Raises:
        CompositionNotZero: if d∘d != 0
        InvalidFiltration: if the flags are not nested or not closed under d
    """
    for n in fc.degrees():
        homology_dim(fc.d(n - 1), fc.d(n))
    if fc.length:
        stored_bottom = fc.filtration[0]
        for n in fc.degrees():
            if rank(stored_bottom.get(n, RatMatrix.zeros(fc.dim(n), 0))) != fc.dim(n):
                raise InvalidFiltration(f"F^0 must be the whole complex (degree {n})")
    for s in range(1, fc.length + 1):
        for n in fc.degrees():
            inner, outer = fc.span(s, n), fc.span(s - 1, n)
            if inner.rows != fc.dim(n):
                raise InvalidFiltration(f"F^{s} in degree {n} has vectors of the wrong length")
            if not in_span(outer, inner):
                raise InvalidFiltration(f"F^{s} is not contained in F^{s - 1} in degree {n}")
            if not in_span(fc.span(s, n + 1), fc.d(n) @ inner):
                raise InvalidFiltration(f"F^{s} is not closed under the differential in degree {n}")
    if fc.length:
        stored_top = fc.filtration[fc.length]
        if any(not matrix.is_zero() for matrix in stored_top.values()):
            raise InvalidFiltration(f"F^{fc.length} must be zero")


def total_homology(fc: FilteredComplex) -> Dict[int, int]:
    return {n: homology_dim(fc.d(n - 1), fc.d(n)) for n in fc.degrees()}


class _Subquotients:
    """Memoized Z_r, denominators and representatives for one complex."""

    def __init__(self, fc: FilteredComplex):
        self.fc = fc
        self._spans: Dict[Tuple[int, int], RatMatrix] = {}
        self._z: Dict[Tuple[int, int, int], RatMatrix] = {}
        self._quotients: Dict[Tuple[int, int, int], Tuple[RatMatrix, RatMatrix]] = {}

    def span(self, s: int, n: int) -> RatMatrix:
        key = (max(s, 0), n) if s < self.fc.length else (self.fc.length, n)
        if key not in self._spans:
            self._spans[key] = column_basis(self.fc.span(*key))
        return self._spans[key]

    def z(self, r: int, s: int, n: int) -> RatMatrix:
        key = (r, s, n)
        if key not in self._z:
            F = self.span(s, n)
            inside = preimage(self.fc.d(n) @ F, self.span(s + r, n + 1))
            self._z[key] = column_basis(F @ inside)
        return self._z[key]

    def quotient(self, r: int, s: int, n: int) -> Tuple[RatMatrix, RatMatrix]:
        """(denominator basis, representatives) of E_r^{s,n}."""
        key = (r, s, n)
        if key not in self._quotients:
            boundaries = self.fc.d(n - 1) @ self.z(r - 1, s - r + 1, n - 1)
            denominator = span_sum(self.z(r - 1, s + 1, n), boundaries)
            representatives = complement_basis(denominator, self.z(r, s, n))
            self._quotients[key] = (denominator, representatives)
        return self._quotients[key]


def _page(sub: _Subquotients, r: int) -> Page:
    fc = sub.fc
    dims = {}
    differentials = {}
    for s in range(fc.length):
        for n in fc.degrees():
            _, reps = sub.quotient(r, s, n)
            if reps.cols:
                dims[(s, n - s)] = reps.cols
    for (s, t), dim in dims.items():
        n = s + t
        target = (s + r, t - r + 1)
        if target not in dims:
            continue
        _, reps = sub.quotient(r, s, n)
        denominator, target_reps = sub.quotient(r, s + r, n + 1)
        images = fc.d(n) @ reps
        coords = coordinates(RatMatrix.hstack([denominator, target_reps]), images)
        matrix = coords.select_rows(range(denominator.cols, denominator.cols + target_reps.cols))
        differentials[(s, t)] = matrix
    return Page(r=r, dims=dims, differentials=differentials, convention=fc.convention, bar_length=fc.bar_length)


def _check_weights(fc: FilteredComplex, page: Page) -> None:
    if fc.spot_weights is None:
        return
    for (s, t), matrix in page.differentials.items():
        if matrix.is_zero():
            continue
        n = s + t
        source = fc.spot_weights.get((s, n))
        target = fc.spot_weights.get((s + page.r, n + 1))
        if source != target:
            raise WeightMixing(
                f"d_{page.r} from {page.label(s, t)} (weight {source}) to "
                f"{page.label(s + page.r, t - page.r + 1)} (weight {target}) is nonzero"
            )


def _check_coherence(previous: Page, current: Page) -> None:
    r = previous.r
    spots = set(previous.dims) | set(current.dims)
    for (s, t) in spots:
        incoming = previous.differentials.get((s - r, t + r - 1))
        outgoing = previous.differentials.get((s, t))
        dim = previous.dim(s, t)
        if incoming is None:
            incoming = RatMatrix.zeros(dim, previous.dim(s - r, t + r - 1))
        if outgoing is None:
            outgoing = RatMatrix.zeros(previous.dim(s + r, t - r + 1), dim)
        expected = homology_dim(incoming, outgoing)
        if expected != current.dim(s, t):
            raise PageIncoherence(
                f"E_{r + 1} at {current.label(s, t)} has dim {current.dim(s, t)}, homology of E_{r} gives {expected}"
            )


def pages(fc: FilteredComplex, validate: bool = True) -> List[Page]:
    """
    Pages E_1, E_2, ... up to the first page from which every differential
    vanishes; the last page returned is E_∞.

    Raises:
        InvalidFiltration: if fc is not a filtered complex
        CompositionNotZero: if some d_r∘d_r != 0
        PageIncoherence: if a page is not the homology of its predecessor,
            or E_∞ does not add up to the total homology
        WeightMixing: if spot weights are given and some d_r joins distinct weights
    """
    if validate:
        validate_filtered_complex(fc)
    sub = _Subquotients(fc)
    computed: List[Page] = []
    for r in range(1, max(fc.length, 1) + 1):
        page = _page(sub, r)
        _check_weights(fc, page)
        if computed:
            _check_coherence(computed[-1], page)
        computed.append(page)
        logger.debug(f"E_{r}: {len(page.dims)} nonzero spots, {page.differentials_nonzero} nonzero differentials")

    stable = len(computed)
    while stable > 1 and computed[stable - 2].differentials_nonzero == 0:
        stable -= 1
    result = computed[:stable]

    homology = total_homology(fc)
    limit = result[-1].total_degree_dims()
    for n in set(homology) | set(limit):
        if homology.get(n, 0) != limit.get(n, 0):
            raise PageIncoherence(f"E_∞ has dim {limit.get(n, 0)} in total degree {n}, H^{n} has {homology.get(n, 0)}")
    logger.info(f"Spectral sequence stabilized at E_{result[-1].r}")
    return result


def page_as_tor(page: Page, trusted_q_bound: int) -> BigradedTor:
    """Read an Eilenberg-Moore page as a (p, q) table."""
    return BigradedTor(
        dims={(p, q): dim for p, q, dim in page.entries()},
        trusted_q_bound=trusted_q_bound,
        method=f"E_{page.r}",
    )


def em_filtered_complex(
    m_left: GradedModule,
    a: GradedAlgebra,
    m_right: GradedModule,
    bound: Optional[int] = None,
    pure: bool = False,
    workers: int = 1,
) -> FilteredComplex:
    """
    Total complex of the two-sided bar construction in total degree
    n = q - p, filtered by bar degree: F^s is spanned by bar degrees
    p <= P - s where P = bound // 2.

    When `pure` is set, the spot of bar degree p and internal degree q is
    tagged with weight q.
    """
    bundle = bar_complex(m_left, a, m_right, bound, workers)
    bound = bundle.trusted_q_bound
    P = bound // 2

    layout: Dict[int, List[Tuple[int, int, int]]] = {}  # n -> [(p, q, offset)]
    dims: Dict[int, int] = {}
    for q in bundle.degrees():
        for p, dim in sorted(bundle.chain_dims[q].items()):
            n = q - p
            offset = dims.get(n, 0)
            layout.setdefault(n, []).append((p, q, offset))
            dims[n] = offset + dim

    differentials = {}
    for n, blocks in layout.items():
        if n + 1 not in layout:
            continue
        targets = {(p, q): offset for p, q, offset in layout[n + 1]}
        assembler = SparseAssembler(dims[n + 1], dims[n])
        for p, q, offset in blocks:
            row = targets.get((p - 1, q))
            if row is not None:
                assembler.add_block(row, offset, bundle.differential(p, q))
        differentials[n] = assembler.build()

    filtration = []
    for s in range(P + 2):
        level = {}
        for n, blocks in layout.items():
            columns = []
            for p, q, offset in blocks:
                if p <= P - s:
                    columns.extend(range(offset, offset + bundle.chain_dim(p, q)))
            level[n] = RatMatrix.identity(dims[n]).select_columns(columns)
        filtration.append(level)

    spot_weights = None
    if pure:
        spot_weights = {(P - p, q - p): q for q in bundle.degrees() for p in bundle.chain_dims[q]}

    return FilteredComplex(
        dims=dims,
        differentials=differentials,
        filtration=filtration,
        spot_weights=spot_weights,
        convention=SpotConvention.EILENBERG_MOORE,
        bar_length=P,
        name="bar-degree filtration",
    )


def degeneration_certificate(t: BigradedTor, purity_flags: Dict[str, bool]) -> DegenerationCertificate:
    """
    Weight ledger for d_r: E_r^{-p,q} -> E_r^{-p+r,q-r+1}, r >= 2.

    With H, M and N pure, the spot (p, q) is pure of weight q, so every
    d_r with r >= 2 joins weight q to weight q - r + 1 and must vanish.

    Raises:
        ImpureInput: if some purity flag is false
    """
    impure = sorted(name for name, flag in purity_flags.items() if not flag)
    if impure:
        raise ImpureInput(f"certificate needs pure inputs; impure: {', '.join(impure)}")
    obligations = []
    for p, q, _ in t.entries():
        for r in range(2, p + 1):
            target = (p - r, q - r + 1)
            if t.dim(*target):
                obligations.append(
                    WeightObligation(r=r, source=(p, q), target=target, source_weight=q, target_weight=q - r + 1)
                )
    return DegenerationCertificate(
        obligations=obligations,
        trusted_q_bound=t.trusted_q_bound,
        purity_flags=dict(purity_flags),
    )
