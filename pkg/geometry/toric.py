"""
Toric Front-End

Fans in, graded modules and weighted cohomology out. The Stanley-Reisner
module of a simplicial fan has one degree-2 variable x_i per ray, keeps the
monomials supported on a cone, and lets t_j in H*(BT) act by
Σ_i (v_i)_j x_i.
"""

from collections import deque
from itertools import combinations, product
from math import comb, gcd
from typing import Dict, List, Optional
import logging

from pydantic import BaseModel, Field
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.solvers.simplex import InfeasibleLPError, linprog

from engine.assembly import assemble_cohomology, betti_numbers, purity_check
from engine.koszul import koszul_tor
from engine.linalg import rank
from engine.modules import polynomial_action_module
from models.errors import NonSimplicial, ValidationFailure
from models.fan import Fan
from models.graded import GradedModule, PolynomialRingData, WeightedGradedVectorSpace
from models.matrix import RatMatrix
from models.strata import OrbitRecord, OrbitStratification
from .groups import catalog_lookup, classifying_series

logger = logging.getLogger(__name__)


# -- validation -------------------------------------------------------------

def _ray_columns(f: Fan, cone: List[int]) -> RatMatrix:
    return RatMatrix.from_rows([[f.rays[i][j] for i in cone] for j in range(f.rank)], cols=len(cone))


def ensure_simplicial(f: Fan) -> None:
    """
    Raises:
        NonSimplicial: if some maximal cone has linearly dependent rays
    """
    for cone in f.max_cones:
        if cone and rank(_ray_columns(f, cone)) != len(cone):
            raise NonSimplicial(f"cone {cone} of fan {f.name or ''} has linearly dependent rays")


def _overlap_outside_shared_face(f: Fan, sigma: List[int], tau: List[int]) -> Optional[List]:
    """
    A point of sigma ∩ tau off the cone on their shared rays, as coefficients
    (a over sigma, b over tau) with Σ a_s v_s = Σ b_t v_t, or None.
    """
    shared = set(sigma) & set(tau)
    outside = [1 if i not in shared else 0 for i in sigma] + [1 if i not in shared else 0 for i in tau]
    if not any(outside):
        return None
    columns = [list(f.rays[i]) for i in sigma] + [[-x for x in f.rays[i]] for i in tau]
    rows = [[column[j] for column in columns] for j in range(f.rank)] + [outside]
    rhs = [0] * f.rank + [1]
    # equalities as paired inequalities
    A = rows + [[-x for x in row] for row in rows]
    b = rhs + [-x for x in rhs]
    try:
        _, point = linprog([0] * len(columns), A, b)
    except InfeasibleLPError:
        return None
    return list(point)


def check_face_closure(f: Fan) -> None:
    """
    Two maximal cones must meet in a common face. For simplicial cones that
    face is the cone on their shared rays, so the check is an exact linear
    program: no nonnegative combination of one cone's rays may equal one of
    the other's unless both use shared rays only.

    Raises:
        ValidationFailure: if two maximal cones overlap outside a common face
    """
    for sigma, tau in combinations(f.max_cones, 2):
        point = _overlap_outside_shared_face(f, sigma, tau)
        if point is not None:
            a = point[: len(sigma)]
            witness = [sum(c * f.rays[i][j] for c, i in zip(a, sigma)) for j in range(f.rank)]
            raise ValidationFailure(
                f"cones {sigma} and {tau} overlap outside a common face, e.g. at {[str(x) for x in witness]}"
            )


def validate_fan(f: Fan) -> Fan:
    ensure_simplicial(f)
    check_face_closure(f)
    return f


# -- predicates -------------------------------------------------------------

def _minor_gcd(rows: List[List[int]]) -> int:
    k = len(rows)
    n = len(rows[0]) if rows else 0
    divisor = 0
    for columns in combinations(range(n), k):
        block = [[ZZ(row[c]) for c in columns] for row in rows]
        divisor = gcd(divisor, int(DomainMatrix(block, (k, k), ZZ).det()))
    return abs(divisor)


def is_smooth(f: Fan) -> bool:
    """Every maximal cone's rays extend to a lattice basis (gcd of maximal minors is 1)."""
    validate_fan(f)
    for cone in f.max_cones:
        if cone and _minor_gcd([f.rays[i] for i in cone]) != 1:
            return False
    return True


def is_complete(f: Fan) -> bool:
    """
    Support is all of R^n, tested as: every maximal cone full-dimensional,
    every facet shared by exactly two maximal cones, and the maximal cones
    connected through shared facets.
    """
    validate_fan(f)
    n = f.rank
    if any(len(cone) != n for cone in f.max_cones):
        return False
    if n == 0:
        return True
    owners: Dict[frozenset, List[int]] = {}
    for index, cone in enumerate(f.max_cones):
        for facet in combinations(cone, n - 1):
            owners.setdefault(frozenset(facet), []).append(index)
    if any(len(shared) != 2 for shared in owners.values()):
        return False
    neighbours: Dict[int, List[int]] = {i: [] for i in range(len(f.max_cones))}
    for a, b in owners.values():
        neighbours[a].append(b)
        neighbours[b].append(a)
    seen = {0}
    queue = deque([0])
    while queue:
        for other in neighbours[queue.popleft()]:
            if other not in seen:
                seen.add(other)
                queue.append(other)
    return len(seen) == len(f.max_cones)


# -- modules and cohomology -------------------------------------------------

def stanley_reisner_module(f: Fan, D: int) -> GradedModule:
    """Stanley-Reisner ring of f as a module over Q[t_1..t_n], truncated at D."""
    validate_fan(f)
    ring = PolynomialRingData(generator_degrees=[2] * f.rank)
    m = len(f.rays)
    images = []
    for j in range(f.rank):
        image = {}
        for i, ray in enumerate(f.rays):
            if ray[j]:
                image[tuple(1 if k == i else 0 for k in range(m))] = ray[j]
        images.append(image)

    def supported(exponent) -> bool:
        return f.is_cone_supported(frozenset(i for i, e in enumerate(exponent) if e))

    return polynomial_action_module(ring, m, images, D, allowed=supported, name=f"SR({f.name or 'fan'})")


def h_vector(f: Fan) -> List[int]:
    """h_k = Σ_i (-1)^{k-i} C(n-i, k-i) f_i, with f_i the number of i-dimensional cones."""
    validate_fan(f)
    n = f.rank
    faces = f.f_vector()
    return [
        sum((-1) ** (k - i) * comb(n - i, k - i) * faces[i] for i in range(k + 1))
        for k in range(n + 1)
    ]


def required_degree(f: Fan) -> int:
    """Truncation needed for every Betti number up to 2n to be trusted."""
    return 4 * f.rank + 2


def toric_cohomology(f: Fan, D: int, workers: int = 1) -> WeightedGradedVectorSpace:
    """Stanley-Reisner module -> Koszul Tor -> weighted cohomology."""
    if not is_smooth(f):
        logger.warning(f"Fan {f.name or ''} is not smooth; cohomology of the quotient variety is only heuristic")
    module = stanley_reisner_module(f, D)
    table = koszul_tor(module, D, workers)
    cohomology = assemble_cohomology(table)
    cohomology.metadata.update({"fan": f.name, "tor": table.to_json()})
    return cohomology


def fan_orbit_stratification(f: Fan, D: int) -> OrbitStratification:
    """One torus orbit per cone: codimension dim σ, stabilizer a torus of rank dim σ."""
    if not is_smooth(f):
        logger.warning(f"Fan {f.name or ''} is not smooth; stabilizers are only tori up to finite groups")
    orbits = []
    for cone in f.cones():
        spec = f"torus:{len(cone)}"
        orbits.append(
            OrbitRecord(
                label=f"O{sorted(cone)}",
                codim=len(cone),
                stabilizer_series=classifying_series(catalog_lookup(spec), D),
                stabilizer=spec,
            )
        )
    return OrbitStratification(orbits=orbits, name=f.name)


class ToricReport(BaseModel):
    """Flags, combinatorics and cohomology of one fan."""

    name: Optional[str] = None
    degree: int
    is_smooth: bool
    is_complete: bool
    f_vector: List[int]
    h_vector: List[int]
    betti: List[int]
    cohomology: WeightedGradedVectorSpace
    is_pure: bool
    odd_betti_vanish: Optional[bool] = None
    betti_matches_h: Optional[bool] = None
    poincare_duality: Optional[bool] = None
    notes: List[str] = Field(default_factory=list)

    @property
    def checks_pass(self) -> bool:
        return all(flag is not False for flag in (self.odd_betti_vanish, self.betti_matches_h, self.poincare_duality))


def toric_report(f: Fan, D: int, workers: int = 1) -> ToricReport:
    """
    Everything the toric command prints. For smooth complete fans the Betti
    numbers are checked against the h-vector and Poincaré duality.
    """
    needed = required_degree(f)
    if D < needed:
        logger.info(f"Raising truncation from {D} to {needed} to reach degree {2 * f.rank}")
        D = needed
    smooth, complete = is_smooth(f), is_complete(f)
    cohomology = toric_cohomology(f, D, workers)
    betti = betti_numbers(cohomology)[: 2 * f.rank + 1]
    h = h_vector(f)
    report = ToricReport(
        name=f.name,
        degree=D,
        is_smooth=smooth,
        is_complete=complete,
        f_vector=f.f_vector(),
        h_vector=h,
        betti=betti,
        cohomology=cohomology,
        is_pure=purity_check(cohomology).is_pure,
    )
    if smooth and complete:
        n = f.rank
        report.odd_betti_vanish = all(betti[k] == 0 for k in range(1, 2 * n + 1, 2))
        report.betti_matches_h = all(betti[2 * k] == h[k] for k in range(n + 1))
        report.poincare_duality = all(betti[k] == betti[2 * n - k] for k in range(2 * n + 1))
    else:
        report.notes.append("h-vector has no Betti interpretation unless the fan is smooth and complete")
        if not complete:
            logger.warning(f"Fan {f.name or ''} is not complete; skipping the Betti/h-vector checks")
    return report


# -- bundled fan builders ---------------------------------------------------

def _unit(n: int, i: int) -> List[int]:
    return [1 if j == i else 0 for j in range(n)]


def projective_space_fan(n: int) -> Fan:
    rays = [_unit(n, i) for i in range(n)] + [[-1] * n]
    cones = [list(c) for c in combinations(range(n + 1), n)]
    return Fan(rank=n, rays=rays, max_cones=cones, name=f"P{n}")


def affine_space_fan(n: int) -> Fan:
    return Fan(rank=n, rays=[_unit(n, i) for i in range(n)], max_cones=[list(range(n))], name=f"C{n}")


def affine_minus_origin_fan(n: int) -> Fan:
    """C^n minus the origin: every proper face of the positive orthant."""
    if n == 1:
        return Fan(rank=1, rays=[], max_cones=[[]], name="C1-0")
    cones = [list(c) for c in combinations(range(n), n - 1)]
    return Fan(rank=n, rays=[_unit(n, i) for i in range(n)], max_cones=cones, name=f"C{n}-0")


def torus_fan(n: int) -> Fan:
    """(C*)^n: the zero cone alone."""
    return Fan(rank=n, rays=[], max_cones=[[]], name=f"Cstar{n}")


def hirzebruch_fan(a: int) -> Fan:
    rays = [[1, 0], [0, 1], [-1, a], [0, -1]]
    return Fan(rank=2, rays=rays, max_cones=[[0, 1], [1, 2], [2, 3], [3, 0]], name=f"F{a}")


def blowup_p2_fan() -> Fan:
    rays = [[1, 0], [1, 1], [0, 1], [-1, -1]]
    return Fan(rank=2, rays=rays, max_cones=[[0, 1], [1, 2], [2, 3], [3, 0]], name="Bl_pt P2")


def product_fan(f1: Fan, f2: Fan) -> Fan:
    n1, n2 = f1.rank, f2.rank
    rays = [ray + [0] * n2 for ray in f1.rays] + [[0] * n1 + ray for ray in f2.rays]
    offset = len(f1.rays)
    cones = [c1 + [offset + i for i in c2] for c1, c2 in product(f1.max_cones, f2.max_cones)]
    return Fan(rank=n1 + n2, rays=rays, max_cones=cones, name=f"{f1.name or 'fan'}x{f2.name or 'fan'}")
