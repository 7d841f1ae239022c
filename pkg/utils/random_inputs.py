"""
Seeded Random Inputs

Random graded modules and filtered complexes for the cross-check and
convergence tests. Every generator takes a `random.Random` so a seed
reproduces the run.
"""

from random import Random
from typing import Dict, List, Optional, Tuple
import logging

from pydantic import BaseModel, Field

from engine.linalg import inverse
from engine.modules import direct_sum, polynomial_action_module, shift_module, truncate
from models.graded import GradedModule, PolynomialRingData
from models.matrix import RatMatrix
from models.spectral import FilteredComplex

logger = logging.getLogger(__name__)


class QuotientSummand(BaseModel):
    """Q[x_1..x_m] modulo a monomial cap, shifted, with t_j acting by linear forms."""

    variable_count: int = Field(..., ge=1, le=2)
    degree_cap: Optional[int] = Field(default=None, description="Largest total x-degree kept")
    shift: int = Field(default=0, ge=0)
    forms: List[List[int]] = Field(..., description="forms[j][i]: coefficient of x_i in the image of t_j")

    def build(self, ring: PolynomialRingData, D: int) -> GradedModule:
        images = []
        for row in self.forms:
            images.append({
                tuple(1 if k == i else 0 for k in range(self.variable_count)): c
                for i, c in enumerate(row) if c
            })
        cap = self.degree_cap

        def allowed(exponent) -> bool:
            return cap is None or sum(exponent) <= cap

        base = polynomial_action_module(ring, self.variable_count, images, max(D - self.shift, 0), allowed)
        shifted = shift_module(base, self.shift)
        return truncate(shifted, D) if shifted.truncation_degree > D else shifted


class ModuleRecipe(BaseModel):
    """A random module that can be rebuilt at any truncation degree."""

    ring_rank: int = Field(..., ge=1, le=3)
    summands: List[QuotientSummand] = Field(default_factory=list)
    seed: Optional[int] = None

    @property
    def ring(self) -> PolynomialRingData:
        return PolynomialRingData(generator_degrees=[2] * self.ring_rank)

    def build(self, D: int) -> GradedModule:
        ring = self.ring
        module = None
        for summand in self.summands:
            part = summand.build(ring, D)
            module = part if module is None else direct_sum(module, part)
        module.name = f"random(seed={self.seed}, r={self.ring_rank})"
        return module


def _summand_dims(summand: QuotientSummand, D: int) -> Dict[int, int]:
    dims: Dict[int, int] = {}
    top = D if summand.degree_cap is None else min(D, summand.shift + 2 * summand.degree_cap)
    for k in range(summand.shift, top + 1, 2):
        j = (k - summand.shift) // 2
        dims[k] = j + 1 if summand.variable_count == 2 else 1
    return dims


def random_module_recipe(
    rng: Random, ring_rank: Optional[int] = None, max_dim: int = 4, D: int = 12, seed: Optional[int] = None
) -> ModuleRecipe:
    """
    Sum of shifted monomial quotients with random linear actions, keeping
    every degree at most max_dim dimensional up to D.
    """
    r = ring_rank or rng.randint(1, 3)
    summands: List[QuotientSummand] = []
    totals: Dict[int, int] = {}
    for _ in range(rng.randint(1, 3)):
        m = rng.randint(1, 2)
        cap = rng.choice([None, 0, 1, 2]) if m == 1 else rng.randint(0, 2)
        candidate = QuotientSummand(
            variable_count=m,
            degree_cap=cap,
            shift=rng.randint(0, 3),
            forms=[[rng.randint(-2, 2) for _ in range(m)] for _ in range(r)],
        )
        dims = _summand_dims(candidate, D)
        if any(totals.get(k, 0) + v > max_dim for k, v in dims.items()):
            continue
        for k, v in dims.items():
            totals[k] = totals.get(k, 0) + v
        summands.append(candidate)
    if not summands:
        summands.append(QuotientSummand(variable_count=1, degree_cap=0, forms=[[0] for _ in range(r)]))
    return ModuleRecipe(ring_rank=r, summands=summands, seed=seed)


def random_module(rng: Random, D: int = 12, ring_rank: Optional[int] = None, max_dim: int = 4) -> GradedModule:
    return random_module_recipe(rng, ring_rank, max_dim, D).build(D)


def random_invertible(rng: Random, n: int, spread: int = 2) -> RatMatrix:
    """Permuted product of unit lower and unit upper triangular integer matrices."""
    lower = {(i, i): 1 for i in range(n)}
    upper = {(i, i): 1 for i in range(n)}
    for i in range(n):
        for j in range(i):
            lower[(i, j)] = rng.randint(-spread, spread)
            upper[(j, i)] = rng.randint(-spread, spread)
    order = list(range(n))
    rng.shuffle(order)
    permutation = RatMatrix.from_dok({(order[i], i): 1 for i in range(n)}, (n, n))
    return permutation @ RatMatrix.from_dok(lower, (n, n)) @ RatMatrix.from_dok(upper, (n, n))


def random_filtered_complex(
    rng: Random, max_total_dim: int = 30, max_length: int = 4, max_degree: int = 4
) -> FilteredComplex:
    """
    Random finitely filtered complex.

    Built from elementary pieces (a cycle alone, or a pair x -> y with y no
    lower in the filtration than x) in an adapted basis, then moved by a
    random change of basis in every degree.
    """
    L = rng.randint(1, max_length)
    target = rng.randint(1, max_total_dim)
    levels: Dict[int, List[int]] = {}
    arrows: List[Tuple[int, int, int]] = []
    total = 0
    while total < target:
        n = rng.randint(0, max_degree)
        if total + 2 <= target and rng.random() < 0.6:
            source_level = rng.randint(0, L - 1)
            target_level = rng.randint(source_level, L - 1)
            levels.setdefault(n, []).append(source_level)
            levels.setdefault(n + 1, []).append(target_level)
            arrows.append((n, len(levels[n]) - 1, len(levels[n + 1]) - 1))
            total += 2
        else:
            levels.setdefault(n, []).append(rng.randint(0, L - 1))
            total += 1

    dims = {n: len(v) for n, v in levels.items()}
    change = {n: random_invertible(rng, dim) for n, dim in dims.items()}
    undo = {n: inverse(g) for n, g in change.items()}

    adapted: Dict[int, Dict[Tuple[int, int], int]] = {}
    for n, col, row in arrows:
        adapted.setdefault(n, {})[(row, col)] = 1
    differentials = {}
    for n in dims:
        if n + 1 not in dims:
            continue
        d = RatMatrix.from_dok(adapted.get(n, {}), (dims[n + 1], dims[n]))
        differentials[n] = change[n + 1] @ d @ undo[n]

    filtration = []
    for s in range(L + 1):
        layer = {}
        for n, level_list in levels.items():
            kept = [i for i, level in enumerate(level_list) if level >= s]
            layer[n] = change[n].select_columns(kept) if s < L else RatMatrix.zeros(dims[n], 0)
        filtration.append(layer)

    logger.debug(f"Random filtered complex: total dim {total}, length {L}")
    return FilteredComplex(dims=dims, differentials=differentials, filtration=filtration, name=f"random(L={L})")
