"""
Group Catalog

Connected linear algebraic groups as weight-graded cohomology data:
H*(BG) is polynomial and pure, H*(G) is exterior on primitives of degree
2d - 1 and weight 2d.

Spec strings: "torus:<n>", "SL:<n>", "GL:<n>", "Sp:<2n>", "SO:<n>",
"custom:[d1,d2,...]", "trivial", and the exceptional names G2, F4, E6,
E7, E8.
"""

from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple
import json
import logging
import re

import yaml
from sympy import Poly, expand, prod, symbols

from engine.assembly import assemble_cohomology
from engine.koszul import koszul_tor
from engine.modules import polynomial_action_module, trivial_module
from models.errors import InvalidModule, UnknownGroup
from models.graded import Exponent, GradedModule, PolynomialRingData, WeightedGradedVectorSpace
from models.groups import GroupData, WeightedExteriorAlgebra
from models.matrix import Scalar

logger = logging.getLogger(__name__)

DEFAULT_CATALOG_PATH = Path(__file__).parent.parent / "data" / "groups.yaml"

_SPEC = re.compile(r"^\s*(?P<family>[A-Za-z]+[0-9]?)\s*(?::\s*(?P<arg>.+?))?\s*$")


class GroupCatalog:
    """Parses group spec strings; exceptional groups come from a YAML table."""

    def __init__(self, catalog_path: Optional[Path] = None):
        self.catalog_path = Path(catalog_path or DEFAULT_CATALOG_PATH)
        self.table = self._load_table()

    def _load_table(self) -> Dict[str, Any]:
        if not self.catalog_path.exists():
            raise FileNotFoundError(f"Group table not found: {self.catalog_path}")
        with open(self.catalog_path, "r", encoding="utf-8") as file:
            data = yaml.safe_load(file) or {}
        if "catalog" not in data or "exceptional" not in data["catalog"]:
            raise ValueError(f"Group table {self.catalog_path} has no catalog.exceptional section")
        return data["catalog"]

    @property
    def exceptional(self) -> Dict[str, List[int]]:
        return self.table.get("exceptional", {})

    def lookup(self, spec: str) -> GroupData:
        """
        Raises:
            UnknownGroup: if the spec names no connected catalog group
        """
        match = _SPEC.match(spec or "")
        if not match:
            raise UnknownGroup(f"cannot parse group spec {spec!r}")
        family, arg = match.group("family"), match.group("arg")

        if family in self.table.get("not_connected", []):
            raise UnknownGroup(f"{spec!r} is not connected; only connected groups are supported")
        if family in self.exceptional and arg is None:
            return GroupData(name=family, bg_generator_degrees=list(self.exceptional[family]))
        if family == "trivial" and arg is None:
            return GroupData(name="trivial", bg_generator_degrees=[])
        if family == "custom":
            try:
                degrees = json.loads(arg or "")
                return GroupData(name=f"custom:{degrees}", bg_generator_degrees=[int(d) for d in degrees])
            except (TypeError, ValueError) as e:
                raise UnknownGroup(f"bad custom degree list in {spec!r}: {e}") from e

        if arg is None or not arg.isdigit():
            raise UnknownGroup(f"unknown group {spec!r}")
        n = int(arg)
        degrees = self._classical_degrees(family, n, spec)
        return GroupData(name=f"{family}:{n}", bg_generator_degrees=degrees)

    @staticmethod
    def _classical_degrees(family: str, n: int, spec: str) -> List[int]:
        if family == "torus":
            return [2] * n
        if family == "GL" and n >= 1:
            return [2 * k for k in range(1, n + 1)]
        if family == "SL" and n >= 1:
            return [2 * k for k in range(2, n + 1)]
        if family == "Sp" and n >= 2 and n % 2 == 0:
            return [4 * k for k in range(1, n // 2 + 1)]
        if family == "SO" and n >= 1:
            m = n // 2
            if n % 2:
                return [4 * k for k in range(1, m + 1)]
            if m == 1:
                return [2]
            return [4 * k for k in range(1, m)] + [2 * m]
        raise UnknownGroup(f"unknown group {spec!r}")


@lru_cache(maxsize=1)
def default_catalog() -> GroupCatalog:
    return GroupCatalog()


def catalog_lookup(name: str) -> GroupData:
    return default_catalog().lookup(name)


def classifying_ring(g: GroupData) -> PolynomialRingData:
    """H*(BG) as a polynomial ring; every degree-k class has weight k."""
    return PolynomialRingData(generator_degrees=list(g.bg_generator_degrees))


def classifying_series(g: GroupData, D: int) -> WeightedGradedVectorSpace:
    """Pure weighted Poincaré series of H*(BG) up to degree D."""
    ring = classifying_ring(g)
    return WeightedGradedVectorSpace(
        entries={(k, k): ring.dim(k) for k in range(D + 1)},
        degree_bound=D,
        metadata={"group": g.name},
    )


def group_cohomology(g: GroupData) -> WeightedExteriorAlgebra:
    """Primitive generators in degree 2d - 1 with weight 2d."""
    return WeightedExteriorAlgebra(
        generator_degrees=[d - 1 for d in g.bg_generator_degrees],
        generator_weights=list(g.bg_generator_degrees),
    )


def exterior_table(algebra: WeightedExteriorAlgebra) -> WeightedGradedVectorSpace:
    """Expand the exterior algebra into dims per (degree, weight)."""
    entries: Dict[tuple, int] = {}
    pairs = list(zip(algebra.generator_degrees, algebra.generator_weights))
    for size in range(len(pairs) + 1):
        for subset in combinations(pairs, size):
            key = (sum(k for k, _ in subset), sum(w for _, w in subset))
            entries[key] = entries.get(key, 0) + 1
    top = sum(algebra.generator_degrees)
    return WeightedGradedVectorSpace(entries=entries, degree_bound=top)


def complexity_filtration(g: GroupData, k: int, a: int) -> int:
    """dim of Λ^{<=a}P ∩ H^k(G), which equals dim W_{k+a} H^k(G)."""
    degrees = [d - 1 for d in g.bg_generator_degrees]
    count = 0
    for size in range(min(a, len(degrees)) + 1):
        count += sum(1 for subset in combinations(degrees, size) if sum(subset) == k)
    return count


def group_cohomology_via_tor(g: GroupData, D: int, workers: int = 1) -> WeightedGradedVectorSpace:
    """H*(G) from Tor^{H*(BG)}(Q, Q): G acting freely on itself."""
    ring = classifying_ring(g)
    table = koszul_tor(trivial_module(ring, D), D, workers)
    return assemble_cohomology(table)


def homogeneous_space_module(
    g: GroupData,
    variable_count: int,
    restriction: Sequence[Dict[Exponent, Scalar]],
    D: int,
    name: Optional[str] = None,
) -> GradedModule:
    """
    H*_G(G/H) = H*(BH) as a module over H*(BG) through restriction.

    H must have H*(BH) = Q[y_1..y_s] on degree-2 classes: a torus, or a
    subgroup retracting onto one such as a Borel subgroup. restriction[j] is
    the image of the j-th generator of H*(BG) as a polynomial in the y.

    Raises:
        InvalidModule: if the restriction has the wrong length or is not homogeneous
    """
    if len(restriction) != g.rank:
        raise InvalidModule(f"{g.name} has {g.rank} classifying generators, got {len(restriction)} images")
    return polynomial_action_module(classifying_ring(g), variable_count, restriction, D, name=name)


def maximal_torus_restriction(g: GroupData) -> Tuple[int, List[Dict[Exponent, int]]]:
    """
    Rank of a maximal torus T and the images of the Chern classes in H*(BT).

    GL(n) restricts c_k to e_k(y_1..y_n); SL(n) does the same on
    y_1..y_{n-1}, -(y_1 + ... + y_{n-1}) and skips c_1.

    Raises:
        UnknownGroup: for families without a tabulated restriction
    """
    family, _, arg = g.name.partition(":")
    if family not in ("torus", "GL", "SL") or not arg.isdigit():
        raise UnknownGroup(f"no maximal torus restriction tabulated for {g.name}")
    n = int(arg)
    if family == "torus":
        return n, [{tuple(1 if j == i else 0 for j in range(n)): 1} for i in range(n)]

    s = n if family == "GL" else n - 1
    ys = list(symbols(f"y1:{s + 1}")) if s else []
    roots = ys if family == "GL" else ys + [-sum(ys)]
    first = 1 if family == "GL" else 2
    images = []
    for k in range(first, n + 1):
        chern = expand(sum(prod(c) for c in combinations(roots, k)))
        images.append({tuple(e): int(c) for e, c in Poly(chern, *ys).as_dict().items()})
    return s, images


def flag_variety_module(g: GroupData, D: int) -> GradedModule:
    """H*_G(G/T) for a maximal torus T; G/B retracts onto G/T."""
    s, images = maximal_torus_restriction(g)
    return homogeneous_space_module(g, s, images, D, name=f"H_G({g.name}/T)")


def homogeneous_space_cohomology(m: GradedModule, workers: int = 1) -> WeightedGradedVectorSpace:
    """Weighted H*(G/H) from Tor^{H*(BG)}(H*_G(G/H), Q)."""
    return assemble_cohomology(koszul_tor(m, workers=workers))


def torus_homogeneous_module(
    ambient_rank: int, subtorus_characters: Sequence[Sequence[Scalar]], D: int
) -> GradedModule:
    """
    H*_T(T/S) = H*(BS) as a module over H*(BT) = Q[t_1..t_n].

    subtorus_characters[j] lists the restriction of t_j to H^2(BS) in the
    coordinates y_1..y_s; t_j acts on H*(BS) = Q[y] by multiplication with
    that linear form.

    Raises:
        InvalidModule: if there is not one character row per t_j
    """
    torus = GroupData(name=f"torus:{ambient_rank}", bg_generator_degrees=[2] * ambient_rank)
    if len(subtorus_characters) != ambient_rank:
        raise InvalidModule(f"need {ambient_rank} character rows, got {len(subtorus_characters)}")
    s = len(subtorus_characters[0]) if subtorus_characters else 0
    images = []
    for row in subtorus_characters:
        image = {}
        for i, c in enumerate(row):
            exponent = tuple(1 if j == i else 0 for j in range(s))
            image[exponent] = c
        images.append(image)
    return homogeneous_space_module(torus, s, images, D, name=f"H_T(T/S), rank {ambient_rank - s} quotient")
