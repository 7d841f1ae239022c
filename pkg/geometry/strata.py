"""
Orbit Stratifications

Additive equivariant cohomology from finitely many orbits: an orbit of
codimension c with stabilizer H contributes H*(BH) shifted by 2c in degree
and in weight. The module structure over H*(BG) is not determined by the
orbits, so recovering H*(X) needs it as an explicit input.
"""

from typing import Any, Dict, List, Optional
import logging

from engine.assembly import assemble_cohomology, purity_check
from engine.koszul import koszul_tor
from engine.modules import free_module, trivial_module
from engine.spectral_sequence import degeneration_certificate
from models.errors import ImpureInput, InvalidModule, RingMismatch, SeriesModuleMismatch
from models.graded import GradedModule, WeightedGradedVectorSpace
from models.groups import GroupData
from models.strata import OrbitRecord, OrbitStratification
from .groups import catalog_lookup, classifying_ring, classifying_series

logger = logging.getLogger(__name__)


def _require_pure(w: WeightedGradedVectorSpace, what: str) -> None:
    report = purity_check(w)
    if not report.is_pure:
        n, weight = report.first_violation
        raise ImpureInput(f"{what} is not pure: weight {weight} in degree {n}")


def parse_stratification(data: Dict[str, Any], D: int) -> OrbitStratification:
    """
    Build a stratification from its JSON form. Each orbit names its
    stabilizer either as a group spec string or as an explicit series
    {"degree_bound", "entries"}.

    Raises:
        ImpureInput: if an explicit stabilizer series is impure
        UnknownGroup: if a stabilizer spec is not in the catalog
    """
    orbits = []
    for raw in data.get("orbits", []):
        stabilizer = raw.get("stabilizer", "trivial")
        if isinstance(stabilizer, dict):
            series = WeightedGradedVectorSpace.from_json(stabilizer)
            _require_pure(series, f"stabilizer series of orbit {raw.get('label')}")
            spec = None
        else:
            spec = str(stabilizer)
            series = classifying_series(catalog_lookup(spec), D)
        orbits.append(OrbitRecord(label=raw["label"], codim=raw["codim"], stabilizer_series=series, stabilizer=spec))
    return OrbitStratification(orbits=orbits, name=data.get("name"))


def equivariant_series(s: OrbitStratification, D: int) -> WeightedGradedVectorSpace:
    """H*_G(X) = ⊕ over orbits of H^{*-2c}(BH)(c), reported up to degree D."""
    bound = D
    for orbit in s.orbits:
        reach = orbit.stabilizer_series.degree_bound + 2 * orbit.codim
        if reach < bound:
            logger.info(f"Orbit {orbit.label} is only known up to degree {reach}; lowering the bound")
            bound = reach
    entries: Dict[tuple, int] = {}
    for orbit in s.orbits:
        shift = 2 * orbit.codim
        for n, weight, dim in orbit.stabilizer_series.sorted_entries():
            if n + shift <= bound:
                key = (n + shift, weight + shift)
                entries[key] = entries.get(key, 0) + dim
    series = WeightedGradedVectorSpace(
        entries=entries, degree_bound=max(bound, 0), metadata={"stratification": s.name}
    )
    _require_pure(series, "equivariant series")
    return series


def fibration_series(
    base_series: WeightedGradedVectorSpace, fiber_stabilizer: WeightedGradedVectorSpace
) -> WeightedGradedVectorSpace:
    """
    Product of two pure series with degrees and weights added.

    Raises:
        ImpureInput: if either input is impure
    """
    _require_pure(base_series, "base series")
    _require_pure(fiber_stabilizer, "fiber series")
    bound = min(base_series.degree_bound, fiber_stabilizer.degree_bound)
    entries: Dict[tuple, int] = {}
    for n1, w1, d1 in base_series.sorted_entries():
        for n2, w2, d2 in fiber_stabilizer.sorted_entries():
            if n1 + n2 <= bound:
                key = (n1 + n2, w1 + w2)
                entries[key] = entries.get(key, 0) + d1 * d2
    product = WeightedGradedVectorSpace(entries=entries, degree_bound=bound)
    _require_pure(product, "fibration series")
    return product


def declared_module(s: OrbitStratification, group: GroupData, D: int) -> GradedModule:
    """
    The module structures a stratification does pin down: one free orbit
    gives the trivial module; orbits all fixed by G give a free module with
    generators in degree 2c.

    Raises:
        InvalidModule: for any other stratification
    """
    ring = classifying_ring(group)
    if len(s.orbits) == 1 and s.orbits[0].stabilizer_series.entries == {(0, 0): 1}:
        return trivial_module(ring, D)
    group_spec = classifying_series(group, D).entries
    if all(orbit.stabilizer_series.entries == group_spec for orbit in s.orbits):
        return free_module(ring, [2 * orbit.codim for orbit in s.orbits], D, name=f"fixed points of {group.name}")
    raise InvalidModule(
        f"stratification {s.name or ''} does not determine its H*(B{group.name})-module; supply one explicitly"
    )


def check_module_series(module: GradedModule, series: WeightedGradedVectorSpace) -> None:
    """
    Raises:
        SeriesModuleMismatch: at the first degree where dimensions differ
    """
    for k in range(min(module.truncation_degree, series.degree_bound) + 1):
        if module.dim(k) != series.betti(k):
            raise SeriesModuleMismatch(
                f"module has dimension {module.dim(k)} in degree {k}, the strata give {series.betti(k)}"
            )


def recover_from_strata(
    s: OrbitStratification,
    group: GroupData,
    D: int,
    module: Optional[GradedModule] = None,
    module_source: str = "supplied",
    workers: int = 1,
) -> WeightedGradedVectorSpace:
    """
    H*(X) with weights from H*_G(X), given as a module realizing the
    strata series. Without a module the declared one is used, and the
    metadata records that it was assumed.

    Raises:
        RingMismatch: if the module is not over H*(BG)
        SeriesModuleMismatch: if the module does not realize the strata series
    """
    series = equivariant_series(s, D)
    assumed: List[str] = []
    if module is None:
        module = declared_module(s, group, D)
        module_source = "declared from stratification"
    assumed.append(f"module structure: {module_source}")
    if module.ring != classifying_ring(group):
        raise RingMismatch(
            f"module is over generators {module.ring.generator_degrees}, "
            f"H*(B{group.name}) has {group.bg_generator_degrees}"
        )
    check_module_series(module, series)

    table = koszul_tor(module, min(D, module.truncation_degree), workers)
    cohomology = assemble_cohomology(table)
    certificate = degeneration_certificate(
        table, {"H*(BG)": True, "H*_G(X)": purity_check(series).is_pure, "Q": True}
    )
    cohomology.metadata.update(
        {
            "stratification": s.name,
            "group": group.name,
            "assumed": assumed,
            "certificate": certificate.to_json(),
        }
    )
    logger.info(f"Recovered cohomology of {s.name or 'stratified space'} up to degree {cohomology.degree_bound}")
    return cohomology
