"""
CLI Commands

One function per subcommand. Each takes a RunConfig and returns a
CommandReport holding the printable text, the JSON payload and the tables
behind them; cli.main decides how to emit it.
"""

from pathlib import Path
from random import Random
from typing import Any, Dict, List, Optional
import logging

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from engine.assembly import assemble_cohomology, betti_numbers, purity_check
from engine.modules import polynomial_algebra, trivial_module
from engine.spectral_sequence import degeneration_certificate, em_filtered_complex, page_as_tor, pages
from engine.tor_engine import TorEngine
from geometry.groups import (
    catalog_lookup,
    classifying_series,
    complexity_filtration,
    exterior_table,
    group_cohomology,
    group_cohomology_via_tor,
)
from geometry.strata import equivariant_series, parse_stratification, recover_from_strata
from geometry.toric import stanley_reisner_module, toric_report, validate_fan
from models.config import RunConfig, Settings
from models.errors import MethodDisagreement, ValidationFailure, VanishingViolation
from models.graded import GradedModule, WeightedGradedVectorSpace
from models.tor import BigradedTor
from reporting.tables import (
    betti_frame,
    pages_frame,
    series_frame,
    tor_frame,
    weights_frame,
)
from utils.config_manager import ConfigManager
from utils.random_inputs import random_filtered_complex
from utils.validators import get_validation_summary, validate_tor_table

logger = logging.getLogger(__name__)


class CommandReport(BaseModel):
    """What a command produced, in every output shape."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: str
    lines: List[str] = Field(default_factory=list)
    data: Dict[str, Any] = Field(default_factory=dict)
    frames: Dict[str, pd.DataFrame] = Field(default_factory=dict)
    weights: Optional[WeightedGradedVectorSpace] = None
    title: Optional[str] = None


def resolve_input(manager: ConfigManager, kind: str, value: str) -> Path:
    """A path on disk, or else the name of a bundled fixture."""
    path = Path(value)
    if path.exists():
        return path
    return manager.fixture(kind, value)


def _purity_line(w: WeightedGradedVectorSpace) -> str:
    report = purity_check(w)
    if report.is_pure:
        return "pure: yes"
    n, weight = report.first_violation
    return f"pure: no (first impure piece: degree {n}, weight {weight})"


def _first_input(config: RunConfig) -> str:
    if not config.inputs:
        raise ValidationFailure(f"{config.command} needs an input")
    return config.inputs[0]


def cmd_tor(config: RunConfig, manager: ConfigManager, settings: Settings) -> CommandReport:
    """
    Tor and weighted cohomology of a module JSON. A Tor JSON emitted by this
    command is accepted too and re-assembled without recomputation.
    """
    path = resolve_input(manager, "modules", _first_input(config))
    data = manager.load_json(path)
    report = CommandReport(command="tor", title=str(path.stem))

    if "tor" in data or "trusted_q" in data:
        table = BigradedTor.from_json(data.get("tor", data))
        check = validate_tor_table(table)
        if not check["is_valid"]:
            raise VanishingViolation(get_validation_summary(check))
        report.lines.append(f"Tor table read from {path} (trusted q <= {table.trusted_q_bound})")
    else:
        module = GradedModule.from_json(data)
        right = None
        if config.options.get("right"):
            right = manager.load_module(resolve_input(manager, "modules", config.options["right"]))
        engine = TorEngine(workers=config.workers)
        bound = min(config.degree_or(module.truncation_degree), module.truncation_degree)
        result = engine.compute(module, config.method, bound, right)
        for name, t in result.tables.items():
            report.lines.append(f"{name}: trusted q <= {t.trusted_q_bound}, {len(t.dims)} nonzero entries")
        if result.cross_checked:
            report.lines.append(f"agreement: {', '.join(result.tables)} agree for q <= {result.agreed_q_bound}")
        table = result.primary.restricted(result.agreed_q_bound) if result.cross_checked else result.primary

    cohomology = assemble_cohomology(table)
    report.weights = cohomology
    report.frames = {"tor": tor_frame(table), "cohomology": weights_frame(cohomology)}
    report.lines.append(_purity_line(cohomology))
    report.data = {
        "tor": table.to_json(),
        "cohomology": cohomology.to_json(),
        "pure": purity_check(cohomology).is_pure,
    }
    return report


def cmd_toric(config: RunConfig, manager: ConfigManager, settings: Settings) -> CommandReport:
    path = resolve_input(manager, "fans", _first_input(config))
    fan = validate_fan(manager.load_fan(path))
    result = toric_report(fan, config.degree_or(settings.default_degree), config.workers)

    report = CommandReport(command="toric", title=fan.name or path.stem, weights=result.cohomology)
    report.lines.extend([
        f"fan: {fan.name or path.stem} (rank {fan.rank}, {len(fan.rays)} rays, {len(fan.max_cones)} maximal cones)",
        f"smooth: {'yes' if result.is_smooth else 'no'}",
        f"complete: {'yes' if result.is_complete else 'no'}",
        f"f-vector: {result.f_vector}",
        f"h-vector: {result.h_vector}",
        f"betti: {result.betti}",
        _purity_line(result.cohomology),
    ])
    checks = {
        "odd_betti_vanish": result.odd_betti_vanish,
        "betti_matches_h": result.betti_matches_h,
        "poincare_duality": result.poincare_duality,
    }
    if result.betti_matches_h is not None:
        report.lines.append(f"b_2k = h_k: {'pass' if result.betti_matches_h else 'FAIL'}")
        report.lines.append(f"Poincaré duality: {'pass' if result.poincare_duality else 'FAIL'}")
    report.lines.extend(result.notes)
    report.frames = {"betti": betti_frame(result.betti), "cohomology": weights_frame(result.cohomology)}
    report.data = {
        "fan": fan.name,
        "smooth": result.is_smooth,
        "complete": result.is_complete,
        "f_vector": result.f_vector,
        "h_vector": result.h_vector,
        "betti": result.betti,
        "pure": result.is_pure,
        "checks": checks,
        "cohomology": result.cohomology.to_json(),
    }
    return report


def _strata_module(
    config: RunConfig, manager: ConfigManager, data: Dict[str, Any], D: int
) -> Optional[tuple]:
    """Module realizing the strata series, from --module, --fan or the file's own references."""
    if config.options.get("module") or data.get("module"):
        name = config.options.get("module") or data["module"]
        return manager.load_module(resolve_input(manager, "modules", name)), f"module file {name}"
    if config.options.get("fan") or data.get("fan"):
        name = config.options.get("fan") or data["fan"]
        fan = manager.load_fan(resolve_input(manager, "fans", name))
        return stanley_reisner_module(fan, D), f"Stanley-Reisner module of fan {name}"
    return None


def cmd_strata(config: RunConfig, manager: ConfigManager, settings: Settings) -> CommandReport:
    path = resolve_input(manager, "strata", _first_input(config))
    data = manager.load_stratification_data(path)
    D = config.degree_or(settings.default_degree)
    strata = parse_stratification(data, D)
    series = equivariant_series(strata, D)

    report = CommandReport(command="strata", title=strata.name or path.stem, weights=series)
    coefficients = [series.betti(k) for k in range(series.degree_bound + 1)]
    report.lines.extend([
        f"stratification: {strata.name or path.stem} ({len(strata.orbits)} orbits)",
        f"equivariant series: {coefficients}",
        _purity_line(series),
    ])
    report.frames = {"series": series_frame({"equivariant": coefficients}), "equivariant": weights_frame(series)}
    report.data = {"stratification": strata.name, "series": series.to_json(), "pure": purity_check(series).is_pure}

    group_spec = config.options.get("group") or data.get("group")
    if group_spec:
        group = catalog_lookup(group_spec)
        supplied = _strata_module(config, manager, data, D)
        module, source = supplied if supplied else (None, "supplied")
        recovered = recover_from_strata(strata, group, D, module, source, config.workers)
        report.weights = recovered
        report.lines.append(f"recovered H*(X) over {group.name}: betti {betti_numbers(recovered)}")
        report.lines.append(f"assumed: {'; '.join(recovered.metadata['assumed'])}")
        report.lines.append(
            "degeneration certificate: "
            f"{'all discharged' if recovered.metadata['certificate']['all_discharged'] else 'open obligations'}"
        )
        report.frames["recovered"] = weights_frame(recovered)
        report.data["recovered"] = recovered.to_json()
        report.data["certificate"] = recovered.metadata["certificate"]
    return report


def cmd_group(config: RunConfig, manager: ConfigManager, settings: Settings) -> CommandReport:
    group = catalog_lookup(_first_input(config))
    D = config.degree_or(settings.default_degree)
    exterior = exterior_table(group_cohomology(group))
    bg = classifying_series(group, D)

    report = CommandReport(command="group", title=group.name, weights=exterior)
    report.lines.extend([
        f"group: {group.name} (rank {group.rank})",
        f"BG generators: {group.bg_generator_degrees}",
        "G primitives: " + ", ".join(f"degree {d - 1} weight {d}" for d in group.bg_generator_degrees),
        f"BG series up to {D}: {[bg.betti(k) for k in range(D + 1)]}",
    ])
    top = exterior.degree_bound
    complexity = {
        k: [complexity_filtration(group, k, a) for a in range(group.rank + 1)]
        for k in range(top + 1)
        if exterior.betti(k)
    }
    report.frames = {"cohomology": weights_frame(exterior)}
    report.data = {
        "group": group.name,
        "bg_generator_degrees": group.bg_generator_degrees,
        "cohomology": exterior.to_json(),
        "complexity": {str(k): v for k, v in complexity.items()},
    }

    if config.degree is not None:
        via_tor = group_cohomology_via_tor(group, D, config.workers)
        for n in range(via_tor.degree_bound + 1):
            if via_tor.weights(n) != exterior.weights(n):
                raise MethodDisagreement(
                    f"Tor(Q, Q) over H*(B{group.name}) gives {via_tor.weights(n)} in degree {n}, "
                    f"the exterior algebra gives {exterior.weights(n)}"
                )
        report.lines.append(f"Tor check: agrees with the exterior algebra up to degree {via_tor.degree_bound}")
        report.data["tor_checked_degree"] = via_tor.degree_bound
    return report


def cmd_ss(config: RunConfig, manager: ConfigManager, settings: Settings) -> CommandReport:
    """Pages of the bar-degree spectral sequence of a module, or of a random filtered complex."""
    report = CommandReport(command="ss")
    if config.options.get("random"):
        fc = random_filtered_complex(Random(config.seed))
        report.title = f"random filtered complex (seed {config.seed})"
        module = None
    else:
        path = resolve_input(manager, "modules", _first_input(config))
        module = manager.load_module(path)
        D = min(config.degree_or(module.truncation_degree), module.truncation_degree)
        ring = module.ring
        fc = em_filtered_complex(
            module, polynomial_algebra(ring, D), trivial_module(ring, D), D, config.assume_pure, config.workers
        )
        report.title = module.name or path.stem

    computed = pages(fc)
    for page in computed:
        report.lines.append(
            f"E_{page.r}: " + ", ".join(f"({p},{q}):{d}" for p, q, d in page.entries())
            + f"  [{page.differentials_nonzero} nonzero differentials]"
        )
    report.lines.append(f"stabilized at E_{computed[-1].r}")
    report.frames = {"pages": pages_frame(computed)}
    report.data = {"pages": [page.to_json() for page in computed], "stable_page": computed[-1].r}

    if module is not None and config.assume_pure:
        e2 = computed[1] if len(computed) >= 2 else computed[-1]
        certificate = degeneration_certificate(page_as_tor(e2, D), {"M": True, "N": True, "H": True})
        verdict = "all d_r (r >= 2) vanish by weight" if certificate.all_discharged else "open obligations"
        report.lines.append(f"degeneration certificate: {len(certificate.obligations)} obligations, {verdict}")
        report.data["certificate"] = certificate.to_json()
    return report


COMMANDS = {
    "tor": cmd_tor,
    "toric": cmd_toric,
    "strata": cmd_strata,
    "group": cmd_group,
    "ss": cmd_ss,
}
