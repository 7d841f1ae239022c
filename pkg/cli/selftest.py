"""
Self Test

End-to-end acceptance checks plus the `expected` blocks of every bundled
fixture. Exit code 0 when everything passes, 2 when a fixture cannot be
read, 3 when a computation disagrees with its oracle.
"""

from math import comb
from random import Random
from typing import Callable, Dict, List, Tuple
import logging
import time

from pydantic import BaseModel

from engine.assembly import purity_check, weight_filtration
from engine.complexes import euler_check
from engine.koszul import koszul_complex, koszul_tor
from engine.modules import polynomial_algebra, trivial_module
from engine.spectral_sequence import degeneration_certificate, em_filtered_complex, page_as_tor, pages
from engine.tor_engine import TorEngine
from geometry.groups import (
    catalog_lookup,
    classifying_ring,
    complexity_filtration,
    exterior_table,
    group_cohomology,
    group_cohomology_via_tor,
)
from geometry.strata import equivariant_series, parse_stratification
from geometry.toric import (
    affine_minus_origin_fan,
    blowup_p2_fan,
    fan_orbit_stratification,
    hirzebruch_fan,
    product_fan,
    projective_space_fan,
    stanley_reisner_module,
    toric_cohomology,
    toric_report,
    torus_fan,
)
from models.config import Method, RunConfig, Settings
from models.errors import ConsistencyError, ValidationFailure
from models.tor import BigradedTor
from utils.config_manager import ConfigManager
from utils.random_inputs import ModuleRecipe, random_filtered_complex, random_module_recipe
from utils.validators import validate_tor_table

logger = logging.getLogger(__name__)

EXIT_VALIDATION = 2
EXIT_CONSISTENCY = 3

# Bar complexes grow fast with the ring rank.
BAR_DEGREE_CAP = {1: 12, 2: 10, 3: 8}


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    exit_code: int = 0
    seconds: float = 0.0


class _Tables:
    """Every Tor table produced during the run, for the vanishing check."""

    def __init__(self):
        self.tables: List[BigradedTor] = []

    def add(self, table: BigradedTor) -> BigradedTor:
        self.tables.append(table)
        return table


def _fail(message: str) -> None:
    raise ConsistencyError(message)


def check_method_agreement(rng: Random, count: int, seen: _Tables) -> List[Tuple[ModuleRecipe, int, BigradedTor]]:
    engine = TorEngine()
    engine.on_table_computed = lambda name, table: seen.add(table)
    instances = []
    for i in range(count):
        recipe = random_module_recipe(rng, seed=i)
        D = BAR_DEGREE_CAP[recipe.ring_rank]
        module = recipe.build(D)
        result = engine.compute(module, Method.ALL, D)
        instances.append((recipe, D, result.tables[Method.KOSZUL.value]))
    return instances


def check_free_actions(seen: _Tables) -> None:
    for spec in ("torus:1", "torus:2", "torus:3", "SL:2", "SL:3", "GL:2", "Sp:4"):
        group = catalog_lookup(spec)
        via_tor = group_cohomology_via_tor(group, 24)
        expected = exterior_table(group_cohomology(group))
        for n in range(via_tor.degree_bound + 1):
            if via_tor.weights(n) != expected.weights(n):
                _fail(f"{spec}: degree {n} gives {via_tor.weights(n)}, expected {expected.weights(n)}")
        table = seen.add(koszul_tor(trivial_module(classifying_ring(group), 24), 24))
        certificate = degeneration_certificate(table, {"H*(BG)": True, "Q": True})
        if not certificate.all_discharged:
            _fail(f"{spec}: certificate leaves obligations open")


def toric_corpus():
    p1 = projective_space_fan(1)
    return [p1, projective_space_fan(2), product_fan(p1, p1)] + [hirzebruch_fan(a) for a in range(4)] + [
        blowup_p2_fan()
    ]


def check_toric_betti() -> None:
    for fan in toric_corpus():
        report = toric_report(fan, 0)
        if not (report.is_smooth and report.is_complete):
            _fail(f"{fan.name}: expected a smooth complete fan")
        if not report.checks_pass or not report.is_pure:
            _fail(f"{fan.name}: betti {report.betti}, h {report.h_vector}, pure {report.is_pure}")


def check_noncomplete_weights() -> None:
    for n in (1, 2, 3):
        fan = affine_minus_origin_fan(n)
        w = toric_cohomology(fan, 4 * n + 2)
        if w.entries != {(0, 0): 1, (2 * n - 1, 2 * n): 1}:
            _fail(f"C^{n} minus origin: got {w.sorted_entries()}")
        torus = torus_fan(n)
        w = toric_cohomology(torus, 4 * n + 2)
        expected = {(k, 2 * k): comb(n, k) for k in range(n + 1)}
        if w.entries != expected:
            _fail(f"(C*)^{n}: got {w.sorted_entries()}")
        group = catalog_lookup(f"torus:{n}")
        for k in range(n + 1):
            for a in range(n + 1):
                if weight_filtration(w, k, k + a) != complexity_filtration(group, k, a):
                    _fail(f"(C*)^{n}: W_{k + a} H^{k} disagrees with the complexity filtration")


def check_vanishing(seen: _Tables) -> None:
    for table in seen.tables:
        report = validate_tor_table(table)
        if not report["is_valid"]:
            _fail(report["errors"][0])


def check_stabilization(instances, seen: _Tables) -> None:
    for recipe, D, table in instances:
        wider = seen.add(koszul_tor(recipe.build(D + 4), D + 4))
        if wider.restricted(table.trusted_q_bound).dims != table.dims:
            _fail(f"module {recipe.seed}: Tor changed inside q <= {table.trusted_q_bound} when D grew to {D + 4}")
        bundle = koszul_complex(recipe.build(D), D)
        bad = euler_check(bundle, table)
        if bad:
            _fail(f"module {recipe.seed}: Euler characteristic mismatch in degrees {bad}")


def check_spectral(rng: Random, count: int) -> None:
    for _ in range(count):
        pages(random_filtered_complex(rng))
    for i in range(max(count // 5, 1)):
        recipe = random_module_recipe(rng, ring_rank=1, seed=i)
        D = 8
        module = recipe.build(D)
        ring = module.ring
        fc = em_filtered_complex(module, polynomial_algebra(ring, D), trivial_module(ring, D), D)
        computed = pages(fc)
        e2 = computed[1] if len(computed) > 1 else computed[0]
        bar = TorEngine(validate_inputs=False).compute(module, Method.BAR, D).primary
        if page_as_tor(e2, D).dims != bar.dims:
            _fail(f"module {i}: E_2 differs from the bar Tor table")
        if any(page.differentials_nonzero for page in computed[1:]):
            _fail(f"module {i}: a differential d_r with r >= 2 is nonzero")


def check_certificate_against_pages() -> None:
    modules = [trivial_module(classifying_ring(catalog_lookup(spec)), 8) for spec in ("torus:1", "torus:2", "SL:2")]
    modules.append(stanley_reisner_module(projective_space_fan(1), 6))
    for module in modules:
        D = module.truncation_degree
        ring = module.ring
        fc = em_filtered_complex(module, polynomial_algebra(ring, D), trivial_module(ring, D), D, pure=True)
        computed = pages(fc)
        e2 = computed[1] if len(computed) > 1 else computed[0]
        certificate = degeneration_certificate(page_as_tor(e2, D), {"M": True, "N": True, "H": True})
        computed_zero = not any(page.differentials_nonzero for page in computed[1:])
        if certificate.all_discharged != computed_zero:
            _fail(f"{module.name}: certificate and pages disagree")


def check_strata_toric() -> None:
    for fan in toric_corpus()[:3]:
        series = equivariant_series(fan_orbit_stratification(fan, 20), 20)
        module = stanley_reisner_module(fan, 20)
        for k in range(21):
            if series.betti(k) != module.dim(k):
                _fail(f"{fan.name}: strata give {series.betti(k)} in degree {k}, Stanley-Reisner gives {module.dim(k)}")
        if not purity_check(series).is_pure:
            _fail(f"{fan.name}: equivariant series is impure")


def check_fixtures(manager: ConfigManager) -> None:
    from geometry.toric import validate_fan

    for path in manager.list_fixtures("fans"):
        data = manager.load_json(path)
        expected = data.get("expected")
        fan = validate_fan(manager.load_fan(path))
        if not expected:
            continue
        report = toric_report(fan, expected.get("degree", 0))
        actual = {
            "betti": report.betti,
            "h_vector": report.h_vector,
            "smooth": report.is_smooth,
            "complete": report.is_complete,
            "pure": report.is_pure,
            "weights": [[n, w, d] for n, w, d in report.cohomology.sorted_entries()],
        }
        for key, value in expected.items():
            if key in actual and actual[key] != value:
                _fail(f"fixture {path.name}: {key} is {actual[key]}, expected {value}")

    for path in manager.list_fixtures("strata"):
        data = manager.load_stratification_data(path)
        expected = data.get("expected")
        D = (expected or {}).get("degree", 12)
        series = equivariant_series(parse_stratification(data, D), D)
        if expected and "series" in expected:
            actual = [series.betti(k) for k in range(D + 1)]
            if actual != expected["series"]:
                _fail(f"fixture {path.name}: series {actual}, expected {expected['series']}")

    for path in manager.list_fixtures("modules"):
        data = manager.load_json(path)
        module = manager.load_module(path)
        expected = data.get("expected")
        if not expected:
            continue
        result = TorEngine().compute(module, Method.ALL, module.truncation_degree)
        table = result.primary.restricted(result.agreed_q_bound)
        actual = [[p, q, d] for p, q, d in table.entries()]
        if "tor" in expected and actual != expected["tor"]:
            _fail(f"fixture {path.name}: Tor {actual}, expected {expected['tor']}")


def run_selftest(config: RunConfig, manager: ConfigManager, settings: Settings) -> int:
    quick = bool(config.options.get("quick"))
    rng = Random(config.seed)
    seen = _Tables()
    state: Dict[str, object] = {}

    def agreement():
        state["instances"] = check_method_agreement(rng, 10 if quick else 50, seen)

    checks: List[Tuple[str, Callable[[], None]]] = [
        ("1. three-method Tor agreement", agreement),
        ("2. free actions give H*(G)", lambda: check_free_actions(seen)),
        ("3. toric Betti numbers and h-vectors", check_toric_betti),
        ("4. weights of non-complete toric varieties", check_noncomplete_weights),
        ("5. vanishing below q = 2p", lambda: check_vanishing(seen)),
        ("6. stabilization in the truncation degree", lambda: check_stabilization(state.get("instances", []), seen)),
        ("7. spectral sequence convergence", lambda: check_spectral(rng, 10 if quick else 50)),
        ("8. degeneration certificate vs pages", check_certificate_against_pages),
        ("9. strata against Stanley-Reisner series", check_strata_toric),
        ("fixtures: expected blocks", lambda: check_fixtures(manager)),
    ]

    results: List[CheckResult] = []
    for name, check in checks:
        start = time.perf_counter()
        try:
            check()
            result = CheckResult(name=name, passed=True)
        except ConsistencyError as e:
            result = CheckResult(name=name, passed=False, detail=str(e), exit_code=EXIT_CONSISTENCY)
        except (ValidationFailure, ValueError, FileNotFoundError) as e:
            result = CheckResult(name=name, passed=False, detail=str(e), exit_code=EXIT_VALIDATION)
        result.seconds = time.perf_counter() - start
        results.append(result)
        mark = "✅" if result.passed else "❌"
        print(f"{mark} {name} ({result.seconds:.1f}s){': ' + result.detail if result.detail else ''}")

    failed = [r for r in results if not r.passed]
    print(f"\n{len(results) - len(failed)}/{len(results)} checks passed")
    return max((r.exit_code for r in failed), default=0)
