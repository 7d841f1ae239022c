"""
Tor Engine

This module contains the orchestrator that runs one or all Tor
constructions on a module, compares them on their common trusted range and
assembles the weighted cohomology.
"""

from typing import Any, Callable, Dict, Optional
import logging
import time

from pydantic import BaseModel, ConfigDict, Field

from models.config import Method
from models.errors import InvalidModule, MethodDisagreement, ValidationFailure
from models.graded import GradedModule, WeightedGradedVectorSpace
from models.tor import BigradedTor
from utils.validators import validate_module
from .assembly import assemble_cohomology
from .bar import bar_tor
from .koszul import koszul_tor
from .modules import polynomial_algebra, trivial_module
from .resolution import CoverKind, smith_resolution, tor_from_resolution

logger = logging.getLogger(__name__)


class TorComputation(BaseModel):
    """Tables from every method that ran, plus the assembled cohomology."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    module_name: Optional[str] = None
    tables: Dict[str, BigradedTor] = Field(default_factory=dict)
    agreed_q_bound: Optional[int] = None
    cohomology: WeightedGradedVectorSpace
    elapsed: Dict[str, float] = Field(default_factory=dict)

    @property
    def primary(self) -> BigradedTor:
        return next(iter(self.tables.values()))

    @property
    def cross_checked(self) -> bool:
        return len(self.tables) > 1


class TorEngine:
    """
    Runs Tor^{H}(M, N) through the Koszul complex, the bar complex or a
    Smith resolution.

    N defaults to the residue field Q, which is the only second argument the
    Koszul route accepts.
    """

    def __init__(self, workers: int = 1, cover: CoverKind = CoverKind.MINIMAL, validate_inputs: bool = True):
        self.workers = workers
        self.cover = CoverKind(cover)
        self.validate_inputs = validate_inputs
        self.logger = logging.getLogger(__name__)

        # Event callbacks
        self.on_table_computed: Optional[Callable[[str, BigradedTor], None]] = None
        self.on_disagreement: Optional[Callable[[str, str, Any], None]] = None
        self.on_error: Optional[Callable[[Exception], None]] = None

    def compute(
        self,
        module: GradedModule,
        method: Method = Method.KOSZUL,
        bound: Optional[int] = None,
        right: Optional[GradedModule] = None,
    ) -> TorComputation:
        """
        Args:
            module: left argument M
            method: koszul, bar, smith, or all (cross-checked)
            bound: internal-degree bound, default the truncation degree of M
            right: second argument N, default Q

        Raises:
            InvalidModule: if M fails validation
            MethodDisagreement: if two methods differ on their common trusted range
        """
        method = Method(method)
        bound = module.truncation_degree if bound is None else bound
        try:
            if self.validate_inputs:
                self._validate(module)
                if right is not None:
                    self._validate(right)
            methods = [Method.KOSZUL, Method.BAR, Method.SMITH] if method == Method.ALL else [method]
            if right is not None and Method.KOSZUL in methods:
                if method == Method.ALL:
                    methods.remove(Method.KOSZUL)
                else:
                    raise ValidationFailure("the Koszul route only computes Tor against Q")

            tables: Dict[str, BigradedTor] = {}
            elapsed: Dict[str, float] = {}
            for m in methods:
                start = time.perf_counter()
                table = self._run(m, module, bound, right)
                elapsed[m.value] = time.perf_counter() - start
                tables[m.value] = table
                self.logger.info(
                    f"{m.value}: {len(table.dims)} nonzero entries, trusted q <= {table.trusted_q_bound} "
                    f"({elapsed[m.value]:.2f}s)"
                )
                if self.on_table_computed:
                    self.on_table_computed(m.value, table)

            agreed = self.compare(tables) if len(tables) > 1 else None
            source = next(iter(tables.values()))
            cohomology = assemble_cohomology(source.restricted(agreed) if agreed is not None else source)
            cohomology.metadata["module"] = module.name
            return TorComputation(
                module_name=module.name,
                tables=tables,
                agreed_q_bound=agreed,
                cohomology=cohomology,
                elapsed=elapsed,
            )
        except Exception as e:
            if self.on_error:
                self.on_error(e)
            raise

    def _validate(self, module: GradedModule) -> None:
        report = validate_module(module)
        if not report["is_valid"]:
            raise InvalidModule(f"module {module.name or ''} is invalid: {report['errors'][0]}")

    def _run(
        self, method: Method, module: GradedModule, bound: int, right: Optional[GradedModule]
    ) -> BigradedTor:
        if method == Method.KOSZUL:
            return koszul_tor(module, bound, self.workers)
        if method == Method.BAR:
            D = min(bound, module.truncation_degree)
            n = right if right is not None else trivial_module(module.ring, D)
            return bar_tor(module, polynomial_algebra(module.ring, D), n, D, self.workers)
        if method == Method.SMITH:
            D = min(bound, module.truncation_degree)
            n = right if right is not None else trivial_module(module.ring, D)
            return tor_from_resolution(smith_resolution(module, D // 2, self.cover), n, self.workers)
        raise ValidationFailure(f"unknown method {method}")

    def compare(self, tables: Dict[str, BigradedTor]) -> int:
        """
        Common trusted bound of all tables.

        Raises:
            MethodDisagreement: at the first differing entry inside that bound
        """
        common = min(t.trusted_q_bound for t in tables.values())
        names = list(tables)
        base = tables[names[0]].restricted(common)
        for name in names[1:]:
            other = tables[name].restricted(common)
            if other.dims != base.dims:
                keys = sorted(set(base.dims) | set(other.dims))
                first = next(k for k in keys if base.dim(*k) != other.dim(*k))
                if self.on_disagreement:
                    self.on_disagreement(names[0], name, first)
                raise MethodDisagreement(
                    f"{names[0]} and {name} differ at (p, q) = {first}: "
                    f"{base.dim(*first)} vs {other.dim(*first)} (common trusted q <= {common})"
                )
        self.logger.info(f"{', '.join(names)} agree for q <= {common}")
        return common

    def summary(self, result: TorComputation) -> Dict[str, Any]:
        return {
            "module": result.module_name,
            "methods": list(result.tables),
            "agreed_q": result.agreed_q_bound,
            "trusted_q": {name: t.trusted_q_bound for name, t in result.tables.items()},
            "elapsed": {name: round(s, 3) for name, s in result.elapsed.items()},
            "degree_bound": result.cohomology.degree_bound,
        }
