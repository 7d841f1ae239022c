"""
Spectral Sequence Models

This module defines:
- FilteredComplex: a finite cochain complex with a decreasing filtration
- Page: one page E_r with its differentials
- DegenerationCertificate: the weight ledger showing d_r = 0 for r >= 2
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from .matrix import RatMatrix

Spot = Tuple[int, int]


class SpotConvention(str, Enum):
    """How page spots are reported."""
    FILTRATION = "filtration"            # (s, t) with total degree s + t
    EILENBERG_MOORE = "eilenberg-moore"  # (p, q): bar degree and internal degree


class FilteredComplex(BaseModel):
    """
    Cochain complex C^n with d: C^n -> C^{n+1} and subcomplexes
    C = F^0 ⊇ F^1 ⊇ ... ⊇ F^L = 0.

    filtration[s][n] spans F^s C^n by its columns. Entries for s <= 0 are
    the whole space and for s >= L the zero space, whatever is stored.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    dims: Dict[int, int] = Field(default_factory=dict, description="dim C^n")
    differentials: Dict[int, RatMatrix] = Field(default_factory=dict, description="d^n: C^n -> C^{n+1}")
    filtration: List[Dict[int, RatMatrix]] = Field(default_factory=list)
    spot_weights: Optional[Dict[Spot, int]] = Field(
        default=None, description="Weight of each (s, n) spot when the inputs are pure"
    )
    convention: SpotConvention = SpotConvention.FILTRATION
    bar_length: int = Field(default=0, description="Largest bar degree P for the Eilenberg-Moore convention")
    name: Optional[str] = None

    @property
    def length(self) -> int:
        return max(len(self.filtration) - 1, 0)

    def degrees(self) -> List[int]:
        return sorted(n for n, dim in self.dims.items() if dim)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> RatMatrix:
        matrix = self.differentials.get(n)
        if matrix is None:
            return RatMatrix.zeros(self.dim(n + 1), self.dim(n))
        return matrix

    def span(self, s: int, n: int) -> RatMatrix:
        if s <= 0:
            return RatMatrix.identity(self.dim(n))
        if s >= self.length:
            return RatMatrix.zeros(self.dim(n), 0)
        return self.filtration[s].get(n, RatMatrix.zeros(self.dim(n), 0))

    def total_dim(self) -> int:
        return sum(self.dims.values())


class Page(BaseModel):
    """
    E_r with spots keyed by (s, t), total degree s + t, and
    d_r: E_r^{s,t} -> E_r^{s+r, t-r+1}.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    r: int = Field(..., ge=0)
    dims: Dict[Spot, int] = Field(default_factory=dict)
    differentials: Dict[Spot, RatMatrix] = Field(default_factory=dict)
    convention: SpotConvention = SpotConvention.FILTRATION
    bar_length: int = 0

    @property
    def differentials_nonzero(self) -> int:
        return sum(1 for matrix in self.differentials.values() if not matrix.is_zero())

    def dim(self, s: int, t: int) -> int:
        return self.dims.get((s, t), 0)

    def label(self, s: int, t: int) -> Spot:
        """External (p, q) label of the spot."""
        if self.convention == SpotConvention.EILENBERG_MOORE:
            return self.bar_length - s, t + self.bar_length
        return s, t

    def entries(self) -> List[Tuple[int, int, int]]:
        labelled = [self.label(s, t) + (dim,) for (s, t), dim in self.dims.items() if dim]
        return sorted(labelled)

    def total_degree_dims(self) -> Dict[int, int]:
        totals: Dict[int, int] = {}
        for (s, t), dim in self.dims.items():
            totals[s + t] = totals.get(s + t, 0) + dim
        return totals

    def to_json(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "entries": [{"p": p, "q": q, "dim": dim} for p, q, dim in self.entries()],
            "differentials_nonzero": self.differentials_nonzero,
        }


class WeightObligation(BaseModel):
    """One potential d_r between two nonzero E_2 spots, with the weights on both ends."""

    r: int
    source: Spot
    target: Spot
    source_weight: int
    target_weight: int

    @property
    def discharged(self) -> bool:
        return self.source_weight != self.target_weight


class DegenerationCertificate(BaseModel):
    obligations: List[WeightObligation] = Field(default_factory=list)
    trusted_q_bound: int = 0
    purity_flags: Dict[str, bool] = Field(default_factory=dict)

    @property
    def all_discharged(self) -> bool:
        return all(o.discharged for o in self.obligations)

    @property
    def e2_is_e_infinity(self) -> bool:
        return self.all_discharged

    def to_json(self) -> Dict[str, Any]:
        return {
            "purity_flags": dict(sorted(self.purity_flags.items())),
            "trusted_q": self.trusted_q_bound,
            "obligations": [
                {
                    "r": o.r,
                    "source": {"p": o.source[0], "q": o.source[1], "weight": o.source_weight},
                    "target": {"p": o.target[0], "q": o.target[1], "weight": o.target_weight},
                    "discharged": o.discharged,
                }
                for o in self.obligations
            ],
            "all_discharged": self.all_discharged,
        }
