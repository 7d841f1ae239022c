"""
Tor Table Models

BigradedTor holds dim Tor_p^{q} keyed by homological degree p and internal
degree q. ChainComplexBundle holds one finite chain complex per internal
degree, which is what every Tor construction produces before taking homology.
"""

from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from .errors import VanishingViolation
from .matrix import RatMatrix


class BigradedTor(BaseModel):
    """
    Dimensions of Tor_p^{q}, exact for internal degrees q <= trusted_q_bound.

    Only the trusted range is stored.
    """

    dims: Dict[Tuple[int, int], int] = Field(default_factory=dict)
    trusted_q_bound: int = Field(..., ge=-1)
    method: str = Field(default="unknown", description="Construction that produced the table")

    @field_validator("dims")
    @classmethod
    def drop_zero_entries(cls, v):
        for (p, q), dim in v.items():
            if p < 0 or q < 0 or dim < 0:
                raise ValueError(f"invalid Tor entry ({p}, {q}) -> {dim}")
        return {key: dim for key, dim in v.items() if dim}

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def entries(self) -> List[Tuple[int, int, int]]:
        return [(p, q, dim) for (p, q), dim in sorted(self.dims.items())]

    def max_p(self) -> int:
        return max((p for p, _ in self.dims), default=0)

    def restricted(self, q_bound: int) -> "BigradedTor":
        """Table cut down to internal degrees q <= q_bound."""
        bound = min(q_bound, self.trusted_q_bound)
        return BigradedTor(
            dims={(p, q): d for (p, q), d in self.dims.items() if q <= bound},
            trusted_q_bound=bound,
            method=self.method,
        )

    def vanishing_violations(self) -> List[Tuple[int, int]]:
        return [(p, q) for (p, q) in sorted(self.dims) if q < 2 * p]

    def check_vanishing(self) -> None:
        """
        Raises:
            VanishingViolation: if some entry with q < 2p is nonzero
        """
        violations = self.vanishing_violations()
        if violations:
            p, q = violations[0]
            raise VanishingViolation(
                f"{self.method} table has Tor_{p}^{q} = {self.dim(p, q)} below the line q = 2p"
            )

    def euler_characteristics(self) -> Dict[int, int]:
        result: Dict[int, int] = {q: 0 for q in range(self.trusted_q_bound + 1)}
        for (p, q), dim in self.dims.items():
            result[q] += (-1) ** p * dim
        return result

    def to_json(self) -> Dict[str, Any]:
        return {
            "trusted_q": self.trusted_q_bound,
            "entries": [{"p": p, "q": q, "dim": dim} for p, q, dim in self.entries()],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any], method: str = "json") -> "BigradedTor":
        dims = {(int(e["p"]), int(e["q"])): int(e["dim"]) for e in data.get("entries", [])}
        return cls(dims=dims, trusted_q_bound=int(data["trusted_q"]), method=data.get("method", method))


class ChainComplexBundle(BaseModel):
    """
    One chain complex per internal degree q.

    chain_dims[q][p] is the dimension of the chain group C_{p,q};
    differentials[(p, q)] maps C_{p,q} to C_{p-1,q}.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    chain_dims: Dict[int, Dict[int, int]] = Field(default_factory=dict)
    differentials: Dict[Tuple[int, int], RatMatrix] = Field(default_factory=dict)
    trusted_q_bound: int = Field(..., ge=-1)
    method: str = "unknown"

    def chain_dim(self, p: int, q: int) -> int:
        return self.chain_dims.get(q, {}).get(p, 0)

    def differential(self, p: int, q: int) -> RatMatrix:
        matrix = self.differentials.get((p, q))
        if matrix is None:
            return RatMatrix.zeros(self.chain_dim(p - 1, q), self.chain_dim(p, q))
        return matrix

    def degrees(self) -> List[int]:
        return sorted(self.chain_dims)

    def euler_characteristics(self) -> Dict[int, int]:
        return {
            q: sum((-1) ** p * dim for p, dim in self.chain_dims[q].items())
            for q in self.degrees()
        }
