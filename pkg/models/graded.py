"""
Graded Data Models

This module defines the algebraic carriers of all cohomology data:
- Polynomial rings on even-degree generators
- Truncated graded vector spaces and graded modules with action matrices
- Graded algebras given by structure-constant matrices
- Weighted graded vector spaces (degree and weight)
"""

from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .errors import InvalidModule, TruncationExceeded
from .matrix import RatMatrix

Exponent = Tuple[int, ...]


@lru_cache(maxsize=4096)
def monomials_of_degree(generator_degrees: Tuple[int, ...], degree: int) -> Tuple[Exponent, ...]:
    """
    Exponent vectors e with sum(e_i * d_i) == degree, in lexicographic order
    (largest exponent of the first generator first).
    """
    if degree < 0:
        return ()
    if not generator_degrees:
        return ((),) if degree == 0 else ()
    head, rest = generator_degrees[0], generator_degrees[1:]
    result = []
    for e in range(degree // head, -1, -1):
        for tail in monomials_of_degree(rest, degree - e * head):
            result.append((e,) + tail)
    return tuple(result)


class PolynomialRingData(BaseModel):
    """Polynomial ring over the rationals on generators of even positive degree."""

    generator_degrees: List[int] = Field(default_factory=list, description="Degrees of the polynomial generators")

    @field_validator("generator_degrees")
    @classmethod
    def validate_even_degrees(cls, v):
        for d in v:
            if d < 2 or d % 2:
                raise ValueError(f"generator degree {d} must be even and at least 2")
        return v

    @property
    def rank(self) -> int:
        return len(self.generator_degrees)

    @property
    def max_degree(self) -> int:
        return max(self.generator_degrees, default=0)

    def monomials(self, degree: int) -> Tuple[Exponent, ...]:
        return monomials_of_degree(tuple(self.generator_degrees), degree)

    def dim(self, degree: int) -> int:
        return len(self.monomials(degree))

    def monomial_degree(self, exponent: Exponent) -> int:
        return sum(e * d for e, d in zip(exponent, self.generator_degrees))


class GradedVectorSpace(BaseModel):
    """Finite dimensions per degree, defined up to the truncation degree."""

    dims: Dict[int, int] = Field(default_factory=dict)
    truncation_degree: int = Field(..., ge=0)

    @model_validator(mode="after")
    def validate_range(self):
        for k, v in self.dims.items():
            if k < 0 or k > self.truncation_degree:
                raise ValueError(f"degree {k} outside 0..{self.truncation_degree}")
            if v < 0:
                raise ValueError(f"negative dimension in degree {k}")
        return self

    def dim(self, k: int) -> int:
        if k > self.truncation_degree:
            raise TruncationExceeded(f"degree {k} beyond truncation {self.truncation_degree}")
        return self.dims.get(k, 0) if k >= 0 else 0


class GradedModule(BaseModel):
    """
    Truncated graded module over a polynomial ring.

    actions[i][k] is the matrix of multiplication by generator i from the
    degree-k basis to the degree-(k + d_i) basis. Missing entries are zero
    maps of the right shape.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    ring: PolynomialRingData
    truncation_degree: int = Field(..., ge=0, description="Degree above which data is undefined")
    dims: Dict[int, int] = Field(default_factory=dict)
    actions: List[Dict[int, RatMatrix]] = Field(default_factory=list)
    name: Optional[str] = None

    @model_validator(mode="after")
    def validate_structure(self):
        for k, v in self.dims.items():
            if k < 0 or k > self.truncation_degree:
                raise ValueError(f"degree {k} outside 0..{self.truncation_degree}")
            if v < 0:
                raise ValueError(f"negative dimension in degree {k}")
        if len(self.actions) != self.ring.rank:
            raise ValueError(f"expected {self.ring.rank} action families, got {len(self.actions)}")
        return self

    def dim(self, k: int) -> int:
        if k > self.truncation_degree:
            raise TruncationExceeded(f"degree {k} beyond truncation {self.truncation_degree}")
        return self.dims.get(k, 0) if k >= 0 else 0

    def action(self, i: int, k: int) -> RatMatrix:
        d = self.ring.generator_degrees[i]
        if k + d > self.truncation_degree:
            raise TruncationExceeded(
                f"action of generator {i} on degree {k} lands beyond truncation {self.truncation_degree}"
            )
        matrix = self.actions[i].get(k)
        if matrix is None:
            return RatMatrix.zeros(self.dim(k + d), self.dim(k))
        return matrix

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def lowest_degree(self) -> Optional[int]:
        nonzero = [k for k, v in self.dims.items() if v]
        return min(nonzero) if nonzero else None

    def to_json(self) -> Dict[str, Any]:
        D = self.truncation_degree
        data = {
            "ring": {"generator_degrees": list(self.ring.generator_degrees)},
            "truncation": D,
            "dims": {str(k): self.dim(k) for k in range(D + 1)},
            "actions": [
                [self.action(i, k).to_json() for k in range(D - d + 1)]
                for i, d in enumerate(self.ring.generator_degrees)
            ],
        }
        if self.name:
            data["name"] = self.name
        return data

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "GradedModule":
        try:
            ring = PolynomialRingData(**data["ring"])
            D = int(data["truncation"])
            dims = {int(k): int(v) for k, v in data.get("dims", {}).items() if int(v)}
            raw_actions = data.get("actions", [])
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidModule(f"malformed module JSON: {e}") from e

        if len(raw_actions) != ring.rank:
            raise InvalidModule(f"expected {ring.rank} action families, got {len(raw_actions)}")

        actions = []
        for i, (d, family) in enumerate(zip(ring.generator_degrees, raw_actions)):
            if len(family) != max(D - d + 1, 0):
                raise InvalidModule(f"generator {i}: expected {max(D - d + 1, 0)} matrices, got {len(family)}")
            matrices = {}
            for k, rows in enumerate(family):
                source, target = dims.get(k, 0), dims.get(k + d, 0)
                if len(rows) != target or any(len(row) != source for row in rows):
                    raise InvalidModule(
                        f"generator {i}, degree {k}: matrix must be {target}x{source}"
                    )
                matrices[k] = RatMatrix.from_rows(rows, cols=source)
            actions.append(matrices)
        return cls(ring=ring, truncation_degree=D, dims=dims, actions=actions, name=data.get("name"))


class GradedAlgebra(BaseModel):
    """
    Graded-commutative algebra with unit in degree 0.

    products[(i, j)] maps the Kronecker basis of A_i ⊗ A_j (index a * dim A_j + b)
    to A_{i+j}. When the algebra is a polynomial ring, `ring` and `labels`
    record which monomial each basis vector is.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    dims: Dict[int, int] = Field(default_factory=dict)
    truncation_degree: int = Field(..., ge=0)
    products: Dict[Tuple[int, int], RatMatrix] = Field(default_factory=dict)
    ring: Optional[PolynomialRingData] = None
    labels: Optional[Dict[int, List[Exponent]]] = None

    @model_validator(mode="after")
    def validate_unit(self):
        if self.dims.get(0, 0) != 1:
            raise ValueError("degree 0 must be one-dimensional (the unit)")
        return self

    def dim(self, k: int) -> int:
        if k > self.truncation_degree:
            raise TruncationExceeded(f"degree {k} beyond truncation {self.truncation_degree}")
        return self.dims.get(k, 0) if k >= 0 else 0

    def product(self, i: int, j: int) -> RatMatrix:
        if i + j > self.truncation_degree:
            raise TruncationExceeded(f"product lands in degree {i + j} beyond truncation")
        matrix = self.products.get((i, j))
        if matrix is None:
            return RatMatrix.zeros(self.dim(i + j), self.dim(i) * self.dim(j))
        return matrix

    def reduced_degrees(self) -> List[int]:
        return sorted(k for k, v in self.dims.items() if k > 0 and v > 0)


class WeightedGradedVectorSpace(BaseModel):
    """
    Dimensions of gr^W_weight H^degree.

    Entries with zero dimension are dropped. Degrees up to degree_bound are
    complete; nothing is claimed beyond it.
    """

    entries: Dict[Tuple[int, int], int] = Field(default_factory=dict)
    degree_bound: int = Field(..., ge=0)
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("entries")
    @classmethod
    def validate_weight_range(cls, v):
        cleaned = {}
        for (n, weight), dim in v.items():
            if dim < 0:
                raise ValueError(f"negative dimension at ({n}, {weight})")
            if dim == 0:
                continue
            if not n <= weight <= 2 * n:
                raise ValueError(f"weight {weight} outside [{n}, {2 * n}] in degree {n}")
            cleaned[(n, weight)] = dim
        return cleaned

    def dim(self, n: int, weight: int) -> int:
        return self.entries.get((n, weight), 0)

    def betti(self, n: int) -> int:
        return sum(dim for (m, _), dim in self.entries.items() if m == n)

    def weights(self, n: int) -> Dict[int, int]:
        return {w: dim for (m, w), dim in sorted(self.entries.items()) if m == n}

    def sorted_entries(self) -> List[Tuple[int, int, int]]:
        return [(n, w, dim) for (n, w), dim in sorted(self.entries.items())]

    def to_json(self) -> Dict[str, Any]:
        return {
            "degree_bound": self.degree_bound,
            "entries": [{"n": n, "weight": w, "dim": dim} for n, w, dim in self.sorted_entries()],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "WeightedGradedVectorSpace":
        entries = {(int(e["n"]), int(e["weight"])): int(e["dim"]) for e in data.get("entries", [])}
        return cls(entries=entries, degree_bound=int(data["degree_bound"]))
