"""
Group Models

GroupData records the degrees of the polynomial generators of H*(BG);
WeightedExteriorAlgebra records H*(G) as an exterior algebra on primitive
generators with their weights.
"""

from typing import List

from pydantic import BaseModel, Field, field_validator, model_validator


class GroupData(BaseModel):
    """A connected linear algebraic group, seen through H*(BG)."""

    name: str = Field(..., min_length=1)
    bg_generator_degrees: List[int] = Field(default_factory=list, description="Degrees 2d_1, ..., 2d_r")

    @field_validator("bg_generator_degrees")
    @classmethod
    def validate_even_degrees(cls, v):
        for d in v:
            if d < 2 or d % 2:
                raise ValueError(f"H*(BG) generator degree {d} must be even and at least 2")
        return sorted(v)

    @property
    def rank(self) -> int:
        return len(self.bg_generator_degrees)


class WeightedExteriorAlgebra(BaseModel):
    """Exterior algebra on odd-degree generators; a generator of degree k has weight k + 1."""

    generator_degrees: List[int] = Field(default_factory=list)
    generator_weights: List[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_weights(self):
        if len(self.generator_degrees) != len(self.generator_weights):
            raise ValueError("every generator needs exactly one weight")
        for k, w in zip(self.generator_degrees, self.generator_weights):
            if k % 2 == 0:
                raise ValueError(f"exterior generator degree {k} must be odd")
            if w != k + 1:
                raise ValueError(f"generator of degree {k} must have weight {k + 1}, got {w}")
        return self

    @property
    def total_dim(self) -> int:
        return 2 ** len(self.generator_degrees)
