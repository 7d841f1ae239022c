"""
Orbit Stratification Models

Finitely many orbits, each recorded by its codimension and the pure
Poincaré series of H*(BH) for its stabilizer H.
"""

from typing import List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from .graded import WeightedGradedVectorSpace


class OrbitRecord(BaseModel):
    label: str = Field(..., min_length=1)
    codim: int = Field(..., ge=0)
    stabilizer_series: WeightedGradedVectorSpace
    stabilizer: Optional[str] = Field(default=None, description="Group spec the series came from, if any")

    @field_validator("stabilizer_series")
    @classmethod
    def validate_pure(cls, v):
        for n, weight, _ in v.sorted_entries():
            if weight != n:
                raise ValueError(f"stabilizer series must be pure, found weight {weight} in degree {n}")
        return v


class OrbitStratification(BaseModel):
    orbits: List[OrbitRecord] = Field(default_factory=list)
    name: Optional[str] = None

    @model_validator(mode="after")
    def validate_open_orbit(self):
        if not any(orbit.codim == 0 for orbit in self.orbits):
            raise ValueError("a stratification needs an orbit of codimension 0")
        return self
