"""
Fan Model

A fan in a lattice Z^n given by its rays and maximal cones (ray index sets).
The fan consisting of the zero cone alone has no rays and max_cones [[]].
"""

from itertools import combinations
from math import gcd
from typing import Any, Dict, FrozenSet, List, Optional, Set

from pydantic import BaseModel, Field, model_validator


class Fan(BaseModel):
    rank: int = Field(..., ge=0, description="Rank n of the lattice")
    rays: List[List[int]] = Field(default_factory=list)
    max_cones: List[List[int]] = Field(default_factory=lambda: [[]])
    name: Optional[str] = None

    @model_validator(mode="after")
    def validate_rays_and_cones(self):
        seen = set()
        for i, ray in enumerate(self.rays):
            if len(ray) != self.rank:
                raise ValueError(f"ray {i} has {len(ray)} coordinates, lattice rank is {self.rank}")
            divisor = 0
            for x in ray:
                divisor = gcd(divisor, x)
            if divisor != 1:
                raise ValueError(f"ray {i} = {ray} is not primitive")
            if tuple(ray) in seen:
                raise ValueError(f"ray {ray} listed twice")
            seen.add(tuple(ray))
        if not self.max_cones:
            raise ValueError("a fan needs at least one cone (use [[]] for the zero cone)")
        for cone in self.max_cones:
            if len(set(cone)) != len(cone):
                raise ValueError(f"cone {cone} repeats a ray")
            for i in cone:
                if not 0 <= i < len(self.rays):
                    raise ValueError(f"cone {cone} refers to missing ray {i}")
        self.max_cones = [sorted(cone) for cone in self.max_cones]
        return self

    def cones(self) -> List[FrozenSet[int]]:
        """Every cone (all faces of the maximal cones), sorted by dimension then indices."""
        faces: Set[FrozenSet[int]] = set()
        for cone in self.max_cones:
            for k in range(len(cone) + 1):
                faces.update(frozenset(face) for face in combinations(cone, k))
        return sorted(faces, key=lambda c: (len(c), sorted(c)))

    def f_vector(self) -> List[int]:
        """f[i] = number of cones of dimension i, for i = 0..rank."""
        counts = [0] * (self.rank + 1)
        for cone in self.cones():
            counts[len(cone)] += 1
        return counts

    def is_cone_supported(self, support: FrozenSet[int]) -> bool:
        return any(support <= set(cone) for cone in self.max_cones)

    def to_json(self) -> Dict[str, Any]:
        data = {"rank": self.rank, "rays": self.rays, "max_cones": self.max_cones}
        if self.name:
            data["name"] = self.name
        return data
