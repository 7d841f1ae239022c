"""
Data models: exact rational matrices, graded objects, Tor tables, groups,
fans, orbit stratifications, spectral pages, run configuration and the
error hierarchy.
"""

from .errors import ConsistencyError, ValidationFailure
from .matrix import RatMatrix, SparseAssembler
from .graded import (
    GradedAlgebra,
    GradedModule,
    GradedVectorSpace,
    PolynomialRingData,
    WeightedGradedVectorSpace,
)
from .tor import BigradedTor, ChainComplexBundle
from .groups import GroupData, WeightedExteriorAlgebra
from .fan import Fan
from .strata import OrbitRecord, OrbitStratification
from .spectral import DegenerationCertificate, FilteredComplex, Page
from .config import Method, OutputFormat, RunConfig, Settings

__all__ = [
    "ConsistencyError",
    "ValidationFailure",
    "RatMatrix",
    "SparseAssembler",
    "GradedAlgebra",
    "GradedModule",
    "GradedVectorSpace",
    "PolynomialRingData",
    "WeightedGradedVectorSpace",
    "BigradedTor",
    "ChainComplexBundle",
    "GroupData",
    "WeightedExteriorAlgebra",
    "Fan",
    "OrbitRecord",
    "OrbitStratification",
    "DegenerationCertificate",
    "FilteredComplex",
    "Page",
    "Method",
    "OutputFormat",
    "RunConfig",
    "Settings",
]
