"""
Geometric front-ends: group catalog, toric varieties, orbit stratifications.
"""

from .groups import GroupCatalog, catalog_lookup
from .toric import stanley_reisner_module, toric_cohomology, toric_report
from .strata import equivariant_series, fibration_series, recover_from_strata

__all__ = [
    "GroupCatalog",
    "catalog_lookup",
    "stanley_reisner_module",
    "toric_cohomology",
    "toric_report",
    "equivariant_series",
    "fibration_series",
    "recover_from_strata",
]
