"""
Computation engines:
- exact linear algebra over Q
- module constructors
- Koszul, bar and resolution routes to Tor
- cohomology assembly with weights
- spectral sequences of filtered complexes
"""

from .linalg import homology_dim, kernel_matrix, rank
from .modules import free_module, poincare_series, trivial_module
from .koszul import koszul_tor
from .bar import bar_tor
from .resolution import smith_resolution, tor_from_resolution
from .assembly import assemble_cohomology, purity_check
from .spectral_sequence import degeneration_certificate, em_filtered_complex, pages
from .tor_engine import TorEngine

__all__ = [
    "homology_dim",
    "kernel_matrix",
    "rank",
    "free_module",
    "poincare_series",
    "trivial_module",
    "koszul_tor",
    "bar_tor",
    "smith_resolution",
    "tor_from_resolution",
    "assemble_cohomology",
    "purity_check",
    "degeneration_certificate",
    "em_filtered_complex",
    "pages",
    "TorEngine",
]
