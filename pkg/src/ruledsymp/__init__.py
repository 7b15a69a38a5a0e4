"""Exact computations for symplectomorphism groups of rational ruled surfaces.

Fixed-point localization on Hirzebruch surfaces, the isotropy representations
and their Euler classes, and the rational cohomology rings of BG_λ.
"""

from .algebra import LaurentPoly, StructuredRationalFunction, divide_exact, parse_poly
from .graded import GradedRingPresentation, RingInvolution, RingMap
from .localization import atiyah_bott_index, euler_class, h01_character_standard

__version__ = "0.1.0"

__all__ = [
    "GradedRingPresentation",
    "LaurentPoly",
    "RingInvolution",
    "RingMap",
    "StructuredRationalFunction",
    "atiyah_bott_index",
    "divide_exact",
    "euler_class",
    "h01_character_standard",
    "parse_poly",
]
