"""Exact formal group laws, Brown-Peterson coefficients and cobordism operations."""

from .bp import BPContext, filtration_level, ideal_membership
from .errors import (
    AlphabetMismatch,
    ConfigError,
    DivisibilityFailure,
    FGLForgeError,
    NotInvertibleError,
    PLocalityError,
    TruncationError,
    WindowOverflowError,
)
from .fgl import FormalGroupLaw, characteristic_numbers, universal_fgl
from .ops import SteenrodContext
from .resolutions import build_koszul, descent_step
from .ring import B, M, GradedPoly, TLaurent, V

__version__ = "0.1.0"

__all__ = [
    "AlphabetMismatch",
    "B",
    "BPContext",
    "ConfigError",
    "DivisibilityFailure",
    "FGLForgeError",
    "FormalGroupLaw",
    "GradedPoly",
    "M",
    "NotInvertibleError",
    "PLocalityError",
    "SteenrodContext",
    "TLaurent",
    "TruncationError",
    "V",
    "WindowOverflowError",
    "build_koszul",
    "characteristic_numbers",
    "descent_step",
    "filtration_level",
    "ideal_membership",
    "universal_fgl",
]
