"""Additive combinatorics and Fourier bias on finite abelian groups."""
from .config import Limits, get_limits, use_limits
from .constructions import SetSpec, balanced_function, build, hill_climb_tightness, span
from .errors import ExactnessError, ResourceError, SetFourierError, SizeError, ValidationError
from .group import GroupSpec, make_group
from .laws import LawReport
from .quantities import GroupSubset, QuantityReport, TupleSet, quantity_report
from .spectral import DenseFunction, Spectrum, convolve_star, correlate_circ, dft, idft

__version__ = "0.1.0"

__all__ = [
    "Limits",
    "get_limits",
    "use_limits",
    "SetSpec",
    "balanced_function",
    "build",
    "hill_climb_tightness",
    "span",
    "ExactnessError",
    "ResourceError",
    "SetFourierError",
    "SizeError",
    "ValidationError",
    "GroupSpec",
    "make_group",
    "LawReport",
    "GroupSubset",
    "QuantityReport",
    "TupleSet",
    "quantity_report",
    "DenseFunction",
    "Spectrum",
    "convolve_star",
    "correlate_circ",
    "dft",
    "idft",
]
