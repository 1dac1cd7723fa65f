"""Lattice-polytope and contact-geometric data of toric prequantizations."""

from .lattice import LatticeBasis, hermite_normal_form, kernel_lattice, smith_normal_form
from .polytope import Polytope, canonical_form, from_conormals, parse_polytope
from .delzant import DelzantReport, delzant_report
from .census import enumerate_smooth_fano
from .catalog import builtin, verify_catalog

__version__ = "0.1.0"

__all__ = [
    "LatticeBasis",
    "hermite_normal_form",
    "kernel_lattice",
    "smith_normal_form",
    "Polytope",
    "canonical_form",
    "from_conormals",
    "parse_polytope",
    "DelzantReport",
    "delzant_report",
    "enumerate_smooth_fano",
    "builtin",
    "verify_catalog",
]
