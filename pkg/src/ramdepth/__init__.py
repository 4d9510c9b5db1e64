"""Exact ramification calculus over F_q((t)) and depth-r parameters for split type A groups."""

from .errors import DomainError, InvariantError, NotFoundError, PrecisionError
from .plfun import PLFun
from .ramification import RamDatum, breaks, hh_phi, hh_psi
from .localfield import TowerDescriptor, realize_tower, realize_ramdatum
from .cft import counterexample_report, unit_quotient
from .rootdata import ApartmentPoint, RootDatum
from .dlparams import MPType, dl_parameter, depth_zero_space, is_nondegenerate

__version__ = "0.1.0"

__all__ = [
    "ApartmentPoint", "DomainError", "InvariantError", "MPType", "NotFoundError", "PLFun",
    "PrecisionError", "RamDatum", "RootDatum", "TowerDescriptor", "breaks", "counterexample_report",
    "depth_zero_space", "dl_parameter", "hh_phi", "hh_psi", "is_nondegenerate", "realize_ramdatum",
    "realize_tower", "unit_quotient",
]
