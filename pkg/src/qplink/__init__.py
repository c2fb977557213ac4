"""Quasipositivity toolkit: braids and band representations, planar diagrams,
rational, pretzel and arborescent links, and 3-dimensional transverse C-links."""

from .braid_core import (BandRepresentation, BraidWord, PositiveBand, braided_surface, cable_band_rep,
                         parse_braid, verify_hopf_identity)
from .errors import DomainError, ParseError, QplinkError
from .garside import braids_equal, normal_form

__all__ = [
    "BandRepresentation", "BraidWord", "PositiveBand", "braided_surface", "cable_band_rep",
    "parse_braid", "verify_hopf_identity", "braids_equal", "normal_form",
    "DomainError", "ParseError", "QplinkError",
]
__version__ = "0.1.0"
