"""Exact analysis of line arrangements and admissible rank-one local systems."""

from .admissibility import (AdmCertificate, Admissible, LocalSystem, NotAdmissible, NotCovered, ResidueVector,
                            classify, decide_admissible, normalize, verify_certificate, verify_residues)
from .arrfile import parse_arrangement, parse_text
from .geometry import Line, Point, canonicalize_line, canonicalize_point, intersect, join
from .graphs import cycles, maximal_graphs, verify_zone_partition, zones
from .incidence import Arrangement, IncidenceStructure, build_incidence, check_condition_c
from .multinet import Multinet, search_multinets, validate_multinet
from .oracle import ShiftSearchConfig, obstruction_check, oracle_search

__all__ = [
    "AdmCertificate", "Admissible", "Arrangement", "IncidenceStructure", "Line", "LocalSystem", "Multinet",
    "NotAdmissible", "NotCovered", "Point", "ResidueVector", "ShiftSearchConfig", "build_incidence",
    "canonicalize_line", "canonicalize_point", "check_condition_c", "classify", "cycles", "decide_admissible",
    "intersect", "join", "maximal_graphs", "normalize", "obstruction_check", "oracle_search",
    "parse_arrangement", "parse_text", "search_multinets", "validate_multinet", "verify_certificate",
    "verify_residues", "verify_zone_partition", "zones",
]
