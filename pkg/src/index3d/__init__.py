"""Exact 3D-index of ideal triangulations and quantum-torus elements."""
from .errors import Index3DError
from .expr import parse_element
from .indexer import (
    IndexResult,
    SummationOptions,
    check_quotient_relations,
    dgg_index,
    index_element,
    index_monomial,
)
from .pachner import apply_move, build_move_map, load_descriptor, verify_index_compatibility
from .qseries import EXACT, QSeries
from .qtorus import TorusElement, omega
from .tetindex import j_degree, j_index, tet_index, tet_index_numeric
from .triangulation import Triangulation, load, validate_triangulation

__all__ = [
    "EXACT", "Index3DError", "IndexResult", "QSeries", "SummationOptions", "TorusElement", "Triangulation",
    "apply_move", "build_move_map", "check_quotient_relations", "dgg_index", "index_element", "index_monomial",
    "j_degree", "j_index", "load", "load_descriptor", "omega", "parse_element", "tet_index", "tet_index_numeric",
    "validate_triangulation", "verify_index_compatibility",
]
