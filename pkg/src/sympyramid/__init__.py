"""Symbolic pyramidal clustering: CAPS and CAPSO."""
from .engine import CapsEngine, default_max_iter, run_caps, run_capso
from .errors import ConstructionError, DataError, PyramidError, StructureError, UsageError
from .model import NodeQuadruple, PyramidStructure
from .symbolic import (
    CategorySet,
    Interval,
    Kind,
    Modal,
    SymbolicObject,
    SymbolicTable,
    Variable,
    contains,
    degree_of_generality,
    extent_boolean,
    extent_modal,
    generalize,
    is_complete,
    match_degree,
)
from .validation import ValidationReport, check_pyramid, find_compatible_order

__version__ = "0.1.0"

__all__ = [
    "CapsEngine", "default_max_iter", "run_caps", "run_capso",
    "ConstructionError", "DataError", "PyramidError", "StructureError", "UsageError",
    "NodeQuadruple", "PyramidStructure",
    "CategorySet", "Interval", "Kind", "Modal", "SymbolicObject", "SymbolicTable", "Variable",
    "contains", "degree_of_generality", "extent_boolean", "extent_modal", "generalize",
    "is_complete", "match_degree",
    "ValidationReport", "check_pyramid", "find_compatible_order",
]
