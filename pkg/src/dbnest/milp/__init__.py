"""Integer-programming formulations, clique covers and model text formats."""

from .builders import (
    build_binary_db_model,
    build_binary_dbcc_model,
    build_db_model,
    build_dbcc_model,
    build_model,
    MODEL_KINDS,
    decoded_length,
    solution_assignment,
    var_name,
)
from .cliques import CliqueCover, edge_clique_cover, is_clique, vertex_clique_cover
from .formats import emit, emit_lp, emit_mps, parse, parse_lp, parse_mps
from .model import Constraint, LinearModel, ModelInputError, Variable, Violation, check_assignment

__all__ = [
    "CliqueCover", "Constraint", "LinearModel", "ModelInputError", "Variable", "Violation",
    "build_binary_db_model", "build_binary_dbcc_model", "build_db_model", "build_dbcc_model", "build_model", "MODEL_KINDS",
    "check_assignment", "decoded_length", "edge_clique_cover", "emit", "emit_lp", "emit_mps",
    "is_clique", "parse", "parse_lp", "parse_mps", "solution_assignment", "var_name",
    "vertex_clique_cover",
]
