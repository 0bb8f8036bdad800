"""Exact dotted-board solvers for irregular strip packing."""

from .conflict import BitVector, ConflictMatrix, GlobalState, build_state, propagate
from .dotgrid import (
    Board,
    Instance,
    LengthLadder,
    PieceType,
    VariableTable,
    build_board,
    enumerate_variables,
    length_ladder,
    trivial_lower_bound,
)
from .geometry import Point2, Polygon
from .lowerbound import LowerBoundOutcome, solve_lower_bound
from .solver import Incumbent, SolveOutcome, SolverConfig, decode_solution, solve

__version__ = "0.1.0"

__all__ = [
    "BitVector", "Board", "ConflictMatrix", "GlobalState", "Incumbent", "Instance", "LengthLadder",
    "LowerBoundOutcome", "PieceType", "Point2", "Polygon", "SolveOutcome", "SolverConfig",
    "VariableTable", "build_board", "build_state", "decode_solution", "enumerate_variables",
    "length_ladder", "propagate", "solve", "solve_lower_bound", "trivial_lower_bound",
]
