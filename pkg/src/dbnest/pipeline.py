"""Build everything the solvers and model builders need from an instance."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .conflict import (
    DEFAULT_MEMORY_BUDGET,
    ConflictMatrix,
    GlobalState,
    build_conflict_matrix,
    conflict_neighbors,
    init_global_state,
)
from .dotgrid import Instance, LengthLadder, VariableTable, enumerate_variables, length_ladder, trivial_lower_bound


@dataclass
class Prepared:
    inst: Instance
    table: VariableTable
    nbrs: list[int]
    edges: int
    matrix: ConflictMatrix
    state: GlobalState
    trivial_lb: float
    ladder: LengthLadder
    build_time: float


def prepare(inst: Instance, memory_budget: int = DEFAULT_MEMORY_BUDGET, eps: float = 1e-9) -> Prepared:
    t0 = time.perf_counter()
    table = enumerate_variables(inst)
    nbrs, edges = conflict_neighbors(inst, table)
    matrix = build_conflict_matrix(table, nbrs, memory_budget)
    state = init_global_state(inst, matrix, table)
    lb = trivial_lower_bound(inst)
    ladder = length_ladder(table, lb, eps)
    return Prepared(inst, table, nbrs, edges, matrix, state, lb, ladder, time.perf_counter() - t0)
