"""The four dotted-board formulations as :class:`LinearModel` objects.

Placement variables keep the order of the :class:`VariableTable`; variable
``v`` of the table is model column ``v`` in every formulation.
"""

from __future__ import annotations

from typing import Sequence

from ..dotgrid import Instance, LengthLadder, VariableTable
from ..conflict import iter_bits
from .cliques import CliqueCover
from .model import LinearModel


def var_name(table: VariableTable, v: int) -> str:
    var = table.vars[v]
    return f"x_{var.type_id}_{var.rotation_id}_{var.dot}"


def _placement_columns(model: LinearModel, table: VariableTable) -> None:
    for v in range(table.V):
        model.add_var(var_name(table, v))


def _demands(model: LinearModel, inst: Instance, table: VariableTable) -> None:
    for t in table.type_order:
        s, e = table.type_ranges[t]
        model.add_constraint(f"dem_{t}", [(1.0, v) for v in range(s, e)], "=", inst.types[t].demand)


def _edges(model: LinearModel, nbrs: Sequence[int]) -> None:
    for v, nb in enumerate(nbrs):
        for w in iter_bits(nb >> (v + 1)):
            w += v + 1
            model.add_constraint(f"e_{v}_{w}", [(1.0, v), (1.0, w)], "<=", 1)


def _edge_cliques(model: LinearModel, ecc: CliqueCover) -> None:
    for k, clique in enumerate(ecc):
        model.add_constraint(f"ec_{k}", [(1.0, v) for v in clique], "<=", 1)


def _ladder(model: LinearModel, inst: Instance, table: VariableTable, ladder: LengthLadder, eps: float) -> list[int]:
    z = [model.add_var(f"z_{m + 1}") for m in range(ladder.M)]
    for m in range(1, ladder.M):
        model.add_constraint(f"chain_{m + 1}", [(1.0, z[m]), (-1.0, z[m - 1])], "<=", 0)
    N = inst.N
    for m, level in enumerate(ladder.values):
        terms = [(1.0, v) for v, b in enumerate(table.bounds) if b >= level - eps]
        model.add_constraint(f"act_{m + 1}", terms + [(-float(N), z[m])], "<=", 0)
    model.objective = [(1.0, j) for j in z]
    return z


def build_db_model(inst: Instance, table: VariableTable, nbrs: Sequence[int], lower_bound: float) -> LinearModel:
    """min L with per-variable inner-fit rows, demands and edge inequalities."""
    m = LinearModel(name=f"{inst.name}_db")
    _placement_columns(m, table)
    L = m.add_var("L", "continuous", lower_bound, inst.board.length_ub)
    for v, b in enumerate(table.bounds):
        m.add_constraint(f"fit_{v}", [(b, v), (-1.0, L)], "<=", 0)
    _demands(m, inst, table)
    _edges(m, nbrs)
    m.objective = [(1.0, L)]
    m.meta.update(kind="db", length_var=L, lower_bound=lower_bound)
    return m


def build_dbcc_model(
    inst: Instance, table: VariableTable, ecc: CliqueCover, vcc: CliqueCover, lower_bound: float
) -> LinearModel:
    """Clique-covering variant: one inner-fit row per vertex clique, one
    packing row per edge clique."""
    m = LinearModel(name=f"{inst.name}_dbcc")
    _placement_columns(m, table)
    L = m.add_var("L", "continuous", lower_bound, inst.board.length_ub)
    bounds = table.bounds
    for k, clique in enumerate(vcc):
        terms = [(bounds[v] - lower_bound, v) for v in clique]
        m.add_constraint(f"vc_{k}", terms + [(-1.0, L)], "<=", -lower_bound)
    _demands(m, inst, table)
    _edge_cliques(m, ecc)
    m.objective = [(1.0, L)]
    m.meta.update(kind="dbcc", length_var=L, lower_bound=lower_bound)
    return m


def build_binary_db_model(
    inst: Instance, table: VariableTable, nbrs: Sequence[int], ladder: LengthLadder, eps: float = 1e-9
) -> LinearModel:
    """All-binary model: ladder variables z_m replace the length."""
    m = LinearModel(name=f"{inst.name}_bdb")
    _placement_columns(m, table)
    _demands(m, inst, table)
    _edges(m, nbrs)
    z = _ladder(m, inst, table, ladder, eps)
    m.meta.update(kind="bdb", ladder=ladder, z=z, lower_bound=ladder.trivial_lb)
    return m


def build_binary_dbcc_model(
    inst: Instance, table: VariableTable, ecc: CliqueCover, ladder: LengthLadder, eps: float = 1e-9
) -> LinearModel:
    m = LinearModel(name=f"{inst.name}_bdbcc")
    _placement_columns(m, table)
    _demands(m, inst, table)
    _edge_cliques(m, ecc)
    z = _ladder(m, inst, table, ladder, eps)
    m.meta.update(kind="bdbcc", ladder=ladder, z=z, lower_bound=ladder.trivial_lb)
    return m


def decoded_length(model: LinearModel, values: Sequence[float]) -> float:
    """Packing length represented by a full assignment of ``model``."""
    kind = model.meta["kind"]
    if kind in ("db", "dbcc"):
        return values[model.meta["length_var"]]
    z = round(model.objective_value(values))
    return model.meta["ladder"].decode(z)


def solution_assignment(model: LinearModel, table: VariableTable, selected: Sequence[int]) -> dict[str, float]:
    """Assignment realizing a set of selected placement variables, with the
    auxiliary length or ladder variables at their smallest feasible values."""
    values = [0.0] * len(model.variables)
    for v in selected:
        values[v] = 1.0
    top = max((table.bounds[v] for v in selected), default=model.meta["lower_bound"])
    kind = model.meta["kind"]
    if kind in ("db", "dbcc"):
        values[model.meta["length_var"]] = max(top, model.meta["lower_bound"])
    else:
        ladder = model.meta["ladder"]
        for j, level in zip(model.meta["z"], ladder.values):
            values[j] = 1.0 if top >= level - 1e-9 else 0.0
    return {var.name: x for var, x in zip(model.variables, values)}


MODEL_KINDS = ("db", "dbcc", "bdb", "bdbcc")


def build_model(
    kind: str, inst: Instance, table: VariableTable, nbrs: Sequence[int], lower_bound: float, eps: float = 1e-9
) -> LinearModel:
    """Build formulation ``kind``, computing whatever covers or ladder it needs."""
    from ..dotgrid import length_ladder
    from .cliques import edge_clique_cover, vertex_clique_cover

    if kind == "db":
        return build_db_model(inst, table, nbrs, lower_bound)
    if kind == "dbcc":
        ecc = edge_clique_cover(nbrs)
        vcc = vertex_clique_cover(nbrs, table.bounds, lower_bound, eps)
        return build_dbcc_model(inst, table, ecc, vcc, lower_bound)
    ladder = length_ladder(table, lower_bound, eps)
    if kind == "bdb":
        return build_binary_db_model(inst, table, nbrs, ladder, eps)
    if kind == "bdbcc":
        return build_binary_dbcc_model(inst, table, edge_clique_cover(nbrs), ladder, eps)
    raise ValueError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")
