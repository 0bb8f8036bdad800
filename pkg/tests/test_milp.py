import math
import random
from itertools import combinations
from pathlib import Path

import pytest

from dbnest.dotgrid import Board, InfeasibleInstanceError, Instance, PieceType
from dbnest.geometry import Polygon
from dbnest.milp import (
    MODEL_KINDS,
    CliqueCover,
    LinearModel,
    ModelInputError,
    build_binary_db_model,
    build_binary_dbcc_model,
    build_db_model,
    build_dbcc_model,
    build_model,
    check_assignment,
    decoded_length,
    edge_clique_cover,
    emit,
    emit_lp,
    emit_mps,
    is_clique,
    parse,
    solution_assignment,
    vertex_clique_cover,
)
from dbnest.milp.formats import mangle_names
from dbnest.pipeline import prepare
from dbnest.solver import SolverConfig, solve
from dbnest.synthetic import random_instance

from conftest import prepared

GOLDEN = Path(__file__).parent / "golden"


def graph(n, edges):
    nb = [0] * n
    for a, b in edges:
        nb[a] |= 1 << b
        nb[b] |= 1 << a
    return nb


def covered(cover):
    return {e for c in cover for e in combinations(sorted(c), 2)}


def test_edge_cover_small_graphs():
    assert edge_clique_cover(graph(3, [(0, 1), (1, 2), (0, 2)])).cliques == [[0, 1, 2]]
    assert sorted(edge_clique_cover(graph(3, [(0, 1), (1, 2)])).cliques) == [[0, 1], [1, 2]]


@pytest.mark.parametrize("seed", range(10))
def test_edge_cover_random(seed):
    rng = random.Random(seed)
    edges = [(a, b) for a, b in combinations(range(20), 2) if rng.random() < 0.3]
    nb = graph(20, edges)
    for prune in (False, True):
        cover = edge_clique_cover(nb, prune=prune)
        assert all(is_clique(nb, c) for c in cover)
        assert covered(cover) == set(edges)


def test_vertex_cover_cases():
    nb = graph(3, [(1, 2)])
    assert len(vertex_clique_cover(nb, [1, 1, 1], 1)) == 0
    assert vertex_clique_cover(nb, [1, 5, 6], 1).cliques == [[1, 2]]


@pytest.mark.parametrize("seed", range(10))
def test_vertex_cover_random(seed):
    rng = random.Random(seed)
    edges = [(a, b) for a, b in combinations(range(25), 2) if rng.random() < 0.4]
    nb = graph(25, edges)
    bounds = [rng.randint(1, 6) for _ in range(25)]
    cover = vertex_clique_cover(nb, bounds, 3)
    members = [v for c in cover for v in c]
    assert sorted(members) == [v for v in range(25) if bounds[v] > 3]
    assert all(is_clique(nb, c) for c in cover)


def test_db_counts_three():
    p = prepared("three")
    m = build_db_model(p.inst, p.table, p.nbrs, p.trivial_lb)
    assert (m.n_binary, m.n_continuous) == (61, 1)
    assert sum(c.name.startswith("e_") for c in m.constraints) == 1266
    assert sum(c.name.startswith("fit_") for c in m.constraints) == 61
    assert sum(c.name.startswith("dem_") for c in m.constraints) == 3


def test_binary_counts_three():
    p = prepared("three")
    for kind in ("bdb", "bdbcc"):
        m = build_model(kind, p.inst, p.table, p.nbrs, 6)
        assert m.n_binary == 62 and m.n_continuous == 0


def test_binary_coefficients():
    p = prepared("threep2")
    m = build_model("bdbcc", p.inst, p.table, p.nbrs, p.trivial_lb)
    coefs = {c for k in m.constraints for c, _ in k.terms}
    # big-N activation terms sit on the left with a negative sign
    assert coefs <= {1.0, -1.0, -float(p.inst.N)}


def test_one_piece_one_dot():
    sq = Polygon(((0, 0), (3, 0), (3, 3), (0, 3)))
    p = prepare(Instance(Board(3, 3), [PieceType(sq, 1)]))
    m = build_db_model(p.inst, p.table, p.nbrs, p.trivial_lb)
    assert m.n_binary == 1 and [c.name for c in m.constraints] == ["fit_0", "dem_0"]


def test_empty_ladder_model():
    sq = Polygon(((0, 0), (3, 0), (3, 3), (0, 3)))
    p = prepare(Instance(Board(3, 3), [PieceType(sq, 1)]))
    m = build_model("bdb", p.inst, p.table, p.nbrs, p.trivial_lb)
    assert not m.meta["z"]
    vals = [1.0]
    assert not check_assignment(m, {"x_0_0_0": 1.0})
    assert decoded_length(m, vals) == 3


def test_singleton_cover_degenerates_to_edges():
    p = prepared("three")
    pairs = CliqueCover([list(e) for e in p.matrix.edges()])
    cc = build_binary_dbcc_model(p.inst, p.table, pairs, p.ladder)
    db = build_binary_db_model(p.inst, p.table, p.nbrs, p.ladder)
    assert cc.structure() == db.structure()


def test_check_assignment_examples():
    p = prepared("three")
    m = build_db_model(p.inst, p.table, p.nbrs, p.trivial_lb)
    zero = {v.name: 0.0 for v in m.variables}
    zero["L"] = p.trivial_lb
    bad = check_assignment(m, zero)
    assert len(bad) == 3 and all(v.name.startswith("dem_") for v in bad)
    v, w = next(p.matrix.edges())
    two = dict(zero)
    two[m.variables[v].name] = two[m.variables[w].name] = 1.0
    assert any(x.name == f"e_{v}_{w}" for x in check_assignment(m, two))
    with pytest.raises(ModelInputError):
        check_assignment(m, {})


@pytest.mark.parametrize("name", ["three", "threep3w9"])
def test_optimum_satisfies_all_models(name):
    p = prepared(name)
    res, inc = solve(p.state, p.trivial_lb, SolverConfig(time_limit=60))
    for kind in MODEL_KINDS:
        m = build_model(kind, p.inst, p.table, p.nbrs, p.trivial_lb)
        a = solution_assignment(m, p.table, inc.placements)
        assert check_assignment(m, a) == []
        vals = [a[v.name] for v in m.variables]
        assert decoded_length(m, vals) == res.ub


def test_golden_files():
    m = LinearModel(name="one")
    x = m.add_var("x")
    m.add_constraint("c1", [(1.0, x)], "<=", 1)
    m.add_constraint("c2", [(2.0, x)], "=", 2)
    m.objective = [(1.0, x)]
    assert emit_lp(m) == (GOLDEN / "one.lp").read_text()
    text = emit_mps(m)
    assert text == (GOLDEN / "one.mps").read_text()
    rows = text.split("ROWS\n")[1].split("COLUMNS")[0].split("\n")
    assert [r.split()[0] for r in rows if r] == ["N", "L", "E"]


@pytest.mark.parametrize("fmt", ["lp", "mps", "freemps"])
@pytest.mark.parametrize("name,kind", [(n, k) for n in ("three", "threep2") for k in MODEL_KINDS])
def test_round_trip(fmt, name, kind):
    p = prepared(name)
    m = build_model(kind, p.inst, p.table, p.nbrs, p.trivial_lb)
    back = parse(emit(m, fmt), fmt)
    assert back.structure() == m.structure()
    assert [v.name for v in back.variables] == [v.name for v in m.variables]
    assert [c.name for c in back.constraints] == [c.name for c in m.constraints]


def test_round_trip_irrational_coefficients():
    p = prepared("three", True)
    m = build_model("dbcc", p.inst, p.table, p.nbrs, p.trivial_lb)
    for fmt, tol in (("lp", 0.0), ("freemps", 0.0), ("mps", 1e-9)):
        back = parse(emit(m, fmt), fmt)
        A0, s0, b0 = m.dense()
        A1, s1, b1 = back.dense()
        assert (s0 == s1).all()
        assert abs(A0 - A1).max() <= tol * max(1.0, abs(A0).max())
        assert abs(b0 - b1).max() <= tol * max(1.0, abs(b0).max())


def test_fixed_mps_name_limits():
    p = prepared("three")
    text = emit(build_db_model(p.inst, p.table, p.nbrs, p.trivial_lb), "mps")
    for line in text.split("COLUMNS\n")[1].split("RHS\n")[0].splitlines():
        assert len(line[4:12].strip()) <= 8 and line[12:14] == "  "


def test_mangling_collision_check():
    out = mangle_names(["C0", "a_very_long_name", "another_long_name"], "C")
    assert out[0] == "C0" and len(set(out)) == 3 and all(len(x) <= 8 for x in out)
    with pytest.raises(ModelInputError):
        mangle_names(["dup", "dup"], "C")


def test_models_equivalent_small():
    rng = random.Random(23)
    n = 0
    while n < 10:
        inst = random_instance(rng)
        try:
            p = prepare(inst)
        except InfeasibleInstanceError:
            continue
        if p.table.V > 10:
            continue
        n += 1
        res, inc = solve(p.state, p.trivial_lb)
        for kind in MODEL_KINDS:
            m = build_model(kind, inst, p.table, p.nbrs, p.trivial_lb)
            if inc.placements:
                assert check_assignment(m, solution_assignment(m, p.table, inc.placements)) == []
