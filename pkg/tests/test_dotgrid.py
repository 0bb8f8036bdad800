import math
import random

import pytest

from dbnest.dotgrid import (
    Board,
    ConfigError,
    InfeasibleInstanceError,
    Instance,
    PieceType,
    build_board,
    compute_ifp,
    compute_nfp_dots,
    compute_nfp_stencil,
    compute_stencils,
    enumerate_variables,
    length_ladder,
    placed_overlap,
    trivial_lower_bound,
)
from dbnest.geometry import Point2, Polygon
from dbnest.instances import builtin_instance
from dbnest.synthetic import random_instance

SQ3 = Polygon(((0, 0), (3, 0), (3, 3), (0, 3)))
SQ2 = Polygon(((0, 0), (2, 0), (2, 2), (0, 2)))
TRI = Polygon(((0, 0), (4, 0), (2, 3)))


def inst_of(W, L, *types):
    return Instance(Board(W, L), [PieceType(p, q) for p, q in types])


@pytest.mark.parametrize("W,L,cols,rows", [(8, 10, 11, 9), (9, 9, 10, 10), (7, 7, 8, 8)])
def test_board_counts(W, L, cols, rows):
    b = build_board(W, L, 1)
    assert (b.cols, b.rows, b.dots) == (cols, rows, cols * rows)


def test_board_column_major():
    b = build_board(8, 10)
    assert b.dot_index(2, 3) == 2 * 9 + 3
    assert b.dot_colrow(21) == (2, 3)


@pytest.mark.parametrize("args", [(0, 5), (5, -1), (5, 5, 0)])
def test_board_rejects_nonpositive(args):
    with pytest.raises(ConfigError):
        build_board(*args)


def test_trivial_lower_bound():
    assert trivial_lower_bound(builtin_instance("three")) == 4
    assert trivial_lower_bound(inst_of(3, 9, (SQ3, 1))) == 3


def test_trivial_bound_family_column():
    got = [trivial_lower_bound(builtin_instance(n)) for n in ("three", "threep2", "threep2w9", "threep3", "threep3w9")]
    assert got == [4, 7, 6, 10, 8]


def test_ifp_counts():
    assert len(compute_ifp(inst_of(8, 10, (TRI, 1)), 0, 0)) == 42
    assert compute_ifp(inst_of(3, 3, (SQ3, 1)), 0, 0) == [0]
    assert len(compute_ifp(inst_of(9, 13, (SQ3, 1)), 0, 0)) == 77


def test_ifp_explicit_dots():
    inst = inst_of(8, 10, (TRI, 1))
    dots = [Point2(0, 0), Point2(6, 5), Point2(6.5, 0), Point2(0.5, 5.5)]
    assert compute_ifp(inst, 0, 0, dots) == [0, 1]


def test_ifp_containment_property():
    rng = random.Random(5)
    for _ in range(40):
        inst = random_instance(rng)
        b = inst.board
        for t, pt in enumerate(inst.types):
            for k, poly in enumerate(pt.oriented):
                ifp = set(compute_ifp(inst, t, k))
                loc = poly.local()
                for d in range(b.dots):
                    c, r = b.dot_colrow(d)
                    inside = all(-1e-9 <= c + v.x <= b.length_ub + 1e-9 and -1e-9 <= r + v.y <= b.width + 1e-9 for v in loc)
                    assert inside == (d in ifp)


def test_square_stencil():
    st = compute_nfp_stencil(inst_of(9, 9, (SQ3, 2)), 0, 0, 0, 0)
    assert st == {(dc, dr) for dc in range(-2, 3) for dr in range(-2, 3)}


def test_triangle_square_stencil():
    inst = inst_of(8, 10, (TRI, 1), (SQ2, 1))
    st = compute_nfp_stencil(inst, 0, 0, 1, 0)
    assert (1, 1) in st and (4, 0) not in st and (0, 0) in st


def test_stencils_match_oracle_and_are_antisymmetric():
    rng = random.Random(11)
    for _ in range(25):
        inst = random_instance(rng)
        stencils = compute_stencils(inst)
        for (t, ka, u, kb), st in stencils.items():
            assert stencils[(u, kb, t, ka)] == {(-a, -b) for a, b in st}
            for dc in range(-7, 8):
                for dr in range(-7, 8):
                    want = placed_overlap(inst, t, ka, Point2(0, 0), u, kb, Point2(dc, dr))
                    assert ((dc, dr) in st) == want, (t, ka, u, kb, dc, dr)


def test_nfp_dots_explicit_grid():
    inst = inst_of(8, 10, (TRI, 1), (SQ2, 1))
    dots = [Point2(x, y) for x in range(9) for y in range(7)]
    got = {(dots[i].x, dots[i].y) for i in compute_nfp_dots(inst, 0, 0, Point2(0, 0), 1, 0, dots)}
    st = compute_nfp_stencil(inst, 0, 0, 1, 0)
    assert got == {(x, y) for x, y in st if 0 <= x <= 8 and 0 <= y <= 6}


def test_variable_counts_three():
    assert enumerate_variables(builtin_instance("three")).V == 61


def test_variable_single():
    assert enumerate_variables(inst_of(3, 3, (SQ3, 1))).V == 1


def test_variable_ordering():
    rng = random.Random(3)
    for _ in range(30):
        inst = random_instance(rng)
        try:
            table = enumerate_variables(inst)
        except InfeasibleInstanceError:
            continue
        areas = [inst.types[t].area for t in table.type_order]
        assert areas == sorted(areas, reverse=True)
        for t, (s, e) in table.type_ranges.items():
            keys = [(v.length_bound, v.dot, v.rotation_id) for v in table.vars[s:e]]
            assert keys == sorted(keys)
            assert all(v.type_id == t for v in table.vars[s:e])
        assert len(table.index) == table.V
        for v in table.vars:
            c, _ = inst.board.dot_colrow(v.dot)
            assert v.length_bound == c * inst.board.gx + inst.types[v.type_id].metrics[v.rotation_id].x_max


def test_fits_nowhere():
    with pytest.raises(InfeasibleInstanceError):
        enumerate_variables(inst_of(2, 9, (SQ3, 1)))


def test_length_ladder():
    assert length_ladder([4, 4, 5, 6], 4).values == (5, 6)
    assert length_ladder([3, 4], 4).M == 0
    lad = length_ladder([4, 5, 6], 4)
    assert lad.decode(0) == 4 and lad.decode(2) == 6


def test_ladder_three():
    inst = builtin_instance("three")
    table = enumerate_variables(inst)
    assert length_ladder(table, 6).M == 1
    lad = length_ladder(table, trivial_lower_bound(inst))
    assert lad.M <= table.V and set(lad.values) <= set(table.bounds)


def test_rotation_lengths_use_shortest_orientation():
    bar = Polygon(((0, 0), (4, 0), (4, 1), (0, 1)))
    inst = Instance(Board(4, 8), [PieceType(bar, 1, (0.0, math.pi / 2))])
    assert trivial_lower_bound(inst, snap=False) == 1
