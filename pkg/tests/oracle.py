"""Exhaustive reference solver built only on the geometry kernel.

It does not use stencils, the variable table or the conflict matrix:
positions are all grid dots whose placed polygon lies inside the board,
overlaps come from the polygon predicate and the length of a layout is the
rightmost vertex coordinate.
"""

from __future__ import annotations

import math
from itertools import combinations

from dbnest.dotgrid import Instance, placed_overlap
from dbnest.geometry import EPS_GEOM, Point2


def positions(inst: Instance, t: int) -> list[tuple[int, Point2, float]]:
    """(rotation id, dot point, rightmost x) of every contained placement."""
    b = inst.board
    pt = inst.types[t]
    out = []
    for k, poly in enumerate(pt.oriented):
        loc = poly.local()
        for c in range(b.cols):
            for r in range(b.rows):
                x, y = c * b.gx, r * b.gy
                xs = [x + v.x for v in loc]
                ys = [y + v.y for v in loc]
                if min(xs) >= -EPS_GEOM and max(xs) <= b.length_ub + EPS_GEOM and min(ys) >= -EPS_GEOM \
                        and max(ys) <= b.width + EPS_GEOM:
                    out.append((k, Point2(x, y), max(xs)))
    return out


def brute_force(inst: Instance):
    """(optimal length, layout) or (None, None) when nothing fits."""
    pos = {t: positions(inst, t) for t in range(inst.T)}
    slots = [(t, i) for t in range(inst.T) for i in range(inst.types[t].demand)]
    cache: dict = {}

    def clash(a, b) -> bool:
        key = (a, b)
        if key not in cache:
            (t, i), (u, j) = a, b
            ka, pa, _ = pos[t][i]
            kb, pb, _ = pos[u][j]
            cache[key] = placed_overlap(inst, t, ka, pa, u, kb, pb)
        return cache[key]

    # same-type copies are unordered: choose index combinations per type
    choices = [list(combinations(range(len(pos[t])), inst.types[t].demand)) for t in range(inst.T)]
    best = [math.inf, None]

    def rec(t: int, chosen: list[tuple[int, int]], length: float):
        if t == inst.T:
            if length < best[0]:
                best[0], best[1] = length, list(chosen)
            return
        for combo in choices[t]:
            new = [(t, i) for i in combo]
            ok = all(not clash(a, b) for a, b in combinations(new, 2)) and \
                all(not clash(a, b) for a in chosen for b in new)
            if ok:
                ln = max([length] + [pos[t][i][2] for i in combo])
                rec(t + 1, chosen + new, ln)

    rec(0, [], -math.inf)
    if best[1] is None:
        return None, None
    return best[0], [(t, pos[t][i]) for t, i in best[1]]


def feasible_placement_sets(inst: Instance, table) -> set[frozenset[int]]:
    """All sets of table variables forming a complete non-overlapping layout."""
    b = inst.board
    pts = {}
    for v, var in enumerate(table.vars):
        c, r = b.dot_colrow(var.dot)
        pts[v] = Point2(c * b.gx, r * b.gy)
    by_type = {t: list(range(*table.type_ranges[t])) for t in range(inst.T)}
    out = set()

    def ok(v, w):
        a, c = table.vars[v], table.vars[w]
        return not placed_overlap(inst, a.type_id, a.rotation_id, pts[v], c.type_id, c.rotation_id, pts[w])

    def rec(t, chosen):
        if t == inst.T:
            out.add(frozenset(chosen))
            return
        for combo in combinations(by_type[t], inst.types[t].demand):
            if all(ok(a, c) for a, c in combinations(combo, 2)) and all(ok(a, c) for a in chosen for c in combo):
                rec(t + 1, chosen + list(combo))

    rec(0, [])
    return out
