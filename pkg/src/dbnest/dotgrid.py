"""Board discretization, inner-fit dot sets, no-fit dot stencils, placement
variable enumeration and the feasible-length ladder."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .geometry import (
    EPS_GEOM,
    ConvexPart,
    PieceMetrics,
    Point2,
    Polygon,
    convex_decompose,
    convex_nfp,
    piece_metrics,
    pieces_overlap,
    rotate_polygon,
    strictly_inside_convex,
)


class ConfigError(ValueError):
    pass


class InfeasibleInstanceError(ValueError):
    pass


@dataclass(frozen=True)
class Board:
    width: float
    length_ub: float
    gx: float = 1.0
    gy: float = 1.0

    def __post_init__(self):
        for name in ("width", "length_ub", "gx", "gy"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"board {name} must be positive, got {getattr(self, name)}")

    @property
    def cols(self) -> int:
        return math.floor(self.length_ub / self.gx + EPS_GEOM) + 1

    @property
    def rows(self) -> int:
        return math.floor(self.width / self.gy + EPS_GEOM) + 1

    @property
    def dots(self) -> int:
        return self.cols * self.rows

    def dot_index(self, col: int, row: int) -> int:
        return col * self.rows + row

    def dot_colrow(self, d: int) -> tuple[int, int]:
        return divmod(d, self.rows)

    def dot_point(self, d: int) -> Point2:
        c, r = self.dot_colrow(d)
        return Point2(c * self.gx, r * self.gy)


def build_board(W: float, L_ub: float, gx: float = 1.0, gy: float | None = None) -> Board:
    return Board(W, L_ub, gx, gx if gy is None else gy)


@dataclass
class PieceType:
    polygon: Polygon
    demand: int = 1
    rotations: tuple[float, ...] = (0.0,)
    name: str = ""

    def __post_init__(self):
        if self.demand < 1:
            raise ConfigError(f"piece {self.name!r}: demand must be >= 1")
        if not self.rotations:
            raise ConfigError(f"piece {self.name!r}: empty rotation set")
        self.rotations = tuple(float(r) for r in self.rotations)

    @cached_property
    def oriented(self) -> list[Polygon]:
        return [rotate_polygon(self.polygon, th) for th in self.rotations]

    @cached_property
    def parts(self) -> list[list[ConvexPart]]:
        """Convex parts per rotation, in coordinates relative to the reference."""
        out = []
        for poly in self.oriented:
            rx, ry = poly.reference
            out.append([c.translated(-rx, -ry) for c in convex_decompose(poly)])
        return out

    @cached_property
    def metrics(self) -> list[PieceMetrics]:
        return [piece_metrics(p) for p in self.oriented]

    @property
    def area(self) -> float:
        return self.metrics[0].area


@dataclass
class Instance:
    board: Board
    types: list[PieceType]
    name: str = "instance"

    def __post_init__(self):
        if not self.types:
            raise ConfigError("instance needs at least one piece type")

    @property
    def T(self) -> int:
        return len(self.types)

    @property
    def N(self) -> int:
        return sum(t.demand for t in self.types)

    @property
    def total_area(self) -> float:
        return sum(t.area * t.demand for t in self.types)


def trivial_lower_bound(inst: Instance, snap: bool = True) -> float:
    """max(total area / width, longest piece); rotations may shorten a piece.

    Any packing length is the length bound of one of its placements, so with
    ``snap`` the raw value is raised to the smallest attainable bound (on
    integer data this is the ceiling).
    """
    area_lb = inst.total_area / inst.board.width
    length_lb = max(min(m.length for m in t.metrics) for t in inst.types)
    raw = max(area_lb, length_lb)
    if not snap:
        return raw
    attainable = [x for x in attainable_lengths(inst) if x >= raw - EPS_GEOM]
    return max(raw, min(attainable)) if attainable else raw


def attainable_lengths(inst: Instance) -> list[float]:
    """Every length bound c*gx + x_max over the inner-fit columns."""
    b = inst.board
    out = set()
    for pt in inst.types:
        for m in pt.metrics:
            for c in _index_range(m.x_min, b.length_ub - m.x_max, b.gx, b.cols):
                if _index_range(m.y_min, b.width - m.y_max, b.gy, b.rows):
                    out.add(c * b.gx + m.x_max)
    return sorted(out)


def _index_range(lo: float, hi: float, step: float, count: int) -> range:
    """Grid indices k in [0, count) with lo <= k*step <= hi (EPS slack)."""
    start = max(0, math.ceil((lo - EPS_GEOM) / step))
    stop = min(count - 1, math.floor((hi + EPS_GEOM) / step))
    return range(start, stop + 1) if stop >= start else range(0)


def compute_ifp(
    inst: Instance, t: int, theta_id: int, dots: Sequence[Point2] | None = None
) -> list[int]:
    """Dots where the oriented piece lies inside the board.

    With ``dots`` given, returns indices into that explicit point list
    (non-regular grids); otherwise regular-grid dot indices, ascending.
    """
    b = inst.board
    m = inst.types[t].metrics[theta_id]
    if dots is not None:
        return [
            i
            for i, (x, y) in enumerate(dots)
            if x - m.x_min >= -EPS_GEOM
            and x + m.x_max <= b.length_ub + EPS_GEOM
            and y - m.y_min >= -EPS_GEOM
            and y + m.y_max <= b.width + EPS_GEOM
        ]
    cols = _index_range(m.x_min, b.length_ub - m.x_max, b.gx, b.cols)
    rows = _index_range(m.y_min, b.width - m.y_max, b.gy, b.rows)
    return [b.dot_index(c, r) for c in cols for r in rows]


def compute_nfp_stencil(
    inst: Instance, t: int, theta_a: int, u: int, theta_b: int
) -> frozenset[tuple[int, int]]:
    """Grid offsets (dcol, drow) at which the second piece overlaps the first.

    The first piece sits with its reference at the origin; the offset is
    applied to the reference of the second. Membership is decided by strict
    interior containment in the convex no-fit polygons of the part pairs.
    """
    b = inst.board
    ma = inst.types[t].metrics[theta_a]
    mb = inst.types[u].metrics[theta_b]
    nfps = [
        convex_nfp(pa, pb)
        for pa in inst.types[t].parts[theta_a]
        for pb in inst.types[u].parts[theta_b]
    ]
    # offset window: relative placements whose bounding boxes overlap
    cols = range(
        math.floor((-ma.x_min - mb.x_max) / b.gx), math.ceil((ma.x_max + mb.x_min) / b.gx) + 1
    )
    rows = range(
        math.floor((-ma.y_min - mb.y_max) / b.gy), math.ceil((ma.y_max + mb.y_min) / b.gy) + 1
    )
    out = set()
    for dc in cols:
        for dr in rows:
            q = Point2(dc * b.gx, dr * b.gy)
            if any(strictly_inside_convex(n, q) for n in nfps):
                out.add((dc, dr))
    return frozenset(out)


def compute_nfp_dots(
    inst: Instance,
    t: int,
    theta_a: int,
    d: Point2,
    u: int,
    theta_b: int,
    dots: Sequence[Point2],
) -> list[int]:
    """Explicit-dot variant: indices of ``dots`` in the IFP of (u, theta_b)
    where the second piece overlaps the first placed at ``d``."""
    pa, pb = inst.types[t], inst.types[u]
    ifp = compute_ifp(inst, u, theta_b, dots)
    return [
        i
        for i in ifp
        if pieces_overlap(
            pa.oriented[theta_a], _abs_parts(pa, theta_a), d, pa.rotations[theta_a],
            pb.oriented[theta_b], _abs_parts(pb, theta_b), dots[i], pb.rotations[theta_b],
        )
    ]


def _abs_parts(pt: PieceType, k: int) -> list[ConvexPart]:
    rx, ry = pt.oriented[k].reference
    return [c.translated(rx, ry) for c in pt.parts[k]]


def placed_overlap(inst: Instance, t, ta, da: Point2, u, tb, db: Point2) -> bool:
    """Geometric overlap test for two placed oriented pieces."""
    pa, pb = inst.types[t], inst.types[u]
    return pieces_overlap(
        pa.oriented[ta], _abs_parts(pa, ta), da, pa.rotations[ta],
        pb.oriented[tb], _abs_parts(pb, tb), db, pb.rotations[tb],
    )


@dataclass(frozen=True)
class PlacementVariable:
    type_id: int
    dot: int
    rotation_id: int
    length_bound: float


@dataclass
class VariableTable:
    vars: list[PlacementVariable]
    type_ranges: dict[int, tuple[int, int]]
    type_order: list[int]
    instance_types: list[int]
    ifps: dict[tuple[int, int], list[int]] = field(repr=False, default_factory=dict)

    @property
    def V(self) -> int:
        return len(self.vars)

    @cached_property
    def bounds(self) -> list[float]:
        return [v.length_bound for v in self.vars]

    @cached_property
    def index(self) -> dict[tuple[int, int, int], int]:
        """(type, rotation, dot) -> variable index."""
        return {(v.type_id, v.rotation_id, v.dot): i for i, v in enumerate(self.vars)}


def type_area_order(inst: Instance) -> list[int]:
    return sorted(range(inst.T), key=lambda t: (-inst.types[t].area, t))


def enumerate_variables(inst: Instance) -> VariableTable:
    """One variable per (type, rotation, IFP dot).

    Types are laid out in non-increasing area order; inside a type the
    variables are sorted by (length bound, dot, rotation).
    """
    b = inst.board
    order = type_area_order(inst)
    ifps: dict[tuple[int, int], list[int]] = {}
    vars_: list[PlacementVariable] = []
    ranges: dict[int, tuple[int, int]] = {}
    for t in order:
        pt = inst.types[t]
        block = []
        for k in range(len(pt.rotations)):
            ifp = compute_ifp(inst, t, k)
            ifps[(t, k)] = ifp
            x_max = pt.metrics[k].x_max
            for d in ifp:
                c, _ = b.dot_colrow(d)
                block.append(PlacementVariable(t, d, k, c * b.gx + x_max))
        if not block:
            raise InfeasibleInstanceError(
                f"piece type {t} ({pt.name or 'unnamed'}) fits nowhere on the board"
            )
        block.sort(key=lambda v: (v.length_bound, v.dot, v.rotation_id))
        ranges[t] = (len(vars_), len(vars_) + len(block))
        vars_.extend(block)
    instance_types = [t for t in order for _ in range(inst.types[t].demand)]
    return VariableTable(vars_, ranges, order, instance_types, ifps)


@dataclass(frozen=True)
class LengthLadder:
    values: tuple[float, ...]
    trivial_lb: float

    @property
    def M(self) -> int:
        return len(self.values)

    def decode(self, z: int) -> float:
        """Length encoded by ``z`` enabled ladder steps."""
        return self.trivial_lb if z == 0 else self.values[z - 1]


def length_ladder(bounds: Sequence[float] | VariableTable, trivial_lb: float, eps: float = 1e-9) -> LengthLadder:
    if isinstance(bounds, VariableTable):
        bounds = bounds.bounds
    vals: list[float] = []
    for x in sorted(b for b in bounds if b > trivial_lb + eps):
        if not vals or x > vals[-1] + eps:
            vals.append(x)
    return LengthLadder(tuple(vals), trivial_lb)


def compute_stencils(inst: Instance) -> dict[tuple[int, int, int, int], frozenset]:
    """Stencils for every ordered (type, rotation) pair."""
    keys = [(t, k) for t in range(inst.T) for k in range(len(inst.types[t].rotations))]
    out = {}
    for t, ka in keys:
        for u, kb in keys:
            if (u, kb, t, ka) in out:
                out[(t, ka, u, kb)] = frozenset((-dc, -dr) for dc, dr in out[(u, kb, t, ka)])
            else:
                out[(t, ka, u, kb)] = compute_nfp_stencil(inst, t, ka, u, kb)
    return out
