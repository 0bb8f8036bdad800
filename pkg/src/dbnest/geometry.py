"""Polygon kernel: areas, rotations, extents, convex decomposition, convex
no-fit polygons and the interior-overlap predicate.

Coordinates are plain floats. Every comparison uses the absolute tolerance
``EPS_GEOM`` (board units) unless stated otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

EPS_GEOM = 1e-9
EPS_AREA_REL = 1e-9


class GeometryError(ValueError):
    """Raised on degenerate or otherwise invalid polygon input."""


class Point2(NamedTuple):
    x: float
    y: float


def _pt(p) -> Point2:
    return p if isinstance(p, Point2) else Point2(float(p[0]), float(p[1]))


def cross(o: Point2, a: Point2, b: Point2) -> float:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def signed_area(vertices: Sequence[Point2]) -> float:
    n = len(vertices)
    s = 0.0
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return 0.5 * s


def _segments_cross(p1, p2, q1, q2) -> bool:
    """Proper or touching intersection of two closed segments."""
    d1 = cross(q1, q2, p1)
    d2 = cross(q1, q2, p2)
    d3 = cross(p1, p2, q1)
    d4 = cross(p1, p2, q2)
    if ((d1 > EPS_GEOM and d2 < -EPS_GEOM) or (d1 < -EPS_GEOM and d2 > EPS_GEOM)) and (
        (d3 > EPS_GEOM and d4 < -EPS_GEOM) or (d3 < -EPS_GEOM and d4 > EPS_GEOM)
    ):
        return True

    def on_seg(a, b, c, d):
        return abs(d) <= EPS_GEOM and (
            min(a.x, b.x) - EPS_GEOM <= c.x <= max(a.x, b.x) + EPS_GEOM
            and min(a.y, b.y) - EPS_GEOM <= c.y <= max(a.y, b.y) + EPS_GEOM
        )

    return (
        on_seg(q1, q2, p1, d1)
        or on_seg(q1, q2, p2, d2)
        or on_seg(p1, p2, q1, d3)
        or on_seg(p1, p2, q2, d4)
    )


def is_simple(vertices: Sequence[Point2]) -> bool:
    n = len(vertices)
    edges = [(vertices[i], vertices[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_cross(*edges[i], *edges[j]):
                return False
    return True


@dataclass(frozen=True)
class Polygon:
    """Simple counter-clockwise polygon with a reference point.

    ``reference`` defaults to the bottom-left corner of the bounding box.
    Clockwise input is reoriented; degenerate or self-intersecting input
    raises :class:`GeometryError`.
    """

    vertices: tuple[Point2, ...]
    reference: Point2 = None  # type: ignore[assignment]

    def __post_init__(self):
        verts = [_pt(v) for v in self.vertices]
        dedup = []
        for v in verts:
            if not dedup or math.dist(v, dedup[-1]) > EPS_GEOM:
                dedup.append(v)
        if len(dedup) > 1 and math.dist(dedup[0], dedup[-1]) <= EPS_GEOM:
            dedup.pop()
        if len(dedup) < 3:
            raise GeometryError("polygon needs at least 3 distinct vertices")
        area = signed_area(dedup)
        if abs(area) <= EPS_GEOM:
            raise GeometryError(f"degenerate polygon (area {area:g})")
        if area < 0:
            dedup.reverse()
        object.__setattr__(self, "vertices", tuple(dedup))
        if self.reference is None:
            object.__setattr__(
                self,
                "reference",
                Point2(min(v.x for v in dedup), min(v.y for v in dedup)),
            )
        else:
            object.__setattr__(self, "reference", _pt(self.reference))

    def validate(self) -> "Polygon":
        if not is_simple(self.vertices):
            raise GeometryError("polygon is self-intersecting")
        return self

    def local(self) -> list[Point2]:
        """Vertices relative to the reference point."""
        rx, ry = self.reference
        return [Point2(x - rx, y - ry) for x, y in self.vertices]

    def translated(self, dx: float, dy: float) -> "Polygon":
        return Polygon(
            tuple(Point2(x + dx, y + dy) for x, y in self.vertices),
            Point2(self.reference.x + dx, self.reference.y + dy),
        )


@dataclass(frozen=True)
class PieceMetrics:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    length: float
    area: float


@dataclass(frozen=True)
class ConvexPart:
    vertices: tuple[Point2, ...] = field()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(_pt(v) for v in self.vertices))

    @property
    def area(self) -> float:
        return signed_area(self.vertices)

    def translated(self, dx: float, dy: float) -> "ConvexPart":
        return ConvexPart(tuple(Point2(x + dx, y + dy) for x, y in self.vertices))


def polygon_area(p: Polygon) -> float:
    a = signed_area(p.vertices)
    if a <= EPS_GEOM:
        raise GeometryError(f"degenerate polygon (area {a:g})")
    return a


def _cos_sin(theta: float) -> tuple[float, float]:
    # exact values at quarter turns keep integer geometry integral
    quarter = theta / (math.pi / 2)
    k = round(quarter)
    if abs(quarter - k) < 1e-12:
        return ((1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0))[k % 4]
    return math.cos(theta), math.sin(theta)


def rotate_polygon(p: Polygon, theta: float) -> Polygon:
    """Rotate counter-clockwise by ``theta`` radians about the reference."""
    c, s = _cos_sin(theta)
    if c == 1.0 and s == 0.0:
        return p
    rx, ry = p.reference
    verts = []
    for x, y in p.vertices:
        dx, dy = x - rx, y - ry
        verts.append(Point2(rx + c * dx - s * dy, ry + s * dx + c * dy))
    return Polygon(tuple(verts), p.reference)


def piece_metrics(p: Polygon) -> PieceMetrics:
    rx, ry = p.reference
    xs = [v.x for v in p.vertices]
    ys = [v.y for v in p.vertices]
    x_min = rx - min(xs)
    x_max = max(xs) - rx
    return PieceMetrics(
        x_min=x_min,
        x_max=x_max,
        y_min=ry - min(ys),
        y_max=max(ys) - ry,
        length=x_min + x_max,
        area=polygon_area(p),
    )


# -- convex decomposition ----------------------------------------------------


def is_convex(vertices: Sequence[Point2]) -> bool:
    n = len(vertices)
    for i in range(n):
        if cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) < -EPS_GEOM:
            return False
    return True


def _point_in_triangle(p, a, b, c) -> bool:
    return (
        cross(a, b, p) >= -EPS_GEOM
        and cross(b, c, p) >= -EPS_GEOM
        and cross(c, a, p) >= -EPS_GEOM
    )


def triangulate(vertices: Sequence[Point2]) -> list[tuple[int, int, int]]:
    """Ear clipping on a simple CCW polygon; returns vertex-index triples."""
    idx = list(range(len(vertices)))
    tris: list[tuple[int, int, int]] = []
    guard = 0
    while len(idx) > 3:
        n = len(idx)
        for k in range(n):
            i0, i1, i2 = idx[(k - 1) % n], idx[k], idx[(k + 1) % n]
            a, b, c = vertices[i0], vertices[i1], vertices[i2]
            if cross(a, b, c) <= EPS_GEOM:
                continue
            if any(
                _point_in_triangle(vertices[j], a, b, c)
                for j in idx
                if j not in (i0, i1, i2)
                and vertices[j] not in (a, b, c)
            ):
                continue
            tris.append((i0, i1, i2))
            del idx[k]
            break
        else:
            # only collinear remnants left: drop a flat vertex
            for k in range(n):
                i0, i1, i2 = idx[(k - 1) % n], idx[k], idx[(k + 1) % n]
                if abs(cross(vertices[i0], vertices[i1], vertices[i2])) <= EPS_GEOM:
                    del idx[k]
                    break
            else:
                raise GeometryError("ear clipping failed; polygon not simple?")
        guard += 1
        if guard > 10 * len(vertices) ** 2:
            raise GeometryError("ear clipping did not terminate")
    if len(idx) == 3 and cross(*(vertices[i] for i in idx)) > EPS_GEOM:
        tris.append(tuple(idx))
    return tris


def _merge_parts(parts: list[list[int]], vertices: Sequence[Point2]) -> list[list[int]]:
    """Hertel-Mehlhorn style merge of index polygons across shared diagonals."""

    def shared_edge(p, q):
        for i in range(len(p)):
            a, b = p[i], p[(i + 1) % len(p)]
            for j in range(len(q)):
                if q[j] == b and q[(j + 1) % len(q)] == a:
                    return i, j
        return None

    merged = True
    while merged:
        merged = False
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                e = shared_edge(parts[i], parts[j])
                if e is None:
                    continue
                p, q = parts[i], parts[j]
                ei, ej = e
                # walk p from b around to a, then q's interior vertices
                a = p[ei]
                b = p[(ei + 1) % len(p)]
                seq = []
                k = (ei + 1) % len(p)
                while True:
                    seq.append(p[k])
                    if p[k] == a:
                        break
                    k = (k + 1) % len(p)
                k = (ej + 2) % len(q)
                while q[k] != b:
                    seq.append(q[k])
                    k = (k + 1) % len(q)
                pts = [vertices[v] for v in seq]
                if is_convex(pts):
                    parts[i] = seq
                    del parts[j]
                    merged = True
                    break
            if merged:
                break
    return parts


def _drop_collinear(pts: list[Point2]) -> list[Point2]:
    out = list(pts)
    changed = True
    while changed and len(out) > 3:
        changed = False
        for k in range(len(out)):
            if abs(cross(out[k - 1], out[k], out[(k + 1) % len(out)])) <= EPS_GEOM:
                del out[k]
                changed = True
                break
    return out


def convex_decompose(p: Polygon) -> list[ConvexPart]:
    """Partition ``p`` into interior-disjoint convex parts.

    Convex input is returned as a single part. Otherwise the polygon is ear
    clipped and adjacent triangles are merged while the union stays convex.
    """
    verts = list(p.vertices)
    if is_convex(verts):
        return [ConvexPart(tuple(verts))]
    tris = triangulate(verts)
    if not tris:
        raise GeometryError("convex decomposition produced no parts")
    parts = _merge_parts([list(t) for t in tris], verts)
    out = [ConvexPart(tuple(_drop_collinear([verts[i] for i in part]))) for part in parts]
    total = sum(c.area for c in out)
    if abs(total - polygon_area(p)) > 1e-9 * max(1.0, polygon_area(p)):
        raise GeometryError("convex decomposition lost area")
    return out


# -- no-fit polygons and overlap ---------------------------------------------


def convex_hull(points: Sequence[Point2]) -> list[Point2]:
    """Monotone chain hull, CCW, collinear points removed."""
    pts = sorted(set(_pt(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list[Point2] = []
    for q in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], q) <= EPS_GEOM:
            lower.pop()
        lower.append(q)
    upper: list[Point2] = []
    for q in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], q) <= EPS_GEOM:
            upper.pop()
        upper.append(q)
    return lower[:-1] + upper[:-1]


def convex_nfp(a: ConvexPart, b: ConvexPart) -> ConvexPart:
    """No-fit polygon ``a (+) -b`` of two convex parts.

    With ``a`` static at its own coordinates and ``b`` translated by a vector
    ``v``, the interiors intersect exactly when ``v`` lies in the interior of
    the returned polygon.
    """
    sums = [Point2(p.x - q.x, p.y - q.y) for p in a.vertices for q in b.vertices]
    return ConvexPart(tuple(convex_hull(sums)))


def strictly_inside_convex(part: ConvexPart, q: Point2, margin: float = EPS_GEOM) -> bool:
    verts = part.vertices
    n = len(verts)
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        edge = math.hypot(b.x - a.x, b.y - a.y)
        if cross(a, b, q) <= margin * edge:
            return False
    return True


def clip_convex(subject: Sequence[Point2], clip: Sequence[Point2]) -> list[Point2]:
    """Sutherland-Hodgman clipping of a convex polygon by a convex CCW one."""
    out = list(subject)
    n = len(clip)
    for i in range(n):
        if not out:
            break
        a, b = clip[i], clip[(i + 1) % n]
        inp, out = out, []
        for j in range(len(inp)):
            p, q = inp[j], inp[(j + 1) % len(inp)]
            cp, cq = cross(a, b, p), cross(a, b, q)
            if cp >= 0:
                out.append(p)
            if (cp >= 0) != (cq >= 0):
                t = cp / (cp - cq)
                out.append(Point2(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)))
    return out


def convex_intersection_area(a: Sequence[Point2], b: Sequence[Point2]) -> float:
    poly = clip_convex(a, b)
    if len(poly) < 3:
        return 0.0
    return max(0.0, signed_area(poly))


def _bbox(verts):
    xs = [v.x for v in verts]
    ys = [v.y for v in verts]
    return min(xs), min(ys), max(xs), max(ys)


def place_parts(p: Polygon, parts: Sequence[ConvexPart], d: Point2) -> list[list[Point2]]:
    """Convex parts of ``p`` with its reference point moved to ``d``."""
    dx, dy = d.x - p.reference.x, d.y - p.reference.y
    return [[Point2(x + dx, y + dy) for x, y in c.vertices] for c in parts]


def pieces_overlap(
    a: Polygon,
    a_parts: Sequence[ConvexPart],
    da: Point2,
    ta: float,
    b: Polygon,
    b_parts: Sequence[ConvexPart],
    db: Point2,
    tb: float,
    eps_area: float | None = None,
) -> bool:
    """True iff the open interiors of the two placed pieces intersect.

    ``a``/``b`` are the pieces already rotated by ``ta``/``tb`` and
    ``a_parts``/``b_parts`` their convex decompositions; the angles are
    carried for bookkeeping only. Overlap is decided by summing the clipped
    areas over all convex part pairs, so boundary contact never counts.
    """
    da, db = _pt(da), _pt(db)
    pa = place_parts(a, a_parts, da)
    pb = place_parts(b, b_parts, db)
    if eps_area is None:
        smallest = min(signed_area(c) for c in pa + pb)
        eps_area = EPS_AREA_REL * smallest
    ax0, ay0, ax1, ay1 = _bbox([v for c in pa for v in c])
    bx0, by0, bx1, by1 = _bbox([v for c in pb for v in c])
    if ax1 <= bx0 + EPS_GEOM or bx1 <= ax0 + EPS_GEOM or ay1 <= by0 + EPS_GEOM or by1 <= ay0 + EPS_GEOM:
        return False
    total = 0.0
    for ca in pa:
        for cb in pb:
            total += convex_intersection_area(ca, cb)
            if total > eps_area:
                return True
    return False
