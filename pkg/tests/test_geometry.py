import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dbnest.geometry import (
    ConvexPart,
    GeometryError,
    Point2,
    Polygon,
    convex_decompose,
    convex_hull,
    convex_nfp,
    is_convex,
    piece_metrics,
    pieces_overlap,
    polygon_area,
    rotate_polygon,
    strictly_inside_convex,
    triangulate,
)

SQ3 = Polygon(((0, 0), (3, 0), (3, 3), (0, 3)))
TRI = Polygon(((0, 0), (4, 0), (2, 3)))
SQ2 = Polygon(((0, 0), (2, 0), (2, 2), (0, 2)))
ELL = Polygon(((0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)))


def overlap(a, da, b, db):
    return pieces_overlap(a, convex_decompose(a), Point2(*da), 0.0, b, convex_decompose(b), Point2(*db), 0.0)


def test_areas():
    assert polygon_area(Polygon(((0, 0), (1, 0), (1, 1), (0, 1)))) == 1.0
    assert polygon_area(SQ3) == 9.0
    assert polygon_area(TRI) == 6.0


def test_clockwise_input_is_reoriented():
    p = Polygon(((0, 0), (0, 3), (3, 3), (3, 0)))
    assert polygon_area(p) == 9.0


@pytest.mark.parametrize(
    "verts",
    [((0, 0), (1, 0), (2, 0)), ((0, 0), (1, 1)), ((0, 0), (0, 0), (1, 0))],
)
def test_degenerate_polygons_rejected(verts):
    with pytest.raises(GeometryError):
        Polygon(verts)


def test_self_intersection_detected():
    with pytest.raises(GeometryError):
        Polygon(((0, 0), (2, 2), (2, 0), (0, 2))).validate()


def test_rotation_identity_and_quarter_turn():
    assert rotate_polygon(SQ3, 0.0) == SQ3
    r = rotate_polygon(SQ3, math.pi / 2)
    shifted = {(round(x + 3, 12), round(y, 12)) for x, y in r.vertices}
    assert shifted == {(0, 0), (3, 0), (3, 3), (0, 3)}
    assert r.reference == SQ3.reference


def test_rotation_45_of_square():
    r = rotate_polygon(SQ2, math.pi / 4)
    s = math.sqrt(2)
    want = [(0, 0), (s, s), (0, 2 * s), (-s, s)]
    for w in want:
        assert any(math.isclose(v.x, w[0], abs_tol=1e-12) and math.isclose(v.y, w[1], abs_tol=1e-12) for v in r.vertices)
    assert math.isclose(polygon_area(r), 4.0, rel_tol=1e-12)


def test_metrics():
    m = piece_metrics(SQ3)
    assert (m.x_min, m.x_max, m.y_min, m.y_max, m.length, m.area) == (0, 3, 0, 3, 3, 9)
    m = piece_metrics(TRI)
    assert (m.x_max, m.y_max, m.length, m.area) == (4, 3, 4, 6)


def test_metrics_centered_rotated_square():
    p = Polygon(((0, 0), (2, 0), (2, 2), (0, 2)), reference=(1, 1))
    m = piece_metrics(rotate_polygon(p, math.pi / 4))
    h = math.sqrt(2)
    for x in (m.x_min, m.x_max, m.y_min, m.y_max):
        assert math.isclose(x, h, rel_tol=1e-12)


def test_decompose_convex_is_identity():
    parts = convex_decompose(TRI)
    assert len(parts) == 1 and set(parts[0].vertices) == set(TRI.vertices)


def test_decompose_ell():
    parts = convex_decompose(ELL)
    assert len(parts) <= 4
    assert math.isclose(sum(p.area for p in parts), 3.0)
    assert all(is_convex(p.vertices) for p in parts)


def test_triangulation_count():
    star = Polygon(((0, 0), (4, 0), (4, 4), (2, 1), (0, 4)))
    assert len(triangulate(star.vertices)) == len(star.vertices) - 2


def test_square_nfp():
    a = ConvexPart(((0, 0), (1, 0), (1, 1), (0, 1)))
    nfp = convex_nfp(a, a)
    assert set(nfp.vertices) == {(-1, -1), (1, -1), (1, 1), (-1, 1)}
    assert math.isclose(nfp.area, 4.0)


def test_nfp_edge_count_bound():
    a = ConvexPart(((0, 0), (5, 0), (5, 0.1), (0, 0.1)))
    assert len(convex_nfp(a, a).vertices) <= 8


def test_triangle_square_nfp_membership():
    nfp = convex_nfp(convex_decompose(TRI)[0], convex_decompose(SQ2)[0])
    assert strictly_inside_convex(nfp, Point2(1, 1))
    assert not strictly_inside_convex(nfp, Point2(4, 0))


def test_overlap_examples():
    assert not overlap(SQ3, (0, 0), SQ3, (3, 0))
    assert overlap(SQ3, (0, 0), SQ3, (2, 0))
    assert overlap(TRI, (0, 0), SQ2, (1, 1))
    assert not overlap(TRI, (0, 0), SQ2, (4, 0))


# -- properties ---------------------------------------------------------------

coords = st.integers(min_value=-6, max_value=6)


@st.composite
def simple_polygons(draw):
    """Star-shaped polygons around the origin with integer vertices."""
    n = draw(st.integers(3, 7))
    angles = sorted(draw(st.lists(st.floats(0, 2 * math.pi, exclude_max=True), min_size=n, max_size=n, unique=True)))
    radii = draw(st.lists(st.integers(1, 5), min_size=n, max_size=n))
    pts = [(round(r * math.cos(a)), round(r * math.sin(a))) for a, r in zip(angles, radii)]
    try:
        p = Polygon(tuple(pts)).validate()
    except GeometryError:
        assume(False)
    return p


@given(simple_polygons())
@settings(max_examples=150, deadline=None)
def test_decomposition_conserves_area(p):
    parts = convex_decompose(p)
    assert math.isclose(sum(c.area for c in parts), polygon_area(p), rel_tol=1e-9)
    assert all(is_convex(c.vertices) for c in parts)


@given(simple_polygons(), simple_polygons(), coords, coords, coords, coords)
@settings(max_examples=150, deadline=None)
def test_overlap_symmetry(a, b, x1, y1, x2, y2):
    assert overlap(a, (x1, y1), b, (x2, y2)) == overlap(b, (x2, y2), a, (x1, y1))


@given(simple_polygons(), simple_polygons(), coords, coords, coords, coords)
@settings(max_examples=100, deadline=None)
def test_overlap_translation_invariance(a, b, x, y, sx, sy):
    assert overlap(a, (0, 0), b, (x, y)) == overlap(a, (sx, sy), b, (x + sx, y + sy))


@st.composite
def convex_parts(draw):
    pts = draw(st.lists(st.tuples(coords, coords), min_size=3, max_size=8, unique=True))
    hull = convex_hull(pts)
    assume(len(hull) >= 3)
    part = ConvexPart(tuple(hull))
    assume(part.area > 0.5)
    return part


def _distance_to_boundary(part, q):
    n = len(part.vertices)
    best = math.inf
    for i in range(n):
        a, b = part.vertices[i], part.vertices[(i + 1) % n]
        ex, ey = b.x - a.x, b.y - a.y
        t = max(0.0, min(1.0, ((q.x - a.x) * ex + (q.y - a.y) * ey) / (ex * ex + ey * ey)))
        best = min(best, math.hypot(q.x - a.x - t * ex, q.y - a.y - t * ey))
    return best


@given(convex_parts(), convex_parts(), st.floats(-8, 8), st.floats(-8, 8))
@settings(max_examples=200, deadline=None)
def test_nfp_agrees_with_overlap(a, b, dx, dy):
    nfp = convex_nfp(a, b)
    q = Point2(dx, dy)
    assume(_distance_to_boundary(nfp, q) > 1e-6)
    pa = Polygon(a.vertices, reference=(0, 0))
    pb = Polygon(b.vertices, reference=(0, 0))
    got = pieces_overlap(pa, [a], Point2(0, 0), 0.0, pb, [b], q, 0.0)
    assert got == strictly_inside_convex(nfp, q)


@given(simple_polygons(), st.floats(0, 2 * math.pi))
@settings(max_examples=100, deadline=None)
def test_rotation_preserves_area_and_distances(p, theta):
    r = rotate_polygon(p, theta)
    assert math.isclose(polygon_area(r), polygon_area(p), rel_tol=1e-12)
    d0 = sorted(math.dist(v, p.reference) for v in p.vertices)
    d1 = sorted(math.dist(v, r.reference) for v in r.vertices)
    for x, y in zip(d0, d1):
        assert math.isclose(x, y, rel_tol=1e-12, abs_tol=1e-12)


def _inside(verts, q):
    inside = False
    n = len(verts)
    for i in range(n):
        (x1, y1), (x2, y2) = verts[i], verts[(i + 1) % n]
        if (y1 > q.y) != (y2 > q.y) and q.x < x1 + (q.y - y1) * (x2 - x1) / (y2 - y1):
            inside = not inside
    return inside


@given(simple_polygons(), st.lists(st.tuples(st.floats(-6, 6), st.floats(-6, 6)), min_size=20, max_size=20))
@settings(max_examples=80, deadline=None)
def test_interior_points_lie_in_exactly_one_part(p, samples):
    parts = convex_decompose(p)
    for x, y in samples:
        q = Point2(x, y)
        if any(_distance_to_boundary(c, q) < 1e-7 for c in parts):
            continue
        hits = sum(strictly_inside_convex(c, q, margin=0.0) for c in parts)
        assert hits == (1 if _inside(p.vertices, q) else 0)
