"""Instance files: the JSON schema, a small ESICUP XML importer and the
built-in three-family instances.

JSON layout::

    {"name": "three",
     "board": {"width": 7, "length_ub": 7, "gx": 1, "gy": 1},
     "pieces": [{"id": "square", "vertices": [[0, 0], [3, 0], [3, 3], [0, 3]],
                 "reference": [0, 0], "demand": 1, "rotations_deg": [0, 45]}]}

``reference``, ``demand`` (1), ``rotations_deg`` ([0]) and the grid steps (1)
are optional.
"""

from __future__ import annotations

import json
import math
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Any

from .dotgrid import Board, ConfigError, Instance, PieceType
from .geometry import GeometryError, Point2, Polygon


class InstanceFormatError(ValueError):
    """Schema violation; ``path`` is a JSON-path such as ``$.pieces[1].demand``."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _number(x: Any, path: str, positive: bool = False) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
        raise InstanceFormatError(path, "expected a finite number")
    if positive and x <= 0:
        raise InstanceFormatError(path, "must be positive")
    return float(x)


def _point(x: Any, path: str) -> Point2:
    if not isinstance(x, (list, tuple)) or len(x) != 2:
        raise InstanceFormatError(path, "expected [x, y]")
    return Point2(_number(x[0], f"{path}[0]"), _number(x[1], f"{path}[1]"))


def instance_from_dict(doc: Any, grid: float | None = None, length_ub: float | None = None) -> Instance:
    """Validate ``doc`` and build an :class:`Instance`. ``grid`` overrides
    both grid steps and ``length_ub`` the board length."""
    if not isinstance(doc, dict):
        raise InstanceFormatError("$", "expected an object")
    name = doc.get("name", "instance")
    if not isinstance(name, str):
        raise InstanceFormatError("$.name", "expected a string")
    board = doc.get("board")
    if not isinstance(board, dict):
        raise InstanceFormatError("$.board", "missing or not an object")
    W = _number(board.get("width"), "$.board.width", positive=True)
    L = _number(board.get("length_ub"), "$.board.length_ub", positive=True)
    gx = _number(board.get("gx", 1), "$.board.gx", positive=True)
    gy = _number(board.get("gy", gx), "$.board.gy", positive=True)
    if grid is not None:
        gx = gy = grid
    if length_ub is not None:
        L = length_ub
    pieces = doc.get("pieces")
    if not isinstance(pieces, list) or not pieces:
        raise InstanceFormatError("$.pieces", "expected a non-empty list")
    types = []
    for i, p in enumerate(pieces):
        path = f"$.pieces[{i}]"
        if not isinstance(p, dict):
            raise InstanceFormatError(path, "expected an object")
        verts = p.get("vertices")
        if not isinstance(verts, list) or len(verts) < 3:
            raise InstanceFormatError(f"{path}.vertices", "expected at least 3 points")
        pts = [_point(v, f"{path}.vertices[{k}]") for k, v in enumerate(verts)]
        ref = _point(p["reference"], f"{path}.reference") if p.get("reference") is not None else None
        demand = p.get("demand", 1)
        if isinstance(demand, bool) or not isinstance(demand, int) or demand < 1:
            raise InstanceFormatError(f"{path}.demand", "expected an integer >= 1")
        rots = p.get("rotations_deg", [0])
        if not isinstance(rots, list) or not rots:
            raise InstanceFormatError(f"{path}.rotations_deg", "expected a non-empty list")
        angles = tuple(
            math.radians(_number(r, f"{path}.rotations_deg[{k}]") % 360.0) for k, r in enumerate(rots)
        )
        if len(set(angles)) != len(angles):
            raise InstanceFormatError(f"{path}.rotations_deg", "duplicate angles")
        try:
            poly = Polygon(tuple(pts), ref).validate()
        except GeometryError as exc:
            raise InstanceFormatError(f"{path}.vertices", str(exc)) from None
        types.append(PieceType(poly, demand, angles, str(p.get("id", i))))
    try:
        return Instance(Board(W, L, gx, gy), types, name)
    except ConfigError as exc:
        raise InstanceFormatError("$.board", str(exc)) from None


def load_instance(path: str | Path, grid: float | None = None, length_ub: float | None = None) -> Instance:
    path = Path(path)
    if path.suffix.lower() == ".xml":
        return load_esicup_xml(path, grid=grid, length_ub=length_ub)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InstanceFormatError("$", f"invalid JSON: {exc}") from None
    return instance_from_dict(doc, grid, length_ub)


def instance_to_dict(inst: Instance) -> dict:
    b = inst.board
    return {
        "name": inst.name,
        "board": {"width": b.width, "length_ub": b.length_ub, "gx": b.gx, "gy": b.gy},
        "pieces": [
            {
                "id": t.name,
                "vertices": [[v.x, v.y] for v in t.polygon.vertices],
                "reference": [t.polygon.reference.x, t.polygon.reference.y],
                "demand": t.demand,
                "rotations_deg": [round(math.degrees(a), 9) for a in t.rotations],
            }
            for t in inst.types
        ],
    }


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def load_esicup_xml(path: str | Path, grid: float | None = None, length_ub: float | None = None) -> Instance:
    """Best-effort reader for ESICUP-style nesting XML.

    Reads ``<polygon id=...>`` elements with ``<segment x0 y0 x1 y1>`` lists,
    the board polygon referenced from ``<boards>`` (its height is the width)
    and ``<piece quantity>`` entries whose ``<component idPolygon>`` and
    ``<orientation angle>`` children give geometry and rotations. Missing
    board length falls back to the sum of piece lengths.
    """
    root = ET.parse(path).getroot()
    polys: dict[str, list[Point2]] = {}
    for el in root.iter():
        if _local(el.tag) != "polygon":
            continue
        pts = []
        for seg in el.iter():
            if _local(seg.tag) == "segment":
                pts.append(Point2(float(seg.get("x0")), float(seg.get("y0"))))
        if len(pts) >= 3:
            polys[el.get("id")] = pts
    board_id = None
    pieces = []
    for el in root.iter():
        tag = _local(el.tag)
        if tag == "boards":
            for comp in el.iter():
                if _local(comp.tag) == "component" and comp.get("idPolygon"):
                    board_id = comp.get("idPolygon")
                    break
        elif tag == "lot":
            for pc in el:
                if _local(pc.tag) != "piece":
                    continue
                comp = next((c for c in pc.iter() if _local(c.tag) == "component"), None)
                if comp is None:
                    continue
                angles = sorted({float(o.get("angle", 0)) for o in pc.iter() if _local(o.tag) == "orientation"})
                pieces.append({
                    "id": pc.get("id", comp.get("idPolygon")),
                    "vertices": [list(p) for p in polys[comp.get("idPolygon")]],
                    "demand": int(pc.get("quantity", 1)),
                    "rotations_deg": angles or [0],
                })
    if board_id is None or board_id not in polys:
        raise InstanceFormatError("$.board", "no board polygon found in XML")
    bx = [p.x for p in polys[board_id]]
    by = [p.y for p in polys[board_id]]
    width = max(by) - min(by)
    L = length_ub
    if L is None:
        L = sum(max(v[0] for v in p["vertices"]) - min(v[0] for v in p["vertices"]) for p in pieces for _ in range(p["demand"]))
        L = min(L, max(bx) - min(bx)) if max(bx) - min(bx) > 0 else L
    name = root.findtext("{*}name") or root.findtext("name") or Path(path).stem
    doc = {"name": name, "board": {"width": width, "length_ub": L, "gx": 1, "gy": 1}, "pieces": pieces}
    return instance_from_dict(doc, grid, None)


# -- built-in instances ---------------------------------------------------------

SQUARE = [[0, 0], [3, 0], [3, 3], [0, 3]]
DIAMOND = [[2, 0], [4, 2], [2, 4], [0, 2]]
TRIANGLE = [[0, 0], [4, 0], [2, 3]]

# name -> (width, length upper bound, demand per type)
THREE_FAMILY = {
    "three": (7, 7, 1),
    "threep2": (7, 11, 2),
    "threep2w9": (9, 9, 2),
    "threep3": (7, 16, 3),
    "threep3w9": (9, 13, 3),
}


def three_family_dict(name: str, rotations: bool = False) -> dict:
    W, L, q = THREE_FAMILY[name]
    rot = ([0, 45], [0], [0, 180]) if rotations else ([0], [0], [0])
    return {
        "name": name + ("_rot" if rotations else ""),
        "board": {"width": W, "length_ub": L, "gx": 1, "gy": 1},
        "pieces": [
            {"id": "square", "vertices": SQUARE, "demand": q, "rotations_deg": rot[0]},
            {"id": "diamond", "vertices": DIAMOND, "demand": q, "rotations_deg": rot[1]},
            {"id": "triangle", "vertices": TRIANGLE, "demand": q, "rotations_deg": rot[2]},
        ],
    }


def builtin_instance(name: str, rotations: bool = False) -> Instance:
    return instance_from_dict(three_family_dict(name, rotations))
