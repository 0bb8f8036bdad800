"""Random small instances for property tests and scripted sweeps."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .dotgrid import Board, Instance, PieceType
from .geometry import Polygon

SHAPES = ("rect", "triangle", "ell", "trapezoid", "diamond")


@dataclass
class SyntheticConfig:
    min_pieces: int = 2
    max_pieces: int = 4
    max_cols: int = 6
    max_rows: int = 6
    max_rotations: int = 2
    max_extent: int = 3
    allow_diagonal: bool = True  # 45 degree rotations


def random_polygon(rng: random.Random, max_extent: int = 3) -> Polygon:
    kind = rng.choice(SHAPES)
    w = rng.randint(1, max_extent)
    h = rng.randint(1, max_extent)
    if kind == "rect":
        pts = [(0, 0), (w, 0), (w, h), (0, h)]
    elif kind == "triangle":
        apex = rng.randint(0, w)
        pts = [(0, 0), (w, 0), (apex, h)]
    elif kind == "trapezoid" and w >= 2:
        pts = [(0, 0), (w, 0), (w - 1, h), (1, h)] if w > 2 else [(0, 0), (w, 0), (w - 1, h), (0, h)]
    elif kind == "ell" and w >= 2 and h >= 2:
        a, b = rng.randint(1, w - 1), rng.randint(1, h - 1)
        pts = [(0, 0), (w, 0), (w, b), (a, b), (a, h), (0, h)]
    elif kind == "diamond" and w >= 2 and h >= 2:
        pts = [(w / 2, 0), (w, h / 2), (w / 2, h), (0, h / 2)]
    else:
        pts = [(0, 0), (w, 0), (0, h)]
    return Polygon(tuple(pts))


def random_rotations(rng: random.Random, cfg: SyntheticConfig) -> tuple[float, ...]:
    k = rng.randint(1, cfg.max_rotations)
    pool = [0, 90, 180, 270] + ([45, 135] if cfg.allow_diagonal else [])
    angles = [0] + rng.sample([a for a in pool if a != 0], k - 1)
    return tuple(math.radians(a) for a in angles)


def random_instance(rng: random.Random, cfg: SyntheticConfig | None = None, name: str = "synthetic") -> Instance:
    """Board with at most ``max_cols`` x ``max_rows`` unit-grid dots and a few
    random piece types whose demands add up to 2-4 pieces."""
    cfg = cfg or SyntheticConfig()
    n = rng.randint(cfg.min_pieces, cfg.max_pieces)
    W = rng.randint(1, cfg.max_rows - 1)
    L = rng.randint(1, cfg.max_cols - 1)
    types: list[PieceType] = []
    left = n
    while left:
        q = rng.randint(1, left)
        left -= q
        types.append(PieceType(random_polygon(rng, cfg.max_extent), q, random_rotations(rng, cfg), f"p{len(types)}"))
    return Instance(Board(W, L), types, name)
