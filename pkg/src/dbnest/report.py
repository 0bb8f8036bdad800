"""Benchmark CSV rows and performance profiles."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Mapping, Sequence

CSV_HEADER = (
    "instance",
    "pieces",
    "efficiency",
    "lower_bound",
    "upper_bound",
    "gap_pct",
    "binary_vars",
    "nodes",
    "time_s",
    "constraints",
    "time_to_best_s",
    "best_node",
    "build_time_s",
)
TIMING_FIELDS = ("time_s", "time_to_best_s", "build_time_s")


@dataclass
class BenchmarkRow:
    instance: str
    pieces: int
    efficiency: float | None
    lower_bound: float
    upper_bound: float | None
    gap_pct: float | None
    binary_vars: int
    nodes: int
    time_s: float
    constraints: int
    time_to_best_s: float
    best_node: int
    build_time_s: float

    @classmethod
    def from_result(
        cls, name: str, pieces: int, area: float, width: float, lb: float, ub: float | None,
        binaries: int, nodes: int, time_s: float, constraints: int, time_to_best: float,
        best_node: int, build_time: float,
    ) -> "BenchmarkRow":
        eff = area / (width * ub) if ub else None
        gap = 100.0 * (ub - lb) / ub if ub else None
        return cls(name, pieces, eff, lb, ub, gap, binaries, nodes, time_s, constraints,
                   time_to_best, best_node, build_time)

    def cells(self, mask_timing: bool = False) -> list[str]:
        out = []
        for f, v in zip(fields(self), astuple(self)):
            if mask_timing and f.name in TIMING_FIELDS:
                out.append("")
            elif v is None:
                out.append("")
            elif isinstance(v, float):
                out.append(f"{v:.6f}" if f.name in TIMING_FIELDS else _fmt(v))
            else:
                out.append(str(v))
        return out


def _fmt(x: float) -> str:
    return str(int(x)) if x == int(x) else f"{x:.10g}"


def rows_to_csv(rows: Sequence[BenchmarkRow], header: bool = True, mask_timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.cells(mask_timing))
    return buf.getvalue()


def read_rows(path: str | Path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if rows and tuple(rows[0].keys()) != CSV_HEADER:
        raise ValueError(f"{path}: unexpected CSV header")
    return rows


# -- performance profiles ----------------------------------------------------------


@dataclass
class ProfileTable:
    methods: list[str]
    instances: list[str]
    ratios: dict[str, list[float]]  # unsolved entries hold r_max
    taus: list[float]
    rho: dict[str, list[float]]
    r_max: float

    def at(self, method: str, tau: float) -> float:
        return profile_value(self.ratios[method], tau, self.r_max)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["tau", *self.methods])
        for i, t in enumerate(self.taus):
            w.writerow([f"{t:.10g}", *(f"{self.rho[m][i]:.10g}" for m in self.methods)])
        return buf.getvalue()


def profile_value(ratios: Sequence[float], tau: float, r_max: float) -> float:
    """Fraction of instances solved within ratio ``tau``; entries at the
    cap (unsolved) never count."""
    n = len(ratios)
    return sum(1 for r in ratios if r < r_max and r <= tau) / n if n else 0.0


def performance_profiles(
    times: Mapping[str, Mapping[str, float]],
    taus: Sequence[float] | None = None,
    r_max: float | None = None,
) -> ProfileTable:
    """Dolan-More profiles from per-method time maps (``inf`` = unsolved).

    Ratios are taken against the fastest method per instance; instances no
    method solved give every method the cap ``r_max`` (default: twice the
    largest finite ratio, at least 2).
    """
    methods = list(times)
    if not methods:
        raise ValueError("need at least one method")
    inst = sorted(times[methods[0]])
    for m in methods[1:]:
        if sorted(times[m]) != inst:
            raise ValueError(f"method {m!r} covers a different instance set")
    for m in methods:
        for i in inst:
            t = times[m][i]
            if not (t > 0 or t == math.inf):
                raise ValueError(f"time for {m!r} on {i!r} must be positive or inf")
    best = {i: min(times[m][i] for m in methods) for i in inst}
    raw = {m: [times[m][i] / best[i] if times[m][i] < math.inf else math.inf for i in inst] for m in methods}
    finite = [r for m in methods for r in raw[m] if r < math.inf]
    if r_max is None:
        r_max = max(2.0, 2.0 * max(finite, default=1.0))
    elif finite and r_max <= max(finite):
        raise ValueError("r_max must exceed every finite ratio")
    ratios = {m: [r if r < math.inf else r_max for r in raw[m]] for m in methods}
    if taus is None:
        taus = sorted({1.0, *finite, r_max})
    taus = list(taus)
    rho = {m: [profile_value(ratios[m], t, r_max) for t in taus] for m in methods}
    return ProfileTable(methods, inst, ratios, taus, rho, r_max)


def times_from_rows(rows: Sequence[Mapping[str, str]], tol: float = 1e-9) -> dict[str, float]:
    """Instance -> running time, ``inf`` unless the row closed the gap."""
    out = {}
    for r in rows:
        lb, ub = r["lower_bound"], r["upper_bound"]
        solved = ub != "" and abs(float(ub) - float(lb)) <= tol
        out[r["instance"]] = max(float(r["time_s"]), 1e-6) if solved else math.inf
    return out
