"""Parallel branch-and-bound-and-prune over the bitset conflict structure.

The root piece's variables are shuffled once and dealt round-robin to the
workers. Each worker runs a depth-first search with one feasibility bitset
per decision level, bounding on length, forward checking per remaining piece
type and early exit at dominated variables. The incumbent lock is the only
synchronization point.
"""

from __future__ import annotations

import logging
import math
import random
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .conflict import GlobalState, range_mask
from .dotgrid import Instance, placed_overlap
from .geometry import EPS_GEOM, Point2, Polygon

log = logging.getLogger(__name__)


class InternalConsistencyError(RuntimeError):
    pass


@dataclass
class SolverConfig:
    time_limit: float = 600.0
    threads: int = 1
    rng_seed: int = 0
    epsilon_len: float = 1e-9
    poll_every: int = 1 << 12

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if not self.time_limit > 0:
            raise ValueError("time_limit must be positive")


@dataclass
class Incumbent:
    placements: list[int] = field(default_factory=list)
    length: float = math.inf
    proven_optimal: bool = False


@dataclass
class SolveOutcome:
    ub: float | None
    lb: float
    proven: bool
    infeasible: bool = False
    timed_out: bool = False
    nodes: int = 0
    leaves: int = 0
    time_to_best: float = 0.0
    best_node: int = 0
    build_time: float = 0.0
    solve_time: float = 0.0


class _Worker:
    __slots__ = ("nodes", "leaves")

    def __init__(self):
        self.nodes = 0
        self.leaves = 0


class Search:
    """One run of the search over ``state``.

    With ``bounding=False`` the length bound and dominance pruning are
    switched off and every complete placement tuple reachable under the
    conflict and symmetry-breaking rules is visited (used to count leaves).
    """

    def __init__(self, state: GlobalState, lower_bound: float, cfg: SolverConfig, bounding: bool = True):
        self.state = state
        self.lower_bound = lower_bound
        self.cfg = cfg
        self.bounding = bounding
        self.eps = cfg.epsilon_len
        self.lock = threading.Lock()
        self.incumbent = Incumbent()
        self.cutoff = math.inf  # pruning threshold, tracks the incumbent when bounding
        self.stop = False
        self.timed_out = False
        self.workers: list[_Worker] = []
        self.t0 = 0.0
        self.deadline = math.inf
        self.time_to_best = 0.0
        self.best_node = 0
        self._ranges = {t: range_mask(s, e) for t, (s, e) in state.table.type_ranges.items()}

    # -- incumbent ----------------------------------------------------------

    def update_incumbent(self, x: list[int], length: float) -> bool:
        st = self.state
        with self.lock:
            inc = self.incumbent
            if inc.proven_optimal or not length < inc.length - self.eps:
                return False
            if self.bounding:
                keep = 0
                for v, b in enumerate(st.bounds):
                    if b < length - self.eps:
                        keep |= 1 << v
                st.non_dominated &= keep
                for t in st.type_masks:
                    st.type_masks[t] &= st.non_dominated
                self.cutoff = length
            inc.length = length
            inc.placements = list(x)
            self.time_to_best = time.perf_counter() - self.t0
            self.best_node = sum(w.nodes for w in self.workers)
            if self.bounding and length <= self.lower_bound + self.eps:
                inc.proven_optimal = True
                st.non_dominated = 0
                for t in st.type_masks:
                    st.type_masks[t] = 0
            return True

    # -- search ---------------------------------------------------------------

    def forward_check(self, phi: int, level: int) -> bool:
        masks = self.state.type_masks
        for t in self.state.next_types[level]:
            if not masks[t] & phi:
                return False
        return True

    def _tick(self, w: _Worker) -> None:
        w.nodes += 1
        if w.nodes % self.cfg.poll_every == 0 and time.perf_counter() > self.deadline:
            self.timed_out = True
            self.stop = True

    def branch(self, level: int, phi: int, x: list[int], length: float, w: _Worker) -> None:
        st = self.state
        if not length < self.cutoff - self.eps:
            return
        t = st.instance_types[level]
        rows = st.matrix.rows
        bounds = st.bounds
        last = level + 1 == st.N
        cand = phi & self._ranges[t]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if self.stop or not st.non_dominated >> v & 1 or not length < self.cutoff - self.eps:
                break
            new_len = bounds[v] if bounds[v] > length else length
            if not new_len < self.cutoff - self.eps:
                continue
            self._tick(w)
            x.append(v)
            nphi = phi & rows[v]
            if not last:
                if self.forward_check(nphi, level):
                    self.branch(level + 1, nphi, x, new_len, w)
            else:
                w.leaves += 1
                self.update_incumbent(x, new_len)
            x.pop()

    def _root(self, roots: list[int], w: _Worker) -> None:
        st = self.state
        for v in roots:
            if self.stop or self.incumbent.proven_optimal:
                break
            if time.perf_counter() > self.deadline:
                self.timed_out = self.stop = True
                break
            if not st.non_dominated >> v & 1:
                continue
            self._tick(w)
            x = [v]
            phi = st.non_dominated & st.matrix.rows[v]
            if st.N > 1:
                if self.forward_check(phi, 0):
                    self.branch(1, phi, x, st.bounds[v], w)
            else:
                w.leaves += 1
                self.update_incumbent(x, st.bounds[v])

    def run(self) -> tuple[SolveOutcome, Incumbent]:
        st = self.state
        cfg = self.cfg
        self.t0 = time.perf_counter()
        self.deadline = self.t0 + cfg.time_limit
        s, e = st.table.type_ranges[st.instance_types[0]]
        roots = list(range(s, e))
        random.Random(cfg.rng_seed).shuffle(roots)
        n = min(cfg.threads, max(1, len(roots)))
        self.workers = [_Worker() for _ in range(n)]
        if n == 1:
            self._root(roots, self.workers[0])
        else:
            with ThreadPoolExecutor(max_workers=n) as pool:
                futs = [pool.submit(self._root, roots[i::n], self.workers[i]) for i in range(n)]
                for f in futs:
                    f.result()
        elapsed = time.perf_counter() - self.t0
        inc = self.incumbent
        found = bool(inc.placements)
        if found and not self.timed_out:
            inc.proven_optimal = True
        proven = inc.proven_optimal
        out = SolveOutcome(
            ub=inc.length if found else None,
            lb=inc.length if proven else self.lower_bound,
            proven=proven,
            infeasible=not found and not self.timed_out,
            timed_out=self.timed_out,
            nodes=sum(w.nodes for w in self.workers),
            leaves=sum(w.leaves for w in self.workers),
            time_to_best=self.time_to_best,
            best_node=self.best_node,
            solve_time=elapsed,
        )
        log.debug("search done: %s", out)
        return out, inc


def solve(
    state: GlobalState,
    trivial_lb: float,
    cfg: SolverConfig | None = None,
    enabled: int | None = None,
    bounding: bool = True,
) -> tuple[SolveOutcome, Incumbent]:
    """Exact search. ``state`` is reset first; ``enabled`` restricts the
    variables that may be used (all by default)."""
    state.reset(enabled)
    return Search(state, trivial_lb, cfg or SolverConfig(), bounding).run()


def count_leaves(state: GlobalState, cfg: SolverConfig | None = None) -> int:
    """Complete solutions visited with bounding disabled."""
    out, _ = solve(state, -math.inf, cfg, bounding=False)
    return out.leaves


# -- decoding -----------------------------------------------------------------


@dataclass(frozen=True)
class Placement:
    type_id: int
    piece: str
    col: int
    row: int
    rotation_id: int
    rotation: float  # radians
    x: float
    y: float
    length_bound: float
    polygon: Polygon = field(repr=False, compare=False)


def decode_solution(inc: Incumbent, state: GlobalState, inst: Instance, verify: bool = True):
    """Placements of the incumbent plus the reported length.

    Every pair is re-checked with the geometric overlap predicate and every
    piece against the board rectangle.
    """
    if not inc.placements:
        raise ValueError("empty incumbent")
    b = inst.board
    out = []
    for v in inc.placements:
        var = state.table.vars[v]
        pt = inst.types[var.type_id]
        c, r = b.dot_colrow(var.dot)
        x, y = c * b.gx, r * b.gy
        poly = pt.oriented[var.rotation_id]
        poly = poly.translated(x - poly.reference.x, y - poly.reference.y)
        out.append(
            Placement(var.type_id, pt.name, c, r, var.rotation_id, pt.rotations[var.rotation_id],
                      x, y, var.length_bound, poly)
        )
    length = max(p.length_bound for p in out)
    if verify:
        verify_layout(out, inst)
        rightmost = max(v.x for p in out for v in p.polygon.vertices)
        if abs(rightmost - length) > 1e-7:
            raise InternalConsistencyError(f"length {length} != rightmost extent {rightmost}")
    return out, length


def verify_layout(placements: list[Placement], inst: Instance) -> None:
    b = inst.board
    for p in placements:
        for vx, vy in p.polygon.vertices:
            if not (-EPS_GEOM <= vx <= b.length_ub + EPS_GEOM and -EPS_GEOM <= vy <= b.width + EPS_GEOM):
                raise InternalConsistencyError(f"piece {p.piece or p.type_id} leaves the board")
    for i in range(len(placements)):
        for j in range(i + 1, len(placements)):
            p, q = placements[i], placements[j]
            if placed_overlap(inst, p.type_id, p.rotation_id, Point2(p.x, p.y),
                              q.type_id, q.rotation_id, Point2(q.x, q.y)):
                raise InternalConsistencyError(f"placements {i} and {j} overlap")
