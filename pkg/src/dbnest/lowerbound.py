"""Lower bounds by proving infeasibility up the length ladder.

Each iteration enables only the variables whose length bound does not
exceed the current candidate and runs the exact search. A feasible solution
is then optimal; an exhausted search raises the candidate to the next ladder
value.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

from .conflict import GlobalState
from .dotgrid import LengthLadder
from .solver import Incumbent, SolverConfig, solve


@dataclass
class LowerBoundOutcome:
    lb: float
    optimal_solution: Incumbent | None
    proven: bool
    iterations: int
    time: float
    infeasible: bool = False
    trace: list[tuple[float, int, str]] = field(default_factory=list)
    nodes: int = 0

    @property
    def trivial(self) -> float:
        return self.trace[0][0] if self.trace else self.lb

    def improvement(self) -> float:
        """Percent gain over the trivial bound."""
        return 100.0 * (self.lb - self.trivial) / self.trivial


def enabled_mask(bounds, limit: float, eps: float) -> int:
    m = 0
    for v, b in enumerate(bounds):
        if b <= limit + eps:
            m |= 1 << v
    return m


def solve_lower_bound(state: GlobalState, ladder: LengthLadder, cfg: SolverConfig | None = None) -> LowerBoundOutcome:
    cfg = cfg or SolverConfig()
    t0 = time.perf_counter()
    deadline = t0 + cfg.time_limit
    candidates = [ladder.trivial_lb, *ladder.values]
    out = LowerBoundOutcome(lb=ladder.trivial_lb, optimal_solution=None, proven=False, iterations=0, time=0.0)
    for lb in candidates:
        out.lb = lb
        remaining = deadline - time.perf_counter()
        if remaining <= 0:
            break
        out.iterations += 1
        enabled = enabled_mask(state.bounds, lb, cfg.epsilon_len)
        res, inc = solve(state, lb, replace(cfg, time_limit=remaining), enabled=enabled)
        out.nodes += res.nodes
        if inc.placements:
            out.trace.append((lb, res.nodes, "feasible"))
            out.optimal_solution = inc
            out.proven = True
            out.lb = inc.length
            break
        if res.timed_out:
            out.trace.append((lb, res.nodes, "timeout"))
            break
        out.trace.append((lb, res.nodes, "infeasible"))
    else:
        out.infeasible = True
    out.time = time.perf_counter() - t0
    return out
