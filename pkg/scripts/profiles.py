"""Performance profiles of the exact search against the ladder lower-bound
method on the three-family instances (with and without rotations)."""

import argparse
import math
import time

from dbnest.instances import THREE_FAMILY, builtin_instance
from dbnest.lowerbound import solve_lower_bound
from dbnest.pipeline import prepare
from dbnest.report import performance_profiles
from dbnest.solver import SolverConfig, solve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--time-limit", type=float, default=60)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    cfg = SolverConfig(time_limit=args.time_limit)
    times = {"db-pb": {}, "db-pb-lb": {}}
    for name in THREE_FAMILY:
        for rot in (False, True):
            inst = builtin_instance(name, rot)
            p = prepare(inst)
            t0 = time.perf_counter()
            res, _ = solve(p.state, p.trivial_lb, cfg)
            times["db-pb"][inst.name] = time.perf_counter() - t0 if res.proven else math.inf
            t0 = time.perf_counter()
            lb = solve_lower_bound(p.state, p.ladder, cfg)
            times["db-pb-lb"][inst.name] = time.perf_counter() - t0 if lb.proven else math.inf
    table = performance_profiles(times)
    text = table.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    print(text, end="")


if __name__ == "__main__":
    main()
