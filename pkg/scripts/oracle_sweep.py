"""Compare the exact search and the ladder lower bound against exhaustive
enumeration on random small instances."""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from oracle import brute_force  # noqa: E402

from dbnest.dotgrid import InfeasibleInstanceError  # noqa: E402
from dbnest.lowerbound import solve_lower_bound  # noqa: E402
from dbnest.pipeline import prepare  # noqa: E402
from dbnest.solver import solve  # noqa: E402
from dbnest.synthetic import random_instance  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    done = mismatches = lb_proven = 0
    t0 = time.perf_counter()
    while done < args.count:
        inst = random_instance(rng)
        try:
            p = prepare(inst)
        except InfeasibleInstanceError:
            continue
        done += 1
        opt, _ = brute_force(inst)
        res, _ = solve(p.state, p.trivial_lb)
        lb = solve_lower_bound(p.state, p.ladder)
        ok = (opt is None and res.infeasible) or (opt is not None and abs(res.ub - opt) <= 1e-9 and lb.lb <= opt + 1e-9)
        lb_proven += lb.proven
        if not ok:
            mismatches += 1
            print(f"mismatch on instance {done}: oracle={opt} search={res.ub} lb={lb.lb}")
    print(f"{done} instances, {mismatches} mismatches, {lb_proven} lower bounds proven optimal, "
          f"{time.perf_counter() - t0:.1f}s")
    sys.exit(1 if mismatches else 0)


if __name__ == "__main__":
    main()
