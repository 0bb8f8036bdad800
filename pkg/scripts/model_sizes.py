"""Variable and constraint counts of the four integer-programming models
for the three-family instances. The ladder models use the ladder lower
bound, the others the trivial one, unless --lower-bound says otherwise."""

import argparse

from dbnest.instances import THREE_FAMILY, builtin_instance
from dbnest.lowerbound import solve_lower_bound
from dbnest.milp import MODEL_KINDS, build_model
from dbnest.pipeline import prepare
from dbnest.solver import SolverConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lower-bound", choices=["trivial", "lb"], default="lb")
    ap.add_argument("--time-limit", type=float, default=60)
    args = ap.parse_args()
    head = "".join(f"{k + ' vars':>12}{k + ' cons':>12}" for k in MODEL_KINDS)
    print(f"{'instance':<12}{'LB':>5}{head}")
    for name in THREE_FAMILY:
        p = prepare(builtin_instance(name))
        lb = p.trivial_lb
        if args.lower_bound == "lb":
            lb = solve_lower_bound(p.state, p.ladder, SolverConfig(time_limit=args.time_limit)).lb
        cells = []
        for kind in MODEL_KINDS:
            m = build_model(kind, p.inst, p.table, p.nbrs, lb)
            cells.append(f"{len(m.variables):>12}{len(m.constraints):>12}")
        print(f"{name:<12}{lb:>5g}{''.join(cells)}")


if __name__ == "__main__":
    main()
