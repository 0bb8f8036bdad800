"""threep3w9 with and without rotations (square {0, 45}, triangle {0, 180}):
proven optima and SVG drawings of both layouts."""

import argparse
from pathlib import Path

from dbnest.instances import builtin_instance
from dbnest.pipeline import prepare
from dbnest.solver import SolverConfig, decode_solution, solve
from dbnest.svg import render_svg


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--time-limit", type=float, default=600)
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for rot in (False, True):
        inst = builtin_instance("threep3w9", rot)
        p = prepare(inst)
        res, inc = solve(p.state, p.trivial_lb, SolverConfig(time_limit=args.time_limit))
        placements, length = decode_solution(inc, p.state, inst)
        path = out / f"{inst.name}.svg"
        path.write_text(render_svg(placements, inst, length))
        print(f"{inst.name}: V={p.table.V} edges={p.edges} L={length:g} proven={res.proven} "
              f"nodes={res.nodes} -> {path}")
        for pl in placements:
            print(f"    {pl.piece:<9} rot={pl.rotation * 180 / 3.141592653589793:6.1f} at ({pl.x:g}, {pl.y:g})")


if __name__ == "__main__":
    main()
