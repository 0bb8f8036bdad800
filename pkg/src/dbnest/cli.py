"""Command line entry point.

Exit codes: 0 success, 1 bad input or configuration, 2 proven infeasible
within the length upper bound, 3 time limit reached without any solution,
4 conflict matrix over the memory budget.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from .conflict import DEFAULT_MEMORY_BUDGET, CapacityError
from .dotgrid import ConfigError, InfeasibleInstanceError
from .geometry import GeometryError
from .instances import THREE_FAMILY, InstanceFormatError, builtin_instance, load_instance
from .lowerbound import solve_lower_bound
from .milp import MODEL_KINDS, build_model, emit
from .milp.model import ModelInputError
from .pipeline import prepare
from .report import BenchmarkRow, performance_profiles, read_rows, rows_to_csv, times_from_rows
from .solver import SolverConfig, decode_solution, solve
from .svg import render_svg

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_TIMEOUT, EXIT_CAPACITY = 0, 1, 2, 3, 4
FORMAT_EXT = {"lp": "lp", "mps": "mps", "freemps": "mps"}

log = logging.getLogger("dbnest")


def _instance(args):
    src = args.instance
    if src.startswith("builtin:"):
        name = src[len("builtin:"):]
        rot = name.endswith("+rot")
        name = name.removesuffix("+rot")
        if name not in THREE_FAMILY:
            raise InstanceFormatError("$", f"unknown built-in instance {name!r}")
        inst = builtin_instance(name, rot)
        if args.grid is not None or args.length_ub is not None:
            from .instances import instance_from_dict, instance_to_dict

            inst = instance_from_dict(instance_to_dict(inst), args.grid, args.length_ub)
        return inst
    return load_instance(src, grid=args.grid, length_ub=args.length_ub)


def _config(args) -> SolverConfig:
    return SolverConfig(time_limit=args.time_limit, threads=args.threads, rng_seed=args.seed)


def _out(args) -> Path:
    p = Path(args.out_dir)
    p.mkdir(parents=True, exist_ok=True)
    return p


def layout_document(placements, length: float, inst, proven: bool) -> dict:
    return {
        "instance": inst.name,
        "length": length,
        "proven_optimal": proven,
        "board": {"width": inst.board.width, "length_ub": inst.board.length_ub},
        "placements": [
            {
                "piece": p.piece,
                "type_id": p.type_id,
                "col": p.col,
                "row": p.row,
                "rotation_deg": round(math.degrees(p.rotation), 9),
                "x": p.x,
                "y": p.y,
                "vertices": [[v.x, v.y] for v in p.polygon.vertices],
            }
            for p in placements
        ],
    }


def cmd_solve(args) -> int:
    inst = _instance(args)
    prep = prepare(inst, args.memory_budget)
    res, inc = solve(prep.state, prep.trivial_lb, _config(args))
    res.build_time = prep.build_time
    out = _out(args)
    row = BenchmarkRow.from_result(
        inst.name, inst.N, inst.total_area, inst.board.width, res.lb, res.ub, prep.table.V, res.nodes,
        res.solve_time, prep.edges, res.time_to_best, res.best_node, prep.build_time,
    )
    (out / f"{inst.name}.csv").write_text(rows_to_csv([row]))
    if inc.placements:
        placements, length = decode_solution(inc, prep.state, inst)
        doc = layout_document(placements, length, inst, res.proven)
        (out / f"{inst.name}_layout.json").write_text(json.dumps(doc, indent=2) + "\n")
        (out / f"{inst.name}.svg").write_text(render_svg(placements, inst, length))
    status = "optimal" if res.proven else ("infeasible" if res.infeasible else "timeout")
    print(f"{inst.name}: status={status} lb={res.lb:g} ub={'-' if res.ub is None else f'{res.ub:g}'} "
          f"V={prep.table.V} edges={prep.edges} nodes={res.nodes} time={res.solve_time:.3f}s")
    if res.infeasible:
        return EXIT_INFEASIBLE
    if res.ub is None:
        return EXIT_TIMEOUT
    return EXIT_OK


def cmd_lb(args) -> int:
    inst = _instance(args)
    prep = prepare(inst, args.memory_budget)
    out_lb = solve_lower_bound(prep.state, prep.ladder, _config(args))
    report = {
        "instance": inst.name,
        "trivial_lb": prep.trivial_lb,
        "lb": out_lb.lb,
        "proven_optimal": out_lb.proven,
        "infeasible": out_lb.infeasible,
        "improvement_pct": out_lb.improvement(),
        "iterations": out_lb.iterations,
        "nodes": out_lb.nodes,
        "time_s": out_lb.time,
        "trace": [{"length": L, "nodes": n, "status": s} for L, n, s in out_lb.trace],
    }
    (_out(args) / f"{inst.name}_lb.json").write_text(json.dumps(report, indent=2) + "\n")
    for L, n, s in out_lb.trace:
        print(f"  L={L:g}: {s} ({n} nodes)")
    print(f"{inst.name}: lb={out_lb.lb:g}{'*' if out_lb.proven else ''} trivial={prep.trivial_lb:g} "
          f"impr={out_lb.improvement():.2f}% time={out_lb.time:.3f}s")
    if out_lb.infeasible:
        return EXIT_INFEASIBLE
    return EXIT_OK


def _emit_lower_bound(args, prep) -> float:
    mode = args.lower_bound
    if mode == "trivial":
        return prep.trivial_lb
    if mode == "lb":
        res = solve_lower_bound(prep.state, prep.ladder, _config(args))
        if res.infeasible:
            raise InfeasibleInstanceError("no packing fits within the length upper bound")
        return res.lb
    try:
        return float(mode)
    except ValueError:
        raise ConfigError(f"--lower-bound must be 'trivial', 'lb' or a number, got {mode!r}") from None


def cmd_emit(args) -> int:
    inst = _instance(args)
    prep = prepare(inst, args.memory_budget)
    lb = _emit_lower_bound(args, prep)
    model = build_model(args.model, inst, prep.table, prep.nbrs, lb)
    text = emit(model, args.format)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        path = Path(args.output) if args.output else _out(args) / f"{inst.name}_{args.model}.{FORMAT_EXT[args.format]}"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        print(f"{path}: {model.n_binary} binary, {model.n_continuous} continuous, "
              f"{len(model.constraints)} constraints (lower bound {lb:g})")
    return EXIT_OK


def cmd_info(args) -> int:
    inst = _instance(args)
    prep = prepare(inst, args.memory_budget)
    print(f"instance {inst.name}: T={inst.T} N={inst.N} board {inst.board.width:g}x{inst.board.length_ub:g} "
          f"dots={inst.board.dots}")
    print(f"trivial lower bound {prep.trivial_lb:g}, ladder M={prep.ladder.M}")
    print(prep.matrix.describe())
    if args.export_adjacency:
        prep.matrix.export(args.export_adjacency)
        print(f"adjacency written to {args.export_adjacency}")
    return EXIT_OK


def cmd_profile(args) -> int:
    times = {}
    for item in args.runs:
        method, sep, path = item.partition("=")
        if not sep:
            raise ConfigError(f"expected METHOD=CSV, got {item!r}")
        times[method] = times_from_rows(read_rows(path))
    table = performance_profiles(times, r_max=args.r_max)
    text = table.to_csv()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dbnest", description="Exact dotted-board nesting solvers.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("instance", help="instance JSON/XML path or builtin:NAME[+rot]")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--time-limit", type=float, default=600.0)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--grid", type=float, default=None, help="override both grid steps")
        sp.add_argument("--length-ub", type=float, default=None, help="override the board length bound")
        sp.add_argument("--out-dir", default="out")
        sp.add_argument("--memory-budget", type=int, default=DEFAULT_MEMORY_BUDGET, help="bytes")

    common(sp := sub.add_parser("solve", help="exact search; writes CSV, SVG and layout JSON"))
    sp.set_defaults(func=cmd_solve)
    common(sp := sub.add_parser("lb", help="lower bound by ladder iteration"))
    sp.set_defaults(func=cmd_lb)
    common(sp := sub.add_parser("emit", help="write an integer-programming model"))
    sp.add_argument("--model", choices=MODEL_KINDS, default="db")
    sp.add_argument("--format", choices=sorted(FORMAT_EXT), default="lp")
    sp.add_argument("--lower-bound", default="lb", help="'lb' (ladder iteration), 'trivial' or a number")
    sp.add_argument("--output", default=None, help="file path, or - for stdout")
    sp.set_defaults(func=cmd_emit)
    common(sp := sub.add_parser("info", help="structure counts"))
    sp.add_argument("--export-adjacency", default=None)
    sp.set_defaults(func=cmd_info)
    sp = sub.add_parser("profile", help="performance profiles from benchmark CSVs")
    sp.add_argument("runs", nargs="+", metavar="METHOD=CSV")
    sp.add_argument("--r-max", type=float, default=None)
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_profile)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InfeasibleInstanceError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InstanceFormatError, GeometryError, ConfigError, ModelInputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
