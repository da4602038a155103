"""Command-line entry point: ``lbcluster <command> ...``."""

from __future__ import annotations

import argparse
import sys

from . import io
from .bicriteria import to_bicriteria
from .cost import Kind, cost
from .errors import LBClusterError
from .genbench import main_bench
from .nesting import solve_lb_via_nesting
from .oracle import brute_force_opt
from .reduce2 import reduce_to_two
from .reduce_eps import reduce_to_one_plus_eps
from .weaklb import compute_center_costs, solve_weak_lb

ORACLE_MODES = {"weak": Kind.WEAK, "two-weak": Kind.BWEAK, "lb": Kind.LB, "plain": Kind.PLAIN, "fcost": Kind.FCOST}


def _emit(sol, inst, out):
    payload = io.solution_to_json(sol)
    if out:
        io.save_json(payload, out)
    print(f"cost {cost(inst, sol):.10g}, {len(sol.centers)} centers")


def _cmd_solve_weak(args):
    inst = io.read_instance(args.instance)
    _emit(solve_weak_lb(inst, seed=args.seed), inst, args.out)


def _cmd_reduce2(args):
    inst = io.read_instance(args.instance)
    sol, trace = reduce_to_two(inst, io.read_solution(args.solution))
    if args.trace:
        io.save_json(trace.to_json(), args.trace)
    _emit(sol, inst, args.out)


def _cmd_reduce_eps(args):
    inst = io.read_instance(args.instance)
    sol, trace = reduce_to_one_plus_eps(inst, io.read_solution(args.solution), args.eps)
    if args.trace:
        io.save_json(trace.to_json(), args.trace)
    _emit(sol, inst, args.out)


def _cmd_bicriteria(args):
    inst = io.read_instance(args.instance)
    _emit(to_bicriteria(inst, io.read_solution(args.solution), args.beta), inst, args.out)


def _cmd_solve_lb(args):
    inst = io.read_instance(args.instance)
    _emit(solve_lb_via_nesting(inst, seed=args.seed), inst, args.out)


def _cmd_oracle(args):
    inst = io.read_instance(args.instance)
    mode = ORACLE_MODES[args.mode]
    f = compute_center_costs(inst) if mode is Kind.FCOST else None
    res = brute_force_opt(inst, mode, f=f)
    if res.solution is None:
        print("infeasible")
        return 1
    if args.out:
        io.save_json(io.solution_to_json(res.solution), args.out)
    print(f"optimum {res.cost:.10g}, centers {list(res.centers)}")


def _cmd_bench(args):
    config = io.load_json(args.config) if args.config else {}
    return main_bench(config, args.out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lbcluster", description="Clustering with lower bounds on cluster sizes.")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_, solution=False, out=True):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--instance", required=True)
        if solution:
            s.add_argument("--solution", required=True)
        if out:
            s.add_argument("--out")
        s.set_defaults(func=fn)
        return s

    cmd("solve-weak", _cmd_solve_weak, "weak lower-bound solution").add_argument("--seed", type=int, default=0)
    s = cmd("reduce2", _cmd_reduce2, "weak -> multiplicity at most two", solution=True)
    s.add_argument("--trace")
    s = cmd("reduce-eps", _cmd_reduce_eps, "weak -> fractional totals in [1, 1+eps]", solution=True)
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--trace")
    s = cmd("bicriteria", _cmd_bicriteria, "two-weak -> single assignment, loads >= beta*B", solution=True)
    s.add_argument("--beta", type=float, default=0.5)
    cmd("solve-lb", _cmd_solve_lb, "standard lower bounds via nesting").add_argument("--seed", type=int, default=0)
    s = cmd("oracle", _cmd_oracle, "exact optimum for tiny instances")
    s.add_argument("--mode", choices=sorted(ORACLE_MODES), required=True)

    s = sub.add_parser("bench", help="run the benchmark harness")
    s.add_argument("--config")
    s.add_argument("--out")
    s.set_defaults(func=_cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rc = args.func(args)
    except LBClusterError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
