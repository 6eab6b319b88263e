"""Command line front end.

Exit status: 0 success, 1 audit found an invalid allocation, 2 bad input,
3 instance too large for an exact method, 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .allocators import dp_exact_small
from .audit import audit
from .errors import FairseatError
from .generate import GenParams, generate_instance, preset
from .harness import ALGORITHMS, AlgorithmChoice, emit_report, run_comparison
from .io import allocation_to_dict, parse_allocation, parse_instance, serialize_allocation, serialize_instance
from .model import expand_seats, validate_allocation
from .oracle import opt_maxmin, opt_social_welfare, opt_sw_given_maxmin


def _load(path):
    return expand_seats(parse_instance(Path(path).read_bytes()))


def _write(path, data: bytes):
    if path == "-":
        sys.stdout.write(data.decode())
    else:
        Path(path).write_bytes(data)


def cmd_allocate(args):
    instance = _load(args.input)
    if args.algo == "dp":
        _, alloc = dp_exact_small(instance, max_states=args.max_states, max_students=args.max_students)
    else:
        alloc = ALGORITHMS[args.algo](instance)
    _write(args.output, serialize_allocation(instance, alloc, args.format))
    return 0


def cmd_audit(args):
    instance = _load(args.input)
    alloc = parse_allocation(Path(args.allocation).read_bytes())
    report = validate_allocation(instance, alloc)
    if not report.valid:
        doc = {"valid": False, "violations": [{"kind": v.kind.value, "detail": v.detail} for v in report.violations]}
        print(json.dumps(doc, indent=2))
        return 1
    result = dataclasses.asdict(audit(instance, alloc))
    print(json.dumps({"valid": True, **result}, indent=2))
    return 0


def cmd_oracle(args):
    instance = _load(args.input)
    if args.objective == "sw":
        result = opt_social_welfare(instance)
    elif args.objective == "maxmin":
        result = opt_maxmin(instance)
    else:
        threshold = args.threshold
        if threshold is None:
            threshold = opt_maxmin(instance).value
        result = opt_sw_given_maxmin(instance, threshold)
    doc = {
        "objective": args.objective,
        "value": result.value,
        "nodes_explored": result.nodes_explored,
        "proven_optimal": result.proven_optimal,
        "allocation": allocation_to_dict(instance, result.allocation),
    }
    print(json.dumps(doc, indent=2))
    return 0


def _gen_params(args):
    if args.preset:
        params = preset(args.preset)
        return params if args.seed is None else dataclasses.replace(params, seed=args.seed)
    if args.n_students is None or args.n_courses is None:
        raise SystemExit("gen: give --preset or both --n-students and --n-courses")
    return GenParams(
        n_students=args.n_students, n_courses=args.n_courses, seed=args.seed or 0,
        slot_grid=args.slot_grid, duration_range=tuple(args.durations), seats_range=tuple(args.seats),
        cap_range=tuple(args.caps), credits_range=tuple(args.credits), utility_kind=args.utility,
        desire_probability=args.desire_prob, value_range=tuple(args.values))


def cmd_gen(args):
    _write(args.output, serialize_instance(generate_instance(_gen_params(args))))
    return 0


def cmd_compare(args):
    if args.input:
        instance = _load(args.input)
        dataset = Path(args.input).stem
    else:
        params = preset(args.preset)
        if args.seed is not None:
            params = dataclasses.replace(params, seed=args.seed)
        instance = expand_seats(generate_instance(params))
        dataset = args.preset
    names = [a.strip() for a in args.algos.split(",") if a.strip()]
    choices = [AlgorithmChoice(n) for n in names]
    table = run_comparison(instance, choices, include_oracle=args.oracle, dataset=dataset, timing=args.timing)
    _write(args.report, emit_report(table, args.format))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="fairseat", description="Fair course-seat allocation under time conflicts.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("allocate", help="run one allocation algorithm")
    a.add_argument("--algo", required=True, choices=list(ALGORITHMS))
    a.add_argument("--input", required=True)
    a.add_argument("--output", required=True, help="file path or - for stdout")
    a.add_argument("--format", default="json", choices=["json", "csv"])
    a.add_argument("--max-students", type=int, default=3, help="dp only")
    a.add_argument("--max-states", type=int, default=2_000_000, help="dp only")
    a.set_defaults(func=cmd_allocate)

    au = sub.add_parser("audit", help="validate and audit an allocation")
    au.add_argument("--input", required=True)
    au.add_argument("--allocation", required=True)
    au.set_defaults(func=cmd_audit)

    o = sub.add_parser("oracle", help="exact optimum of a small instance")
    o.add_argument("--objective", required=True, choices=["sw", "maxmin", "sw-given-maxmin"])
    o.add_argument("--threshold", type=float, help="default: the instance's max-min optimum")
    o.add_argument("--input", required=True)
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("gen", help="generate a seeded synthetic instance")
    g.add_argument("--preset")
    g.add_argument("--n-students", type=int)
    g.add_argument("--n-courses", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--slot-grid", type=int, default=50)
    g.add_argument("--durations", type=int, nargs=2, default=[1, 5], metavar=("MIN", "MAX"))
    g.add_argument("--seats", type=int, nargs=2, default=[1, 1], metavar=("MIN", "MAX"))
    g.add_argument("--caps", type=int, nargs=2, default=[1, 3], metavar=("MIN", "MAX"))
    g.add_argument("--credits", type=int, nargs=2, default=[1, 1], metavar=("MIN", "MAX"))
    g.add_argument("--utility", default="uniform", choices=["uniform", "binary", "general"])
    g.add_argument("--desire-prob", type=float, default=0.5)
    g.add_argument("--values", type=int, nargs=2, default=[0, 5], metavar=("MIN", "MAX"))
    g.add_argument("--output", required=True)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("compare", help="tabulate algorithms against the oracle")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--preset")
    c.add_argument("--seed", type=int, help="override the preset's seed")
    c.add_argument("--algos", default="ef1cc,maxmin")
    c.add_argument("--oracle", action="store_true")
    c.add_argument("--timing", action="store_true", help="record wall-clock runtimes")
    c.add_argument("--report", default="-")
    c.add_argument("--format", default="pretty", choices=["csv", "json", "pretty"])
    c.set_defaults(func=cmd_compare)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FairseatError as exc:
        print(f"fairseat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"fairseat: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
