"""Command-line entry point.

Exit codes: 0 success, 2 usage, 3 parse, 4 validation, 5 numeric,
6 verification failure, 7 I/O.
"""

from __future__ import annotations

import argparse
import sys

from . import kernels
from .allocation import ServiceState, estimate_resource
from .capacity_model import cantelli_lower_bound, service_cap, variance_bound
from .config import load_config
from .errors import InputError, ModelError, NumericError, ParseError, ValidationError
from .graph_core import (
    LayeredPartite,
    build_dependency_graph,
    chromatic_number_brute,
    chromatic_poly_complete,
    chromatic_poly_layered_partite,
    greedy_color,
    MAX_CHROMATIC_VERTICES,
)
from .report import emit_report, fmt
from .simulator import ScenarioError, run_scenario

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_VALIDATION = 4
EXIT_NUMERIC = 5
EXIT_VERIFY = 6
EXIT_IO = 7


def _uint64(text: str) -> int:
    value = int(text, 10)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slice-weaver", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sim = sub.add_parser("simulate", help="run a scenario and write arrivals.csv/summary.txt")
    sim.add_argument("--config", required=True)
    sim.add_argument("--seed", type=_uint64)
    sim.add_argument("--out", required=True)

    col = sub.add_parser("coloring", help="greedy coloring and chromatic polynomial")
    col.add_argument("--vertices", type=int, required=True)
    col.add_argument("--colors", type=int, required=True)
    col.add_argument("--partite", type=int, metavar="L",
                     help="use L layers of --vertices vertices each")

    cap = sub.add_parser("capacity", help="service cap, variance bound and SLA bound")
    cap.add_argument("--config", required=True)

    alloc = sub.add_parser("allocate", help="estimate the resource for one more arrival")
    alloc.add_argument("--config", required=True)
    alloc.add_argument("--snr", type=float, required=True)
    alloc.add_argument("--category", type=int, default=0)

    ver = sub.add_parser("verify", help="run the oracle property suites")
    ver.add_argument("--full", action="store_true", help="full budget (1e5-sample Monte Carlo)")
    return parser


def _cmd_simulate(args) -> int:
    config = load_config(args.config, args.seed)
    report = run_scenario(config)
    for path in emit_report(report, args.out):
        print(path)
    return EXIT_OK


def _cmd_coloring(args) -> int:
    n, k = args.vertices, args.colors
    if n < 0 or k < 0:
        raise InputError("--vertices and --colors must be non-negative")
    if args.partite is not None:
        if n < 1:
            raise InputError("--vertices must be positive for a layered graph")
        lp = LayeredPartite((n,) * args.partite)
        g = lp.to_graph()
        print(f"layers={lp.layer_count} layer_size={n}")
        print(f"block_colorings={chromatic_poly_layered_partite(lp.layer_count, k)}")
    else:
        g = build_dependency_graph(n)
        print(f"vertices={n}")
        print(f"chromatic_polynomial={chromatic_poly_complete(n, k)}")
    coloring = greedy_color(g)
    print(f"greedy_colors_used={coloring.colors_used}")
    print("greedy_assignment=" + ",".join(str(c) for c in coloring.assignment))
    if g.vertex_count <= MAX_CHROMATIC_VERTICES:
        print(f"chromatic_number={chromatic_number_brute(g)}")
    return EXIT_OK


def _cmd_capacity(args) -> int:
    config = load_config(args.config)
    bp = config.bound_params
    cap = service_cap(bp)
    vb = variance_bound(bp, quarter_cov=config.quarter_cov)
    mean_load = config.mean_load if config.mean_load is not None else cap * bp.a
    print(f"service_cap={cap}")
    print(f"u_effective={fmt(vb.u_effective)}")
    print(f"variance_term_sigma={fmt(vb.term_sigma)}")
    print(f"variance_term_cov={fmt(vb.term_cov)}")
    print(f"variance_term_mean={fmt(vb.term_mean)}")
    print(f"variance_bound={fmt(vb.total)}")
    print(f"mean_load={fmt(mean_load)}")
    print(f"sla_lower_bound={fmt(cantelli_lower_bound(vb.total, mean_load))}")
    return EXIT_OK


def _cmd_allocate(args) -> int:
    config = load_config(args.config)
    if not 0 <= args.category < config.category_count:
        raise ValidationError("category", f"must lie in 0..{config.category_count - 1}")
    report = run_scenario(config)
    states = [
        ServiceState(r.resource, config.arrivals[r.index].snr)
        for r in report.records
        if r.admitted and r.category == args.category
    ]
    est = estimate_resource(config.allocation_params, states, args.snr, config.r_range)
    print(f"category={args.category}")
    print(f"existing_services={len(states)}")
    print(f"resource={fmt(est.resource)}")
    print(f"objective={fmt(est.objective)}")
    print(f"snr_derivative={fmt(est.s_derivative)}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    from .verify import run_checks

    budget = "full" if args.full else "small"
    print(f"backend={kernels.BACKEND} budget={budget}")
    results = run_checks(budget)
    for res in results:
        print(res.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} passed")
    return EXIT_VERIFY if failed else EXIT_OK


COMMANDS = {
    "simulate": _cmd_simulate,
    "coloring": _cmd_coloring,
    "capacity": _cmd_capacity,
    "allocate": _cmd_allocate,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, InputError, ModelError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ScenarioError as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        if isinstance(exc.cause, NumericError):
            return EXIT_NUMERIC
        return EXIT_VALIDATION
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
