"""Command-line driver: solve single instances, verify claims in bulk,
benchmark families, and emit DIMACS instances.

Exit codes for ``solve``: 0 converged, 2 stopped at the iteration cap,
1 on I/O or parse failures. ``verify`` exits 0 iff every hard invariant
held across the sweep; claim verdicts never affect the exit code.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import __version__
from ._jit import BACKEND
from .dimacs import DimacsError, parse_dimacs, write_dimacs
from .engine import restore_flow, run
from .generators import (
    Instance,
    InvalidProfileError,
    gen_layered_blocking,
    gen_line,
    gen_random,
    gen_two_iteration,
)
from .harness import bench_sweep, verify_sweep
from .network import FlowError
from .oracles import max_flow_reference

__all__ = ["main", "parse_generator_spec"]

_FAMILIES = ("line", "two-iteration", "layered", "random")


def parse_generator_spec(spec: str) -> Instance:
    """Build an instance from a spec like ``line:k=3,cap=3`` or
    ``layered:layers=2,width=2,profile=4-2-1``."""
    name, _, args_text = spec.partition(":")
    args: dict[str, str] = {}
    if args_text:
        for part in args_text.split(","):
            key, eq, value = part.partition("=")
            if not eq:
                raise ValueError(f"bad generator argument {part!r} in {spec!r}")
            args[key.strip()] = value.strip()
    if name == "line":
        return gen_line(int(args.get("k", 3)), int(args.get("cap", 3)))
    if name == "two-iteration":
        return gen_two_iteration()
    if name == "layered":
        layers = int(args.get("layers", 2))
        width = int(args.get("width", 1))
        if "profile" in args:
            profile = tuple(int(x) for x in args["profile"].split("-"))
        else:
            profile = tuple(range(layers + 1, 0, -1))
        return gen_layered_blocking(layers, width, profile)
    if name == "random":
        return gen_random(
            int(args["n"]),
            int(args["m"]),
            int(args.get("max_cap", 20)),
            int(args.get("seed", 1)),
        )
    raise ValueError(f"unknown generator family {name!r}")


def _load_instance(text_or_path: str) -> Instance:
    head = text_or_path.partition(":")[0]
    if head in _FAMILIES:
        return parse_generator_spec(text_or_path)
    if text_or_path == "-":
        return parse_dimacs(sys.stdin.read())
    return parse_dimacs(Path(text_or_path).read_text())


def _cmd_solve(args) -> int:
    inst = _load_instance(args.input)
    net = inst.to_network()
    if args.algorithm == "reference":
        result = max_flow_reference(net)
        if args.metrics == "json":
            print(json.dumps({"algorithm": "reference", "instance": inst.label, "flow_value": result.value}, sort_keys=True))
        elif args.metrics == "csv":
            _print_csv([{"instance": inst.label, "algorithm": "reference", "flow_value": result.value}])
        else:
            print(f"flow {result.value}")
        return 0

    state, report = run(net, args.max_iterations)
    if args.restore_flow and report.terminated_by == "converged":
        state = restore_flow(net, state)
    if args.metrics == "json":
        payload = {"algorithm": "sorting-flow", "instance": inst.label, "n": inst.vertex_count, "m": inst.arc_count}
        payload.update(report.to_json_dict())
        print(json.dumps(payload, sort_keys=True))
    elif args.metrics == "csv":
        _print_csv(
            [
                {
                    "instance": inst.label,
                    "n": inst.vertex_count,
                    "m": inst.arc_count,
                    "flow_value": report.flow_value,
                    "iterations": report.iterations,
                    "total_augments": report.total_augments,
                    "terminated_by": report.terminated_by,
                }
            ]
        )
    else:
        print(f"flow {report.flow_value}")
        print(f"iterations {report.iterations}")
        print(f"terminated {report.terminated_by}")
    return 0 if report.terminated_by == "converged" else 2


def _cmd_verify(args) -> int:
    rows, summary = verify_sweep(
        count=args.count,
        base_seed=args.seed,
        max_n=args.n,
        max_m=args.m,
        max_cap=args.max_cap,
        max_iterations=args.max_iterations,
        out_dir=args.out,
        emit=lambda row: print(json.dumps(row, sort_keys=True)),
    )
    print(json.dumps(summary, sort_keys=True))
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        with (out / "verdicts.jsonl").open("w") as fh:
            for row in rows:
                fh.write(json.dumps(row, sort_keys=True) + "\n")
        (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return 0 if summary["hard_invariants_pass"] else 1


def _cmd_bench(args) -> int:
    sizes = [int(x) for x in args.sizes.split(",") if x]
    table = bench_sweep(
        family=args.family,
        sizes=sizes,
        cap=args.cap,
        width=args.width,
        density=args.density,
        seed=args.seed,
        max_iterations=args.max_iterations,
    )
    if args.metrics == "json":
        print(json.dumps({"backend": BACKEND, "rows": table}, sort_keys=True))
    else:
        _print_csv(table)
    return 0


def _cmd_gen(args) -> int:
    head = args.spec.partition(":")[0]
    if args.count > 1 and head != "random":
        raise ValueError("--count above 1 only applies to the random family")
    first = parse_generator_spec(args.spec)
    instances = [first]
    if args.count > 1:
        opts = _spec_args(args.spec)
        seed = int(opts.get("seed", 1))
        max_cap = int(opts.get("max_cap", 20))
        instances = [
            gen_random(first.vertex_count, first.arc_count, max_cap, seed + i)
            for i in range(args.count)
        ]
    if args.out is None:
        for inst in instances:
            sys.stdout.write(write_dimacs(inst))
        return 0
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, inst in enumerate(instances):
        (out / f"instance-{i:04d}.max").write_text(write_dimacs(inst))
    return 0


def _spec_args(spec: str) -> dict[str, str]:
    return dict(
        part.partition("=")[::2] for part in spec.partition(":")[2].split(",") if "=" in part
    )


def _print_csv(rows: list[dict]) -> None:
    if not rows:
        return
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    writer.writerows(rows)
    sys.stdout.write(buffer.getvalue())


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sortflow",
        description="Max-flow solver with reference oracles and a claim-verification harness.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} backend)")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve one instance (file, '-' for stdin, or generator spec)")
    solve.add_argument("input", help="DIMACS path, '-', or e.g. 'line:k=3,cap=3'")
    solve.add_argument("--algorithm", choices=["sorting-flow", "reference"], default="sorting-flow")
    solve.add_argument("--max-iterations", type=int, default=None)
    solve.add_argument("--metrics", choices=["json", "csv", "plain"], default="plain")
    solve.add_argument("--restore-flow", action="store_true", help="return stranded excess to the source before reporting")
    solve.set_defaults(handler=_cmd_solve)

    verify = sub.add_parser("verify", help="sweep seeded random instances and report verdicts as JSON lines")
    verify.add_argument("--count", type=int, default=1000, help="number of instances")
    verify.add_argument("--seed", type=int, default=1, help="base seed; instance i uses seed+i")
    verify.add_argument("--n", type=int, default=40, help="largest vertex count")
    verify.add_argument("--m", type=int, default=200, help="largest arc count")
    verify.add_argument("--max-cap", type=int, default=20)
    verify.add_argument("--max-iterations", type=int, default=None)
    verify.add_argument("--out", default=None, help="directory for counterexamples and result files")
    verify.set_defaults(handler=_cmd_verify)

    bench = sub.add_parser("bench", help="run a family sweep and print a metrics table")
    bench.add_argument("--family", choices=list(_FAMILIES), default="line")
    bench.add_argument("--sizes", default="10,100,1000", help="comma-separated size points (k, layers, or n)")
    bench.add_argument("--cap", type=int, default=7, help="line capacity / random max capacity")
    bench.add_argument("--width", type=int, default=1, help="layered family width")
    bench.add_argument("--density", type=float, default=4.0, help="random family arcs per vertex")
    bench.add_argument("--seed", type=int, default=1)
    bench.add_argument("--max-iterations", type=int, default=None)
    bench.add_argument("--metrics", choices=["csv", "json"], default="csv")
    bench.set_defaults(handler=_cmd_bench)

    gen = sub.add_parser("gen", help="write instances as DIMACS")
    gen.add_argument("spec", help="generator spec, e.g. 'random:n=10,m=30,max_cap=20,seed=7'")
    gen.add_argument("--count", type=int, default=1, help="random family: number of instances (seed increments)")
    gen.add_argument("--out", default=None, help="directory for .max files (default: stdout)")
    gen.set_defaults(handler=_cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (DimacsError, FlowError, InvalidProfileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
