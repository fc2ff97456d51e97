"""Claim-verification and benchmark sweeps.

``verify_sweep`` runs the solver against the reference oracle on seeded
random instances, checking hard invariants (things preflow theory
guarantees) separately from the published-claim verdicts (things the
algorithm's design merely promises). Hard failures flip the sweep result;
claim verdicts are only counted and reported. Any instance with a false
verdict of either kind is written out as a DIMACS counterexample.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .dimacs import write_dimacs
from .engine import ceil_sqrt, restore_flow, run
from .generators import Instance, SplitMix64, gen_layered_blocking, gen_line, gen_random, gen_two_iteration
from .network import validate_preflow
from .oracles import max_flow_reference

__all__ = [
    "HARD_CHECKS",
    "CLAIM_CHECKS",
    "Verdict",
    "verify_instance",
    "verify_sweep",
    "as_verdicts",
    "bench_sweep",
]

# Provable consequences of preflow theory: failures mean the implementation
# is broken and flip the sweep exit status.
HARD_CHECKS = ("core_acyclic", "deterministic", "preflow_valid", "sink_bound")

# Published-claim verdicts: reported with agreement rates, never fatal.
CLAIM_CHECKS = (
    "augments_linear",
    "iterations_sqrt_bound",
    "matches_oracle",
    "restoration_ok",
    "saturate_or_discharge",
    "sink_gain_monotone",
)


@dataclass(frozen=True)
class Verdict:
    claim: str
    holds: bool
    instance: str
    evidence: dict = field(default_factory=dict)
    counterexample: str | None = None


def verify_instance(inst: Instance, max_iterations: int | None = None) -> dict:
    """Solve one instance twice, compare against the oracle, and judge it.

    Returns the machine-readable row::

        {instance, n, m, flow_value, oracle_value, iterations,
         total_augments, terminated_by, verdicts: {...}, max_arc_touch}
    """
    net = inst.to_network()
    state, report = run(net, max_iterations)
    state_replay, report_replay = run(net, max_iterations)
    deterministic = (
        json.dumps(report.to_json_dict(), sort_keys=True)
        == json.dumps(report_replay.to_json_dict(), sort_keys=True)
        and (state.residual == state_replay.residual).all()
    )
    oracle = max_flow_reference(net)

    restoration_ok = True
    if report.terminated_by == "converged":
        restored = restore_flow(net, state)
        stranded = [
            v
            for v in range(net.vertex_count)
            if v not in (net.source, net.sink) and restored.excess[v] != 0
        ]
        restoration_ok = (
            not stranded
            and restored.sink_gain == report.flow_value
            and not validate_preflow(net, restored)
        )

    verdicts = {
        "augments_linear": report.claim_verdicts["augments_bounded"],
        "core_acyclic": report.claim_verdicts["core_acyclic_each_iteration"],
        "deterministic": bool(deterministic),
        "iterations_sqrt_bound": report.claim_verdicts["iterations_sqrt_bound"],
        "matches_oracle": report.flow_value == oracle.value,
        "preflow_valid": not report.invariant_failures,
        "restoration_ok": restoration_ok,
        "saturate_or_discharge": report.claim_verdicts["saturate_or_discharge"],
        "sink_bound": report.flow_value <= oracle.value,
        "sink_gain_monotone": report.claim_verdicts["sink_gain_monotone"],
    }
    return {
        "instance": inst.label,
        "n": inst.vertex_count,
        "m": inst.arc_count,
        "flow_value": report.flow_value,
        "oracle_value": oracle.value,
        "iterations": report.iterations,
        "total_augments": report.total_augments,
        "terminated_by": report.terminated_by,
        "verdicts": verdicts,
        "max_arc_touch": report.max_arc_touch,
    }


def sweep_instance(base_seed: int, index: int, max_n: int, max_m: int, max_cap: int) -> tuple[int, Instance]:
    """Instance ``index`` of a sweep: sizes and inner seed derived from
    ``base_seed + index`` through one splitmix64 stream."""
    outer_seed = base_seed + index
    rng = SplitMix64(outer_seed)
    n = 2 + rng.below(max_n - 1)
    m = 1 + rng.below(max_m)
    inner_seed = rng.next_u64()
    return outer_seed, gen_random(n, m, max_cap, inner_seed)


def verify_sweep(
    count: int,
    base_seed: int,
    max_n: int,
    max_m: int,
    max_cap: int,
    max_iterations: int | None = None,
    out_dir: str | Path | None = None,
    emit=None,
) -> tuple[list[dict], dict]:
    """Run ``count`` seeded instances and aggregate the verdicts.

    ``emit``, when given, is called with each row as it is produced (the
    CLI uses it to stream JSON lines). Instances with any false verdict are
    written to ``out_dir`` as ``counterexample-<seed>.max``.
    """
    started = time.perf_counter()
    rows: list[dict] = []
    hard_failures = {key: 0 for key in HARD_CHECKS}
    claim_holds = {key: 0 for key in CLAIM_CHECKS}
    counterexamples: list[str] = []
    max_arc_touch = 0

    for index in range(count):
        outer_seed, inst = sweep_instance(base_seed, index, max_n, max_m, max_cap)
        row = verify_instance(inst, max_iterations)
        rows.append(row)
        max_arc_touch = max(max_arc_touch, row["max_arc_touch"])
        verdicts = row["verdicts"]
        for key in HARD_CHECKS:
            if not verdicts[key]:
                hard_failures[key] += 1
        for key in CLAIM_CHECKS:
            if verdicts[key]:
                claim_holds[key] += 1
        if out_dir is not None and not all(verdicts.values()):
            path = Path(out_dir) / f"counterexample-{outer_seed}.max"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(write_dimacs(inst))
            counterexamples.append(str(path))
        if emit is not None:
            emit(row)

    summary = {
        "type": "summary",
        "instances": count,
        "hard_invariants_pass": all(v == 0 for v in hard_failures.values()),
        "hard_failures": hard_failures,
        "claim_agreement": {
            key: {"holds": claim_holds[key], "rate": claim_holds[key] / count if count else 1.0}
            for key in CLAIM_CHECKS
        },
        "max_arc_touch": max_arc_touch,
        "counterexamples": counterexamples,
        "elapsed_s": round(time.perf_counter() - started, 3),
    }
    return rows, summary


def as_verdicts(row: dict, counterexample: str | None = None) -> list[Verdict]:
    """Explode a sweep row into one :class:`Verdict` per checked claim."""
    evidence = {
        "n": row["n"],
        "m": row["m"],
        "flow_value": row["flow_value"],
        "oracle_value": row["oracle_value"],
        "iterations": row["iterations"],
        "total_augments": row["total_augments"],
        "terminated_by": row["terminated_by"],
    }
    return [
        Verdict(
            claim=claim,
            holds=holds,
            instance=row["instance"],
            evidence=evidence,
            counterexample=None if holds else counterexample,
        )
        for claim, holds in sorted(row["verdicts"].items())
    ]


def _bench_instances(family: str, sizes, cap: int, width: int, density: float, seed: int):
    if family == "line":
        for k in sizes:
            yield gen_line(k, cap)
    elif family == "two-iteration":
        yield gen_two_iteration()
    elif family == "layered":
        for layers in sizes:
            profile = tuple(range(layers + 1, 0, -1))
            yield gen_layered_blocking(layers, width, profile)
    elif family == "random":
        for i, n in enumerate(sizes):
            m = max(1, int(round(density * n)))
            yield gen_random(n, m, cap, seed + i)
    else:
        raise ValueError(f"unknown family {family!r}")


def bench_sweep(
    family: str,
    sizes,
    cap: int = 7,
    width: int = 1,
    density: float = 4.0,
    seed: int = 1,
    max_iterations: int | None = None,
) -> list[dict]:
    """Measure one family across a size sweep.

    All columns except ``wall_time_s`` are deterministic for a fixed seed.
    """
    table = []
    for inst in _bench_instances(family, sizes, cap, width, density, seed):
        net = inst.to_network()
        started = time.perf_counter()
        _, report = run(net, max_iterations)
        wall = time.perf_counter() - started
        bound = ceil_sqrt(net.vertex_count)
        table.append(
            {
                "family": family,
                "instance": inst.label,
                "n": inst.vertex_count,
                "m": inst.arc_count,
                "flow_value": report.flow_value,
                "iterations": report.iterations,
                "total_augments": report.total_augments,
                "terminated_by": report.terminated_by,
                "ceil_sqrt_n": bound,
                "iterations_per_sqrt_n": round(report.iterations / bound, 4),
                "wall_time_s": round(wall, 6),
            }
        )
    return table
