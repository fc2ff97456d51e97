"""sortflow: an experimental max-flow solver built on repeated reverse-BFS
arc ordering and a single global push pass per iteration, packaged with
independent reference oracles, worst-case instance generators, DIMACS I/O,
and a harness that measures (rather than assumes) the algorithm's
correctness and iteration-count behavior.
"""

__version__ = "0.1.0"

from ._jit import BACKEND, JIT_ENABLED
from .network import (
    SOURCE_EXCESS,
    Arc,
    CapacityOverflowError,
    FlowError,
    FlowState,
    InvalidVertexError,
    Network,
    ResidualExceededError,
    SelfLoopError,
    SourceEqualsSinkError,
    augment,
    build_network,
    companion,
    excess,
    flow_value,
    recovered_flow,
    residual_capacity,
    validate_preflow,
)
from .engine import (
    NonTerminatingPushError,
    PushStats,
    RestorationFailedError,
    RunReport,
    SearchOrder,
    bfss,
    ceil_sqrt,
    core_is_acyclic,
    initialize,
    push,
    restore_flow,
    run,
)
from .oracles import (
    GraphTooLargeError,
    OracleResult,
    SourceReachedSinkError,
    certify_cut,
    max_flow_reference,
    min_cut_brute_force,
)
from .generators import (
    Instance,
    InvalidProfileError,
    SplitMix64,
    gen_layered_blocking,
    gen_line,
    gen_random,
    gen_two_iteration,
)
from .dimacs import (
    ArcCountMismatchError,
    DimacsError,
    DimacsSyntaxError,
    DuplicateProblemLineError,
    MissingSourceOrSinkError,
    parse_dimacs,
    write_dimacs,
)
from .harness import CLAIM_CHECKS, HARD_CHECKS, Verdict, bench_sweep, verify_instance, verify_sweep

__all__ = [
    "BACKEND",
    "JIT_ENABLED",
    "SOURCE_EXCESS",
    "Arc",
    "Network",
    "FlowState",
    "SearchOrder",
    "PushStats",
    "RunReport",
    "OracleResult",
    "Instance",
    "Verdict",
    "FlowError",
    "InvalidVertexError",
    "SourceEqualsSinkError",
    "SelfLoopError",
    "CapacityOverflowError",
    "ResidualExceededError",
    "NonTerminatingPushError",
    "RestorationFailedError",
    "GraphTooLargeError",
    "SourceReachedSinkError",
    "InvalidProfileError",
    "DimacsError",
    "DimacsSyntaxError",
    "DuplicateProblemLineError",
    "MissingSourceOrSinkError",
    "ArcCountMismatchError",
    "build_network",
    "companion",
    "residual_capacity",
    "augment",
    "excess",
    "flow_value",
    "recovered_flow",
    "validate_preflow",
    "initialize",
    "bfss",
    "push",
    "run",
    "restore_flow",
    "core_is_acyclic",
    "ceil_sqrt",
    "max_flow_reference",
    "min_cut_brute_force",
    "certify_cut",
    "gen_line",
    "gen_two_iteration",
    "gen_layered_blocking",
    "gen_random",
    "SplitMix64",
    "parse_dimacs",
    "write_dimacs",
    "HARD_CHECKS",
    "CLAIM_CHECKS",
    "verify_instance",
    "verify_sweep",
    "bench_sweep",
]
