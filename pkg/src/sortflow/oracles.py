"""Independent max-flow / min-cut computations used to check the solver.

``max_flow_reference`` is a plain shortest-augmenting-path solver;
``min_cut_brute_force`` enumerates every s-side vertex subset. They share
the network representation with the engine but none of its pass logic, so
agreement between solver, reference, and enumeration is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import shortest_path_flow
from .network import FlowState, Network

__all__ = [
    "OracleResult",
    "GraphTooLargeError",
    "SourceReachedSinkError",
    "max_flow_reference",
    "min_cut_brute_force",
    "certify_cut",
]

_BRUTE_FORCE_LIMIT = 16


class GraphTooLargeError(Exception):
    """Brute-force enumeration is capped at 16 vertices."""


class SourceReachedSinkError(Exception):
    """Cut certification requires a converged state; the source still
    reaches the sink in the residual graph."""


@dataclass(frozen=True)
class OracleResult:
    """Flow value with optional certificates.

    ``cut`` is the sorted source-side vertex set; ``flow`` the per-input-arc
    assignment. When both are present their values coincide with ``value``
    (max-flow / min-cut certificate pair).
    """

    value: int
    cut: tuple[int, ...] | None = None
    flow: tuple[int, ...] | None = None


def max_flow_reference(net: Network) -> OracleResult:
    """Exact maximum flow via repeated shortest augmenting paths.

    Deterministic: BFS follows adjacency (input) order. Returns the flow
    value, a minimum cut (vertices reachable from the source in the final
    residual graph), and the recovered per-arc flow.
    """
    residual = net.capacity.copy()
    value = int(
        shortest_path_flow(
            net.arc_tail,
            net.arc_head,
            net.adj_start,
            net.adj_arc,
            residual,
            net.source,
            net.sink,
        )
    )
    reachable = _residual_reachable_from(net, residual, net.source)
    cut = tuple(v for v in range(net.vertex_count) if reachable[v])
    even = slice(0, net.arc_count, 2)
    flow = tuple(int(f) for f in (net.capacity[even] - residual[even]))
    return OracleResult(value=value, cut=cut, flow=flow)


def min_cut_brute_force(net: Network) -> OracleResult:
    """Exact minimum s-t cut by enumerating all source-side subsets.

    Only for networks with at most 16 vertices. Ties resolve to the first
    minimum in enumeration order (free vertices in ascending id order form
    the subset bits), so the returned cut is deterministic.
    """
    n = net.vertex_count
    if n > _BRUTE_FORCE_LIMIT:
        raise GraphTooLargeError(f"{n} vertices exceeds the {_BRUTE_FORCE_LIMIT}-vertex limit")
    free = [v for v in range(n) if v != net.source and v != net.sink]
    input_arcs = net.input_arcs()

    best_value: int | None = None
    best_side: tuple[int, ...] | None = None
    for mask in range(1 << len(free)):
        side = {net.source}
        for bit, v in enumerate(free):
            if mask >> bit & 1:
                side.add(v)
        cap = 0
        for tail, head, capacity in input_arcs:
            if tail in side and head not in side:
                cap += capacity
        if best_value is None or cap < best_value:
            best_value = cap
            best_side = tuple(sorted(side))
    assert best_value is not None and best_side is not None
    return OracleResult(value=best_value, cut=best_side)


def certify_cut(net: Network, state: FlowState) -> OracleResult:
    """Cut certificate for a converged state.

    The source side is everything the final reverse search from the sink
    did not reach. If the source itself was reached the state has not
    converged and :class:`SourceReachedSinkError` is raised. A returned
    capacity equal to the state's flow value certifies optimality.
    """
    reaches_sink = _reverse_residual_reachable(net, state.residual, net.sink)
    if reaches_sink[net.source]:
        raise SourceReachedSinkError("source still reaches the sink in the residual graph")
    side = tuple(v for v in range(net.vertex_count) if not reaches_sink[v])
    in_side = np.zeros(net.vertex_count, dtype=bool)
    for v in side:
        in_side[v] = True
    cap = 0
    for a in range(net.arc_count):
        if in_side[net.arc_tail[a]] and not in_side[net.arc_head[a]]:
            cap += int(net.capacity[a])
    return OracleResult(value=cap, cut=side)


def _residual_reachable_from(net: Network, residual: np.ndarray, start: int) -> np.ndarray:
    seen = np.zeros(net.vertex_count, dtype=bool)
    seen[start] = True
    stack = [start]
    while stack:
        u = stack.pop()
        for a in net.out_arcs(u):
            if residual[a] > 0:
                w = int(net.arc_head[a])
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return seen


def _reverse_residual_reachable(net: Network, residual: np.ndarray, start: int) -> np.ndarray:
    # u reaches `start` iff some positive-residual arc (u, v) leads to a
    # vertex v that reaches it; incoming arcs are companions of outgoing
    # slots, as everywhere else.
    seen = np.zeros(net.vertex_count, dtype=bool)
    seen[start] = True
    stack = [start]
    while stack:
        v = stack.pop()
        for b in net.out_arcs(v):
            a = int(b) ^ 1  # arc (u, v)
            if residual[a] > 0:
                u = int(net.arc_tail[a])
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
    return seen
