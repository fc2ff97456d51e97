"""Flow network representation with paired arcs and preflow bookkeeping.

A :class:`Network` stores a directed graph as flat int64 arrays. Every input
arc is immediately followed by a zero-capacity reverse companion, so the
companion of arc ``a`` is always ``a ^ 1``. A :class:`FlowState` holds the
mutable residual capacities and per-vertex excess for one solver run; the
network itself is immutable and may be shared.

Residual convention: for the companion pair of input arc ``a``,
``residual(a) = capacity(a) - f(a) + f(reverse)``. Flow on an input arc is
recovered as ``capacity(a) - residual(a)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SOURCE_EXCESS",
    "Arc",
    "Network",
    "FlowState",
    "FlowError",
    "InvalidVertexError",
    "SourceEqualsSinkError",
    "SelfLoopError",
    "CapacityOverflowError",
    "ResidualExceededError",
    "build_network",
    "companion",
    "residual_capacity",
    "augment",
    "excess",
    "flow_value",
    "recovered_flow",
    "validate_preflow",
]

# Excess stored for the source vertex. The source can emit any amount of
# flow, so its excess is a sentinel that augment() never reads or updates.
SOURCE_EXCESS = np.iinfo(np.int64).max

# Total capacity must stay clear of int64 so excess sums cannot overflow.
_CAPACITY_BUDGET = 2**62


class FlowError(Exception):
    """Base class for flow-network contract violations."""


class InvalidVertexError(FlowError):
    """An arc endpoint or query vertex is outside ``[0, vertex_count)``."""


class SourceEqualsSinkError(FlowError):
    """Source and sink must be distinct vertices."""


class SelfLoopError(FlowError):
    """Arcs from a vertex to itself are rejected at build time."""


class CapacityOverflowError(FlowError):
    """Total capacity exceeds the accumulator budget."""


class ResidualExceededError(FlowError):
    """An augment asked for more than the arc's residual capacity.

    This signals a solver bug; callers must abort the run.
    """


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    capacity: int
    is_reverse_companion: bool


@dataclass(frozen=True)
class Network:
    """Immutable directed graph with interleaved companion arcs.

    ``arc_tail``/``arc_head``/``capacity`` cover all arcs, companions
    included. ``adj_start``/``adj_arc`` form a CSR adjacency over outgoing
    arc ids, in arc-creation order (the determinism contract for every
    traversal in this package).
    """

    vertex_count: int
    source: int
    sink: int
    arc_tail: np.ndarray
    arc_head: np.ndarray
    capacity: np.ndarray
    adj_start: np.ndarray
    adj_arc: np.ndarray

    @property
    def arc_count(self) -> int:
        """Number of stored arcs, companions included."""
        return int(self.arc_tail.shape[0])

    @property
    def input_arc_count(self) -> int:
        return self.arc_count // 2

    def arc(self, a: int) -> Arc:
        return Arc(
            tail=int(self.arc_tail[a]),
            head=int(self.arc_head[a]),
            capacity=int(self.capacity[a]),
            is_reverse_companion=bool(a & 1),
        )

    def out_arcs(self, v: int) -> np.ndarray:
        return self.adj_arc[self.adj_start[v] : self.adj_start[v + 1]]

    def input_arcs(self) -> list[tuple[int, int, int]]:
        """The original (tail, head, capacity) triples, in input order."""
        return [
            (int(self.arc_tail[a]), int(self.arc_head[a]), int(self.capacity[a]))
            for a in range(0, self.arc_count, 2)
        ]


@dataclass
class FlowState:
    """Mutable residual capacities plus per-vertex excess for one run."""

    net: Network
    residual: np.ndarray
    excess: np.ndarray
    sink_gain: int = 0

    def copy(self) -> "FlowState":
        return FlowState(self.net, self.residual.copy(), self.excess.copy(), self.sink_gain)


def companion(a: int) -> int:
    """Reverse companion of arc ``a`` (involutive)."""
    return a ^ 1


def build_network(
    n: int,
    arc_list,
    s: int,
    t: int,
) -> Network:
    """Build a network from ``(tail, head, capacity)`` triples.

    Each input arc is stored at an even id and immediately followed by its
    zero-capacity reverse companion at the next odd id. Parallel and
    anti-parallel input arcs each get their own companion. Zero-capacity
    input arcs are accepted; self-loops are not.

    Raises:
        InvalidVertexError: endpoint or terminal out of range, or ``n < 2``.
        SourceEqualsSinkError: ``s == t``.
        SelfLoopError: some arc has ``tail == head``.
        CapacityOverflowError: total capacity exceeds the accumulator budget.
        ValueError: negative capacity.
    """
    if n < 2:
        raise InvalidVertexError(f"need at least 2 vertices, got {n}")
    if not (0 <= s < n):
        raise InvalidVertexError(f"source {s} out of range [0, {n})")
    if not (0 <= t < n):
        raise InvalidVertexError(f"sink {t} out of range [0, {n})")
    if s == t:
        raise SourceEqualsSinkError(f"source and sink are both vertex {s}")

    arcs = list(arc_list)
    if not arcs:
        raise ValueError("at least one arc is required")
    total_capacity = 0
    for i, (tail, head, cap) in enumerate(arcs):
        if not (0 <= tail < n) or not (0 <= head < n):
            raise InvalidVertexError(f"arc {i}: endpoint ({tail}, {head}) out of range [0, {n})")
        if tail == head:
            raise SelfLoopError(f"arc {i}: self-loop at vertex {tail}")
        if cap < 0:
            raise ValueError(f"arc {i}: negative capacity {cap}")
        total_capacity += cap
    if total_capacity > _CAPACITY_BUDGET:
        raise CapacityOverflowError(
            f"total capacity {total_capacity} exceeds accumulator budget {_CAPACITY_BUDGET}"
        )

    m = 2 * len(arcs)
    arc_tail = np.empty(m, dtype=np.int64)
    arc_head = np.empty(m, dtype=np.int64)
    capacity = np.empty(m, dtype=np.int64)
    for i, (tail, head, cap) in enumerate(arcs):
        arc_tail[2 * i] = tail
        arc_head[2 * i] = head
        capacity[2 * i] = cap
        arc_tail[2 * i + 1] = head
        arc_head[2 * i + 1] = tail
        capacity[2 * i + 1] = 0

    # CSR adjacency in arc-id order == creation order per tail vertex.
    degree = np.zeros(n, dtype=np.int64)
    for a in range(m):
        degree[arc_tail[a]] += 1
    adj_start = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degree, out=adj_start[1:])
    fill = adj_start[:n].copy()
    adj_arc = np.empty(m, dtype=np.int64)
    for a in range(m):
        v = arc_tail[a]
        adj_arc[fill[v]] = a
        fill[v] += 1

    for arr in (arc_tail, arc_head, capacity, adj_start, adj_arc):
        arr.setflags(write=False)
    return Network(
        vertex_count=n,
        source=s,
        sink=t,
        arc_tail=arc_tail,
        arc_head=arc_head,
        capacity=capacity,
        adj_start=adj_start,
        adj_arc=adj_arc,
    )


def residual_capacity(state: FlowState, a: int) -> int:
    return int(state.residual[a])


def augment(state: FlowState, a: int, delta: int) -> None:
    """Send ``delta`` units along arc ``a``, updating the companion and excess.

    The source's excess sentinel is never touched: pushes out of the source
    are limited only by residual capacity and flow arriving at the source is
    absorbed. Flow into or out of the sink is mirrored in ``sink_gain``.
    """
    if delta <= 0:
        raise ValueError(f"augment delta must be positive, got {delta}")
    if delta > state.residual[a]:
        raise ResidualExceededError(
            f"arc {a}: delta {delta} exceeds residual {int(state.residual[a])}"
        )
    net = state.net
    state.residual[a] -= delta
    state.residual[a ^ 1] += delta
    tail = int(net.arc_tail[a])
    head = int(net.arc_head[a])
    if tail != net.source:
        state.excess[tail] -= delta
    if tail == net.sink:
        state.sink_gain -= int(delta)
    if head != net.source:
        state.excess[head] += delta
    if head == net.sink:
        state.sink_gain += int(delta)


def excess(state: FlowState, v: int) -> int:
    """Current excess at ``v``; ``SOURCE_EXCESS`` for the source vertex."""
    return int(state.excess[v])


def flow_value(state: FlowState) -> int:
    """Net flow delivered to the sink so far."""
    return state.sink_gain


def recovered_flow(net: Network, state: FlowState) -> np.ndarray:
    """Net flow per input arc, recovered from residuals.

    Entry ``i`` is the flow on input arc ``i`` (stored arc ``2*i``); with
    zero-capacity companions this is simply ``capacity - residual`` and is
    always in ``[0, capacity]`` for a valid state.
    """
    even = slice(0, net.arc_count, 2)
    return net.capacity[even] - state.residual[even]


def validate_preflow(net: Network, state: FlowState) -> list[str]:
    """Check every preflow invariant; returns one message per violation.

    An empty list means the state is a valid preflow: companion pairs
    conserve their capacity total, residuals are in range, every non-source
    excess is nonnegative, and each non-terminal vertex's excess equals its
    recovered net inflow. Violations are data, not exceptions.
    """
    violations: list[str] = []
    res = state.residual
    cap = net.capacity
    even = slice(0, net.arc_count, 2)
    odd = slice(1, net.arc_count, 2)

    pair_total = cap[even] + cap[odd]
    pair_sum = res[even] + res[odd]
    for i in np.flatnonzero(pair_sum != pair_total):
        violations.append(
            f"pair {int(i)}: residual sum {int(pair_sum[i])} != capacity sum {int(pair_total[i])}"
        )
    for a in np.flatnonzero(res < 0):
        violations.append(f"arc {int(a)}: negative residual {int(res[a])}")
    limit = np.repeat(pair_total, 2)
    for a in np.flatnonzero(res > limit):
        violations.append(
            f"arc {int(a)}: residual {int(res[a])} exceeds pair capacity {int(limit[a])}"
        )

    flow = cap[even] - res[even]
    for i in np.flatnonzero(flow < 0):
        violations.append(f"input arc {int(i)}: recovered flow {int(flow[i])} below zero")
    for i in np.flatnonzero(flow > cap[even]):
        violations.append(
            f"input arc {int(i)}: recovered flow {int(flow[i])} exceeds capacity {int(cap[even][i])}"
        )

    n = net.vertex_count
    balance = np.zeros(n, dtype=np.int64)
    np.add.at(balance, net.arc_head[even], flow)
    np.add.at(balance, net.arc_tail[even], -flow)
    for v in range(n):
        if v == net.source:
            continue
        ev = int(state.excess[v])
        if ev < 0:
            violations.append(f"vertex {v}: negative excess {ev}")
        if v == net.sink:
            continue
        if ev != int(balance[v]):
            violations.append(f"vertex {v}: excess {ev} != recovered net inflow {int(balance[v])}")
    sink_balance = int(balance[net.sink])
    if int(state.excess[net.sink]) != sink_balance:
        violations.append(
            f"sink excess {int(state.excess[net.sink])} != recovered net inflow {sink_balance}"
        )
    if state.sink_gain != sink_balance:
        violations.append(f"sink_gain {state.sink_gain} != recovered net inflow {sink_balance}")
    return violations
