"""Hot inner loops over flat int64 arrays.

Each kernel exists twice: the plain-Python definition (prefixed ``_py_``)
and the compiled alias produced by :func:`sortflow._jit.jit_kernel`. The
solver always calls the alias; benchmarks and equivalence tests may call
the plain version directly. Both run the same source line for line.

Kernels never allocate Python objects in their loops and only index int64
arrays, so numba and CPython produce identical integer results.
"""

import numpy as np

from ._jit import BACKEND, JIT_ENABLED, jit_kernel

__all__ = ["BACKEND", "JIT_ENABLED", "bfss_pass", "push_pass", "shortest_path_flow"]


def _py_bfss_pass(arc_tail, arc_head, adj_start, adj_arc, residual, excess, source, sink):
    # Reverse BFS from the sink over positive-residual arcs. For each
    # dequeued vertex v we scan its incoming arcs (u, v): the companion of
    # each outgoing slot, so scan order == arc creation order. Arcs to
    # not-yet-finished vertices are recorded as u's ordered push candidates.
    n = adj_start.shape[0] - 1
    n_arcs = arc_tail.shape[0]

    vstate = np.zeros(n, np.int64)  # 0 unseen, 1 queued, 2 finished
    dist = np.full(n, -1, np.int64)
    rank = np.full(n, -1, np.int64)
    queue = np.empty(n, np.int64)
    prio = np.empty(n, np.int64)
    ev_vertex = np.empty(n_arcs, np.int64)
    ev_arc = np.empty(n_arcs, np.int64)
    order_count = np.zeros(n, np.int64)
    touches = np.zeros(n_arcs, np.int64)

    queue[0] = sink
    qhead = 0
    qtail = 1
    vstate[sink] = 2  # finished up front so the sink never collects arcs
    dist[sink] = 0
    n_prio = 0
    n_events = 0
    next_rank = 0

    while qhead < qtail:
        v = queue[qhead]
        qhead += 1
        rank[v] = next_rank
        next_rank += 1
        vstate[v] = 2
        if v != sink and (excess[v] > 0 or v == source):
            prio[n_prio] = v
            n_prio += 1
        for i in range(adj_start[v], adj_start[v + 1]):
            a = adj_arc[i] ^ 1  # incoming arc (u, v)
            touches[a] += 1
            if residual[a] <= 0:
                continue
            u = arc_tail[a]
            if vstate[u] != 2:
                ev_vertex[n_events] = u
                ev_arc[n_events] = a
                n_events += 1
                order_count[u] += 1
                touches[a] += 1
                if vstate[u] == 0:
                    vstate[u] = 1
                    dist[u] = dist[v] + 1
                    queue[qtail] = u
                    qtail += 1

    # Group the recorded arcs by tail vertex, keeping discovery order.
    order_start = np.zeros(n + 1, np.int64)
    for v in range(n):
        order_start[v + 1] = order_start[v] + order_count[v]
    fill = order_start[:n].copy()
    order_arc = np.empty(n_events, np.int64)
    for e in range(n_events):
        u = ev_vertex[e]
        order_arc[fill[u]] = ev_arc[e]
        fill[u] += 1

    augmenting = 0
    for i in range(n_prio):
        v = prio[i]
        if v == source:
            if order_count[source] > 0:
                augmenting = 1
                break
        elif excess[v] > 0:
            augmenting = 1
            break

    touch_total = 0
    touch_max = 0
    for a in range(n_arcs):
        touch_total += touches[a]
        if touches[a] > touch_max:
            touch_max = touches[a]

    return (
        order_start,
        order_arc,
        dist,
        vstate,
        rank,
        prio[:n_prio].copy(),
        augmenting,
        touch_total,
        touch_max,
    )


def _py_push_pass(arc_head, residual, excess, source, sink, order_start, order_arc, prio, max_augments):
    # Drain the priority deque front to back. Each vertex walks its ordered
    # arc list once; the cursor advances past every arc it augments or skips,
    # so a reactivated vertex resumes where it stopped and no arc is
    # augmented twice within one pass. A vertex whose excess flips from zero
    # to positive jumps to the deque front.
    n = order_start.shape[0] - 1
    n_order = order_arc.shape[0]
    n_init = prio.shape[0]

    front_room = n_order + 1  # one slot per possible reactivation
    dq = np.empty(front_room + n_init, np.int64)
    head_i = front_room
    tail_i = front_room
    for i in range(n_init):
        dq[tail_i] = prio[i]
        tail_i += 1

    cursor = order_start[:n].copy()
    augments = 0
    saturating = 0
    reactivations = 0
    discharges = 0
    sink_delta = 0
    arc_visits = 0
    overflow = 0

    while head_i < tail_i:
        v = dq[head_i]
        head_i += 1
        end = order_start[v + 1]
        while cursor[v] < end:
            if v != source and excess[v] == 0:
                break
            a = order_arc[cursor[v]]
            arc_visits += 1
            if residual[a] == 0:
                cursor[v] += 1
                continue
            w = arc_head[a]
            if v == source:
                delta = residual[a]
            else:
                delta = excess[v] if excess[v] < residual[a] else residual[a]
            if w != source and w != sink and excess[w] == 0:
                head_i -= 1
                dq[head_i] = w
                reactivations += 1
            residual[a] -= delta
            residual[a ^ 1] += delta
            if v != source:
                excess[v] -= delta
            if w != source:
                excess[w] += delta
            if w == sink:
                sink_delta += delta
            if residual[a] == 0:
                saturating += 1
            augments += 1
            cursor[v] += 1
            if augments > max_augments:
                overflow = 1
                return (augments, saturating, reactivations, discharges, sink_delta, arc_visits, overflow)
        if v != source and excess[v] == 0:
            discharges += 1

    return (augments, saturating, reactivations, discharges, sink_delta, arc_visits, overflow)


def _py_shortest_path_flow(arc_tail, arc_head, adj_start, adj_arc, residual, source, sink):
    # Repeated shortest augmenting paths (BFS from the source), used as the
    # reference oracle. Shares nothing with the engine passes above beyond
    # the array layout.
    n = adj_start.shape[0] - 1
    parent_arc = np.empty(n, np.int64)
    seen = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    total = 0

    while True:
        for v in range(n):
            seen[v] = 0
            parent_arc[v] = -1
        queue[0] = source
        seen[source] = 1
        qhead = 0
        qtail = 1
        found = False
        while qhead < qtail and not found:
            u = queue[qhead]
            qhead += 1
            for i in range(adj_start[u], adj_start[u + 1]):
                a = adj_arc[i]
                if residual[a] <= 0:
                    continue
                w = arc_head[a]
                if seen[w] == 0:
                    seen[w] = 1
                    parent_arc[w] = a
                    if w == sink:
                        found = True
                        break
                    queue[qtail] = w
                    qtail += 1
        if not found:
            break

        bottleneck = 4611686018427387904  # 2**62, above any valid residual
        v = sink
        while v != source:
            a = parent_arc[v]
            if residual[a] < bottleneck:
                bottleneck = residual[a]
            v = arc_tail[a]
        v = sink
        while v != source:
            a = parent_arc[v]
            residual[a] -= bottleneck
            residual[a ^ 1] += bottleneck
            v = arc_tail[a]
        total += bottleneck

    return total


bfss_pass = jit_kernel(_py_bfss_pass)
push_pass = jit_kernel(_py_push_pass)
shortest_path_flow = jit_kernel(_py_shortest_path_flow)
