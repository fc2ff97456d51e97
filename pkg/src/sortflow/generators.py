"""Deterministic problem-instance families.

The line, blocking, and layered families reconstruct the shapes the solver
is expected to handle in one, two, and many iterations; ``gen_random``
produces seeded instances for sweep testing. Randomness comes from an
inline splitmix64 stream so identical seeds give identical instances on
any platform and Python version.
"""

from __future__ import annotations

from dataclasses import dataclass

from .network import Network, build_network

__all__ = [
    "Instance",
    "InvalidProfileError",
    "SplitMix64",
    "gen_line",
    "gen_two_iteration",
    "gen_layered_blocking",
    "gen_random",
]


class InvalidProfileError(Exception):
    """Layer capacity profile must be strictly decreasing positive ints of
    length ``layers + 1``."""


@dataclass(frozen=True)
class Instance:
    """Serializable problem description: buildable and label-carrying."""

    vertex_count: int
    arcs: tuple[tuple[int, int, int], ...]
    source: int
    sink: int
    label: str = ""

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    def to_network(self) -> Network:
        return build_network(self.vertex_count, self.arcs, self.source, self.sink)


_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Minimal deterministic PRNG (splitmix64).

    Kept inline so generated instances never depend on the platform, the
    Python version, or a library's stream policy. ``below(n)`` is uniform
    via rejection sampling, so there is no modulo bias.
    """

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError(f"below() needs a positive bound, got {n}")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % n


def gen_line(k: int, cap: int) -> Instance:
    """Simple path of ``k`` arcs from source to sink, all capacity ``cap``.

    ``cap`` may be zero (the solver should then stop immediately with an
    empty flow).
    """
    if k < 1:
        raise ValueError(f"path length must be at least 1, got {k}")
    if cap < 0:
        raise ValueError(f"capacity must be nonnegative, got {cap}")
    arcs = tuple((i, i + 1, cap) for i in range(k))
    return Instance(
        vertex_count=k + 1,
        arcs=arcs,
        source=0,
        sink=k,
        label=f"line(k={k},cap={cap})",
    )


def gen_two_iteration() -> Instance:
    """The canonical 4-vertex graph that needs exactly two iterations.

    The high-capacity arc out of the source overfills vertex 1, whose only
    recorded route in the first pass is the unit shortcut to the sink; the
    detour through vertex 2 is same-distance and only enters the arc order
    in the second pass.
    """
    arcs = ((0, 1, 2), (1, 3, 1), (1, 2, 1), (2, 3, 1))
    return Instance(vertex_count=4, arcs=arcs, source=0, sink=3, label="two-iteration")


def gen_layered_blocking(layers: int, width: int, cap_profile) -> Instance:
    """Layered graph whose excess advances one layer per iteration.

    ``cap_profile[i]`` is the capacity of arcs leaving layer ``i`` (layer 0
    being the source); it must be strictly decreasing toward the sink.
    Every non-final layer vertex gets a direct sink shortcut at the
    smallest profile capacity, so each pass saturates one layer's shortcuts
    and strands the remaining excess one layer deeper. At ``width=1,
    layers=1`` this degenerates to the blocked two-arc line.
    """
    if layers < 1:
        raise ValueError(f"need at least one layer, got {layers}")
    if width < 1:
        raise ValueError(f"layer width must be at least 1, got {width}")
    profile = tuple(int(c) for c in cap_profile)
    if len(profile) != layers + 1:
        raise InvalidProfileError(
            f"profile must have {layers + 1} entries for {layers} layers, got {len(profile)}"
        )
    if any(c < 1 for c in profile):
        raise InvalidProfileError(f"profile entries must be positive, got {profile}")
    if any(profile[i] <= profile[i + 1] for i in range(layers)):
        raise InvalidProfileError(f"profile must strictly decrease toward the sink, got {profile}")

    def vertex(layer: int, j: int) -> int:
        return 1 + (layer - 1) * width + j

    source = 0
    sink = 1 + layers * width
    arcs: list[tuple[int, int, int]] = []
    for j in range(width):
        arcs.append((source, vertex(1, j), profile[0]))
    for layer in range(1, layers):
        for j in range(width):
            for k in range(width):
                arcs.append((vertex(layer, j), vertex(layer + 1, k), profile[layer]))
        for j in range(width):
            arcs.append((vertex(layer, j), sink, profile[layers]))
    for j in range(width):
        arcs.append((vertex(layers, j), sink, profile[layers]))

    label = f"layered(layers={layers},width={width},profile={'-'.join(map(str, profile))})"
    return Instance(
        vertex_count=sink + 1,
        arcs=tuple(arcs),
        source=source,
        sink=sink,
        label=label,
    )


def gen_random(n: int, m: int, max_cap: int, seed: int) -> Instance:
    """Seeded random instance with ``m`` arcs over ``n`` vertices.

    Source is vertex 0, sink is ``n - 1``. Arcs are drawn uniformly over
    ordered vertex pairs without self-loops (duplicates allowed, so
    parallel and anti-parallel arcs occur); capacities are uniform in
    ``[1, max_cap]``. For ``m >= 2`` the first arc is forced to leave the
    source and the second to enter the sink, guaranteeing positive source
    out-degree and sink in-degree; a single-arc instance is one pure
    uniform draw.

    Draw order (one splitmix64 stream seeded with ``seed``): per arc, first
    its endpoints, then its capacity.
    """
    if n < 2:
        raise ValueError(f"need at least 2 vertices, got {n}")
    if m < 1:
        raise ValueError(f"need at least 1 arc, got {m}")
    if max_cap < 1:
        raise ValueError(f"max_cap must be at least 1, got {max_cap}")
    rng = SplitMix64(seed)
    source, sink = 0, n - 1

    def uniform_pair() -> tuple[int, int]:
        p = rng.below(n * (n - 1))
        tail = p // (n - 1)
        r = p % (n - 1)
        head = r if r < tail else r + 1
        return tail, head

    def skip_one(excluded: int) -> int:
        r = rng.below(n - 1)
        return r if r < excluded else r + 1

    arcs: list[tuple[int, int, int]] = []
    for i in range(m):
        if m >= 2 and i == 0:
            tail, head = source, skip_one(source)
        elif m >= 2 and i == 1:
            tail, head = skip_one(sink), sink
        else:
            tail, head = uniform_pair()
        cap = 1 + rng.below(max_cap)
        arcs.append((tail, head, cap))

    return Instance(
        vertex_count=n,
        arcs=tuple(arcs),
        source=source,
        sink=sink,
        label=f"random(n={n},m={m},max_cap={max_cap},seed={seed})",
    )
