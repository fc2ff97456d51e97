"""DIMACS max-flow file format.

Reader and bit-exact canonical writer. Vertex ids are 1-based in files and
0-based everywhere else in this package; the conversion happens here and
nowhere else. The writer emits, in order: an optional ``c label`` comment
(when the instance is labelled), the ``p max`` problem line, the source and
sink designators, and the arcs in stored order, each line ending in a
single linefeed. The reader accepts arbitrary comment lines and restores
the label from the first ``c label`` comment, so parse(write(x)) == x.
"""

from __future__ import annotations

from .generators import Instance

__all__ = [
    "DimacsError",
    "DimacsSyntaxError",
    "DuplicateProblemLineError",
    "MissingSourceOrSinkError",
    "ArcCountMismatchError",
    "parse_dimacs",
    "write_dimacs",
]


class DimacsError(Exception):
    """Base class for DIMACS format violations."""


class DimacsSyntaxError(DimacsError):
    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DuplicateProblemLineError(DimacsError):
    pass


class MissingSourceOrSinkError(DimacsError):
    pass


class ArcCountMismatchError(DimacsError):
    pass


def parse_dimacs(text: str) -> Instance:
    """Parse DIMACS max-flow text into an :class:`Instance`.

    Expects exactly one ``p max <n> <m>`` line, exactly one source and one
    sink designator, and exactly ``m`` arc lines. Raises
    :class:`DimacsSyntaxError` (with the line number) on malformed lines,
    :class:`DuplicateProblemLineError`, :class:`MissingSourceOrSinkError`,
    or :class:`ArcCountMismatchError` accordingly.
    """
    n = None
    m = None
    source = None
    sink = None
    label = None
    arcs: list[tuple[int, int, int]] = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        kind = line.split(maxsplit=1)[0]
        if kind == "c":
            if label is None and line.startswith("c label "):
                label = line[len("c label ") :]
            continue
        if kind == "p":
            if n is not None:
                raise DuplicateProblemLineError(f"line {line_no}: second problem line")
            fields = line.split()
            if len(fields) != 4 or fields[1] != "max":
                raise DimacsSyntaxError(line_no, f"expected 'p max <n> <m>', got {line!r}")
            n = _parse_int(fields[2], line_no, "vertex count")
            m = _parse_int(fields[3], line_no, "arc count")
            if n < 2:
                raise DimacsSyntaxError(line_no, f"vertex count must be at least 2, got {n}")
            if m < 0:
                raise DimacsSyntaxError(line_no, f"arc count must be nonnegative, got {m}")
            continue
        if n is None:
            raise DimacsSyntaxError(line_no, f"{kind!r} line before the problem line")
        if kind == "n":
            fields = line.split()
            if len(fields) != 3 or fields[2] not in ("s", "t"):
                raise DimacsSyntaxError(line_no, f"expected 'n <id> s|t', got {line!r}")
            vid = _parse_vertex(fields[1], n, line_no)
            if fields[2] == "s":
                if source is not None:
                    raise DimacsSyntaxError(line_no, "second source designator")
                source = vid
            else:
                if sink is not None:
                    raise DimacsSyntaxError(line_no, "second sink designator")
                sink = vid
            continue
        if kind == "a":
            fields = line.split()
            if len(fields) != 4:
                raise DimacsSyntaxError(line_no, f"expected 'a <tail> <head> <cap>', got {line!r}")
            tail = _parse_vertex(fields[1], n, line_no)
            head = _parse_vertex(fields[2], n, line_no)
            cap = _parse_int(fields[3], line_no, "capacity")
            if cap < 0:
                raise DimacsSyntaxError(line_no, f"negative capacity {cap}")
            arcs.append((tail, head, cap))
            continue
        raise DimacsSyntaxError(line_no, f"unknown line type {kind!r}")

    if n is None or m is None:
        raise DimacsSyntaxError(0, "missing problem line")
    if source is None or sink is None:
        raise MissingSourceOrSinkError("file lacks a source or sink designator")
    if source == sink:
        raise MissingSourceOrSinkError(f"source and sink are both vertex {source + 1}")
    if len(arcs) != m:
        raise ArcCountMismatchError(f"problem line promises {m} arcs, found {len(arcs)}")

    return Instance(
        vertex_count=n,
        arcs=tuple(arcs),
        source=source,
        sink=sink,
        label=label or "",
    )


def write_dimacs(inst: Instance) -> str:
    """Canonical DIMACS text for an instance; stable byte for byte."""
    lines = []
    if inst.label:
        lines.append(f"c label {inst.label}")
    lines.append(f"p max {inst.vertex_count} {inst.arc_count}")
    lines.append(f"n {inst.source + 1} s")
    lines.append(f"n {inst.sink + 1} t")
    for tail, head, cap in inst.arcs:
        lines.append(f"a {tail + 1} {head + 1} {cap}")
    return "\n".join(lines) + "\n"


def _parse_int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise DimacsSyntaxError(line_no, f"{what} {token!r} is not an integer") from None


def _parse_vertex(token: str, n: int, line_no: int) -> int:
    value = _parse_int(token, line_no, "vertex id")
    if not (1 <= value <= n):
        raise DimacsSyntaxError(line_no, f"vertex id {value} outside [1, {n}]")
    return value - 1
