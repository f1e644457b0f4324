"""File codecs: DIMACS max-flow networks and plain flow-vector files.

DIMACS node ids are 1-based in the files and mapped to the internal 0-based
ids at this boundary only. Writing then parsing reproduces the network
exactly (arcs keep their input order).
"""

from __future__ import annotations

from collections.abc import Sequence

from .core import Flow, FlowNetwork


class FormatError(ValueError):
    pass


def parse_dimacs(text: str) -> FlowNetwork:
    node_count: int | None = None
    arc_count: int | None = None
    source: int | None = None
    sink: int | None = None
    arcs: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "p":
            if node_count is not None:
                raise FormatError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "max":
                raise FormatError(f"line {lineno}: expected 'p max <nodes> <arcs>'")
            try:
                node_count, arc_count = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer counts") from None
            if node_count <= 0 or arc_count < 0:
                raise FormatError(f"line {lineno}: bad counts")
        elif kind == "n":
            if node_count is None:
                raise FormatError(f"line {lineno}: node line before problem line")
            if len(parts) != 3 or parts[2] not in ("s", "t"):
                raise FormatError(f"line {lineno}: expected 'n <id> s|t'")
            try:
                nid = int(parts[1])
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer node id") from None
            if not 1 <= nid <= node_count:
                raise FormatError(f"line {lineno}: node id {nid} out of range")
            if parts[2] == "s":
                if source is not None:
                    raise FormatError(f"line {lineno}: duplicate source line")
                source = nid - 1
            else:
                if sink is not None:
                    raise FormatError(f"line {lineno}: duplicate sink line")
                sink = nid - 1
        elif kind == "a":
            if node_count is None:
                raise FormatError(f"line {lineno}: arc line before problem line")
            if len(parts) != 4:
                raise FormatError(f"line {lineno}: expected 'a <tail> <head> <cap>'")
            try:
                tail, head, cap = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer arc fields") from None
            for nid in (tail, head):
                if not 1 <= nid <= node_count:
                    raise FormatError(f"line {lineno}: node id {nid} out of range")
            if tail == head:
                raise FormatError(f"line {lineno}: self-loop arc")
            if cap < 0:
                raise FormatError(f"line {lineno}: negative capacity")
            arcs.append((tail - 1, head - 1, cap))
        else:
            raise FormatError(f"line {lineno}: unknown line type {kind!r}")
    if node_count is None:
        raise FormatError("missing problem line")
    if source is None or sink is None:
        raise FormatError("missing source or sink node line")
    if source == sink:
        raise FormatError("source and sink are the same node")
    if len(arcs) != arc_count:
        raise FormatError(f"arc count mismatch: header says {arc_count}, found {len(arcs)}")
    return FlowNetwork(node_count, source, sink, tuple(arcs))


def write_dimacs(net: FlowNetwork) -> str:
    lines = [f"p max {net.node_count} {net.edge_count}"]
    lines.append(f"n {net.source + 1} s")
    lines.append(f"n {net.sink + 1} t")
    for tail, head, cap in net.edges:
        lines.append(f"a {tail + 1} {head + 1} {cap}")
    return "\n".join(lines) + "\n"


def parse_flow(text: str) -> Flow:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("c")]
    if not lines:
        raise FormatError("empty flow file")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "f":
        raise FormatError("expected header 'f <edge_count>'")
    try:
        count = int(header[1])
    except ValueError:
        raise FormatError("non-integer edge count") from None
    values = []
    for i, ln in enumerate(lines[1:], start=1):
        try:
            v = int(ln)
        except ValueError:
            raise FormatError(f"entry {i}: not an integer") from None
        if v < 0:
            raise FormatError(f"entry {i}: negative value")
        values.append(v)
    if len(values) != count:
        raise FormatError(f"flow file truncated: header says {count}, found {len(values)}")
    return tuple(values)


def write_flow(flow: Sequence[int]) -> str:
    lines = [f"f {len(flow)}"]
    lines += [str(int(v)) for v in flow]
    return "\n".join(lines) + "\n"
