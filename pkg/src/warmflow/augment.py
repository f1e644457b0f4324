"""Path search subroutines and the generic augmenting-path max-flow driver.

Breadth-first search is fully deterministic: outgoing residual arcs are
scanned in ascending arc-id order (edge index order, forward arc before
reverse arc) and neighbors are visited FIFO. That makes Edmonds-Karp a pure
function of the network and the seed flow, which is what lets one optimal
flow be designated as *the* canonical optimum elsewhere in the package.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from enum import Enum
from collections.abc import Sequence

from .core import (
    Flow,
    FlowNetwork,
    PathStats,
    ResidualView,
    check_feasible,
    flow_value,
    reachable_nodes,
    residual,
    zero_flow,
)


class Subroutine(Enum):
    EDMONDS_KARP = "ek"
    DINIC = "dinic"


@dataclass(frozen=True)
class AugPath:
    """A residual path with all-positive residual capacities."""

    nodes: tuple[int, ...]
    arcs: tuple[int, ...]
    bottleneck: int

    @property
    def length(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class SolveReport:
    value: int
    stats: PathStats
    seconds: float


def send_flow(res: ResidualView, arcs: Sequence[int], amount: int) -> None:
    """Push amount units along a sequence of residual arcs."""
    if amount <= 0:
        raise ValueError("amount must be positive")
    for arc in arcs:
        res._push(arc, amount)


def bfs_path(
    res: ResidualView, start: int, goal: int, stats: PathStats | None = None
) -> AugPath | None:
    """Shortest (fewest arcs) positive-residual path from start to goal.

    Returns None when the goal is unreachable; queue pops are added to
    stats.node_expansions either way.
    """
    if start == goal:
        raise ValueError("start and goal must differ")
    net = res.net
    out_arcs = net.out_arcs
    tails, heads = net.tails, net.heads
    fwd, rev = res._fwd, res._rev
    parent = [-1] * net.node_count
    seen = bytearray(net.node_count)
    seen[start] = 1
    q = deque([start])
    pops = 0
    found = False
    while q:
        u = q.popleft()
        pops += 1
        if u == goal:
            found = True
            break
        for arc in out_arcs[u]:
            e = arc >> 1
            if arc & 1:
                if rev[e] <= 0:
                    continue
                v = tails[e]
            else:
                if fwd[e] <= 0:
                    continue
                v = heads[e]
            if not seen[v]:
                seen[v] = 1
                parent[v] = arc
                q.append(v)
    if stats is not None:
        stats.node_expansions += pops
    if not found:
        return None
    arcs: list[int] = []
    nodes: list[int] = [goal]
    u = goal
    while u != start:
        arc = parent[u]
        arcs.append(arc)
        u = net.arc_tail(arc)
        nodes.append(u)
    arcs.reverse()
    nodes.reverse()
    bottleneck = min(res.residual(a) for a in arcs)
    return AugPath(tuple(nodes), tuple(arcs), bottleneck)


def dinic_phase(
    res: ResidualView, source: int, sink: int, stats: PathStats | None = None
) -> int:
    """One blocking-flow phase: BFS levels, then saturate the level graph.

    Returns the total amount pushed this phase (0 when the sink is already
    unreachable). Each augmentation inside the blocking flow is recorded as
    one path in stats.
    """
    net = res.net
    n = net.node_count
    out_arcs = net.out_arcs
    level = [-1] * n
    level[source] = 0
    q = deque([source])
    pops = 0
    while q:
        u = q.popleft()
        pops += 1
        for arc in out_arcs[u]:
            if res.residual(arc) > 0:
                v = net.arc_head(arc)
                if level[v] < 0:
                    level[v] = level[u] + 1
                    q.append(v)
    if stats is not None:
        stats.node_expansions += pops
    if level[sink] < 0:
        return 0

    it = [0] * n
    path_arcs: list[int] = []
    path_tails: list[int] = []
    total = 0
    u = source
    while True:
        if u == sink:
            delta = min(res.residual(a) for a in path_arcs)
            send_flow(res, path_arcs, delta)
            if stats is not None:
                stats.add_path(len(path_arcs))
            total += delta
            for i, arc in enumerate(path_arcs):
                if res.residual(arc) == 0:
                    u = path_tails[i]
                    del path_arcs[i:]
                    del path_tails[i:]
                    break
            continue
        advanced = False
        arcs_u = out_arcs[u]
        while it[u] < len(arcs_u):
            arc = arcs_u[it[u]]
            v = net.arc_head(arc)
            if res.residual(arc) > 0 and level[v] == level[u] + 1:
                path_arcs.append(arc)
                path_tails.append(u)
                u = v
                advanced = True
                break
            it[u] += 1
        if not advanced:
            if u == source:
                break
            level[u] = -1
            u = path_tails.pop()
            path_arcs.pop()
            it[u] += 1
    return total


def max_flow(
    net: FlowNetwork,
    init: Sequence[int] | None = None,
    subroutine: Subroutine = Subroutine.EDMONDS_KARP,
) -> tuple[Flow, SolveReport]:
    """Run the augmenting-path method from a feasible seed flow.

    Starting from a feasible flow is equivalent to running from scratch on
    its residual graph, so the result is a maximum flow regardless of seed.
    """
    f = tuple(init) if init is not None else zero_flow(net)
    report = check_feasible(net, f)
    if not report.ok:
        raise ValueError(
            "seed flow is infeasible: "
            f"capacity violations {list(report.capacity_violations)}, "
            f"conservation violations {list(report.conservation_violations)}"
        )
    res = residual(net, f)
    stats = PathStats()
    t0 = time.perf_counter()
    if subroutine is Subroutine.EDMONDS_KARP:
        while (p := bfs_path(res, net.source, net.sink, stats)) is not None:
            send_flow(res, p.arcs, p.bottleneck)
            stats.add_path(p.length)
    elif subroutine is Subroutine.DINIC:
        while dinic_phase(res, net.source, net.sink, stats) > 0:
            pass
    else:
        raise ValueError(f"unknown subroutine {subroutine!r}")
    out = res.flow()
    return out, SolveReport(
        value=flow_value(net, out), stats=stats, seconds=time.perf_counter() - t0
    )


def min_cut(net: FlowNetwork, maxflow: Sequence[int]) -> frozenset[int]:
    """Source side of a minimum cut: nodes residually reachable from the source.

    Rejects flows that are not maximum (detected when the sink is still
    reachable).
    """
    report = check_feasible(net, maxflow)
    if not report.ok:
        raise ValueError("flow is not feasible")
    res = residual(net, maxflow)
    cut = reachable_nodes(res, net.source)
    if net.sink in cut:
        raise ValueError("flow is not maximum: sink reachable in residual graph")
    return cut
