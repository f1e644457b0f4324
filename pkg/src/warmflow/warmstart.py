"""Warm-started solving: clamp a prediction, repair conservation, then augment.

The conservation repair works in strictly ordered rounds of projection
paths: excess to deficit, excess back to the source, then sink to remaining
deficit. Each round attaches a super source/sink to the residual graph and
repeatedly saturates shortest super-source-to-super-sink paths, so one
auxiliary network is built per round and its residuals are updated in place.
Draining excess (or feeding deficit) through a terminal can never re-create
an excess-to-deficit path, which is why the ordering is safe.

Two extra safety rounds (excess to sink, source to deficit) run after the
three primary ones. They only ever find work when the prediction routed
flow backwards, out of the sink or into the source: imbalance fed by such
flow is unreachable from the primary rounds' terminals. On networks with no
arcs out of the sink or into the source they provably never fire.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum

from .augment import AugPath, Subroutine, bfs_path, max_flow, send_flow
from .core import (
    Flow,
    FlowNetwork,
    Imbalance,
    PathStats,
    check_feasible,
    flow_value,
    imbalance,
    residual,
    zero_flow,
)


class ProjectionRound(Enum):
    """Repair rounds, executed strictly in this order.

    The first three are the primary rounds; the sink-absorbing and
    source-emitting rounds are safety nets for predictions that carried
    flow out of the sink or into the source.
    """

    EXCESS_TO_DEFICIT = "excess_to_deficit"
    EXCESS_TO_SOURCE = "excess_to_source"
    EXCESS_TO_SINK = "excess_to_sink"
    SINK_TO_DEFICIT = "sink_to_deficit"
    SOURCE_TO_DEFICIT = "source_to_deficit"


class ProjectionInvariantError(RuntimeError):
    """A repair round ended with imbalance that must have been routable.

    Reaching this means an implementation bug, not bad input: after the
    excess rounds no excess may remain, and after the final round the flow
    must be fully feasible.
    """


@dataclass(frozen=True)
class WarmStartReport:
    """Instrumentation for one warm-started solve, per phase."""

    clamp_total: int
    post_clamp_excess: int
    post_clamp_deficit: int
    projection_stats: PathStats
    feasible_value: int
    optimal_value: int
    augment_stats: PathStats
    phase_seconds: dict[str, float]

    @property
    def total_node_expansions(self) -> int:
        return self.projection_stats.node_expansions + self.augment_stats.node_expansions


def clamp_to_capacity(net: FlowNetwork, f_hat: Sequence[int]) -> tuple[Flow, int]:
    """Round the prediction down to capacity per edge.

    Returns the clamped flow and the total amount removed.
    """
    if len(f_hat) != net.edge_count:
        raise ValueError(
            f"prediction has {len(f_hat)} entries, network has {net.edge_count} edges"
        )
    clamped = []
    total = 0
    for e, (_, _, cap) in enumerate(net.edges):
        v = int(f_hat[e])
        if v != f_hat[e]:
            raise ValueError(f"prediction entry {e} is not an integer")
        if v < 0:
            raise ValueError(f"prediction entry {e} is negative")
        if v > cap:
            total += v - cap
            v = cap
        clamped.append(v)
    return tuple(clamped), total


def build_projection_aux(
    net: FlowNetwork, f: Sequence[int], round: ProjectionRound
) -> FlowNetwork:
    """Auxiliary network whose augmenting paths are projection paths.

    The first 2m edges mirror the residual graph of f (edge 2e runs
    tail->head with the forward residual, edge 2e+1 runs head->tail with the
    reverse residual); super arcs follow, in ascending node order. The super
    source is node n, the super sink node n+1. Arcs that route through the
    real source or sink are capped at the total excess/deficit, the most
    that could ever cross them.
    """
    imb = imbalance(net, f)  # also rejects capacity-violating f
    n = net.node_count
    super_source, super_sink = n, n + 1
    edges: list[tuple[int, int, int]] = []
    for e, (tail, head, cap) in enumerate(net.edges):
        edges.append((tail, head, cap - f[e]))
        edges.append((head, tail, f[e]))
    if round is ProjectionRound.EXCESS_TO_DEFICIT:
        for u in sorted(imb.excess_nodes):
            edges.append((super_source, u, imb.excess[u]))
        for v in sorted(imb.deficit_nodes):
            edges.append((v, super_sink, imb.deficit[v]))
    elif round is ProjectionRound.EXCESS_TO_SOURCE:
        for u in sorted(imb.excess_nodes):
            edges.append((super_source, u, imb.excess[u]))
        edges.append((net.source, super_sink, imb.total_excess))
    elif round is ProjectionRound.EXCESS_TO_SINK:
        for u in sorted(imb.excess_nodes):
            edges.append((super_source, u, imb.excess[u]))
        edges.append((net.sink, super_sink, imb.total_excess))
    elif round is ProjectionRound.SINK_TO_DEFICIT:
        edges.append((super_source, net.sink, imb.total_deficit))
        for v in sorted(imb.deficit_nodes):
            edges.append((v, super_sink, imb.deficit[v]))
    elif round is ProjectionRound.SOURCE_TO_DEFICIT:
        edges.append((super_source, net.source, imb.total_deficit))
        for v in sorted(imb.deficit_nodes):
            edges.append((v, super_sink, imb.deficit[v]))
    else:
        raise ValueError(f"unknown round {round!r}")
    return FlowNetwork(n + 2, super_source, super_sink, tuple(edges))


PathObserver = Callable[[ProjectionRound, AugPath, int, Flow], None]


def _round_applies(round: ProjectionRound, imb: Imbalance) -> bool:
    if round is ProjectionRound.EXCESS_TO_DEFICIT:
        return bool(imb.excess_nodes and imb.deficit_nodes)
    if round in (ProjectionRound.EXCESS_TO_SOURCE, ProjectionRound.EXCESS_TO_SINK):
        return bool(imb.excess_nodes)
    return bool(imb.deficit_nodes)


def feasibility_projection(
    net: FlowNetwork,
    f: Sequence[int],
    on_path: PathObserver | None = None,
) -> tuple[Flow, PathStats]:
    """Repair flow conservation of a capacity-respecting flow.

    Runs the projection rounds in declaration order, skipping rounds with
    nothing to move; within a round, shortest super-source-to-super-sink
    paths in the auxiliary graph are saturated until none remain. Recorded
    path lengths exclude the two super arcs, so
    they measure the real residual path. on_path, when given, is called
    after every push with the round, the auxiliary path, the amount pushed,
    and the flow vector after the push (instrumentation; keep it None in
    production runs).
    """
    cur = tuple(f)
    stats = PathStats()
    m = net.edge_count
    for rnd in ProjectionRound:
        imb = imbalance(net, cur)
        if not _round_applies(rnd, imb):
            continue
        aux = build_projection_aux(net, cur, rnd)
        res = residual(aux, zero_flow(aux))
        rev = res._rev
        while (p := bfs_path(res, aux.source, aux.sink, stats)) is not None:
            amount = p.bottleneck
            send_flow(res, p.arcs, amount)
            stats.add_path(p.length - 2)
            if on_path is not None:
                snapshot = tuple(
                    cur[e] + rev[2 * e] - rev[2 * e + 1] for e in range(m)
                )
                on_path(rnd, p, amount, snapshot)
        cur = tuple(cur[e] + rev[2 * e] - rev[2 * e + 1] for e in range(m))
        after = imbalance(net, cur)
        if rnd is ProjectionRound.EXCESS_TO_SINK and after.total_excess:
            raise ProjectionInvariantError(
                f"excess {after.total_excess} left after the excess rounds"
            )
        if rnd is ProjectionRound.SOURCE_TO_DEFICIT and after.total_deficit:
            raise ProjectionInvariantError(
                f"deficit {after.total_deficit} left after the deficit rounds"
            )
    if not check_feasible(net, cur).ok:
        raise ProjectionInvariantError("projection ended on an infeasible flow")
    return cur, stats


def warm_start_solve(
    net: FlowNetwork,
    f_hat: Sequence[int],
    subroutine: Subroutine = Subroutine.EDMONDS_KARP,
) -> tuple[Flow, WarmStartReport]:
    """Clamp, project, then optimize from the projected flow.

    Accepts any non-negative integer prediction, however infeasible, and
    returns a maximum flow plus per-phase instrumentation.
    """
    t0 = time.perf_counter()
    clamped, clamp_total = clamp_to_capacity(net, f_hat)
    t1 = time.perf_counter()
    imb = imbalance(net, clamped)
    feasible, proj_stats = feasibility_projection(net, clamped)
    t2 = time.perf_counter()
    best, solve_report = max_flow(net, init=feasible, subroutine=subroutine)
    t3 = time.perf_counter()
    report = WarmStartReport(
        clamp_total=clamp_total,
        post_clamp_excess=imb.total_excess,
        post_clamp_deficit=imb.total_deficit,
        projection_stats=proj_stats,
        feasible_value=flow_value(net, feasible),
        optimal_value=solve_report.value,
        augment_stats=solve_report.stats,
        phase_seconds={
            "clamp": t1 - t0,
            "projection": t2 - t1,
            "optimize": t3 - t2,
        },
    )
    return best, report
