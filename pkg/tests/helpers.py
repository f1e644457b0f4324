"""Shared fixtures and independent oracles for the test suite.

The oracles deliberately avoid the package's augmenting-path machinery:
max-flow values come from enumerating cuts, distances from a plain BFS over
an explicit arc list, and flow sets from exhaustive assignment.
"""

from __future__ import annotations

import random
from collections import deque
from itertools import combinations

from warmflow import FlowNetwork, imbalance, residual

N1 = FlowNetwork(3, 0, 2, [(0, 1, 2), (1, 2, 1)])
DIAMOND = FlowNetwork(4, 0, 3, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
CHAIN222 = FlowNetwork(4, 0, 3, [(0, 1, 2), (1, 2, 2), (2, 3, 2)])
CHAIN111 = FlowNetwork(4, 0, 3, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
PARALLEL = FlowNetwork(2, 0, 1, [(0, 1, 1), (0, 1, 1)])


def brute_max_flow_value(net: FlowNetwork) -> int:
    """Minimum cut capacity over every source/sink-separating node subset."""
    middles = [u for u in range(net.node_count) if u not in (net.source, net.sink)]
    best = None
    for size in range(len(middles) + 1):
        for chosen in combinations(middles, size):
            side = {net.source, *chosen}
            cap = sum(
                c for tail, head, c in net.edges if tail in side and head not in side
            )
            if best is None or cap < best:
                best = cap
    return best


def bfs_distance(net: FlowNetwork, residual_view, start: int, goal: int) -> int | None:
    """Unweighted distance oracle over positive-residual arcs (None if unreachable)."""
    dist = {start: 0}
    q = deque([start])
    while q:
        u = q.popleft()
        if u == goal:
            return dist[u]
        for arc in net.out_arcs[u]:
            if residual_view.residual(arc) > 0:
                v = net.arc_head(arc)
                if v not in dist:
                    dist[v] = dist[u] + 1
                    q.append(v)
    return dist.get(goal)


def residual_reachable(net: FlowNetwork, f, start: int) -> set[int]:
    res = residual(net, f)
    seen = {start}
    q = deque([start])
    while q:
        u = q.popleft()
        for arc in net.out_arcs[u]:
            if res.residual(arc) > 0:
                v = net.arc_head(arc)
                if v not in seen:
                    seen.add(v)
                    q.append(v)
    return seen


def excess_to_deficit_path_exists(net: FlowNetwork, f) -> bool:
    """Is any deficit node residually reachable from any excess node?"""
    imb = imbalance(net, f)
    for u in imb.excess_nodes:
        if residual_reachable(net, f, u) & imb.deficit_nodes:
            return True
    return False


def random_network(
    rng: random.Random,
    max_nodes: int = 12,
    max_edges: int = 30,
    max_cap: int = 8,
    min_nodes: int = 3,
) -> FlowNetwork:
    n = rng.randint(min_nodes, max_nodes)
    m = rng.randint(1, max_edges)
    edges = []
    for _ in range(m):
        tail = rng.randrange(n)
        head = rng.randrange(n)
        while head == tail:
            head = rng.randrange(n)
        edges.append((tail, head, rng.randint(0, max_cap)))
    return FlowNetwork(n, 0, n - 1, edges)


def random_prediction(rng: random.Random, net: FlowNetwork) -> tuple[int, ...]:
    """Arbitrary non-negative vector; often violates capacity and conservation."""
    style = rng.randrange(4)
    out = []
    for _, _, c in net.edges:
        if style == 0:
            out.append(rng.randint(0, max(c, 1) * 2 + 2))  # wild, capacity-violating
        elif style == 1:
            out.append(rng.randint(0, c))  # capacity-respecting
        elif style == 2:
            out.append(0)
        else:
            out.append(max(0, c + rng.randint(-2, 2)))
    return tuple(out)


def random_capacity_respecting(rng: random.Random, net: FlowNetwork) -> tuple[int, ...]:
    return tuple(rng.randint(0, c) for _, _, c in net.edges)
