"""Core flow-network model: networks, flow vectors, residuals, and imbalance.

Everything is integer arithmetic. A flow is a plain tuple of non-negative
ints indexed by the network's edge list; predictions are ordinary flow
vectors and are allowed to violate both capacity and conservation.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

Flow = tuple[int, ...]


class EnumerationBudgetExceeded(ValueError):
    """Exact enumeration would visit more states than the configured budget."""


@dataclass(frozen=True)
class FlowNetwork:
    """Directed network with integer capacities and a fixed source/sink.

    The edge list order is the canonical index space: every flow vector is
    indexed by it. Parallel and anti-parallel edges are kept as distinct
    indices and their residuals are tracked per index, never merged.
    """

    node_count: int
    source: int
    sink: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "edges", tuple((int(t), int(h), int(c)) for t, h, c in self.edges)
        )
        if self.node_count <= 0:
            raise ValueError("node_count must be positive")
        for name in ("source", "sink"):
            v = getattr(self, name)
            if not 0 <= v < self.node_count:
                raise ValueError(f"{name} {v} out of range")
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        for i, (tail, head, cap) in enumerate(self.edges):
            if tail == head:
                raise ValueError(f"edge {i} is a self-loop")
            if not (0 <= tail < self.node_count and 0 <= head < self.node_count):
                raise ValueError(f"edge {i} endpoint out of range")
            if cap < 0:
                raise ValueError(f"edge {i} has negative capacity")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def tails(self) -> tuple[int, ...]:
        return tuple(t for t, _, _ in self.edges)

    @cached_property
    def heads(self) -> tuple[int, ...]:
        return tuple(h for _, h, _ in self.edges)

    @cached_property
    def capacities(self) -> tuple[int, ...]:
        return tuple(c for _, _, c in self.edges)

    @cached_property
    def out_arcs(self) -> tuple[tuple[int, ...], ...]:
        """Residual arc ids leaving each node, ascending (arc 2e forward, 2e+1 reverse)."""
        adj: list[list[int]] = [[] for _ in range(self.node_count)]
        for e, (tail, head, _) in enumerate(self.edges):
            adj[tail].append(2 * e)
            adj[head].append(2 * e + 1)
        return tuple(tuple(a) for a in adj)

    def arc_tail(self, arc: int) -> int:
        e = arc >> 1
        return self.heads[e] if arc & 1 else self.tails[e]

    def arc_head(self, arc: int) -> int:
        e = arc >> 1
        return self.tails[e] if arc & 1 else self.heads[e]


def zero_flow(net: FlowNetwork) -> Flow:
    return (0,) * net.edge_count


def _validate_vector(net: FlowNetwork, f: Sequence[int]) -> Flow:
    """Check that f is a non-negative integer vector indexed by net's edges."""
    if len(f) != net.edge_count:
        raise ValueError(f"flow has {len(f)} entries, network has {net.edge_count} edges")
    out = []
    for i, v in enumerate(f):
        iv = int(v)
        if iv != v:
            raise ValueError(f"flow entry {i} is not an integer")
        if iv < 0:
            raise ValueError(f"flow entry {i} is negative")
        out.append(iv)
    return tuple(out)


def flow_value(net: FlowNetwork, f: Sequence[int]) -> int:
    """Net amount leaving the source: outflow minus inflow at the source.

    The inflow term is zero for feasible flows; subtracting it keeps the
    value well-defined for arbitrary vectors mid-projection.
    """
    f = _validate_vector(net, f)
    s = net.source
    total = 0
    for e, (tail, head, _) in enumerate(net.edges):
        if tail == s:
            total += f[e]
        if head == s:
            total -= f[e]
    return total


@dataclass(frozen=True)
class FeasibilityReport:
    capacity_violations: tuple[int, ...]
    conservation_violations: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.capacity_violations and not self.conservation_violations


def check_feasible(net: FlowNetwork, f: Sequence[int]) -> FeasibilityReport:
    """Report edges over capacity and non-terminal nodes violating conservation."""
    f = _validate_vector(net, f)
    cap_bad = tuple(e for e, (_, _, c) in enumerate(net.edges) if f[e] > c)
    balance = [0] * net.node_count
    for e, (tail, head, _) in enumerate(net.edges):
        balance[head] += f[e]
        balance[tail] -= f[e]
    cons_bad = tuple(
        u
        for u in range(net.node_count)
        if u not in (net.source, net.sink) and balance[u] != 0
    )
    return FeasibilityReport(cap_bad, cons_bad)


@dataclass(frozen=True)
class Imbalance:
    """Per-node excess/deficit under a capacity-respecting flow.

    Terminal nodes carry zero by convention; at every node at most one of
    excess and deficit is positive.
    """

    excess: tuple[int, ...]
    deficit: tuple[int, ...]
    excess_nodes: frozenset[int]
    deficit_nodes: frozenset[int]
    total_excess: int
    total_deficit: int


def imbalance(net: FlowNetwork, f: Sequence[int]) -> Imbalance:
    f = _validate_vector(net, f)
    bad = [e for e, (_, _, c) in enumerate(net.edges) if f[e] > c]
    if bad:
        raise ValueError(f"flow violates capacity on edges {bad}; clamp first")
    balance = [0] * net.node_count
    for e, (tail, head, _) in enumerate(net.edges):
        balance[head] += f[e]
        balance[tail] -= f[e]
    excess = [0] * net.node_count
    deficit = [0] * net.node_count
    for u in range(net.node_count):
        if u in (net.source, net.sink):
            continue
        if balance[u] > 0:
            excess[u] = balance[u]
        elif balance[u] < 0:
            deficit[u] = -balance[u]
    return Imbalance(
        excess=tuple(excess),
        deficit=tuple(deficit),
        excess_nodes=frozenset(u for u in range(net.node_count) if excess[u] > 0),
        deficit_nodes=frozenset(u for u in range(net.node_count) if deficit[u] > 0),
        total_excess=sum(excess),
        total_deficit=sum(deficit),
    )


class ResidualView:
    """Residual capacities induced by a capacity-respecting flow.

    Per edge e there are two residual arcs: arc 2e runs tail->head with
    capacity c_e - f_e, arc 2e+1 runs head->tail with capacity f_e. The
    current flow is always readable back from the reverse residuals.
    """

    __slots__ = ("net", "_fwd", "_rev")

    def __init__(self, net: FlowNetwork, f: Sequence[int]):
        f = _validate_vector(net, f)
        bad = [e for e, (_, _, c) in enumerate(net.edges) if f[e] > c]
        if bad:
            raise ValueError(f"flow violates capacity on edges {bad}")
        self.net = net
        self._fwd = [c - f[e] for e, (_, _, c) in enumerate(net.edges)]
        self._rev = list(f)

    def forward(self, e: int) -> int:
        return self._fwd[e]

    def reverse(self, e: int) -> int:
        return self._rev[e]

    def residual(self, arc: int) -> int:
        return self._rev[arc >> 1] if arc & 1 else self._fwd[arc >> 1]

    def flow(self) -> Flow:
        return tuple(self._rev)

    def _push(self, arc: int, amount: int) -> None:
        e = arc >> 1
        if arc & 1:
            self._rev[e] -= amount
            self._fwd[e] += amount
            if self._rev[e] < 0:
                raise ValueError(f"push exceeds residual on arc {arc}")
        else:
            self._fwd[e] -= amount
            self._rev[e] += amount
            if self._fwd[e] < 0:
                raise ValueError(f"push exceeds residual on arc {arc}")


def residual(net: FlowNetwork, f: Sequence[int]) -> ResidualView:
    return ResidualView(net, f)


def l1_distance(f: Sequence[int], g: Sequence[int]) -> int:
    if len(f) != len(g):
        raise ValueError(f"length mismatch: {len(f)} vs {len(g)}")
    return sum(abs(a - b) for a, b in zip(f, g))


def enumerate_feasible_flows(
    net: FlowNetwork, state_budget: int = 10_000_000
) -> Iterator[Flow]:
    """Yield every integral feasible flow (capacity and conservation).

    Depth-first over edges in index order; a node is pruned as soon as its
    running balance can no longer be repaired by its unassigned incident
    capacity. Refuses instances whose raw assignment space (the product of
    c_e + 1 over all edges) exceeds state_budget. Test oracle; use only on
    tiny instances.
    """
    states = 1
    for _, _, c in net.edges:
        states *= c + 1
        if states > state_budget:
            raise EnumerationBudgetExceeded(
                f"assignment space exceeds {state_budget} states"
            )
    n, m = net.node_count, net.edge_count
    balance = [0] * n
    rem_in = [0] * n
    rem_out = [0] * n
    for tail, head, c in net.edges:
        rem_out[tail] += c
        rem_in[head] += c
    assign = [0] * m
    terminals = (net.source, net.sink)

    def repairable(u: int) -> bool:
        if u in terminals:
            return True
        b = balance[u]
        if b > 0:
            return b <= rem_out[u]
        return -b <= rem_in[u]

    def rec(i: int) -> Iterator[Flow]:
        if i == m:
            yield tuple(assign)
            return
        tail, head, c = net.edges[i]
        rem_out[tail] -= c
        rem_in[head] -= c
        for x in range(c + 1):
            assign[i] = x
            balance[head] += x
            balance[tail] -= x
            if repairable(tail) and repairable(head):
                yield from rec(i + 1)
            balance[head] -= x
            balance[tail] += x
        assign[i] = 0
        rem_out[tail] += c
        rem_in[head] += c

    return rec(0)


def enumerate_max_flows(
    net: FlowNetwork, state_budget: int = 10_000_000
) -> list[Flow]:
    """All integral feasible maximum flows, by brute-force enumeration."""
    best_val: int | None = None
    best: list[Flow] = []
    for f in enumerate_feasible_flows(net, state_budget):
        val = flow_value(net, f)
        if best_val is None or val > best_val:
            best_val = val
            best = [f]
        elif val == best_val:
            best.append(f)
    return best


def prediction_error(
    net: FlowNetwork,
    f_hat: Sequence[int],
    mode: str = "exact",
    state_budget: int = 10_000_000,
) -> int:
    """Minimum L1 distance from a prediction to any feasible maximum flow.

    mode "exact" enumerates every integral maximum flow (tiny instances
    only); mode "upper_bound" returns the distance to the canonical optimum,
    which can only overestimate the true error.
    """
    f_hat = _validate_vector(net, f_hat)
    if mode == "exact":
        best_val: int | None = None
        best_dist = 0
        for f in enumerate_feasible_flows(net, state_budget):
            val = flow_value(net, f)
            if best_val is None or val > best_val:
                best_val = val
                best_dist = l1_distance(f_hat, f)
            elif val == best_val:
                d = l1_distance(f_hat, f)
                if d < best_dist:
                    best_dist = d
        if best_val is None:  # zero flow is always feasible, so unreachable
            raise RuntimeError("no feasible flow found")
        return best_dist
    if mode == "upper_bound":
        from .learn import canonical_optimum

        return l1_distance(f_hat, canonical_optimum(net))
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class PathStats:
    """Accumulated path-finding instrumentation for one solve phase.

    node_expansions counts queue pops across every breadth-first search,
    including searches that end without finding a path; it is the
    deterministic cost proxy used instead of wall-clock time.
    """

    path_count: int = 0
    total_length: int = 0
    max_length: int = 0
    node_expansions: int = 0

    def add_path(self, length: int) -> None:
        self.path_count += 1
        self.total_length += length
        if length > self.max_length:
            self.max_length = length

    @property
    def mean_length(self) -> float:
        return self.total_length / self.path_count if self.path_count else 0.0


def reachable_nodes(res: ResidualView, start: int) -> frozenset[int]:
    """Nodes reachable from start through positive-residual arcs."""
    net = res.net
    seen = bytearray(net.node_count)
    seen[start] = 1
    q = deque([start])
    while q:
        u = q.popleft()
        for arc in net.out_arcs[u]:
            if res.residual(arc) > 0:
                v = net.arc_head(arc)
                if not seen[v]:
                    seen[v] = 1
                    q.append(v)
    return frozenset(u for u in range(net.node_count) if seen[u])
