"""Generator for two-region grid networks with {1, M} capacities.

The interior nodes form a side x side grid with both directions of every
adjacent pair present. A boolean mask partitions the interior into a
sink-side region and its complement; edges crossing the partition get
capacity 1, every other edge (including all terminal arcs) gets the large
capacity M. Transitions between such networks are "local" when all nodes
that change sides sit within a bounded pairwise grid distance, and local
transitions are what make warm-start repair paths short.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .core import FlowNetwork

Mask = tuple[bool, ...]


def node_at(side: int, x: int, y: int) -> int:
    return y * side + x


def _side_of(mask: Sequence[bool]) -> int:
    side = math.isqrt(len(mask))
    if side * side != len(mask):
        raise ValueError("mask length is not a perfect square")
    return side


@dataclass(frozen=True)
class GridSpec:
    """Everything needed to build one separable grid network.

    region is row-major over the interior grid, True marking the sink-side
    nodes. Attachment lists name the interior nodes wired straight to the
    sink/source with capacity M; None attaches every eligible node. Explicit
    lists let a sweep of changing masks keep an identical edge list.
    """

    side: int
    region: Mask
    big_capacity: int | None = None
    sink_attach: tuple[int, ...] | None = None
    source_attach: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.side < 2:
            raise ValueError("side must be at least 2")
        object.__setattr__(self, "region", tuple(bool(v) for v in self.region))
        if len(self.region) != self.side * self.side:
            raise ValueError("region mask must have side*side entries")

    @property
    def big(self) -> int:
        return self.big_capacity if self.big_capacity is not None else self.side**4

    def sink_attached(self) -> tuple[int, ...]:
        if self.sink_attach is not None:
            return tuple(self.sink_attach)
        return tuple(u for u in range(len(self.region)) if self.region[u])

    def source_attached(self) -> tuple[int, ...]:
        if self.source_attach is not None:
            return tuple(self.source_attach)
        return tuple(u for u in range(len(self.region)) if not self.region[u])


def make_separable_grid(spec: GridSpec) -> FlowNetwork:
    """Build the network for a grid spec with deterministic ordering.

    Interior edges come first (row-major, right neighbor then down neighbor,
    each pair in both directions), then source arcs, then sink arcs. Raises
    when an attachment sits on the wrong side of the partition or a needed
    separability witness is missing.
    """
    side = spec.side
    n_interior = side * side
    source, sink = n_interior, n_interior + 1
    big = spec.big
    region = spec.region

    sink_nodes = spec.sink_attached()
    source_nodes = spec.source_attached()
    for u in sink_nodes:
        if not 0 <= u < n_interior:
            raise ValueError(f"sink attachment {u} out of range")
        if not region[u]:
            raise ValueError(f"sink attachment {u} is outside the region")
    for u in source_nodes:
        if not 0 <= u < n_interior:
            raise ValueError(f"source attachment {u} out of range")
        if region[u]:
            raise ValueError(f"source attachment {u} is inside the region")
    if any(region) and not sink_nodes:
        raise ValueError("region is non-empty but no node attaches to the sink")
    if not all(region) and not source_nodes:
        raise ValueError("complement is non-empty but no node attaches to the source")

    edges: list[tuple[int, int, int]] = []
    for y in range(side):
        for x in range(side):
            u = node_at(side, x, y)
            for dx, dy in ((1, 0), (0, 1)):
                nx, ny = x + dx, y + dy
                if nx >= side or ny >= side:
                    continue
                v = node_at(side, nx, ny)
                cap = 1 if region[u] != region[v] else big
                edges.append((u, v, cap))
                edges.append((v, u, cap))
    for u in sorted(source_nodes):
        edges.append((source, u, big))
    for u in sorted(sink_nodes):
        edges.append((u, sink, big))
    return FlowNetwork(n_interior + 2, source, sink, tuple(edges))


def crossing_pairs(spec: GridSpec) -> int:
    """Directed boundary edges entering the region; equals the max-flow value."""
    side = spec.side
    count = 0
    for y in range(side):
        for x in range(side):
            u = node_at(side, x, y)
            for dx, dy in ((1, 0), (0, 1)):
                nx, ny = x + dx, y + dy
                if nx >= side or ny >= side:
                    continue
                v = node_at(side, nx, ny)
                if spec.region[u] != spec.region[v]:
                    count += 1
    return count


def changed_nodes(before: Sequence[bool], after: Sequence[bool]) -> frozenset[int]:
    if len(before) != len(after):
        raise ValueError("masks differ in length")
    return frozenset(u for u in range(len(before)) if bool(before[u]) != bool(after[u]))


def _max_pairwise_distance(side: int, nodes: Iterable[int]) -> int:
    coords = [(u % side, u // side) for u in nodes]
    best = 0
    for i in range(len(coords)):
        xi, yi = coords[i]
        for xj, yj in coords[i + 1 :]:
            d = abs(xi - xj) + abs(yi - yj)
            if d > best:
                best = d
    return best


def d_local_shift(
    mask: Sequence[bool],
    *,
    translate: tuple[int, int] | None = None,
    toggle: Iterable[int] | None = None,
) -> tuple[Mask, int]:
    """Produce a new mask by translating the region or toggling a patch.

    Returns the new mask together with the measured locality: the maximum
    pairwise grid (Manhattan) distance over the nodes whose side changed,
    zero when at most one node changed.
    """
    if (translate is None) == (toggle is None):
        raise ValueError("give exactly one of translate or toggle")
    side = _side_of(mask)
    before = tuple(bool(v) for v in mask)
    if translate is not None:
        dx, dy = translate
        after = [False] * len(before)
        for u, inside in enumerate(before):
            if not inside:
                continue
            x, y = u % side + dx, u // side + dy
            if 0 <= x < side and 0 <= y < side:
                after[node_at(side, x, y)] = True
        new_mask = tuple(after)
    else:
        flip = set(toggle)
        for u in flip:
            if not 0 <= u < len(before):
                raise ValueError(f"toggle node {u} out of range")
        new_mask = tuple(
            not v if u in flip else v for u, v in enumerate(before)
        )
    return new_mask, _max_pairwise_distance(side, changed_nodes(before, new_mask))


def verify_d_local(before: Sequence[bool], after: Sequence[bool], d: int) -> bool:
    """True iff every pair of side-changing nodes is within grid distance d."""
    side = _side_of(before)
    return _max_pairwise_distance(side, changed_nodes(before, after)) <= d


@dataclass(frozen=True)
class TransitionSpec:
    """A validated local transition between two region masks."""

    mask_before: Mask
    mask_after: Mask
    d: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "mask_before", tuple(bool(v) for v in self.mask_before))
        object.__setattr__(self, "mask_after", tuple(bool(v) for v in self.mask_after))
        if not verify_d_local(self.mask_before, self.mask_after, self.d):
            raise ValueError(f"transition is not {self.d}-local")


def square_region(side: int, lo: int, hi: int) -> Mask:
    """Mask with the [lo, hi) x [lo, hi) block inside the region."""
    if not 0 <= lo < hi <= side:
        raise ValueError("need 0 <= lo < hi <= side")
    return tuple(
        lo <= u % side < hi and lo <= u // side < hi for u in range(side * side)
    )


def dlocal_walk(
    side: int, frames: int, stride: int | None = None
) -> list[GridSpec]:
    """Benchmark sweep: a fixed square region plus a 2x2 notch stepping down
    its right edge one row per frame.

    Every consecutive transition changes exactly the four notch corner cells,
    which is 3-local, and the boundary length (hence the max-flow value) is
    the same in every frame. Terminal attachments form a fixed sparse lattice
    away from the notch corridor, so all frames share one edge list and cold
    augmenting paths have to travel distances that grow with the grid side.
    """
    if side < 12:
        raise ValueError("side must be at least 12")
    if frames < 1:
        raise ValueError("frames must be at least 1")
    lo, hi = side // 4, side - side // 4
    p = stride if stride is not None else max(2, side // 4)
    first_row = lo + 2
    # The notch occupies rows r..r+1 at columns hi..hi+1 with r walking down
    # one row per frame; its left neighbors must stay inside the square so
    # every frame has the same boundary length.
    last_row = first_row + frames - 1
    if hi + 1 >= side or last_row + 1 > hi - 1:
        raise ValueError("too many frames for this side")

    base = square_region(side, lo, hi)
    corridor = {
        node_at(side, x, y)
        for x in (hi, hi + 1)
        for y in range(first_row - 1, last_row + 3)
        if 0 <= y < side
    }
    sink_attach = tuple(
        node_at(side, x, y)
        for y in range(lo, hi, p)
        for x in range(lo, hi, p)
    )
    source_attach = tuple(
        u
        for u in range(side * side)
        if not base[u]
        and u not in corridor
        and (u % side) % p == 0
        and (u // side) % p == 0
    )

    specs = []
    for i in range(frames):
        r = first_row + i
        notch = [
            node_at(side, x, y) for x in (hi, hi + 1) for y in (r, r + 1)
        ]
        mask = list(base)
        for u in notch:
            mask[u] = True
        specs.append(
            GridSpec(
                side=side,
                region=tuple(mask),
                sink_attach=sink_attach,
                source_attach=source_attach,
            )
        )
    return specs
