"""Grid generator: separability invariants, local shifts, sweep geometry."""

from __future__ import annotations

import pytest

from warmflow import canonical_optimum, flow_value, max_flow, warm_start_solve
from warmflow.gridgen import (
    GridSpec,
    TransitionSpec,
    changed_nodes,
    crossing_pairs,
    d_local_shift,
    dlocal_walk,
    make_separable_grid,
    node_at,
    square_region,
    verify_d_local,
)


def test_two_by_two_single_region_node():
    # 2x2 interior, region = node (0,0). All three neighbors of the region
    # node cross the partition.
    spec = GridSpec(side=2, region=(True, False, False, False))
    net = make_separable_grid(spec)
    assert net.node_count == 6
    big = spec.big
    caps = {}
    for tail, head, cap in net.edges:
        caps[(tail, head)] = cap
    assert caps[(0, 1)] == 1 and caps[(1, 0)] == 1
    assert caps[(0, 2)] == 1 and caps[(2, 0)] == 1
    assert caps[(1, 3)] == big and caps[(3, 1)] == big
    assert caps[(2, 3)] == big and caps[(3, 2)] == big
    # terminals: source feeds the complement, region feeds the sink
    assert caps[(4, 1)] == caps[(4, 2)] == caps[(4, 3)] == big
    assert caps[(0, 5)] == big
    assert crossing_pairs(spec) == 2


def test_all_region_mask_has_no_unit_edges():
    spec = GridSpec(side=2, region=(True,) * 4)
    net = make_separable_grid(spec)
    assert all(cap != 1 for _, _, cap in net.edges)
    assert crossing_pairs(spec) == 0


def test_attachment_side_validation():
    with pytest.raises(ValueError):
        make_separable_grid(
            GridSpec(side=2, region=(True, False, False, False), sink_attach=(1,))
        )
    with pytest.raises(ValueError):
        make_separable_grid(
            GridSpec(side=2, region=(True, False, False, False), source_attach=(0,))
        )
    with pytest.raises(ValueError):
        make_separable_grid(
            GridSpec(side=2, region=(True, False, False, False), sink_attach=())
        )


def test_max_flow_equals_directed_boundary_count():
    for side, lo, hi in ((4, 1, 3), (6, 1, 4), (6, 2, 5)):
        spec = GridSpec(side=side, region=square_region(side, lo, hi))
        net = make_separable_grid(spec)
        _, rep = max_flow(net)
        assert rep.value == crossing_pairs(spec)


def test_unit_edges_exactly_cross_the_partition():
    spec = GridSpec(side=5, region=square_region(5, 1, 4))
    net = make_separable_grid(spec)
    n_interior = 25
    for tail, head, cap in net.edges:
        if tail >= n_interior or head >= n_interior:
            assert cap == spec.big
            continue
        crossing = spec.region[tail] != spec.region[head]
        assert (cap == 1) == crossing
        assert (cap == spec.big) == (not crossing)


def test_d_local_shift_translate_example():
    side = 8
    mask = square_region(side, 2, 5)  # a 3x3 block
    shifted, d = d_local_shift(mask, translate=(1, 0))
    changed = changed_nodes(mask, shifted)
    xs = sorted({u % side for u in changed})
    assert xs == [2, 5]  # the departing and arriving columns
    assert d == 5
    assert verify_d_local(mask, shifted, 5)
    assert not verify_d_local(mask, shifted, 4)


def test_d_local_shift_identity_and_toggle():
    mask = square_region(6, 2, 4)
    same, d = d_local_shift(mask, translate=(0, 0))
    assert same == mask and d == 0
    assert verify_d_local(mask, same, 0)

    grown, d = d_local_shift(mask, toggle=[node_at(6, 4, 2)])
    assert d == 0  # single changed node
    assert sum(grown) == sum(mask) + 1


def test_grow_one_ring_changes_only_the_perimeter():
    side = 8
    mask = square_region(side, 3, 5)
    ring = [
        u
        for u in range(side * side)
        if not mask[u]
        and any(
            0 <= (u % side) + dx < side
            and 0 <= (u // side) + dy < side
            and mask[node_at(side, (u % side) + dx, (u // side) + dy)]
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1))
        )
    ]
    grown, d = d_local_shift(mask, toggle=ring)
    assert changed_nodes(mask, grown) == frozenset(ring)
    assert d == _max_manhattan(side, ring)


def _max_manhattan(side, nodes):
    best = 0
    pts = [(u % side, u // side) for u in nodes]
    for i, (xa, ya) in enumerate(pts):
        for xb, yb in pts[i + 1 :]:
            best = max(best, abs(xa - xb) + abs(ya - yb))
    return best


def test_verify_d_local_examples():
    side = 6
    base = [False] * 36
    a = list(base)
    a[node_at(side, 0, 0)] = True
    b = list(base)
    b[node_at(side, 3, 0)] = True
    # masks differ at (0,0) and (3,0): distance 3
    assert verify_d_local(a, b, 3)
    assert not verify_d_local(a, b, 2)
    assert verify_d_local(a, a, 0)


def test_transition_spec_validates():
    mask = square_region(6, 2, 4)
    shifted, d = d_local_shift(mask, translate=(1, 0))
    TransitionSpec(mask, shifted, d)
    with pytest.raises(ValueError):
        TransitionSpec(mask, shifted, d - 1)


def test_shift_rejects_bad_arguments():
    mask = square_region(4, 1, 3)
    with pytest.raises(ValueError):
        d_local_shift(mask)
    with pytest.raises(ValueError):
        d_local_shift(mask, translate=(1, 0), toggle=[0])
    with pytest.raises(ValueError):
        d_local_shift(mask, toggle=[99])
    with pytest.raises(ValueError):
        verify_d_local((True,) * 3, (False,) * 3, 1)  # not a square


def test_dlocal_walk_geometry():
    specs = dlocal_walk(side=20, frames=4)
    # identical edge lists across the sweep (only capacities may differ)
    nets = [make_separable_grid(s) for s in specs]
    skeleton = [tuple((t, h) for t, h, _ in net.edges) for net in nets]
    assert all(sk == skeleton[0] for sk in skeleton)
    # every consecutive transition is exactly 3-local
    for a, b in zip(specs, specs[1:]):
        assert verify_d_local(a.region, b.region, 3)
        assert not verify_d_local(a.region, b.region, 2)
    # constant optimum value across frames, equal to the boundary count
    values = [max_flow(net)[1].value for net in nets]
    assert len(set(values)) == 1
    assert values[0] == crossing_pairs(specs[0])


def test_dlocal_walk_rejects_excessive_frames():
    with pytest.raises(ValueError):
        dlocal_walk(side=12, frames=50)


def test_walk_prediction_reuse_needs_no_clamping_of_terminals():
    # Chained warm starts across the walk stay structurally compatible.
    specs = dlocal_walk(side=16, frames=3)
    nets = [make_separable_grid(s) for s in specs]
    prev = canonical_optimum(nets[0])
    for net in nets[1:]:
        assert len(prev) == net.edge_count
        value = flow_value(net, canonical_optimum(net))
        best, rep = warm_start_solve(net, prev)
        assert rep.optimal_value == value
        prev = best
