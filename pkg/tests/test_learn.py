"""Canonical optima, instance sampling, and the median risk minimizer."""

from __future__ import annotations

import itertools
import random

import pytest

from warmflow import (
    FlowNetwork,
    InstanceDistribution,
    SampleSet,
    canonical_optimum,
    empirical_risk,
    enumerate_max_flows,
    median_erm,
    sample_instances,
    warm_start_solve,
)
from warmflow.learn import instance_network

from helpers import DIAMOND, N1, PARALLEL, random_network


def test_canonical_optimum_examples():
    assert canonical_optimum(N1) == (1, 1)
    assert canonical_optimum(DIAMOND) == (1, 1, 1, 1)
    assert canonical_optimum(PARALLEL) == (1, 1)


def test_canonical_optimum_is_pure():
    rng = random.Random(71)
    for _ in range(30):
        net = random_network(rng, max_nodes=9, max_edges=15, max_cap=6)
        assert canonical_optimum(net) == canonical_optimum(net)


def test_sampling_determinism_and_clamping():
    dist = InstanceDistribution(N1, law="uniform", seed=12)
    a = sample_instances(dist, 3)
    b = sample_instances(dist, 3)
    assert a.capacities == b.capacities
    assert a.flows == b.flows
    for caps in a.capacities:
        for c, (_, _, bound) in zip(caps, N1.edges):
            assert 0 <= c <= bound

    frozen = InstanceDistribution(N1, law="perturb", spread=0, seed=5)
    s = sample_instances(frozen, 4)
    assert all(caps == N1.capacities for caps in s.capacities)


def test_distribution_validation():
    with pytest.raises(ValueError):
        InstanceDistribution(N1, law="gaussian")
    with pytest.raises(ValueError):
        InstanceDistribution(N1, law="perturb", spread=-1)
    with pytest.raises(ValueError):
        sample_instances(InstanceDistribution(N1), 0)


def test_median_examples():
    base = FlowNetwork(2, 0, 1, [(0, 1, 9)])
    samples = SampleSet(base, ((9,), (9,), (9,)), ((1,), (2,), (4,)))
    assert median_erm(samples) == (2,)
    samples = SampleSet(base, ((9,), (9,)), ((1,), (3,)))
    assert median_erm(samples) == (1,)  # lower median on ties
    same = SampleSet(base, ((9,), (9,)), ((2,), (2,)))
    assert median_erm(same) == (2,)


def test_empirical_risk_examples():
    base = FlowNetwork(2, 0, 1, [(0, 1, 9)])
    samples = SampleSet(base, ((9,), (9,), (9,)), ((1,), (2,), (4,)))
    assert empirical_risk((2,), samples) == (3, 3)
    one = SampleSet(base, ((9,),), ((5,),))
    assert empirical_risk((5,), one) == (0, 1)
    two = SampleSet(base, ((9,), (9,)), ((1,), (1,)))
    assert empirical_risk((0,), two) == (2, 2)


def test_median_minimizes_empirical_risk_exhaustively():
    rng = random.Random(73)
    for _ in range(60):
        base = random_network(rng, max_nodes=5, max_edges=4, max_cap=4, min_nodes=3)
        dist = InstanceDistribution(base, law="uniform", seed=rng.randrange(10**6))
        samples = sample_instances(dist, rng.randint(1, 6))
        erm = median_erm(samples)
        best_num, _ = empirical_risk(erm, samples)
        boxes = [range(c + 1) for c in base.capacities]
        for candidate in itertools.product(*boxes):
            num, _ = empirical_risk(candidate, samples)
            assert num >= best_num


def test_risk_decomposes_per_edge():
    rng = random.Random(79)
    for _ in range(30):
        base = random_network(rng, max_nodes=5, max_edges=5, max_cap=4)
        dist = InstanceDistribution(base, law="uniform", seed=rng.randrange(10**6))
        samples = sample_instances(dist, rng.randint(1, 7))
        erm = median_erm(samples)
        total, _ = empirical_risk(erm, samples)
        per_edge = 0
        for e in range(base.edge_count):
            best = min(
                sum(abs(x - f[e]) for f in samples.flows)
                for x in range(base.capacities[e] + 1)
            )
            per_edge += best
        assert total == per_edge


def test_zero_spread_prediction_warm_starts_for_free():
    rng = random.Random(83)
    for _ in range(20):
        base = random_network(rng, max_nodes=7, max_edges=10, max_cap=5)
        dist = InstanceDistribution(base, law="perturb", spread=0, seed=9)
        samples = sample_instances(dist, 5)
        erm = median_erm(samples)
        assert erm == canonical_optimum(base)
        _, rep = warm_start_solve(base, erm)
        assert rep.projection_stats.path_count == 0
        assert rep.augment_stats.path_count == 0


def test_sampled_flows_are_maximum_for_their_instance():
    rng = random.Random(89)
    base = random_network(rng, max_nodes=5, max_edges=5, max_cap=3)
    dist = InstanceDistribution(base, law="uniform", seed=3)
    samples = sample_instances(dist, 6)
    for caps, flow in zip(samples.capacities, samples.flows):
        net = instance_network(base, caps)
        assert flow in enumerate_max_flows(net)
