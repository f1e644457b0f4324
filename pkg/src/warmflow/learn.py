"""Learning predictions from sampled instances: canonical optima and the
per-edge median empirical-risk minimizer.

Instances share one base network; only capacities vary, each sampled
capacity staying inside [0, c_e] of the base. The prediction search space is
the per-edge box (no conservation constraint), so the L1 risk decomposes per
edge and the per-edge median minimizes it.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass

from .augment import Subroutine, max_flow
from .core import Flow, FlowNetwork, l1_distance

SUPPORTED_LAWS = ("uniform", "perturb")


def canonical_optimum(net: FlowNetwork) -> Flow:
    """The one maximum flow this package associates with a network.

    Deterministic Edmonds-Karp from the zero flow; same input gives a
    bit-identical output, which is what makes per-instance optima usable as
    labels.
    """
    flow, _ = max_flow(net, subroutine=Subroutine.EDMONDS_KARP)
    return flow


@dataclass(frozen=True)
class InstanceDistribution:
    """Per-edge capacity sampling law over a fixed base network.

    "uniform" draws each capacity uniformly from [0, c_e]; "perturb" adds a
    uniform integer from [-spread, spread] to c_e and clamps back into
    [0, c_e].
    """

    base: FlowNetwork
    law: str = "uniform"
    spread: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.law not in SUPPORTED_LAWS:
            raise ValueError(f"unknown law {self.law!r}; expected one of {SUPPORTED_LAWS}")
        if self.spread < 0:
            raise ValueError("spread must be non-negative")

    def sample_capacities(self, index: int) -> tuple[int, ...]:
        """Capacity vector for sample number index, reproducible from the seed."""
        rng = random.Random(f"{self.seed}:{index}")
        caps = []
        for _, _, c in self.base.edges:
            if self.law == "uniform":
                caps.append(rng.randint(0, c))
            else:
                v = c + rng.randint(-self.spread, self.spread)
                caps.append(min(max(v, 0), c))
        return tuple(caps)


@dataclass(frozen=True)
class SampleSet:
    """Sampled capacity vectors and their canonical optimal flows."""

    base: FlowNetwork
    capacities: tuple[tuple[int, ...], ...]
    flows: tuple[Flow, ...]

    def __post_init__(self) -> None:
        if len(self.capacities) != len(self.flows):
            raise ValueError("capacities and flows must pair up")
        if not self.capacities:
            raise ValueError("sample set is empty")

    @property
    def size(self) -> int:
        return len(self.capacities)


def instance_network(base: FlowNetwork, capacities: Sequence[int]) -> FlowNetwork:
    """The base network with its capacity vector replaced."""
    if len(capacities) != base.edge_count:
        raise ValueError("capacity vector length mismatch")
    edges = tuple(
        (tail, head, int(c)) for (tail, head, _), c in zip(base.edges, capacities)
    )
    return FlowNetwork(base.node_count, base.source, base.sink, edges)


def sample_instances(dist: InstanceDistribution, count: int) -> SampleSet:
    """Draw count instances and solve each one canonically."""
    if count < 1:
        raise ValueError("count must be at least 1")
    caps = []
    flows = []
    for i in range(count):
        c = dist.sample_capacities(i)
        for e, v in enumerate(c):
            if not 0 <= v <= dist.base.edges[e][2]:
                raise RuntimeError(f"sampled capacity {v} outside [0, c_{e}]")
        caps.append(c)
        flows.append(canonical_optimum(instance_network(dist.base, c)))
    return SampleSet(dist.base, tuple(caps), tuple(flows))


def median_erm(samples: SampleSet) -> Flow:
    """Per-edge lower median of the sampled optimal flows.

    For an even sample count any value between the two middle order
    statistics minimizes the L1 risk; the lower one keeps the output
    integral and deterministic. The result minimizes the empirical risk over
    every integer vector in the per-edge capacity box.
    """
    s = samples.size
    mid = (s - 1) // 2
    out = []
    for e in range(samples.base.edge_count):
        out.append(sorted(f[e] for f in samples.flows)[mid])
    return tuple(out)


def empirical_risk(f: Sequence[int], samples: SampleSet) -> tuple[int, int]:
    """Average L1 distance to the sampled optima, as an exact unreduced
    (numerator, denominator) pair with denominator equal to the sample count."""
    total = 0
    for g in samples.flows:
        total += l1_distance(f, g)
    return total, samples.size
