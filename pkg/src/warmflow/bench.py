"""Benchmark orchestration: cold versus warm solves over instance sequences.

The first instance is solved cold and its optimum becomes the first
prediction; every later instance is solved cold from zero and warm from the
previous optimum of the warm chain. Consecutive instances must share an
index-compatible edge list, since the prediction is reused raw by edge
index.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from .augment import Subroutine, max_flow
from .core import FlowNetwork, zero_flow
from .formats import parse_dimacs
from .gridgen import dlocal_walk, make_separable_grid
from .images import parse_pgm
from .segment import SegConfig, build_segmentation_network, parse_seed_file
from .warmstart import warm_start_solve

CSV_COLUMNS = (
    "instance",
    "mode",
    "subroutine",
    "value",
    "clamp_total",
    "post_clamp_excess",
    "post_clamp_deficit",
    "projection_paths",
    "projection_mean_length",
    "augmenting_paths",
    "augmenting_mean_length",
    "node_expansions",
    "clamp_seconds",
    "projection_seconds",
    "optimize_seconds",
)


@dataclass(frozen=True)
class BenchRecord:
    instance: str
    mode: str
    subroutine: str
    value: int
    clamp_total: int
    post_clamp_excess: int
    post_clamp_deficit: int
    projection_paths: int
    projection_mean_length: float
    augmenting_paths: int
    augmenting_mean_length: float
    node_expansions: int
    clamp_seconds: float
    projection_seconds: float
    optimize_seconds: float

    def csv_row(self) -> str:
        return ",".join(
            (
                self.instance,
                self.mode,
                self.subroutine,
                str(self.value),
                str(self.clamp_total),
                str(self.post_clamp_excess),
                str(self.post_clamp_deficit),
                str(self.projection_paths),
                f"{self.projection_mean_length:.4f}",
                str(self.augmenting_paths),
                f"{self.augmenting_mean_length:.4f}",
                str(self.node_expansions),
                f"{self.clamp_seconds:.6f}",
                f"{self.projection_seconds:.6f}",
                f"{self.optimize_seconds:.6f}",
            )
        )


def records_to_csv(records: Sequence[BenchRecord]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    lines += [r.csv_row() for r in records]
    return "\n".join(lines) + "\n"


def run_sequence(
    instances: Sequence[tuple[str, FlowNetwork]],
    subroutine: Subroutine = Subroutine.EDMONDS_KARP,
    modes: Sequence[str] = ("cold", "warm"),
) -> list[BenchRecord]:
    """Solve the sequence, emitting one record per (instance, mode) run."""
    if not modes:
        raise ValueError("no modes to run")
    for mode in modes:
        if mode not in ("cold", "warm"):
            raise ValueError(f"unknown mode {mode!r}")
    records: list[BenchRecord] = []
    prediction = None
    prev_name = None
    for name, net in instances:
        if prediction is not None and len(prediction) != net.edge_count:
            raise ValueError(
                f"instance {name!r} has {net.edge_count} edges but the previous "
                f"instance {prev_name!r} produced a {len(prediction)}-entry flow; "
                "sequences need index-compatible edge lists"
            )
        cold_flow = None
        cold_value = None
        if "cold" in modes or prediction is None:
            cold_flow, rep = max_flow(net, zero_flow(net), subroutine)
            cold_value = rep.value
            if "cold" in modes:
                records.append(
                    BenchRecord(
                        instance=name,
                        mode="cold",
                        subroutine=subroutine.value,
                        value=rep.value,
                        clamp_total=0,
                        post_clamp_excess=0,
                        post_clamp_deficit=0,
                        projection_paths=0,
                        projection_mean_length=0.0,
                        augmenting_paths=rep.stats.path_count,
                        augmenting_mean_length=rep.stats.mean_length,
                        node_expansions=rep.stats.node_expansions,
                        clamp_seconds=0.0,
                        projection_seconds=0.0,
                        optimize_seconds=rep.seconds,
                    )
                )
            if prediction is None:
                prediction = cold_flow
                prev_name = name
                continue
        if "warm" in modes:
            wflow, wrep = warm_start_solve(net, prediction, subroutine)
            if cold_value is not None and wrep.optimal_value != cold_value:
                raise RuntimeError(
                    f"instance {name!r}: warm value {wrep.optimal_value} "
                    f"!= cold value {cold_value}"
                )
            records.append(
                BenchRecord(
                    instance=name,
                    mode="warm",
                    subroutine=subroutine.value,
                    value=wrep.optimal_value,
                    clamp_total=wrep.clamp_total,
                    post_clamp_excess=wrep.post_clamp_excess,
                    post_clamp_deficit=wrep.post_clamp_deficit,
                    projection_paths=wrep.projection_stats.path_count,
                    projection_mean_length=wrep.projection_stats.mean_length,
                    augmenting_paths=wrep.augment_stats.path_count,
                    augmenting_mean_length=wrep.augment_stats.mean_length,
                    node_expansions=wrep.total_node_expansions,
                    clamp_seconds=wrep.phase_seconds["clamp"],
                    projection_seconds=wrep.phase_seconds["projection"],
                    optimize_seconds=wrep.phase_seconds["optimize"],
                )
            )
            prediction = wflow
        else:
            prediction = cold_flow
        prev_name = name
    return records


def instances_from_config(
    config: dict, base_dir: Path
) -> tuple[list[tuple[str, FlowNetwork]], Subroutine, tuple[str, ...]]:
    """Materialize the instance sequence described by a bench config.

    Kinds: "dimacs" (list of files), "grid" (generated local-transition
    sweep), "images" (graymap sequence with one shared seed file).
    """
    kind = config.get("kind")
    subroutine = Subroutine(config.get("subroutine", "ek"))
    modes = tuple(config.get("modes", ("cold", "warm")))
    instances: list[tuple[str, FlowNetwork]] = []
    if kind == "dimacs":
        for rel in config["files"]:
            path = base_dir / rel
            instances.append((Path(rel).name, parse_dimacs(path.read_text())))
    elif kind == "grid":
        side = int(config["side"])
        frames = int(config["frames"])
        stride = config.get("stride")
        specs = dlocal_walk(side, frames, int(stride) if stride is not None else None)
        for i, spec in enumerate(specs):
            instances.append((f"grid{side}_frame{i:03d}", make_separable_grid(spec)))
    elif kind == "images":
        seeds = parse_seed_file((base_dir / config["seeds"]).read_text())
        cfg = SegConfig(
            penalty_scale=int(config.get("penalty_scale", 100)),
            contrast_sigma=int(config.get("contrast_sigma", 50)),
        )
        for rel in config["images"]:
            img = parse_pgm((base_dir / rel).read_bytes())
            seg = build_segmentation_network(img, seeds, cfg)
            instances.append((Path(rel).name, seg.net))
    else:
        raise ValueError(f"unknown config kind {kind!r}")
    return instances, subroutine, modes


def load_config(path: Path) -> tuple[list[tuple[str, FlowNetwork]], Subroutine, tuple[str, ...]]:
    config = json.loads(path.read_text())
    return instances_from_config(config, path.parent)
