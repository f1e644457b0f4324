"""Image segmentation front end: image plus seeds to flow network to mask.

A pixel becomes a node; 4-neighbor pixel pairs get arcs in both directions
whose capacity is the contrast-based boundary penalty, and every seed pixel
is wired to its terminal with a capacity so large no minimum cut can afford
to sever it. The source side of the min cut is the object.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .core import FlowNetwork
from .images import GrayImage, RgbImage

Pixel = tuple[int, int]
Mask = tuple[bool, ...]


@dataclass(frozen=True)
class SegConfig:
    """Penalty and terminal-capacity parameters.

    terminal_capacity defaults to penalty_scale * |V|^2 with |V| counting the
    two terminal nodes as well as the pixels; any sufficiently large value
    yields identical cuts, the formula is pinned only so serialized networks
    are bit-stable.
    """

    penalty_scale: int = 100
    contrast_sigma: int = 50
    terminal_capacity: int | None = None

    def __post_init__(self) -> None:
        if self.penalty_scale <= 0 or self.contrast_sigma <= 0:
            raise ValueError("penalty_scale and contrast_sigma must be positive")
        if self.terminal_capacity is not None and self.terminal_capacity <= 0:
            raise ValueError("terminal_capacity must be positive")

    def terminal_capacity_for(self, pixel_count: int) -> int:
        if self.terminal_capacity is not None:
            return self.terminal_capacity
        return self.penalty_scale * (pixel_count + 2) ** 2


def boundary_penalty(ip: int, iq: int, cfg: SegConfig) -> int:
    """Separation penalty for neighboring pixels with intensities ip, iq.

    floor(scale * exp(-(ip - iq)^2 / (2 sigma^2))): large for similar
    intensities, rounded down to keep capacities integral.
    """
    diff = ip - iq
    return math.floor(
        cfg.penalty_scale * math.exp(-(diff * diff) / (2 * cfg.contrast_sigma**2))
    )


@dataclass(frozen=True)
class SeedSet:
    """Object/background seed pixels, each grown into a Euclidean ball."""

    object_seeds: tuple[Pixel, ...]
    background_seeds: tuple[Pixel, ...]
    radius: int = 0

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError("radius must be non-negative")
        object.__setattr__(self, "object_seeds", tuple((int(x), int(y)) for x, y in self.object_seeds))
        object.__setattr__(self, "background_seeds", tuple((int(x), int(y)) for x, y in self.background_seeds))

    def expand(self, width: int, height: int) -> tuple[frozenset[Pixel], frozenset[Pixel]]:
        """Grow each seed into the in-bounds pixels within Euclidean radius.

        Rejects out-of-bounds seed centers and overlapping object/background
        balls.
        """

        def ball(seeds: tuple[Pixel, ...]) -> frozenset[Pixel]:
            out = set()
            r, r2 = self.radius, self.radius * self.radius
            for cx, cy in seeds:
                if not (0 <= cx < width and 0 <= cy < height):
                    raise ValueError(f"seed ({cx}, {cy}) out of bounds")
                for dy in range(-r, r + 1):
                    for dx in range(-r, r + 1):
                        if dx * dx + dy * dy > r2:
                            continue
                        x, y = cx + dx, cy + dy
                        if 0 <= x < width and 0 <= y < height:
                            out.add((x, y))
            return frozenset(out)

        obj = ball(self.object_seeds)
        bg = ball(self.background_seeds)
        if obj & bg:
            raise ValueError("object and background seed balls overlap")
        return obj, bg


def parse_seed_file(text: str) -> SeedSet:
    """Seed file: optional `radius r` header, then `O x y` / `B x y` lines."""
    radius = 0
    obj: list[Pixel] = []
    bg: list[Pixel] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "radius" and len(parts) == 2:
                radius = int(parts[1])
            elif parts[0] in ("O", "B") and len(parts) == 3:
                pixel = (int(parts[1]), int(parts[2]))
                (obj if parts[0] == "O" else bg).append(pixel)
            else:
                raise ValueError("unrecognized line")
        except ValueError as exc:
            raise ValueError(f"seed file line {lineno}: {exc}") from None
    return SeedSet(tuple(obj), tuple(bg), radius)


def format_seed_file(seeds: SeedSet) -> str:
    lines = [f"radius {seeds.radius}"]
    lines += [f"O {x} {y}" for x, y in seeds.object_seeds]
    lines += [f"B {x} {y}" for x, y in seeds.background_seeds]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SegmentationGraph:
    """A built segmentation network plus the pixel/node correspondence.

    Pixel (x, y) is node y*width + x; the source is node width*height and
    the sink the node after it.
    """

    net: FlowNetwork
    width: int
    height: int
    object_nodes: frozenset[int]
    background_nodes: frozenset[int]

    def node_of(self, x: int, y: int) -> int:
        return y * self.width + x

    def pixel_of(self, node: int) -> Pixel:
        return node % self.width, node // self.width


def build_segmentation_network(
    img: GrayImage, seeds: SeedSet, cfg: SegConfig | None = None
) -> SegmentationGraph:
    """Pixel grid network: penalty arcs both ways per 4-neighbor pair, then
    source-to-object and background-to-sink arcs at the huge capacity."""
    cfg = cfg or SegConfig()
    w, h = img.width, img.height
    obj, bg = seeds.expand(w, h)
    if not obj or not bg:
        raise ValueError("need at least one object and one background seed")
    big = cfg.terminal_capacity_for(w * h)
    source, sink = w * h, w * h + 1
    pixels = img.pixels

    edges: list[tuple[int, int, int]] = []
    for y in range(h):
        for x in range(w):
            p = y * w + x
            for dx, dy in ((1, 0), (0, 1)):
                nx, ny = x + dx, y + dy
                if nx >= w or ny >= h:
                    continue
                q = ny * w + nx
                penalty = boundary_penalty(pixels[p], pixels[q], cfg)
                edges.append((p, q, penalty))
                edges.append((q, p, penalty))
    obj_nodes = frozenset(y * w + x for x, y in obj)
    bg_nodes = frozenset(y * w + x for x, y in bg)
    for p in sorted(obj_nodes):
        edges.append((source, p, big))
    for p in sorted(bg_nodes):
        edges.append((p, sink, big))
    net = FlowNetwork(w * h + 2, source, sink, tuple(edges))
    return SegmentationGraph(net, w, h, obj_nodes, bg_nodes)


def extract_segmentation(seg: SegmentationGraph, cut: frozenset[int]) -> Mask:
    """Label mask from the source side of a minimum cut (True = object).

    A severed terminal arc would show up as a seed on the wrong side, which
    means the terminal capacity was too small; that is rejected loudly.
    """
    missing = [p for p in seg.object_nodes if p not in cut]
    stray = [p for p in seg.background_nodes if p in cut]
    if missing or stray:
        raise ValueError(
            "cut severs a terminal arc (terminal capacity too small): "
            f"object nodes outside {missing[:4]}, background nodes inside {stray[:4]}"
        )
    return tuple(p in cut for p in range(seg.width * seg.height))


def render_overlay(
    img: GrayImage, mask: Sequence[bool], marker: tuple[int, int, int] = (255, 0, 0)
) -> RgbImage:
    """Gray copy of the image with label-boundary pixels painted.

    A pixel is painted when any of its 4-neighbors carries the opposite
    label.
    """
    w, h = img.width, img.height
    if len(mask) != w * h:
        raise ValueError("mask size does not match image")
    out: list[tuple[int, int, int]] = []
    for y in range(h):
        for x in range(w):
            p = y * w + x
            boundary = False
            for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nx, ny = x + dx, y + dy
                if 0 <= nx < w and 0 <= ny < h and mask[ny * w + nx] != mask[p]:
                    boundary = True
                    break
            if boundary:
                out.append(marker)
            else:
                v = img.pixels[p]
                out.append((v, v, v))
    return RgbImage(w, h, tuple(out))
