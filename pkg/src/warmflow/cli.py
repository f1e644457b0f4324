"""Command-line surface: solve, bench, gen-grid, segment, learn."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .augment import Subroutine, max_flow, min_cut
from .bench import load_config, records_to_csv, run_sequence
from .core import zero_flow
from .formats import FormatError, parse_dimacs, parse_flow, write_dimacs, write_flow
from .gridgen import dlocal_walk, make_separable_grid
from .images import encode_ppm, parse_pgm
from .learn import InstanceDistribution, empirical_risk, median_erm, sample_instances
from .segment import (
    SegConfig,
    build_segmentation_network,
    extract_segmentation,
    parse_seed_file,
    render_overlay,
)
from .warmstart import warm_start_solve


def _add_subroutine_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--subroutine",
        choices=[s.value for s in Subroutine],
        default="ek",
        help="augmenting-path subroutine (default: ek)",
    )


def _cmd_solve(args: argparse.Namespace) -> int:
    if args.format != "dimacs":
        raise FormatError(f"unsupported format {args.format!r}")
    net = parse_dimacs(Path(args.network).read_text())
    sub = Subroutine(args.subroutine)
    if args.prediction is None:
        _, report = max_flow(net, zero_flow(net), sub)
        print(f"value {report.value}")
    else:
        prediction = parse_flow(Path(args.prediction).read_text())
        _, report = warm_start_solve(net, prediction, sub)
        print(f"value {report.optimal_value}")
        print(
            f"clamped {report.clamp_total}, "
            f"projection paths {report.projection_stats.path_count}, "
            f"augmenting paths {report.augment_stats.path_count}"
        )
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    instances, subroutine, modes = load_config(Path(args.config))
    if args.subroutine is not None:
        subroutine = Subroutine(args.subroutine)
    records = run_sequence(instances, subroutine, modes)
    csv_text = records_to_csv(records)
    if args.csv:
        Path(args.csv).write_text(csv_text)
        print(f"wrote {len(records)} records to {args.csv}")
    else:
        sys.stdout.write(csv_text)
    return 0


def _cmd_gen_grid(args: argparse.Namespace) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    specs = dlocal_walk(args.side, args.frames, args.stride)
    files = []
    for i, spec in enumerate(specs):
        name = f"grid{args.side}_frame{i:03d}.max"
        (out_dir / name).write_text(write_dimacs(make_separable_grid(spec)))
        files.append(name)
    config = {"kind": "dimacs", "files": files, "subroutine": "ek"}
    (out_dir / "bench.json").write_text(json.dumps(config, indent=2) + "\n")
    print(f"wrote {len(files)} networks and bench.json to {out_dir}")
    return 0


def _cmd_segment(args: argparse.Namespace) -> int:
    img = parse_pgm(Path(args.image).read_bytes())
    seeds = parse_seed_file(Path(args.seeds).read_text())
    cfg = SegConfig(penalty_scale=args.penalty_scale, contrast_sigma=args.sigma)
    seg = build_segmentation_network(img, seeds, cfg)
    sub = Subroutine(args.subroutine)
    flow, report = max_flow(seg.net, zero_flow(seg.net), sub)
    cut = min_cut(seg.net, flow)
    mask = extract_segmentation(seg, cut)
    print(f"value {report.value}, object pixels {sum(mask)}")
    if args.out:
        overlay = render_overlay(img, mask)
        Path(args.out).write_bytes(encode_ppm(overlay))
        print(f"wrote overlay to {args.out}")
    return 0


def _cmd_learn(args: argparse.Namespace) -> int:
    base = parse_dimacs(Path(args.network).read_text())
    dist = InstanceDistribution(base, law=args.law, spread=args.spread, seed=args.seed)
    samples = sample_instances(dist, args.samples)
    prediction = median_erm(samples)
    num, den = empirical_risk(prediction, samples)
    Path(args.out).write_text(write_flow(prediction))
    print(f"samples {samples.size}, empirical risk {num}/{den}, wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="warmflow",
        description="Max-flow solving with warm starts from predicted flows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one network, cold or warm")
    p.add_argument("network", help="DIMACS max-flow file")
    p.add_argument("--format", default="dimacs", help="input format (dimacs)")
    p.add_argument("--prediction", help="flow file used to warm-start")
    _add_subroutine_flag(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("bench", help="run a cold/warm sequence benchmark")
    p.add_argument("--config", required=True, help="JSON benchmark config")
    p.add_argument("--csv", help="write records to this CSV file")
    p.add_argument(
        "--subroutine", choices=[s.value for s in Subroutine], default=None
    )
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("gen-grid", help="generate a local-transition grid sweep")
    p.add_argument("--side", type=int, required=True)
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--stride", type=int, default=None, help="terminal attachment spacing")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_gen_grid)

    p = sub.add_parser("segment", help="segment one graymap image")
    p.add_argument("image", help="PGM image (P2 or P5)")
    p.add_argument("seeds", help="seed file (radius/O/B lines)")
    p.add_argument("--out", help="write a PPM overlay here")
    p.add_argument("--penalty-scale", type=int, default=100, dest="penalty_scale")
    p.add_argument("--sigma", type=int, default=50)
    _add_subroutine_flag(p)
    p.set_defaults(func=_cmd_segment)

    p = sub.add_parser("learn", help="sample instances and fit a median prediction")
    p.add_argument("network", help="DIMACS base network (capacity upper bounds)")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--law", choices=["uniform", "perturb"], default="uniform")
    p.add_argument("--spread", type=int, default=0, help="perturbation half-width")
    p.add_argument("--out", required=True, help="output flow file")
    p.set_defaults(func=_cmd_learn)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
