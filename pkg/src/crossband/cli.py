"""Command-line interface.

    crossband synth DATASET       synthesize + transform a training corpus
    crossband transform IMAGE...  color-agnostic transform of recordings
    crossband match LEFT RIGHT    disparity map for one rectified pair
    crossband eval DATASET        metrics for one matcher configuration
    crossband bench DATASET       metrics for every cost x preprocess x post-filter combination

Settings come from ``--config`` (``key = value`` file) and are overridden by
flags. Every run writes ``run-manifest.txt`` to the output directory; it is
itself a valid config file. Failures print one JSON line
``{"error": <kind>, "message": <text>}`` to stderr and exit with status 1.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from crossband import __version__
from crossband.agnostic import WindowConfig, color_agnostic
from crossband.errors import StereoError, MissingChannel
from crossband.evaluation import MAPPINGS, MetricsReport, evaluate_dataset
from crossband.image import DisparityMap, StereoPair
from crossband.io.config import RunConfig
from crossband.io.dataset import DatasetLayout, load_dataset, read_planes
from crossband.io.pfm import write_pfm
from crossband.io.pnm import encode_pnm_bytes, write_pnm
from crossband.io.render import render_disparity
from crossband.matching import MatcherConfig, SgmParams, match_pair
from crossband.synthesis import build_training_set

FLAG_KEYS = ("seed", "mapping", "cost", "preprocess", "dmax", "p1", "p2", "paths", "window",
             "lr_check", "lr_tol", "subpixel", "median_post", "out", "workers",
             "agnostic_window", "gt_divisor")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--seed", type=int)
    p.add_argument("--mapping", choices=MAPPINGS)
    p.add_argument("--cost", choices=("census", "zncc", "sad", "gt"))
    p.add_argument("--preprocess", choices=("none", "agnostic"))
    p.add_argument("--dmax", type=int)
    p.add_argument("--p1", type=float)
    p.add_argument("--p2", type=float)
    p.add_argument("--paths", type=int, choices=(4, 8))
    p.add_argument("--window", type=int)
    p.add_argument("--agnostic-window", type=int)
    p.add_argument("--lr-check", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--lr-tol", type=float)
    p.add_argument("--subpixel", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--median-post", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--gt-divisor", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crossband", description="Cross-spectral stereo toolkit.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="build the eleven-channel agnostic training corpus")
    p.add_argument("dataset")
    _common(p)

    p = sub.add_parser("transform", help="apply the color-agnostic transform to rasters")
    p.add_argument("images", nargs="+")
    _common(p)

    p = sub.add_parser("match", help="estimate a disparity map for one pair")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--left-channel", choices=tuple("RGB"))
    p.add_argument("--right-channel", choices=tuple("RGB"))
    _common(p)

    p = sub.add_parser("eval", help="evaluate a matcher on a dataset with ground truth")
    p.add_argument("dataset")
    _common(p)

    p = sub.add_parser("bench", help="compare all cost, preprocess and post-filter combinations")
    p.add_argument("dataset")
    _common(p)
    return parser


def resolve_config(args) -> RunConfig:
    cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    changes = {k: getattr(args, k) for k in FLAG_KEYS if getattr(args, k, None) is not None}
    for k in ("left_channel", "right_channel"):
        if getattr(args, k, None) is not None:
            changes[k] = getattr(args, k)
    return cfg.updated(**changes)


def matcher_config(cfg: RunConfig, cost: str | None = None, preprocess: str | None = None,
                   median_post: bool | None = None) -> MatcherConfig:
    return MatcherConfig(
        cost=cost or cfg.cost,
        preprocess=preprocess or cfg.preprocess,
        sgm=SgmParams(cfg.p1, cfg.p2, cfg.paths),
        dmax=cfg.dmax,
        window=cfg.window,
        subpixel=cfg.subpixel,
        lr_check=cfg.lr_check,
        lr_tol=cfg.lr_tol,
        median_post=cfg.median_post if median_post is None else median_post,
        agnostic_window=cfg.agnostic_window,
    )


class GroundTruthMatcher:
    """Returns the ground truth of the pair being matched (pipeline check)."""

    def __init__(self, dataset):
        self._gt = {p.id: p.gt_left for p in dataset.pairs}

    def __call__(self, pair: StereoPair) -> DisparityMap:
        return self._gt[pair.id]


def _write_manifest(out: Path, command: str, cfg: RunConfig, inputs) -> None:
    out.mkdir(parents=True, exist_ok=True)
    head = [f"# crossband {__version__} {command}"] + [f"# input: {i}" for i in inputs]
    (out / "run-manifest.txt").write_text("\n".join(head) + "\n" + cfg.to_text(), encoding="utf-8")


def cmd_synth(args, cfg: RunConfig) -> int:
    out = Path(cfg.out)
    layout = DatasetLayout.from_config(args.dataset, cfg)
    layout = DatasetLayout(layout.root, layout.left_name, layout.right_name, None, layout.gt_divisor)
    dataset = load_dataset(layout)
    wc = WindowConfig(cfg.agnostic_window)
    ts = build_training_set(dataset, cfg.seed, transform=lambda im: color_agnostic(im, wc))
    raster_dir = out / "rasters"
    raster_dir.mkdir(parents=True, exist_ok=True)
    for e in ts.entries:
        write_pnm(e.image, raster_dir / f"{e.pair_id}_{e.view}_{e.channel.value}.pgm", depth=16)
    (out / "manifest.txt").write_text(ts.manifest_text(), encoding="utf-8")
    _write_manifest(out, "synth", cfg, [args.dataset])
    print(f"wrote {len(ts)} rasters for {dataset.K} pairs to {raster_dir}")
    return 0


def cmd_transform(args, cfg: RunConfig) -> int:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    wc = WindowConfig(cfg.agnostic_window)
    n = 0
    for path in args.images:
        planes = read_planes(path)
        stem = Path(path).stem
        for plane in planes:
            suffix = f"_{plane.channel_tag}" if len(planes) > 1 else ""
            write_pnm(color_agnostic(plane, wc), out / f"{stem}{suffix}_agnostic.pgm", depth=16)
            n += 1
    _write_manifest(out, "transform", cfg, args.images)
    print(f"wrote {n} agnostic rasters to {out}")
    return 0


def _pick(planes, channel: str):
    if len(planes) == 1:
        return planes[0]
    for p in planes:
        if p.channel_tag == channel:
            return p
    raise MissingChannel(f"no {channel} plane")


def cmd_match(args, cfg: RunConfig) -> int:
    if cfg.cost == "gt":
        raise StereoError("cost 'gt' needs ground truth and is only valid for eval/bench")
    out = Path(cfg.out)
    left = _pick(read_planes(args.left), cfg.left_channel)
    right = _pick(read_planes(args.right), cfg.right_channel)
    res = match_pair(StereoPair(left, right), matcher_config(cfg))
    out.mkdir(parents=True, exist_ok=True)
    write_pfm(res.disparity, out / "disparity.pfm")
    (out / "disparity.ppm").write_bytes(encode_pnm_bytes(render_disparity(res.disparity, res.mask, cfg.dmax)))
    if cfg.lr_check:
        (out / "mask.pgm").write_bytes(encode_pnm_bytes(res.mask.flags.astype("uint8") * 255))
    _write_manifest(out, "match", cfg, [args.left, args.right])
    print(f"wrote {out / 'disparity.pfm'}")
    return 0


def _evaluate(dataset, cfg: RunConfig, cost: str, preprocess: str, mapping: str,
              median_post: bool | None = None) -> MetricsReport:
    if cost == "gt":
        matcher = GroundTruthMatcher(dataset)
    else:
        matcher = matcher_config(cfg, cost, preprocess, median_post)
    workers = cfg.workers if cost != "gt" else 1
    return evaluate_dataset(dataset, mapping, matcher, workers=workers)


def cmd_eval(args, cfg: RunConfig) -> int:
    out = Path(cfg.out)
    dataset = load_dataset(DatasetLayout.from_config(args.dataset, cfg))
    report = _evaluate(dataset, cfg, cfg.cost, cfg.preprocess, cfg.mapping)
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.csv").write_text(report.to_csv(), encoding="utf-8")
    (out / "report.txt").write_text(report.to_table(), encoding="utf-8")
    _write_manifest(out, "eval", cfg, [args.dataset])
    sys.stdout.write(report.to_table())
    return 0


BENCH_COLUMNS = ("cost", "preprocess", "post", "mapping", "epe", "bmp3", "bmp5", "seconds")


def cmd_bench(args, cfg: RunConfig) -> int:
    """Every cost x preprocess x post-filter x mapping combination.

    The left-right check is not varied: scoring ignores the estimator mask,
    so it cannot change any metric.
    """
    out = Path(cfg.out)
    dataset = load_dataset(DatasetLayout.from_config(args.dataset, cfg))
    rows = []
    for cost in ("census", "zncc", "sad"):
        for pre in ("none", "agnostic"):
            for post in ("none", "median"):
                for mapping in MAPPINGS:
                    t0 = time.perf_counter()
                    r = _evaluate(dataset, cfg, cost, pre, mapping, median_post=post == "median")
                    rows.append((cost, pre, post, mapping, r.epe_mean, r.bmp3, r.bmp5,
                                 time.perf_counter() - t0))
    out.mkdir(parents=True, exist_ok=True)
    lines = [",".join(BENCH_COLUMNS)]
    lines += [f"{c},{p},{q},{m},{e!r},{b3!r},{b5!r},{s:.3f}" for c, p, q, m, e, b3, b5, s in rows]
    (out / "bench.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    table = [f"{'cost':>7} {'prep':>9} {'post':>7} {'map':>4} {'EPE':>8} {'BMP3':>8} {'BMP5':>8} {'sec':>7}"]
    table += [f"{c:>7} {p:>9} {q:>7} {m:>4} {e:8.3f} {100 * b3:7.2f}% {100 * b5:7.2f}% {s:7.2f}"
              for c, p, q, m, e, b3, b5, s in rows]
    (out / "bench.txt").write_text("\n".join(table) + "\n", encoding="utf-8")
    _write_manifest(out, "bench", cfg, [args.dataset])
    print("\n".join(table))
    return 0


COMMANDS = {"synth": cmd_synth, "transform": cmd_transform, "match": cmd_match,
            "eval": cmd_eval, "bench": cmd_bench}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](args, cfg)
    except (StereoError, ValueError, OSError) as exc:
        kind = exc.kind if isinstance(exc, StereoError) else type(exc).__name__
        sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
