"""Dataset directory ingestion.

A dataset root holds one sub-directory per scene (processed in sorted
order), or is itself a single scene. Each scene provides a left and a right
image and, optionally, left ground truth:

    root/
      Art/view1.ppm  Art/view5.ppm  Art/disp1.pgm
      Books/...

This is the Middlebury 2005/2006 naming after converting PNG to PNM, e.g.
``for f in */*.png; do convert "$f" "${f%.png}.ppm"; done`` (use ``.pgm``
for the disparity images). File names are configurable. A ``{c}`` in an
image name selects one single-band file per channel (``left_{c}.pgm`` ->
``left_R.pgm``, ``left_G.pgm``, ``left_B.pgm``).

Integer ground truth (PGM) is divided by ``gt_divisor``; Middlebury
releases scale disparities differently per resolution, so the divisor is
always given explicitly. PFM ground truth is read as-is. Zero and
non-finite disparities mark unknown pixels.

Every referenced file is checked and parsed before anything is returned.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from crossband.errors import LayoutError, MissingChannel
from crossband.image import RGB, ColorStereoPair, DisparityMap, SpectralImage, StereoDataset
from crossband.io.pfm import read_pfm_disparity, read_pfm_planes
from crossband.io.pnm import read_pnm, read_pnm_raw


@dataclass(frozen=True)
class DatasetLayout:
    root: str
    left_name: str = "view1.ppm"
    right_name: str = "view5.ppm"
    gt_left_name: str | None = "disp1.pgm"
    gt_divisor: float = 1.0

    @classmethod
    def from_config(cls, root, cfg) -> "DatasetLayout":
        gt = cfg.gt_left_name if cfg.gt_left_name.lower() != "none" else None
        return cls(str(root), cfg.left_name, cfg.right_name, gt, cfg.gt_divisor)

    def scene_dirs(self) -> list[Path]:
        root = Path(self.root)
        if not root.is_dir():
            raise LayoutError(f"dataset root {root} is not a directory")
        if self._has_images(root):
            return [root]
        scenes = sorted(p for p in root.iterdir() if p.is_dir())
        if not scenes:
            raise LayoutError(f"no scenes found under {root}")
        return scenes

    def _has_images(self, d: Path) -> bool:
        name = self.left_name.replace("{c}", RGB[0])
        return (d / name).exists()

    def files(self, scene: Path) -> list[Path]:
        out = []
        for name in (self.left_name, self.right_name):
            if "{c}" in name:
                out += [scene / name.replace("{c}", c) for c in RGB]
            else:
                out.append(scene / name)
        if self.gt_left_name:
            out.append(scene / self.gt_left_name)
        return out


def read_planes(path) -> tuple[SpectralImage, ...]:
    if str(path).lower().endswith(".pfm"):
        return read_pfm_planes(path)
    return read_pnm(path)


def _load_view(scene: Path, name: str) -> dict[str, SpectralImage]:
    if "{c}" in name:
        planes = {}
        for c in RGB:
            p = read_planes(scene / name.replace("{c}", c))
            if len(p) != 1:
                raise MissingChannel(f"{name} for band {c} must be single-channel")
            planes[c] = p[0].with_tag(c)
        return planes
    p = read_planes(scene / name)
    if len(p) != 3:
        raise MissingChannel(f"{scene / name} is not an RGB raster")
    return {c: im for c, im in zip(RGB, p)}


def read_disparity(path, divisor: float = 1.0) -> DisparityMap:
    if str(path).lower().endswith(".pfm"):
        return read_pfm_disparity(path)
    raw, _ = read_pnm_raw(path)
    if raw.ndim != 2:
        raise MissingChannel(f"{path}: disparity must be a single-channel raster")
    return DisparityMap(raw.astype(np.float64) / divisor)


def load_dataset(layout: DatasetLayout) -> StereoDataset:
    scenes = layout.scene_dirs()
    missing = [str(f) for s in scenes for f in layout.files(s) if not f.is_file()]
    if missing:
        raise LayoutError("missing dataset files: " + ", ".join(missing))
    pairs = []
    for scene in scenes:
        gt = None
        if layout.gt_left_name:
            gt = read_disparity(scene / layout.gt_left_name, layout.gt_divisor)
        pairs.append(ColorStereoPair(
            _load_view(scene, layout.left_name), _load_view(scene, layout.right_name),
            id=scene.name or os.fspath(scene), gt_left=gt))
    return StereoDataset(tuple(pairs))
