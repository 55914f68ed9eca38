"""End-to-end matcher: preprocess -> cost volume -> SGM -> WTA (-> LR check)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy import ndimage

from crossband.agnostic import WindowConfig, color_agnostic
from crossband.image import DisparityMap, SpectralImage, StereoPair, ValidityMask
from crossband.matching.costs import COST_FUNCTIONS, DEFAULT_WINDOWS
from crossband.matching.sgm import SgmParams, sgm_aggregate
from crossband.matching.wta import left_right_check, wta_disparity

PREPROCESS_MODES = ("none", "agnostic")


class MatchResult(NamedTuple):
    disparity: DisparityMap
    mask: ValidityMask


@dataclass(frozen=True)
class MatcherConfig:
    cost: str = "census"
    preprocess: str = "none"
    sgm: SgmParams = field(default_factory=SgmParams)
    dmax: int = 64
    window: int | None = None
    subpixel: bool = False
    lr_check: bool = False
    lr_tol: float = 1.0
    median_post: bool = False
    agnostic_window: int = 3

    def __post_init__(self):
        if self.cost not in COST_FUNCTIONS:
            raise ValueError(f"cost must be one of {sorted(COST_FUNCTIONS)}, got {self.cost!r}")
        if self.preprocess not in PREPROCESS_MODES:
            raise ValueError(f"preprocess must be one of {PREPROCESS_MODES}, got {self.preprocess!r}")

    def __call__(self, pair: StereoPair) -> MatchResult:
        return match_pair(pair, self)


def _disparity(left: np.ndarray, right: np.ndarray, cfg: MatcherConfig) -> DisparityMap:
    window = cfg.window or DEFAULT_WINDOWS[cfg.cost]
    vol = COST_FUNCTIONS[cfg.cost](left, right, window=window, dmax=cfg.dmax)
    d = wta_disparity(sgm_aggregate(vol, cfg.sgm), subpixel=cfg.subpixel)
    if cfg.median_post:
        d = DisparityMap(ndimage.median_filter(d.values, size=3, mode="nearest"))
    return d


def match_pair(pair: StereoPair, config: MatcherConfig | None = None, **overrides) -> MatchResult:
    """Left-referenced disparity for a rectified pair.

    With ``lr_check`` the mirrored pair (both views flipped and swapped) is
    matched as well to obtain right-referenced disparities, and pixels that
    fail the consistency test are cleared in the mask. The disparity map
    itself is never altered by the check.
    """
    cfg = config or MatcherConfig()
    if overrides:
        cfg = MatcherConfig(**{**cfg.__dict__, **overrides})
    left, right = pair.left, pair.right
    if cfg.preprocess == "agnostic":
        wc = WindowConfig(cfg.agnostic_window)
        left, right = color_agnostic(left, wc), color_agnostic(right, wc)
    la, ra = left.pixels, right.pixels

    d_left = _disparity(la, ra, cfg)
    if not cfg.lr_check:
        return MatchResult(d_left, ValidityMask.all_valid(d_left.shape))
    mirrored = _disparity(ra[:, ::-1], la[:, ::-1], cfg)
    d_right = DisparityMap(mirrored.values[:, ::-1])
    return MatchResult(d_left, left_right_check(d_left, d_right, cfg.lr_tol))


def match_images(left, right, config: MatcherConfig | None = None, **overrides) -> MatchResult:
    """Convenience wrapper taking two rasters (arrays or images)."""
    to_img = lambda x: x if isinstance(x, SpectralImage) else SpectralImage(x)
    return match_pair(StereoPair(to_img(left), to_img(right)), config, **overrides)
