"""Color-agnostic transform: median denoise, local standardization, clip.

All windows use replicate (clamp-to-edge) padding, so no intensity that is
absent from the image enters any statistic. Arithmetic is float64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy import ndimage

from crossband.image import SpectralImage, as_array

# threshold on the local standard deviation below which a pixel is flat
SIGMA_EPS = 1e-6


@dataclass(frozen=True)
class WindowConfig:
    s: int = 3

    def __post_init__(self):
        if self.s < 3 or self.s % 2 == 0:
            raise ValueError(f"window side must be odd and >= 3, got {self.s}")

    @property
    def s_h(self) -> int:
        return self.s // 2


DEFAULT_WINDOW = WindowConfig()


@dataclass(frozen=True, eq=False)
class StructuralStats:
    mean: np.ndarray
    variance: np.ndarray


@dataclass(frozen=True, eq=False)
class StructuralImage:
    values: np.ndarray
    # True where sigma <= SIGMA_EPS and the structural value is undefined
    undefined: np.ndarray


def _tag(img):
    return img.channel_tag if isinstance(img, SpectralImage) else None


def median_filter(img, cfg: WindowConfig = DEFAULT_WINDOW) -> SpectralImage:
    a = as_array(img)
    return SpectralImage(ndimage.median_filter(a, size=cfg.s, mode="nearest"), _tag(img))


def _windows(a: np.ndarray, cfg: WindowConfig) -> np.ndarray:
    p = np.pad(a, cfg.s_h, mode="edge")
    return sliding_window_view(p, (cfg.s, cfg.s))


def local_stats(img, cfg: WindowConfig = DEFAULT_WINDOW) -> StructuralStats:
    """Windowed mean (1/s²) and unbiased variance (1/(s²-1)), two-pass."""
    a = as_array(img)
    win = _windows(a, cfg)
    n = cfg.s * cfg.s
    mean = win.sum(axis=(2, 3)) / n
    dev = win - mean[:, :, None, None]
    var = (dev * dev).sum(axis=(2, 3)) / (n - 1)
    return StructuralStats(mean, var)


def structural_transform(img, stats: StructuralStats) -> StructuralImage:
    a = as_array(img)
    sigma = np.sqrt(stats.variance)
    undefined = ~(sigma > SIGMA_EPS)
    safe = np.where(undefined, 1.0, sigma)
    values = np.where(undefined, 0.0, (a - stats.mean) / safe)
    return StructuralImage(values, undefined)


def clip_shift(s: StructuralImage, tag: str | None = None) -> SpectralImage:
    out = np.clip(0.5 + s.values / 2.0, 0.0, 1.0)
    out[s.undefined] = 0.0
    return SpectralImage(out, tag)


def color_agnostic(img, cfg: WindowConfig = DEFAULT_WINDOW) -> SpectralImage:
    """Full chain used for both synthesized training images and recordings."""
    den = median_filter(img, cfg)
    return clip_shift(structural_transform(den, local_stats(den, cfg)), _tag(img))
