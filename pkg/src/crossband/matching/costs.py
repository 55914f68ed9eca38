"""Matching cost volumes: census/Hamming, ZNCC and windowed SAD.

Volumes are ``(height, width, dmax + 1)`` float64 arrays, left-referenced:
``cost[m, n, d]`` compares left pixel ``(m, n)`` with right pixel
``(m, n - d)``. Support windows use replicate padding. Hypotheses whose
correspondent falls off the left edge (``n - d < 0``) take the largest
in-frame cost of that pixel, so borders are neither favoured nor excluded.

ZNCC and SAD are rescaled to ``[0, 24]``, the range of 5x5 census costs,
so one set of SGM penalties serves all three.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from crossband import kernels
from crossband.errors import DimensionMismatch, DisparityRangeTooLarge
from crossband.image import as_array

COST_RANGE = 24.0
CENSUS_WINDOW = 5
PATCH_WINDOW = 9
ZNCC_SIGMA_EPS = 1e-6
# ZNCC cost for a flat patch: middle of the [0, 2] range of 1 - ZNCC
ZNCC_DEGENERATE = 1.0


@dataclass(frozen=True, eq=False)
class CostVolume:
    costs: np.ndarray

    @property
    def height(self) -> int:
        return self.costs.shape[0]

    @property
    def width(self) -> int:
        return self.costs.shape[1]

    @property
    def d_max(self) -> int:
        return self.costs.shape[2] - 1


def _prepare(left, right, dmax, window):
    left, right = as_array(left), as_array(right)
    if left.shape != right.shape:
        raise DimensionMismatch(f"left {left.shape} vs right {right.shape}")
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be odd and positive, got {window}")
    if dmax < 0 or dmax >= left.shape[1]:
        raise DisparityRangeTooLarge(
            f"d_max={dmax} must lie in [0, width) for width {left.shape[1]}")
    return left, right


def fill_out_of_frame(vol: np.ndarray) -> np.ndarray:
    """In place: set ``cost[:, n, d]`` for ``d > n`` to the max over ``d <= n``."""
    D = vol.shape[2]
    for n in range(min(vol.shape[1], D - 1)):
        vol[:, n, n + 1:] = vol[:, n, :n + 1].max(axis=1, keepdims=True)
    return vol


def census_cost_volume(left, right, window: int = CENSUS_WINDOW, dmax: int = 64,
                       backend=None) -> CostVolume:
    """Hamming distance between census descriptors (strict ``<`` comparisons)."""
    left, right = _prepare(left, right, dmax, window)
    if window > 7:
        raise ValueError("census windows above 7x7 do not fit a 64-bit descriptor")
    k = backend or kernels
    dl = k.census_descriptors(left, window)
    dr = k.census_descriptors(right, window)
    return CostVolume(fill_out_of_frame(k.census_volume(dl, dr, dmax)))


def _box_sum(a: np.ndarray, w: int) -> np.ndarray:
    """Sum over every ``w x w`` window of an already padded array (separable)."""
    rows = sliding_window_view(a, w, axis=0).sum(axis=-1)
    return sliding_window_view(rows, w, axis=1).sum(axis=-1)


def zncc_cost_volume(left, right, window: int = PATCH_WINDOW, dmax: int = 64,
                     scaled: bool = True) -> CostVolume:
    """``1 - ZNCC`` per hypothesis, times ``24 / 2`` when ``scaled``."""
    left, right = _prepare(left, right, dmax, window)
    H, W = left.shape
    h = window // 2
    n = window * window
    lp = np.pad(left, h, mode="edge")
    rp = np.pad(right, h, mode="edge")
    sl, sr = _box_sum(lp, window), _box_sum(rp, window)
    var_l = np.maximum(_box_sum(lp * lp, window) - sl * sl / n, 0.0)
    var_r = np.maximum(_box_sum(rp * rp, window) - sr * sr / n, 0.0)
    # sample standard deviation with the 1/(n-1) normalization
    flat_l = np.sqrt(var_l / (n - 1)) <= ZNCC_SIGMA_EPS
    flat_r = np.sqrt(var_r / (n - 1)) <= ZNCC_SIGMA_EPS

    vol = np.zeros((H, W, dmax + 1))
    for d in range(dmax + 1):
        prod = lp[:, d:] * rp[:, :rp.shape[1] - d]
        cov = _box_sum(prod, window) - sl[:, d:] * sr[:, :W - d] / n
        denom = np.sqrt(var_l[:, d:] * var_r[:, :W - d])
        flat = flat_l[:, d:] | flat_r[:, :W - d]
        z = np.divide(cov, denom, out=np.zeros_like(cov), where=~flat)
        cost = 1.0 - np.clip(z, -1.0, 1.0)
        cost[flat] = ZNCC_DEGENERATE
        vol[:, d:, d] = cost
    if scaled:
        vol *= COST_RANGE / 2.0
    return CostVolume(fill_out_of_frame(vol))


def sad_cost_volume(left, right, window: int = PATCH_WINDOW, dmax: int = 64,
                    scaled: bool = True) -> CostVolume:
    """Windowed sum of absolute differences, times ``24 / w²`` when ``scaled``."""
    left, right = _prepare(left, right, dmax, window)
    H, W = left.shape
    h = window // 2
    lp = np.pad(left, h, mode="edge")
    rp = np.pad(right, h, mode="edge")
    vol = np.zeros((H, W, dmax + 1))
    for d in range(dmax + 1):
        diff = np.abs(lp[:, d:] - rp[:, :rp.shape[1] - d])
        vol[:, d:, d] = _box_sum(diff, window)
    if scaled:
        vol *= COST_RANGE / (window * window)
    return CostVolume(fill_out_of_frame(vol))


COST_FUNCTIONS = {
    "census": census_cost_volume,
    "zncc": zncc_cost_volume,
    "sad": sad_cost_volume,
}

DEFAULT_WINDOWS = {"census": CENSUS_WINDOW, "zncc": PATCH_WINDOW, "sad": PATCH_WINDOW}
