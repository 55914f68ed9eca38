"""False-colour disparity rendering.

The palette is a piecewise-linear ramp over ``t = d / d_max`` in [0, 1]
through these stops (RGB, 8 bit):

    0.000  (  0,   0, 143)
    0.125  (  0,   0, 255)
    0.375  (  0, 255, 255)
    0.625  (255, 255,   0)
    0.875  (255,   0,   0)
    1.000  (128,   0,   0)

Channels are interpolated linearly and rounded half up. Disparities outside
[0, d_max] saturate at the end colours; invalid or non-finite pixels are
black.
"""

from __future__ import annotations

import numpy as np

from crossband.image import DisparityMap, ValidityMask

RAMP_STOPS = np.array([0.0, 0.125, 0.375, 0.625, 0.875, 1.0])
RAMP_COLORS = np.array([
    [0, 0, 143],
    [0, 0, 255],
    [0, 255, 255],
    [255, 255, 0],
    [255, 0, 0],
    [128, 0, 0],
], dtype=np.float64)


def ramp(t) -> np.ndarray:
    t = np.clip(np.asarray(t, dtype=np.float64), 0.0, 1.0)
    rgb = np.stack([np.interp(t, RAMP_STOPS, RAMP_COLORS[:, i]) for i in range(3)], axis=-1)
    return np.floor(rgb + 0.5).astype(np.uint8)


def render_disparity(disp: DisparityMap, mask: ValidityMask | None, d_max: float) -> np.ndarray:
    """``(H, W, 3)`` uint8 colour raster."""
    v = disp.values.astype(np.float64)
    valid = np.isfinite(v)
    if mask is not None:
        valid &= mask.flags
    t = np.where(valid, v, 0.0) / d_max if d_max > 0 else np.zeros_like(v)
    out = ramp(t)
    out[~valid] = 0
    return out
