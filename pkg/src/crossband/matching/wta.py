from __future__ import annotations

import numpy as np

from crossband.errors import DimensionMismatch
from crossband.image import DisparityMap, ValidityMask
from crossband.matching.costs import CostVolume


def wta_disparity(volume: CostVolume, subpixel: bool = False) -> DisparityMap:
    """Winner-take-all over the disparity axis; ties go to the smaller disparity.

    With ``subpixel`` the integer minimum is refined by the vertex of the
    parabola through its two neighbours. Minima at either end of the range,
    or with a non-convex neighbourhood, are left at the integer value.
    """
    c = volume.costs
    d = np.argmin(c, axis=2)
    out = d.astype(np.float64)
    if subpixel and c.shape[2] >= 3:
        inner = (d > 0) & (d < c.shape[2] - 1)
        di = np.clip(d, 1, c.shape[2] - 2)
        take = lambda off: np.take_along_axis(c, (di + off)[..., None], axis=2)[..., 0]
        cm, c0, cp = take(-1), take(0), take(1)
        denom = cm - 2.0 * c0 + cp
        ok = inner & (denom > 0)
        offset = np.divide(cm - cp, 2.0 * denom, out=np.zeros_like(denom), where=ok)
        out = out + np.clip(offset, -0.5, 0.5)
    return DisparityMap(out)


def _half_up(x):
    return np.floor(x + 0.5).astype(np.int64)


def left_right_check(d_left: DisparityMap, d_right: DisparityMap, tol: float = 1.0) -> ValidityMask:
    """Pixel ``(m, n)`` survives iff its right correspondent ``(m, n - round(dL))``
    is in frame and reports a disparity within ``tol`` of ``dL``.

    ``d_right`` is right-referenced: the left correspondent of right pixel
    ``(m, n)`` is ``(m, n + dR)``.
    """
    if d_left.shape != d_right.shape:
        raise DimensionMismatch(f"{d_left.shape} vs {d_right.shape}")
    dl = d_left.values.astype(np.float64)
    dr = d_right.values.astype(np.float64)
    H, W = dl.shape
    cols = np.arange(W)[None, :] - _half_up(dl)
    inside = (cols >= 0) & (cols < W) & np.isfinite(dl)
    rows = np.broadcast_to(np.arange(H)[:, None], (H, W))
    back = dr[rows, np.clip(cols, 0, W - 1)]
    return ValidityMask(inside & (np.abs(dl - back) <= tol))
