"""Pure numpy implementations of the hot kernels.

These mirror ``_ckernels.pyx`` operation for operation so both backends
produce bitwise-identical results.
"""

import numpy as np

NAME = "python"


def census_descriptors(img, window):
    """Bit k is set iff neighbor k (row-major, center skipped) < center."""
    img = np.ascontiguousarray(img, dtype=np.float64)
    h = window // 2
    H, W = img.shape
    p = np.pad(img, h, mode="edge")
    desc = np.zeros((H, W), dtype=np.uint64)
    k = 0
    for i in range(window):
        for j in range(window):
            if i == h and j == h:
                continue
            bit = (p[i:i + H, j:j + W] < img).astype(np.uint64)
            desc |= bit << np.uint64(k)
            k += 1
    return desc


def census_volume(desc_l, desc_r, dmax):
    """Hamming distances for d <= n; entries with d > n are left at 0."""
    H, W = desc_l.shape
    vol = np.zeros((H, W, dmax + 1), dtype=np.float64)
    for d in range(dmax + 1):
        x = np.bitwise_xor(desc_l[:, d:], desc_r[:, :W - d])
        vol[:, d:, d] = np.bitwise_count(x)
    return vol


def _scan_rows(vol, out, dx, p1, p2):
    """Aggregate one path that steps one row down per pixel, dx columns across.

    ``vol`` rows are visited top to bottom; callers flip/transposed views to
    obtain the other directions.
    """
    H, W, D = vol.shape
    prev = vol[0].copy()
    out[0] += prev
    for y in range(1, H):
        c = vol[y]
        # pred[x] = prev[x - dx] where in frame
        pred = np.zeros((W, D))
        if dx == 0:
            pred[:] = prev
        elif dx > 0:
            pred[dx:] = prev[:W - dx]
        else:
            pred[:W + dx] = prev[-dx:]
        has_pred = np.ones(W, dtype=bool)
        if dx > 0:
            has_pred[:dx] = False
        elif dx < 0:
            has_pred[W + dx:] = False

        pmin = pred.min(axis=1)
        best = pred.copy()
        np.minimum(best[:, 1:], pred[:, :-1] + p1, out=best[:, 1:])
        np.minimum(best[:, :-1], pred[:, 1:] + p1, out=best[:, :-1])
        np.minimum(best, (pmin + p2)[:, None], out=best)
        cur = (c + best) - pmin[:, None]
        cur[~has_pred] = c[~has_pred]
        out[y] += cur
        prev = cur


def sgm_path(vol, out, dy, dx, p1, p2):
    """Accumulate the path with predecessor at (y - dy, x - dx) into ``out``."""
    if dy == 0:
        # horizontal path: transpose so it walks down rows
        v = vol.transpose(1, 0, 2)
        o = out.transpose(1, 0, 2)
        dy, dx = dx, 0
    else:
        v, o = vol, out
    if dy < 0:
        v, o = v[::-1], o[::-1]
    _scan_rows(v, o, dx, p1, p2)


def sgm_aggregate(vol, p1, p2, directions):
    vol = np.ascontiguousarray(vol, dtype=np.float64)
    out = np.zeros_like(vol)
    for dy, dx in directions:
        sgm_path(vol, out, dy, dx, float(p1), float(p2))
    return out
