import sys
from pathlib import Path

import numpy as np
import pytest
from scipy import ndimage

sys.path.insert(0, str(Path(__file__).parent))

from crossband.image import ColorStereoPair, DisparityMap, StereoDataset  # noqa: E402
from crossband.kernels import available_backends, load_backend  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=available_backends())
def backend(request):
    return load_backend(request.param)


def textured(rng, shape, sigma=1.0):
    """Smoothed noise stretched to [0, 1]."""
    a = ndimage.gaussian_filter(rng.random(shape), sigma)
    a -= a.min()
    return a / a.max()


def shifted_pair(rng, height, width, k, sigma=1.0):
    """Left/right crops of one texture so that right[m, n - k] == left[m, n]."""
    base = textured(rng, (height, width + k), sigma)
    return base[:, :width], base[:, k:]


def color_dataset(rng, K, height=24, width=40, shift=3, with_gt=True):
    """K colour pairs; each view's R, G, B planes are different textures
    of the same scene shifted by ``shift`` pixels, ground truth = shift."""
    pairs = []
    for k in range(K):
        planes_l, planes_r = [], []
        for _ in range(3):
            l, r = shifted_pair(rng, height, width, shift)
            planes_l.append(l)
            planes_r.append(r)
        gt = DisparityMap(np.full((height, width), float(shift))) if with_gt else None
        pairs.append(ColorStereoPair.from_rgb_arrays(
            np.stack(planes_l, -1), np.stack(planes_r, -1), id=k, gt_left=gt))
    return StereoDataset(tuple(pairs))


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL/SKIP line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed", "skipped"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and rep.when == "call":
                lines.append((props["criterion"], outcome))
    if not lines:
        return
    label = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}
    terminalreporter.section("acceptance criteria")
    for (num, text), outcome in sorted(set(lines)):
        terminalreporter.write_line(f"{label[outcome]}  criterion {num:>2}: {text}")
