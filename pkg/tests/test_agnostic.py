import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

import oracles
from crossband.agnostic import (
    SIGMA_EPS,
    StructuralImage,
    WindowConfig,
    clip_shift,
    color_agnostic,
    local_stats,
    median_filter,
    structural_transform,
)

PATCH = np.arange(9, dtype=float).reshape(3, 3) / 10   # 0.0 ... 0.8


def test_window_config():
    assert WindowConfig().s == 3 and WindowConfig(7).s_h == 3
    for bad in (1, 2, 4):
        with pytest.raises(ValueError):
            WindowConfig(bad)


def test_median_constant_and_impulse():
    np.testing.assert_array_equal(median_filter(np.full((4, 5), 0.3)).pixels, 0.3)
    a = np.zeros((5, 5))
    a[2, 2] = 1.0
    out = median_filter(a).pixels
    assert out[2, 2] == oracles.median_filter(a)[2, 2] == 0.0


def test_median_commutes_with_affine(rng):
    a = rng.random((9, 11)) * 0.5
    lhs = median_filter(0.8 * a + 0.1).pixels
    np.testing.assert_allclose(lhs, 0.8 * median_filter(a).pixels + 0.1, atol=1e-15)


@pytest.mark.parametrize("s", [3, 5])
def test_median_matches_oracle(rng, s):
    for shape in [(1, 1), (2, 7), (13, 6), (32, 32)]:
        a = rng.random(shape)
        np.testing.assert_array_equal(median_filter(a, WindowConfig(s)).pixels, oracles.median_filter(a, s))


def test_local_stats_hand_case():
    st_ = local_stats(PATCH)
    assert st_.mean[1, 1] == pytest.approx(0.4, abs=1e-15)
    # sum of squared deviations 0.60 over s^2 - 1 = 8
    assert st_.variance[1, 1] == pytest.approx(0.075, abs=1e-15)


def test_local_stats_constant_and_scaling(rng):
    st_ = local_stats(np.full((4, 4), 0.6))
    np.testing.assert_allclose(st_.mean, 0.6, atol=1e-15)
    np.testing.assert_allclose(st_.variance, 0.0, atol=1e-30)
    a = rng.random((7, 8))
    s1, s2 = local_stats(a), local_stats(0.3 * a)
    np.testing.assert_allclose(s2.mean, 0.3 * s1.mean, atol=1e-15)
    np.testing.assert_allclose(s2.variance, 0.09 * s1.variance, atol=1e-15)


@pytest.mark.parametrize("s", [3, 5])
def test_local_stats_matches_oracle(rng, s):
    for shape in [(1, 3), (5, 5), (17, 9)]:
        a = rng.random(shape)
        mean, var = oracles.local_stats(a, s)
        got = local_stats(a, WindowConfig(s))
        np.testing.assert_allclose(got.mean, mean, rtol=0, atol=1e-12)
        np.testing.assert_allclose(got.variance, var, rtol=0, atol=1e-12)


def test_structural_transform_examples(rng):
    c = np.full((3, 3), 0.2)
    assert structural_transform(c, local_stats(c)).undefined.all()

    s = structural_transform(PATCH, local_stats(PATCH))
    assert s.values[1, 1] == pytest.approx(0.0, abs=1e-14)

    a = rng.random((6, 6))
    s1 = structural_transform(a, local_stats(a))
    s2 = structural_transform(0.5 * a, local_stats(0.5 * a))
    np.testing.assert_allclose(s2.values, s1.values, atol=1e-12)


def test_clip_shift_examples():
    vals = np.array([[0.0, 3.0, -3.0, 7.0]])
    und = np.array([[False, False, False, True]])
    out = clip_shift(StructuralImage(vals, und)).pixels
    np.testing.assert_array_equal(out, [[0.5, 1.0, 0.0, 0.0]])


def test_color_agnostic_constant_is_zero():
    out = color_agnostic(np.full((6, 7), 0.42)).pixels
    assert out.tobytes() == np.zeros((6, 7)).tobytes()


def test_checkerboard_hand_oracle():
    board = (np.indices((8, 8)).sum(axis=0) % 2).astype(float)
    out = color_agnostic(board).pixels
    # The 3x3 median keeps the pattern (5 of 9 samples agree with the
    # center). Around a black center the window holds four 1s and five 0s:
    # mu = 4/9, var = (4 (5/9)^2 + 5 (4/9)^2) / 8 = 5/18.
    sigma = math.sqrt(5 / 18)
    black = 0.5 + ((0 - 4 / 9) / sigma) / 2
    white = 0.5 + ((1 - 5 / 9) / sigma) / 2
    assert board[3, 3] == 0 and board[3, 4] == 1
    assert out[3, 3] == pytest.approx(black, abs=1e-12)
    assert out[3, 4] == pytest.approx(white, abs=1e-12)
    assert black == pytest.approx(0.0784, abs=1e-4)


def test_color_agnostic_matches_oracle(rng):
    for shape in [(4, 4), (11, 7), (32, 32)]:
        a = rng.random(shape)
        np.testing.assert_allclose(color_agnostic(a).pixels, oracles.color_agnostic(a), atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 12), st.integers(1, 12)),
              elements=st.floats(-1e3, 1e3, allow_nan=False)))
def test_output_range(a):
    out = color_agnostic(a).pixels
    assert out.min() >= 0.0 and out.max() <= 1.0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.25, 1.0), st.floats(0.0, 0.2))
def test_positive_affine_invariance(seed, a, b):
    img = np.random.default_rng(seed).random((10, 12)) * 0.7
    x = color_agnostic(img)
    y = color_agnostic(a * img + b)
    both = (np.sqrt(local_stats(median_filter(img)).variance) > SIGMA_EPS) & \
           (np.sqrt(local_stats(median_filter(a * img + b)).variance) > SIGMA_EPS)
    np.testing.assert_allclose(y.pixels[both], x.pixels[both], atol=1e-6)


def test_tag_preserved():
    from crossband.image import SpectralImage
    assert color_agnostic(SpectralImage(np.zeros((3, 3)), "BP400")).channel_tag == "BP400"
