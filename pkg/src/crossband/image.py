"""Raster and dataset data model shared by every other module.

Images are immutable: the backing numpy arrays are flagged read-only on
construction, so instances can be handed to worker processes or threads
without copying defensively.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from crossband.errors import (
    DimensionMismatch,
    MissingChannel,
    NonFiniteValue,
    ShapeMismatch,
    ValueOutOfRange,
)

RGB = ("R", "G", "B")


class SynthChannelId(enum.Enum):
    """The eleven synthesized channels, in canonical order.

    Values are ASCII ids safe for file names; :attr:`label` gives the
    set-notation name.
    """

    R = "R"
    G = "G"
    B = "B"
    BG = "BG"
    BR = "BR"
    GR = "GR"
    BGR = "BGR"
    B_AND_G = "BandG"
    G_AND_R = "GandR"
    B_OR_G = "BorG"
    G_OR_R = "GorR"

    @property
    def label(self) -> str:
        return _LABELS.get(self, self.value)

    @classmethod
    def parse(cls, text: str) -> "SynthChannelId":
        for member in cls:
            if text in (member.value, member.label, member.name):
                return member
        raise MissingChannel(f"unknown synthesized channel {text!r}")


_LABELS = {
    SynthChannelId.B_AND_G: "B∩G",
    SynthChannelId.G_AND_R: "G∩R",
    SynthChannelId.B_OR_G: "B∪G",
    SynthChannelId.G_OR_R: "G∪R",
}


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class SpectralImage:
    """Single-channel raster of intensities, nominally in [0, 1].

    ``pixels`` is a read-only ``(height, width)`` float64 array.
    """

    pixels: np.ndarray
    channel_tag: str | None = None

    def __post_init__(self):
        a = np.asarray(self.pixels, dtype=np.float64)
        if a.ndim != 2:
            raise ShapeMismatch(f"expected a 2-D raster, got shape {a.shape}")
        if a is self.pixels and not a.flags.writeable:
            return
        object.__setattr__(self, "pixels", _frozen(a.copy()))

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    def with_tag(self, tag: str | None) -> "SpectralImage":
        return SpectralImage(self.pixels, tag)

    def __repr__(self):
        return f"SpectralImage({self.width}x{self.height}, tag={self.channel_tag!r})"


# Output of the color-agnostic transform; same representation, values in [0, 1].
AgnosticImage = SpectralImage


def make_image(width: int, height: int, pixels, mode: str = "strict",
               channel_tag: str | None = None) -> SpectralImage:
    """Build a :class:`SpectralImage` from a flat row-major (or 2-D) array.

    ``strict`` rejects values outside [0, 1]; ``clamp`` clips them. Both
    reject NaN and infinities.
    """
    if mode not in ("strict", "clamp"):
        raise ValueError(f"mode must be 'strict' or 'clamp', got {mode!r}")
    a = np.asarray(pixels, dtype=np.float64)
    if a.size != width * height:
        raise ShapeMismatch(f"{a.size} values for a {width}x{height} raster")
    a = a.reshape(height, width)
    if not np.all(np.isfinite(a)):
        raise NonFiniteValue("raster contains NaN or infinite values")
    if mode == "strict":
        if a.size and (a.min() < 0.0 or a.max() > 1.0):
            raise ValueOutOfRange(
                f"values span [{a.min()}, {a.max()}], outside [0, 1]")
    else:
        a = np.clip(a, 0.0, 1.0)
    return SpectralImage(a, channel_tag)


def as_array(img) -> np.ndarray:
    """Return the float64 2-D array behind an image or array-like."""
    if isinstance(img, SpectralImage):
        return img.pixels
    a = np.asarray(img, dtype=np.float64)
    if a.ndim != 2:
        raise ShapeMismatch(f"expected a 2-D raster, got shape {a.shape}")
    return a


@dataclass(frozen=True, eq=False)
class DisparityMap:
    """Disparities in pixels, left-reference convention.

    The right-image correspondent of left pixel ``(m, n)`` is ``(m, n - d)``.
    Values are float32, the native precision of PFM files.
    """

    values: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.values, dtype=np.float32)
        if a.ndim != 2:
            raise ShapeMismatch(f"expected a 2-D map, got shape {a.shape}")
        if a is self.values and not a.flags.writeable:
            return
        object.__setattr__(self, "values", _frozen(a.copy()))

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


@dataclass(frozen=True, eq=False)
class ValidityMask:
    flags: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.flags, dtype=bool)
        if a.ndim != 2:
            raise ShapeMismatch(f"expected a 2-D mask, got shape {a.shape}")
        if a is self.flags and not a.flags.writeable:
            return
        object.__setattr__(self, "flags", _frozen(a.copy()))

    @property
    def shape(self) -> tuple[int, int]:
        return self.flags.shape

    @property
    def count(self) -> int:
        return int(self.flags.sum())

    @classmethod
    def all_valid(cls, shape) -> "ValidityMask":
        return cls(np.ones(shape, dtype=bool))


def ground_truth_mask(gt: DisparityMap) -> ValidityMask:
    """Mask out ground-truth pixels that are non-finite or exactly zero."""
    v = gt.values
    return ValidityMask(np.isfinite(v) & (v != 0))


@dataclass(frozen=True, eq=False)
class StereoPair:
    """Rectified single-channel stereo pair."""

    left: SpectralImage
    right: SpectralImage
    id: int | str = 0

    def __post_init__(self):
        if self.left.shape != self.right.shape:
            raise DimensionMismatch(
                f"left is {self.left.width}x{self.left.height}, "
                f"right is {self.right.width}x{self.right.height}")


def validate_pair(left: SpectralImage, right: SpectralImage, id: int | str = 0) -> StereoPair:
    return StereoPair(left, right, id)


@dataclass(frozen=True, eq=False)
class ColorStereoPair:
    """Stereo pair carrying one plane per channel for each view.

    ``gt_left``/``gt_right`` hold ground-truth disparities where known.
    """

    left: Mapping[str, SpectralImage]
    right: Mapping[str, SpectralImage]
    id: int | str = 0
    gt_left: DisparityMap | None = None
    gt_right: DisparityMap | None = None

    def __post_init__(self):
        if set(self.left) != set(self.right):
            raise MissingChannel(
                f"views carry different channels: {sorted(self.left)} vs {sorted(self.right)}")
        shapes = {im.shape for im in (*self.left.values(), *self.right.values())}
        if len(shapes) > 1:
            raise DimensionMismatch(f"planes of pair {self.id!r} differ in size: {sorted(shapes)}")
        for gt in (self.gt_left, self.gt_right):
            if gt is not None and shapes and gt.shape not in shapes:
                raise DimensionMismatch(f"ground truth {gt.shape} does not match planes {shapes}")

    @property
    def channels(self) -> tuple[str, ...]:
        return tuple(self.left)

    @property
    def shape(self) -> tuple[int, int]:
        return next(iter(self.left.values())).shape

    def channel_pair(self, source: str, target: str) -> StereoPair:
        """Left view through ``source``, right view through ``target``."""
        try:
            left, right = self.left[source], self.right[target]
        except KeyError as exc:
            raise MissingChannel(f"pair {self.id!r} has no channel {exc.args[0]!r}") from None
        return StereoPair(left, right, self.id)

    @classmethod
    def from_rgb_arrays(cls, left: np.ndarray, right: np.ndarray, id: int | str = 0,
                        gt_left: DisparityMap | None = None,
                        gt_right: DisparityMap | None = None) -> "ColorStereoPair":
        """Split two ``(H, W, 3)`` RGB arrays in [0, 1] into planes."""
        def split(a):
            a = np.asarray(a, dtype=np.float64)
            if a.ndim != 3 or a.shape[2] != 3:
                raise ShapeMismatch(f"expected (H, W, 3) raster, got {a.shape}")
            return {c: SpectralImage(a[:, :, i], c) for i, c in enumerate(RGB)}
        return cls(split(left), split(right), id, gt_left, gt_right)


@dataclass(frozen=True, eq=False)
class StereoDataset:
    pairs: tuple[ColorStereoPair, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        channel_sets = {frozenset(p.channels) for p in self.pairs}
        if len(channel_sets) > 1:
            raise MissingChannel("pairs in a dataset must share one channel set")

    @property
    def K(self) -> int:
        return len(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    @property
    def has_ground_truth(self) -> bool:
        return all(p.gt_left is not None for p in self.pairs)
