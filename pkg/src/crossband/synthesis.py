"""Spectral band synthesis: eleven surrogate filter channels from RGB planes.

Weighted channels (BG, BR, GR, BGR) are normalized convex combinations of
the RGB planes; the intersection/union channels (B∩G, G∩R, B∪G, G∪R) take
the pixel-wise min/max of two scaled planes. One 17-vector of weights is
drawn per stereo pair and applied identically to both views, so the two
views simulate the same physical filter.

Randomness uses numpy's PCG64 bit generator, seeded per pair from
``SeedSequence([seed, pair_index])``. PCG64 and SeedSequence have fixed,
documented algorithms, so corpora are reproducible across platforms and
independent of the order in which pairs are processed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from crossband.errors import DegenerateWeights, DimensionMismatch, MissingChannel
from crossband.image import (
    RGB,
    ColorStereoPair,
    SpectralImage,
    StereoDataset,
    StereoPair,
    SynthChannelId as C,
    as_array,
)

N_WEIGHTS = 17
R_MIN = 0.1
R_MAX = 1.0

# Which weights and source planes each synthesized channel consumes.
# Every index 0..16 is used by exactly one channel.
CHANNEL_RULES: dict[C, tuple[str, tuple[str, ...], tuple[int, ...]]] = {
    C.R: ("pass", ("R",), ()),
    C.G: ("pass", ("G",), ()),
    C.B: ("pass", ("B",), ()),
    C.BG: ("mean", ("B", "G"), (0, 1)),
    C.BR: ("mean", ("B", "R"), (2, 3)),
    C.GR: ("mean", ("G", "R"), (4, 5)),
    C.BGR: ("mean", ("B", "G", "R"), (6, 7, 8)),
    C.B_AND_G: ("min", ("B", "G"), (9, 10)),
    C.G_AND_R: ("min", ("G", "R"), (11, 12)),
    C.B_OR_G: ("max", ("B", "G"), (13, 14)),
    C.G_OR_R: ("max", ("G", "R"), (15, 16)),
}


@dataclass(frozen=True)
class SynthesisParams:
    r: tuple[float, ...]

    def __post_init__(self):
        r = tuple(float(x) for x in self.r)
        if len(r) != N_WEIGHTS:
            raise ValueError(f"expected {N_WEIGHTS} weights, got {len(r)}")
        if any(not (0.0 < x <= R_MAX) for x in r):
            raise DegenerateWeights(f"weights must lie in (0, 1]: {r}")
        object.__setattr__(self, "r", r)

    def weights_for(self, channel: C) -> tuple[float, ...]:
        return tuple(self.r[i] for i in CHANNEL_RULES[channel][2])


def pair_rng(seed: int, pair_index: int) -> np.random.Generator:
    """Generator for one pair, derived from (seed, index) only."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, pair_index])))


def sample_params(rng: np.random.Generator) -> SynthesisParams:
    """Draw 17 independent weights from U[0.1, 1.0)."""
    return SynthesisParams(tuple(rng.uniform(R_MIN, R_MAX, N_WEIGHTS)))


def _same_shape(*arrays):
    shapes = {a.shape for a in arrays}
    if len(shapes) != 1:
        raise DimensionMismatch(f"planes differ in size: {sorted(shapes)}")


def synth_passthrough(planes: Mapping[str, SpectralImage], channel) -> SpectralImage:
    name = channel.value if isinstance(channel, C) else str(channel)
    if name not in RGB or name not in planes:
        raise MissingChannel(f"{name!r} is not an available RGB plane")
    return SpectralImage(planes[name].pixels, name)


def synth_weighted_pair(a, b, w_a: float, w_b: float, tag: str | None = None) -> SpectralImage:
    a, b = as_array(a), as_array(b)
    _same_shape(a, b)
    if w_a + w_b <= 0:
        raise DegenerateWeights(f"weights sum to {w_a + w_b}")
    return SpectralImage((w_a * a + w_b * b) / (w_a + w_b), tag)


def synth_weighted_triple(i_b, i_g, i_r, w6: float, w7: float, w8: float,
                          tag: str | None = None) -> SpectralImage:
    i_b, i_g, i_r = as_array(i_b), as_array(i_g), as_array(i_r)
    _same_shape(i_b, i_g, i_r)
    total = w6 + w7 + w8
    if total <= 0:
        raise DegenerateWeights(f"weights sum to {total}")
    return SpectralImage((w6 * i_b + w7 * i_g + w8 * i_r) / total, tag)


def synth_min_pair(a, b, w_a: float, w_b: float, tag: str | None = None) -> SpectralImage:
    a, b = as_array(a), as_array(b)
    _same_shape(a, b)
    return SpectralImage(np.minimum(w_a * a, w_b * b), tag)


def synth_max_pair(a, b, w_a: float, w_b: float, tag: str | None = None) -> SpectralImage:
    a, b = as_array(a), as_array(b)
    _same_shape(a, b)
    return SpectralImage(np.maximum(w_a * a, w_b * b), tag)


def synthesize_channel(planes: Mapping[str, SpectralImage], channel: C,
                       params: SynthesisParams) -> SpectralImage:
    op, sources, _ = CHANNEL_RULES[channel]
    if op == "pass":
        return synth_passthrough(planes, channel)
    missing = [s for s in sources if s not in planes]
    if missing:
        raise MissingChannel(f"channel {channel.label} needs planes {missing}")
    srcs = [planes[s] for s in sources]
    w = params.weights_for(channel)
    tag = channel.value
    if op == "mean" and len(srcs) == 3:
        return synth_weighted_triple(*srcs, *w, tag=tag)
    if op == "mean":
        return synth_weighted_pair(*srcs, *w, tag=tag)
    if op == "min":
        return synth_min_pair(*srcs, *w, tag=tag)
    return synth_max_pair(*srcs, *w, tag=tag)


def synthesize_all(pair: ColorStereoPair, params: SynthesisParams) -> dict[C, StereoPair]:
    """All eleven channels for both views, sharing one weight draw."""
    for ch in RGB:
        if ch not in pair.left:
            raise MissingChannel(f"pair {pair.id!r} lacks the {ch} plane")
    return {
        c: StereoPair(synthesize_channel(pair.left, c, params),
                      synthesize_channel(pair.right, c, params), pair.id)
        for c in C
    }


@dataclass(frozen=True)
class TrainingEntry:
    pair_id: int | str
    view: str
    channel: C
    image: SpectralImage


@dataclass
class TrainingSet:
    seed: int
    entries: list[TrainingEntry] = field(default_factory=list)
    # one weight draw per pair, keyed by pair id
    manifest: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def manifest_rows(self) -> list[tuple]:
        """``(pair_id, channel_id, *weights)`` rows in corpus order."""
        return [(pid, c.value, *params.weights_for(c))
                for pid, params in self.manifest.items() for c in C]

    def manifest_text(self) -> str:
        lines = ["# pair_id channel_id weights (indices per channel: "
                 + "; ".join(f"{c.value}={list(CHANNEL_RULES[c][2])}" for c in C if CHANNEL_RULES[c][2])
                 + ")"]
        for pid, cid, *w in self.manifest_rows():
            lines.append(" ".join([str(pid), cid, *(repr(x) for x in w)]))
        return "\n".join(lines) + "\n"


def build_training_set(dataset: StereoDataset, seed: int,
                       transform: Callable[[SpectralImage], SpectralImage] | None = None
                       ) -> TrainingSet:
    """Synthesize and color-agnostic-transform every channel of every view.

    ``transform`` defaults to :func:`crossband.agnostic.color_agnostic`.
    """
    if transform is None:
        from crossband.agnostic import color_agnostic as transform

    ts = TrainingSet(seed=seed)
    for k, pair in enumerate(dataset.pairs):
        params = sample_params(pair_rng(seed, k))
        ts.manifest[pair.id] = params
        for c, sp in synthesize_all(pair, params).items():
            for view, img in (("left", sp.left), ("right", sp.right)):
                ts.entries.append(TrainingEntry(pair.id, view, c, transform(img).with_tag(c.value)))
    return ts
