"""Cross-spectral stereo toolkit.

Spectral band synthesis from RGB stereo data, a color-agnostic structural
transform, census/ZNCC/SAD + SGM matching, and RGB/CS evaluation.
"""

__version__ = "0.1.0"

from crossband.agnostic import WindowConfig, color_agnostic
from crossband.image import (
    ColorStereoPair,
    DisparityMap,
    SpectralImage,
    StereoDataset,
    StereoPair,
    SynthChannelId,
    ValidityMask,
    make_image,
    validate_pair,
)
from crossband.kernels import BACKEND
from crossband.matching import MatcherConfig, SgmParams, match_pair
from crossband.synthesis import build_training_set, synthesize_all

__all__ = [
    "BACKEND", "ColorStereoPair", "DisparityMap", "MatcherConfig", "SgmParams", "SpectralImage",
    "StereoDataset", "StereoPair", "SynthChannelId", "ValidityMask", "WindowConfig",
    "build_training_set", "color_agnostic", "make_image", "match_pair", "synthesize_all",
    "validate_pair",
]
