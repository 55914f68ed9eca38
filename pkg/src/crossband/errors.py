"""Exception types raised across the toolkit.

Every error derives from :class:`StereoError`, so callers (and the CLI) can
catch one base class and still report the precise kind by class name.
"""


class StereoError(Exception):
    """Base class for all toolkit errors."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class ShapeMismatch(StereoError, ValueError):
    pass


class ValueOutOfRange(StereoError, ValueError):
    pass


class NonFiniteValue(StereoError, ValueError):
    pass


class DimensionMismatch(StereoError, ValueError):
    pass


class MissingChannel(StereoError, KeyError):
    pass


class DegenerateWeights(StereoError, ValueError):
    pass


class DisparityRangeTooLarge(StereoError, ValueError):
    pass


class EmptyMask(StereoError, ValueError):
    pass


class MissingGroundTruth(StereoError, ValueError):
    pass


class MalformedHeader(StereoError, ValueError):
    pass


class TruncatedPayload(StereoError, ValueError):
    pass


class UnsupportedVariant(StereoError, ValueError):
    pass


class UnsupportedMaxval(StereoError, ValueError):
    pass


class ConfigError(StereoError, ValueError):
    pass


class LayoutError(StereoError, FileNotFoundError):
    pass
