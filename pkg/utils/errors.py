"""
Error hierarchy for the histogram toolkit.

Every error carries the CLI exit code of its family; library code only
raises, main.py is the single place that turns errors into exit codes.
"""

from config.settings import (
    EXIT_IO,
    EXIT_INVALID,
    EXIT_UNKNOWN,
    EXIT_ALGORITHM,
)


class HistogramToolkitError(Exception):
    exit_code = EXIT_INVALID


# --------------------------------------------------
# I/O (exit 2)
# --------------------------------------------------

class ImageIOError(HistogramToolkitError):
    exit_code = EXIT_IO


class PgmFormatError(ImageIOError):
    pass


class MalformedHeader(PgmFormatError):
    pass


class TruncatedData(PgmFormatError):
    pass


class UnsupportedMaxval(PgmFormatError):
    pass


class CorruptSample(PgmFormatError):
    pass


# --------------------------------------------------
# Invalid geometry / parameters (exit 3)
# --------------------------------------------------

class InvalidImage(HistogramToolkitError):
    exit_code = EXIT_INVALID


class InvalidRoi(HistogramToolkitError):
    exit_code = EXIT_INVALID


class RoiOutOfBounds(InvalidRoi):
    pass


class DegenerateRegion(HistogramToolkitError):
    """Region has a single pixel; the unbiased estimators divide by zero."""
    exit_code = EXIT_INVALID


class ThresholdOutOfRange(HistogramToolkitError):
    exit_code = EXIT_INVALID


class InvalidParams(HistogramToolkitError):
    exit_code = EXIT_INVALID


class InvalidNoise(InvalidParams):
    pass


class LevelMismatch(HistogramToolkitError):
    exit_code = EXIT_INVALID


class DegenerateField(HistogramToolkitError):
    """Sampled field is zero everywhere: the shape is too small for the grid."""
    exit_code = EXIT_INVALID


class InvalidDistribution(HistogramToolkitError):
    exit_code = EXIT_INVALID


# --------------------------------------------------
# Unknown method / shape (exit 4)
# --------------------------------------------------

class UnknownMethod(HistogramToolkitError):
    exit_code = EXIT_UNKNOWN


class UnknownShape(HistogramToolkitError):
    exit_code = EXIT_UNKNOWN


# --------------------------------------------------
# Algorithmic failure (exit 5)
# --------------------------------------------------

class EmptyRegion(HistogramToolkitError):
    exit_code = EXIT_ALGORITHM


class ZeroMean(HistogramToolkitError):
    exit_code = EXIT_ALGORITHM


class InvalidNumerator(HistogramToolkitError):
    exit_code = EXIT_ALGORITHM


class NotBimodal(HistogramToolkitError):
    exit_code = EXIT_ALGORITHM
