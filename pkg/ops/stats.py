"""
Region statistics: mean, unbiased std, CV, mode, median, min/max, SNR.

Both printed mean formulas (pixel sum and histogram-weighted sum) and
both std forms (definitional and computational) are implemented as
separate paths; region_statistics uses the pixel paths.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from config.settings import DEFAULT_SNR_KIND, REPORT_ROWS
from imaging.gray_image import GrayImage, RegionOfInterest, region_pixels
from ops.histogram import Histogram, compute_histogram
from utils.errors import (
    EmptyRegion,
    DegenerateRegion,
    ZeroMean,
    InvalidNumerator,
    InvalidNoise,
    UnknownMethod,
)


class SnrKind(str, Enum):
    RANGE = "range"
    MEAN = "mean"
    SIGNAL = "signal"

    @classmethod
    def parse(cls, name: str) -> "SnrKind":
        try:
            return cls(name)
        except ValueError:
            raise UnknownMethod(
                f"unknown SNR kind {name!r}; expected one of "
                f"{', '.join(k.value for k in cls)}"
            ) from None


@dataclass(frozen=True)
class NoiseModel:
    s_n: float

    def __post_init__(self):
        if not (self.s_n > 0 and math.isfinite(self.s_n)):
            raise InvalidNoise(f"noise standard deviation must be > 0, got {self.s_n}")


@dataclass(frozen=True)
class RegionStatistics:
    mean: float
    std: float
    min: int
    max: int
    median: int
    mode: int
    cv: float
    count: int
    snr_db: Optional[float] = None

    def rows(self) -> Tuple[Tuple[str, object], ...]:
        """Report rows in order; SNR is None when no noise model was given."""
        values = (
            self.mean,
            self.std,
            self.min,
            self.median,
            self.max,
            self.mode,
            self.snr_db,
        )
        return tuple(zip(REPORT_ROWS, values))


# --------------------------------------------------
# Helpers
# --------------------------------------------------

def _nonempty(pixels: np.ndarray) -> np.ndarray:
    if pixels.size == 0:
        raise EmptyRegion("region contains no pixels")
    return pixels.astype(np.int64)


def _require_total(hist: Histogram) -> int:
    if hist.total == 0:
        raise EmptyRegion("histogram is empty")
    return hist.total


# --------------------------------------------------
# Mean
# --------------------------------------------------

def sample_mean(image: GrayImage, roi: Optional[RegionOfInterest] = None) -> float:
    pixels = _nonempty(region_pixels(image, roi))
    return int(pixels.sum()) / pixels.size


def sample_mean_from_histogram(hist: Histogram) -> float:
    total = _require_total(hist)
    levels = np.arange(hist.levels, dtype=np.int64)
    return int((levels * hist.bins).sum()) / total


# --------------------------------------------------
# Standard deviation
# --------------------------------------------------

def sample_std(image: GrayImage, roi: Optional[RegionOfInterest] = None) -> float:
    pixels = _nonempty(region_pixels(image, roi))
    count = pixels.size
    if count < 2:
        raise DegenerateRegion("standard deviation needs at least two pixels")

    mean = int(pixels.sum()) / count
    deviations = pixels - mean
    return math.sqrt(float(np.sum(deviations * deviations)) / (count - 1))


def sample_std_from_histogram(hist: Histogram) -> float:
    """
    sqrt((Σ x² h[x] - Λ m²) / (Λ - 1)), numerator evaluated exactly.
    """
    total = _require_total(hist)
    if total < 2:
        raise DegenerateRegion("standard deviation needs at least two pixels")

    levels = np.arange(hist.levels, dtype=np.int64)
    sum_x = int((levels * hist.bins).sum())
    sum_x2 = int((levels * levels * hist.bins).sum())
    mean = Fraction(sum_x, total)
    numerator = sum_x2 - total * mean * mean
    return math.sqrt(float(numerator / (total - 1)))


# --------------------------------------------------
# CV, mode, median
# --------------------------------------------------

def coefficient_of_variation(mean: float, std: float) -> float:
    """(s_x / m_x) · 100, in percent."""
    if mean <= 0:
        raise ZeroMean("coefficient of variation is undefined for a zero mean")
    return std / mean * 100.0


def mode_level(hist: Histogram) -> int:
    _require_total(hist)
    # argmax returns the first maximum: ties go to the lowest level
    return int(np.argmax(hist.bins))


def median_level(hist: Histogram) -> int:
    """Lower median: smallest x with Σ_{k<=x} h[k] >= Λ/2."""
    total = _require_total(hist)
    running = np.cumsum(hist.bins)
    return int(np.argmax(2 * running >= total))


# --------------------------------------------------
# SNR
# --------------------------------------------------

def snr_db(
    kind: SnrKind,
    noise: NoiseModel,
    *,
    x_min: Optional[float] = None,
    x_max: Optional[float] = None,
    mean: Optional[float] = None,
    std: Optional[float] = None,
) -> float:
    kind = SnrKind.parse(kind)

    if kind is SnrKind.RANGE:
        if x_min is None or x_max is None:
            raise InvalidNumerator("range SNR needs x_min and x_max")
        numerator = x_max - x_min
    elif kind is SnrKind.MEAN:
        if mean is None:
            raise InvalidNumerator("mean SNR needs the sample mean")
        numerator = mean
    else:
        if std is None:
            raise InvalidNumerator("signal SNR needs the sample std")
        numerator = std

    if numerator <= 0:
        raise InvalidNumerator(
            f"{kind.value} SNR numerator must be positive, got {numerator}"
        )
    return 20.0 * math.log10(numerator / noise.s_n)


def absolute_mean_brightness_error(original: GrayImage, processed: GrayImage) -> float:
    """|mean(processed) - mean(original)|."""
    return abs(sample_mean(processed) - sample_mean(original))


# --------------------------------------------------
# Aggregate
# --------------------------------------------------

def region_statistics(
    image: GrayImage,
    roi: Optional[RegionOfInterest] = None,
    noise: Optional[NoiseModel] = None,
    snr_kind: SnrKind = SnrKind(DEFAULT_SNR_KIND),
) -> RegionStatistics:
    hist = compute_histogram(image, roi)
    if hist.total < 2:
        raise DegenerateRegion("region statistics need at least two pixels")

    mean = sample_mean(image, roi)
    std = sample_std(image, roi)
    occupied = np.flatnonzero(hist.bins)
    x_min, x_max = int(occupied[0]), int(occupied[-1])

    snr = None
    if noise is not None:
        snr = snr_db(snr_kind, noise, x_min=x_min, x_max=x_max, mean=mean, std=std)

    return RegionStatistics(
        mean=mean,
        std=std,
        min=x_min,
        max=x_max,
        median=median_level(hist),
        mode=mode_level(hist),
        cv=coefficient_of_variation(mean, std),
        count=hist.total,
        snr_db=snr,
    )
