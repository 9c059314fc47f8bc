"""
Histogram construction: raw counts, normalized PMF, cumulative CDF.

Summation order is ascending level index everywhere, so results are
bit-reproducible.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from config.settings import DISTRIBUTION_TOLERANCE
from imaging.gray_image import GrayImage, RegionOfInterest, region_pixels
from utils.errors import EmptyRegion, InvalidDistribution


def _readonly(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


# ==================================================
# Types
# ==================================================

@dataclass(frozen=True, eq=False)
class Histogram:
    """bins[x] = occurrences of intensity x; total = Λ."""

    bins: np.ndarray
    total: int = field(init=False)

    def __post_init__(self):
        bins = np.asarray(self.bins)
        if bins.ndim != 1 or bins.size < 2:
            raise InvalidDistribution("histogram needs at least two levels")
        if bins.dtype.kind == "f" and not np.array_equal(bins, np.floor(bins)):
            raise InvalidDistribution("histogram counts must be integers")
        if (bins < 0).any():
            raise InvalidDistribution("histogram counts must be non-negative")

        bins = _readonly(bins, np.int64)
        object.__setattr__(self, "bins", bins)
        object.__setattr__(self, "total", int(bins.sum()))

    @classmethod
    def from_counts(cls, counts) -> "Histogram":
        return cls(np.asarray(counts))

    @property
    def levels(self) -> int:
        return int(self.bins.size)

    def __eq__(self, other):
        if not isinstance(other, Histogram):
            return NotImplemented
        return np.array_equal(self.bins, other.bins)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class NormalizedHistogram:
    """p[x] = h[x] / Λ, the empirical PMF of brightness."""

    probs: np.ndarray

    def __post_init__(self):
        probs = _readonly(self.probs, np.float64)
        if probs.ndim != 1 or (probs < 0).any():
            raise InvalidDistribution("probabilities must be a non-negative vector")
        if abs(float(probs.sum()) - 1.0) > DISTRIBUTION_TOLERANCE:
            raise InvalidDistribution("probabilities must sum to 1")
        object.__setattr__(self, "probs", probs)

    @property
    def levels(self) -> int:
        return int(self.probs.size)


@dataclass(frozen=True, eq=False)
class CumulativeDistribution:
    """cdf[x] = Σ_{k<=x} p[k]; non-decreasing, terminal value 1."""

    cdf: np.ndarray

    def __post_init__(self):
        cdf = _readonly(self.cdf, np.float64)
        if cdf.ndim != 1 or cdf.size == 0:
            raise InvalidDistribution("cdf must be a non-empty vector")
        if (np.diff(cdf) < 0).any():
            raise InvalidDistribution("cdf must be non-decreasing")
        if abs(float(cdf[-1]) - 1.0) > DISTRIBUTION_TOLERANCE:
            raise InvalidDistribution("cdf must end at 1")
        object.__setattr__(self, "cdf", cdf)

    @property
    def levels(self) -> int:
        return int(self.cdf.size)


# ==================================================
# Operations
# ==================================================

def compute_histogram(
    image: GrayImage,
    roi: Optional[RegionOfInterest] = None,
) -> Histogram:
    pixels = region_pixels(image, roi)
    return Histogram(np.bincount(pixels, minlength=image.levels))


def normalize(hist: Histogram) -> NormalizedHistogram:
    if hist.total == 0:
        raise EmptyRegion("cannot normalize an empty histogram")
    return NormalizedHistogram(hist.bins / hist.total)


def cumulative(norm: NormalizedHistogram) -> CumulativeDistribution:
    # np.cumsum is a sequential running sum, left to right
    return CumulativeDistribution(np.cumsum(norm.probs))


def histogram_cdf(hist: Histogram) -> CumulativeDistribution:
    return cumulative(normalize(hist))


def uniformity_deviation(cdf: CumulativeDistribution) -> float:
    """
    max_k |cdf[k] - (k+1)/L|: how far a CDF is from the linear trend
    that equalization aims for.
    """
    levels = cdf.levels
    ideal = np.arange(1, levels + 1, dtype=np.float64) / levels
    return float(np.abs(cdf.cdf - ideal).max())
