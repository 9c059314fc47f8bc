"""
Contrast enhancement as intensity lookup tables.

- Classic HE:  S_k = round((L-1) · cdf(k))
- BBHE:        split at X_m = floor(mean); equalize [0, X_m] and
               [X_m+1, L-1] independently with their own CDFs

Rounding is half-away-from-zero everywhere.
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from imaging.gray_image import GrayImage
from ops.histogram import Histogram, compute_histogram, normalize, cumulative
from utils.errors import EmptyRegion, LevelMismatch, InvalidParams, UnknownMethod

logger = logging.getLogger(__name__)


class EqualizationMethod(str, Enum):
    HE = "he"
    BBHE = "bbhe"

    @classmethod
    def parse(cls, name: str) -> "EqualizationMethod":
        try:
            return cls(name)
        except ValueError:
            raise UnknownMethod(
                f"unknown equalization method {name!r}; expected he or bbhe"
            ) from None


def round_half_away(values) -> np.ndarray:
    """Round to nearest integer, halves away from zero (exact for binary floats)."""
    values = np.asarray(values, dtype=np.float64)
    magnitude = np.abs(values)
    whole = np.floor(magnitude)
    rounded = whole + (magnitude - whole >= 0.5)
    return (np.sign(values) * rounded).astype(np.int64)


# ==================================================
# Types
# ==================================================

@dataclass(frozen=True, eq=False)
class IntensityMap:
    lut: np.ndarray

    def __post_init__(self):
        lut = np.array(self.lut, dtype=np.int64)
        if lut.ndim != 1 or lut.size < 2:
            raise InvalidParams("intensity map needs one entry per level")
        if (lut < 0).any() or (lut > lut.size - 1).any():
            raise InvalidParams(f"intensity map entries must lie in [0, {lut.size - 1}]")
        lut.setflags(write=False)
        object.__setattr__(self, "lut", lut)

    @classmethod
    def identity(cls, levels: int) -> "IntensityMap":
        return cls(np.arange(levels))

    @property
    def levels(self) -> int:
        return int(self.lut.size)

    def is_monotone(self) -> bool:
        return bool((np.diff(self.lut) >= 0).all())

    def __eq__(self, other):
        if not isinstance(other, IntensityMap):
            return NotImplemented
        return np.array_equal(self.lut, other.lut)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class BbheDecomposition:
    """
    lower_map[i] is the output for input level i (0 <= i <= X_m);
    upper_map[j] is the output for input level X_m + 1 + j.
    """

    mean_level: int
    levels: int
    lower_map: np.ndarray
    upper_map: np.ndarray
    lower_count: int
    upper_count: int

    def composite(self) -> IntensityMap:
        """f_L ∪ f_U as one LUT over all L levels."""
        lut = np.concatenate([self.lower_map, self.upper_map])
        if lut.size != self.levels or self.lower_map.size != self.mean_level + 1:
            raise LevelMismatch(
                f"sub-maps cover {self.lower_map.size} + {self.upper_map.size} levels, "
                f"expected {self.mean_level + 1} + {self.levels - self.mean_level - 1}"
            )
        return IntensityMap(lut)


# ==================================================
# Classic HE
# ==================================================

def he_map(hist: Histogram) -> IntensityMap:
    if hist.total == 0:
        raise EmptyRegion("cannot equalize an empty histogram")
    cdf = cumulative(normalize(hist)).cdf
    top = hist.levels - 1
    return IntensityMap(np.clip(round_half_away(top * cdf), 0, top))


def apply_map(image: GrayImage, intensity_map: IntensityMap) -> GrayImage:
    if intensity_map.levels != image.levels:
        raise LevelMismatch(
            f"map has {intensity_map.levels} entries, image has {image.levels} levels"
        )
    return GrayImage(
        image.width,
        image.height,
        image.levels,
        intensity_map.lut[image.pixels],
    )


def equalize_he(image: GrayImage) -> GrayImage:
    return apply_map(image, he_map(compute_histogram(image)))


# ==================================================
# BBHE
# ==================================================

def bbhe_mean_level(image: GrayImage) -> int:
    """X_m = floor(mean), computed with integer division so it is exact."""
    if image.count == 0:
        raise EmptyRegion("image contains no pixels")
    return int(image.flat().astype(np.int64).sum()) // image.count


def _sub_equalize(counts: np.ndarray, low: int, high: int) -> np.ndarray:
    """
    f(x) = low + (high - low) · c(x) over the levels low..high, where c
    is the running sum of counts / n. An empty sub-image maps to itself.
    """
    n = int(counts.sum())
    if n == 0:
        return np.arange(low, high + 1, dtype=np.int64)
    c = np.cumsum(counts / n)
    mapped = round_half_away(low + (high - low) * c)
    return np.clip(mapped, low, high)


def bbhe_decompose(image: GrayImage) -> BbheDecomposition:
    hist = compute_histogram(image)
    x_m = bbhe_mean_level(image)
    top = image.levels - 1

    lower_counts = hist.bins[: x_m + 1]
    upper_counts = hist.bins[x_m + 1:]

    lower_map = _sub_equalize(lower_counts, 0, x_m)
    if x_m < top:
        upper_map = _sub_equalize(upper_counts, x_m + 1, top)
    else:
        upper_map = np.empty(0, dtype=np.int64)

    decomposition = BbheDecomposition(
        mean_level=x_m,
        levels=image.levels,
        lower_map=lower_map,
        upper_map=upper_map,
        lower_count=int(lower_counts.sum()),
        upper_count=int(upper_counts.sum()),
    )
    logger.info(
        "✂️  BBHE split at X_m=%d (n_L=%d, n_U=%d)",
        x_m, decomposition.lower_count, decomposition.upper_count,
    )
    return decomposition


def equalize_bbhe(image: GrayImage) -> GrayImage:
    return apply_map(image, bbhe_decompose(image).composite())


def equalize(image: GrayImage, method) -> GrayImage:
    method = EqualizationMethod.parse(method) if isinstance(method, str) else method
    if method is EqualizationMethod.HE:
        return equalize_he(image)
    return equalize_bbhe(image)
