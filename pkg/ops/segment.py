"""
Histogram-threshold segmentation.

Valley method:
- smooth the histogram with a centered moving average
  (edge bins average over the neighbourhood that exists)
- take the two highest local maxima p1 < p2
- threshold = lowest level in (p1, p2) with the minimum smoothed count

Foreground is pixel > threshold.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from config.settings import DEFAULT_SMOOTH_WINDOW, MASK_MAXVAL
from imaging.gray_image import GrayImage
from ops.histogram import Histogram
from utils.errors import NotBimodal, ThresholdOutOfRange, InvalidParams, UnknownMethod

logger = logging.getLogger(__name__)


class ThresholdMethod(str, Enum):
    MANUAL = "manual"
    VALLEY = "valley"

    @classmethod
    def parse(cls, name: str) -> "ThresholdMethod":
        try:
            return cls(name)
        except ValueError:
            raise UnknownMethod(
                f"unknown threshold method {name!r}; expected valley or manual"
            ) from None


# ==================================================
# Types
# ==================================================

@dataclass(frozen=True, eq=False)
class BinaryMask:
    width: int
    height: int
    bits: np.ndarray

    def __post_init__(self):
        bits = np.array(self.bits, dtype=bool)
        if bits.size != self.width * self.height:
            raise InvalidParams(
                f"mask needs {self.width * self.height} bits, got {bits.size}"
            )
        bits = bits.reshape(self.height, self.width)
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    def foreground_count(self) -> int:
        return int(self.bits.sum())

    def to_image(self) -> GrayImage:
        """false → 0, true → 255, so the mask is viewable as a PGM."""
        return GrayImage(
            self.width,
            self.height,
            MASK_MAXVAL + 1,
            self.bits.astype(np.int64) * MASK_MAXVAL,
        )

    def __eq__(self, other):
        if not isinstance(other, BinaryMask):
            return NotImplemented
        return self.bits.shape == other.bits.shape and np.array_equal(self.bits, other.bits)

    __hash__ = None


@dataclass(frozen=True)
class ThresholdResult:
    threshold: int
    method: ThresholdMethod
    peaks: Optional[Tuple[int, int]] = None


# ==================================================
# Valley threshold
# ==================================================

def smooth_histogram(bins, window: int) -> np.ndarray:
    if window < 1 or window % 2 == 0:
        raise InvalidParams(f"smoothing window must be odd and >= 1, got {window}")

    counts = np.asarray(bins, dtype=np.int64)
    levels = counts.size
    half = window // 2

    # Integer prefix sums keep the window totals exact
    prefix = np.concatenate([[0], np.cumsum(counts)])
    idx = np.arange(levels)
    lo = np.maximum(idx - half, 0)
    hi = np.minimum(idx + half + 1, levels)
    return (prefix[hi] - prefix[lo]) / (hi - lo)


def _local_maxima(smoothed: np.ndarray):
    """
    Plateau-aware maxima: a run of equal values whose neighbours are
    both lower. Each run is reported by its lowest level.
    """
    change = np.flatnonzero(np.diff(smoothed) != 0) + 1
    starts = np.concatenate([[0], change])
    ends = np.concatenate([change, [smoothed.size]])

    peaks = []
    for i, (start, end) in enumerate(zip(starts, ends)):
        value = smoothed[start]
        if value <= 0:
            continue
        left_lower = i == 0 or smoothed[starts[i - 1]] < value
        right_lower = i == len(starts) - 1 or smoothed[end] < value
        if left_lower and right_lower:
            peaks.append(int(start))
    return peaks


def threshold_valley(
    hist: Histogram,
    smooth_window: int = DEFAULT_SMOOTH_WINDOW,
) -> ThresholdResult:
    if np.count_nonzero(hist.bins) < 2:
        raise NotBimodal("histogram needs at least two occupied levels")

    smoothed = smooth_histogram(hist.bins, smooth_window)
    peaks = _local_maxima(smoothed)
    if len(peaks) < 2:
        raise NotBimodal(f"found {len(peaks)} local maximum after smoothing, need 2")

    # Highest first; equal heights go to the lower level
    ranked = sorted(peaks, key=lambda level: (-smoothed[level], level))
    p1, p2 = sorted(ranked[:2])

    between = smoothed[p1 + 1:p2]
    threshold = p1 + 1 + int(np.argmin(between))

    logger.info("📉 Valley threshold %d between peaks %d and %d", threshold, p1, p2)
    return ThresholdResult(threshold, ThresholdMethod.VALLEY, (p1, p2))


# ==================================================
# Masks
# ==================================================

def apply_threshold(image: GrayImage, threshold: int) -> BinaryMask:
    if not 0 <= threshold <= image.levels - 1:
        raise ThresholdOutOfRange(
            f"threshold {threshold} outside [0, {image.levels - 1}]"
        )
    return BinaryMask(image.width, image.height, image.pixels > threshold)
