"""
Grayscale image representation.

STRICT RULES:
- Images are immutable after construction (read-only numpy buffers)
- Every pixel v satisfies 0 <= v <= levels - 1
- Pixels are stored row-major as a (height, width) uint8 array
"""

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from config.settings import DEFAULT_LEVELS, MAX_LEVELS, MIN_LEVELS
from utils.errors import InvalidImage, InvalidRoi, RoiOutOfBounds


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class GrayImage:
    """Rectangular buffer of integer intensities in [0, levels - 1]."""

    width: int
    height: int
    levels: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise InvalidImage(
                f"image dimensions must be positive, got {self.width}x{self.height}"
            )
        if not MIN_LEVELS <= self.levels <= MAX_LEVELS:
            raise InvalidImage(
                f"levels must lie in [{MIN_LEVELS}, {MAX_LEVELS}], got {self.levels}"
            )

        raw = np.asarray(self.pixels)
        if raw.size != self.width * self.height:
            raise InvalidImage(
                f"expected {self.width * self.height} pixels, got {raw.size}"
            )
        if raw.size and (raw.min() < 0 or raw.max() > self.levels - 1):
            raise InvalidImage(
                f"pixel values must lie in [0, {self.levels - 1}]"
            )
        if raw.dtype.kind == "f" and not np.array_equal(raw, np.floor(raw)):
            raise InvalidImage("pixel values must be integers")

        grid = np.array(raw, dtype=np.uint8).reshape(self.height, self.width)
        object.__setattr__(self, "pixels", _freeze(grid))

    # --------------------------------------------------
    # Constructors
    # --------------------------------------------------

    @classmethod
    def from_pixels(
        cls,
        pixels: Iterable[int],
        width: int,
        height: int,
        levels: int = DEFAULT_LEVELS,
    ) -> "GrayImage":
        return cls(width, height, levels, np.asarray(list(pixels), dtype=np.int64))

    @classmethod
    def from_array(cls, array: np.ndarray, levels: int = DEFAULT_LEVELS) -> "GrayImage":
        array = np.asarray(array)
        if array.ndim != 2:
            raise InvalidImage(f"expected a 2D array, got {array.ndim}D")
        height, width = array.shape
        return cls(width, height, levels, array)

    # --------------------------------------------------
    # Views
    # --------------------------------------------------

    @property
    def count(self) -> int:
        return self.width * self.height

    @property
    def shape(self) -> Tuple[int, int]:
        return self.height, self.width

    def flat(self) -> np.ndarray:
        """Row-major pixel sequence."""
        return self.pixels.ravel()

    def tolist(self):
        return [int(v) for v in self.pixels.ravel()]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.levels == other.levels
            and np.array_equal(self.pixels, other.pixels)
        )

    __hash__ = None

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height}, levels={self.levels})"


@dataclass(frozen=True)
class RegionOfInterest:
    """Rectangle (x0, y0, w, h); bounds are checked against an image at use site."""

    x0: int
    y0: int
    w: int
    h: int

    def __post_init__(self):
        if self.x0 < 0 or self.y0 < 0:
            raise InvalidRoi(f"ROI origin must be non-negative, got ({self.x0}, {self.y0})")
        if self.w < 1 or self.h < 1:
            raise InvalidRoi(f"ROI extent must be positive, got {self.w}x{self.h}")

    @classmethod
    def parse(cls, text: str) -> "RegionOfInterest":
        """
        "x,y,w,h" → RegionOfInterest
        """
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise InvalidRoi(f"ROI must be 'x,y,w,h', got {text!r}")
        try:
            x0, y0, w, h = (int(p) for p in parts)
        except ValueError:
            raise InvalidRoi(f"ROI must contain integers, got {text!r}") from None
        return cls(x0, y0, w, h)

    @classmethod
    def full(cls, image: GrayImage) -> "RegionOfInterest":
        return cls(0, 0, image.width, image.height)

    def fits(self, image: GrayImage) -> bool:
        return self.x0 + self.w <= image.width and self.y0 + self.h <= image.height

    def validate_for(self, image: GrayImage):
        if not self.fits(image):
            raise RoiOutOfBounds(
                f"ROI ({self.x0},{self.y0},{self.w},{self.h}) does not fit "
                f"in a {image.width}x{image.height} image"
            )


def extract_region(image: GrayImage, roi: RegionOfInterest) -> GrayImage:
    roi.validate_for(image)
    window = image.pixels[roi.y0:roi.y0 + roi.h, roi.x0:roi.x0 + roi.w]
    return GrayImage(roi.w, roi.h, image.levels, window.copy())


def region_pixels(image: GrayImage, roi: Optional[RegionOfInterest] = None) -> np.ndarray:
    """Flat pixel sequence of the region R (whole image when roi is None)."""
    if roi is None:
        return image.flat()
    return extract_region(image, roi).flat()
