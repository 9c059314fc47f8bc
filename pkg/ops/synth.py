"""
Synthetic test images from 2D shape functions.

Grid: n × n cell-center samples over [-extent, extent]². Coordinates are
built as (2i + 1 - n) · (extent / n) so mirrored cells get exactly
negated coordinates and symmetric shapes sample symmetrically bit for bit.

Pyramid and cone are self-convolutions of the rectangle and pillbox.
Both bases are scaled indicators, so the discrete convolution is an
integer overlap count times height² · cell area; counts are computed
exactly (separable 1D convolution for the rectangle, FFT then rint for
the pillbox).
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.signal import fftconvolve
from scipy.special import ndtri

from config.settings import (
    DEFAULT_LEVELS,
    DEFAULT_BIMODAL_SPREAD,
    DEFAULT_BIMODAL_RATIO,
)
from imaging.gray_image import GrayImage
from ops.equalize import round_half_away
from ops.histogram import Histogram
from utils.errors import InvalidParams, UnknownShape, DegenerateField

logger = logging.getLogger(__name__)


class ShapeKind(str, Enum):
    RECTANGLE = "rectangle"
    PYRAMID = "pyramid"
    PILLBOX = "pillbox"
    CONE = "cone"
    GAUSSIAN = "gaussian"
    PEAK = "peak"
    EXP_DECAY = "exp_decay"

    @property
    def cli_name(self) -> str:
        return "expdecay" if self is ShapeKind.EXP_DECAY else self.value

    @classmethod
    def parse(cls, name: str) -> "ShapeKind":
        for kind in cls:
            if name in (kind.value, kind.cli_name):
                return kind
        raise UnknownShape(
            f"unknown shape {name!r}; expected one of "
            f"{', '.join(k.cli_name for k in cls)}"
        )


# ==================================================
# Types
# ==================================================

@dataclass(frozen=True)
class ShapeSpec:
    """
    rectangle / pyramid: a, b half-widths
    pillbox / cone:      a radius
    gaussian:            sigma
    exp_decay:           a rate
    peak:                no parameters
    """

    kind: ShapeKind
    a: Optional[float] = None
    b: Optional[float] = None
    sigma: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ShapeKind(self.kind))
        for name in self.required_params():
            value = getattr(self, name)
            if value is None or not (value > 0 and math.isfinite(value)):
                raise InvalidParams(
                    f"{self.kind.value} needs a positive '{name}', got {value}"
                )

    def required_params(self) -> Tuple[str, ...]:
        return {
            ShapeKind.RECTANGLE: ("a", "b"),
            ShapeKind.PYRAMID: ("a", "b"),
            ShapeKind.PILLBOX: ("a",),
            ShapeKind.CONE: ("a",),
            ShapeKind.GAUSSIAN: ("sigma",),
            ShapeKind.PEAK: (),
            ShapeKind.EXP_DECAY: ("a",),
        }[self.kind]


@dataclass(frozen=True, eq=False)
class ScalarField:
    n: int
    extent: float
    values: np.ndarray

    @property
    def cell(self) -> float:
        return 2.0 * self.extent / self.n

    @property
    def cell_area(self) -> float:
        return self.cell * self.cell

    def riemann_sum(self) -> float:
        return float(self.values.sum()) * self.cell_area


# ==================================================
# Shape formulas
# ==================================================

def _step(t):
    """u(t) = 1 if t > 0 else 0."""
    return (np.asarray(t) > 0).astype(np.float64)


def _rectangle(spec: ShapeSpec, x, y):
    return _step(spec.a ** 2 - x ** 2) * _step(spec.b ** 2 - y ** 2) / (4.0 * spec.a * spec.b)


def _pillbox(spec: ShapeSpec, x, y):
    r2 = x ** 2 + y ** 2
    return _step(spec.a ** 2 - r2) / (math.pi * spec.a ** 2)


def _gaussian(spec: ShapeSpec, x, y):
    r2 = x ** 2 + y ** 2
    return np.exp(-r2 / spec.sigma ** 2) / (2.0 * math.pi * spec.sigma ** 2)


def shape_value(spec: ShapeSpec, x, y, min_radius: float = 0.0):
    """
    Analytic value of a closed-form shape at (x, y). Pyramid and cone
    have no closed form; use sample_shape for them.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    kind = spec.kind

    if kind is ShapeKind.RECTANGLE:
        return _rectangle(spec, x, y)
    if kind is ShapeKind.PILLBOX:
        return _pillbox(spec, x, y)
    if kind is ShapeKind.GAUSSIAN:
        return _gaussian(spec, x, y)
    if kind is ShapeKind.PEAK:
        r = np.maximum(np.sqrt(x ** 2 + y ** 2), min_radius)
        return 1.0 / r
    if kind is ShapeKind.EXP_DECAY:
        return np.exp(-spec.a * np.sqrt(x ** 2 + y ** 2))
    raise InvalidParams(f"{kind.value} is defined only as a discrete self-convolution")


# ==================================================
# Sampling
# ==================================================

def grid_coordinates(n: int, extent: float) -> np.ndarray:
    """Cell-center coordinates x_i = -extent + (i + 0.5) · 2·extent/n."""
    half_cell = extent / n
    return (2 * np.arange(n) + 1 - n) * half_cell


def _lattice_offsets(n: int, extent: float) -> np.ndarray:
    """(k - i) · cell for k - i in [-(n-1), n-1]."""
    cell = 2.0 * extent / n
    return np.arange(-(n - 1), n) * cell


def _pyramid(spec: ShapeSpec, n: int, extent: float) -> np.ndarray:
    coords = grid_coordinates(n, extent)
    offsets = _lattice_offsets(n, extent)
    cell = 2.0 * extent / n

    def overlap_1d(half_width: float) -> np.ndarray:
        base = (coords ** 2 < half_width ** 2).astype(np.int64)
        shifted = (offsets ** 2 < half_width ** 2).astype(np.int64)
        # out[k] = Σ_i base[i] · shifted[(k - i) + n - 1]
        full = np.convolve(base, shifted)
        return full[n - 1: 2 * n - 1]

    counts = np.outer(overlap_1d(spec.b), overlap_1d(spec.a))
    height = 1.0 / (4.0 * spec.a * spec.b)
    return counts * (height * height * cell * cell)


def _cone(spec: ShapeSpec, n: int, extent: float) -> np.ndarray:
    coords = grid_coordinates(n, extent)
    offsets = _lattice_offsets(n, extent)
    cell = 2.0 * extent / n

    xx, yy = np.meshgrid(coords, coords)
    base = (xx ** 2 + yy ** 2 < spec.a ** 2).astype(np.float64)
    ox, oy = np.meshgrid(offsets, offsets)
    shifted = (ox ** 2 + oy ** 2 < spec.a ** 2).astype(np.float64)

    full = fftconvolve(base, shifted)
    counts = np.rint(full[n - 1: 2 * n - 1, n - 1: 2 * n - 1])
    height = 1.0 / (math.pi * spec.a ** 2)
    return np.maximum(counts, 0.0) * (height * height * cell * cell)


def sample_shape(spec: ShapeSpec, n: int, extent: float) -> ScalarField:
    if n < 2:
        raise InvalidParams(f"grid size must be >= 2, got {n}")
    if not (extent > 0 and math.isfinite(extent)):
        raise InvalidParams(f"extent must be positive, got {extent}")

    if spec.kind is ShapeKind.PYRAMID:
        values = _pyramid(spec, n, extent)
    elif spec.kind is ShapeKind.CONE:
        values = _cone(spec, n, extent)
    else:
        coords = grid_coordinates(n, extent)
        # values[row, col] = f(x_col, y_row)
        xx, yy = np.meshgrid(coords, coords)
        values = shape_value(spec, xx, yy, min_radius=extent / n)

    values = np.asarray(values, dtype=np.float64)
    values.setflags(write=False)
    logger.info("🔷 Sampled %s on %dx%d grid (extent %.3g)", spec.kind.value, n, n, extent)
    return ScalarField(n, extent, values)


def quantize_field(field: ScalarField, levels: int = DEFAULT_LEVELS) -> GrayImage:
    peak = float(field.values.max())
    if peak <= 0:
        raise DegenerateField("field has no positive value to scale")
    scaled = field.values * ((levels - 1) / peak)
    pixels = np.clip(round_half_away(scaled), 0, levels - 1)
    return GrayImage.from_array(pixels, levels)


# ==================================================
# Bimodal (two-Gaussian) images
# ==================================================

def _default_peaks(levels: int) -> Tuple[float, float]:
    return levels / 4, 3 * levels / 4


def two_gaussian_histogram(
    levels: int = DEFAULT_LEVELS,
    peaks: Optional[Sequence[float]] = None,
    sigma: float = 10.0,
    masses: Sequence[float] = (1e12, 1e12),
) -> Histogram:
    """
    counts[x] = round(Σ mass_i · N(x; peak_i, sigma)). Large masses keep
    the valley between the modes strictly positive.
    """
    if sigma <= 0:
        raise InvalidParams(f"sigma must be positive, got {sigma}")
    peaks = _default_peaks(levels) if peaks is None else peaks
    x = np.arange(levels, dtype=np.float64)
    density = np.zeros(levels)
    for peak, mass in zip(peaks, masses):
        density += mass * np.exp(-0.5 * ((x - peak) / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))
    return Histogram(round_half_away(density))


def two_gaussian_image(
    size: int,
    levels: int = DEFAULT_LEVELS,
    sigma: float = DEFAULT_BIMODAL_SPREAD,
    ratio: float = DEFAULT_BIMODAL_RATIO,
    peaks: Optional[Sequence[float]] = None,
    seed: Optional[int] = None,
) -> GrayImage:
    """
    size × size image whose intensities come from two Gaussians (in gray
    levels) with mass ratio `ratio` : 1. Without a seed the samples are
    the mixture quantiles, so the histogram is smooth and reproducible;
    with a seed they are random normal draws.
    """
    if size < 1:
        raise InvalidParams(f"size must be >= 1, got {size}")
    if not (sigma > 0 and ratio > 0):
        raise InvalidParams("sigma and ratio must be positive")

    peaks = _default_peaks(levels) if peaks is None else peaks
    total = size * size
    first = int(round_half_away(total * ratio / (1.0 + ratio)))
    counts = (first, total - first)

    rng = np.random.default_rng(seed if seed is not None else 0)
    parts = []
    for peak, count in zip(peaks, counts):
        if count == 0:
            continue
        if seed is None:
            z = ndtri((np.arange(count) + 0.5) / count)
        else:
            z = rng.standard_normal(count)
        parts.append(peak + sigma * z)

    samples = np.clip(round_half_away(np.concatenate(parts)), 0, levels - 1)
    samples = rng.permutation(samples)
    return GrayImage(size, size, levels, samples)
