import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from imaging.gray_image import GrayImage
from ops.equalize import (
    EqualizationMethod,
    IntensityMap,
    BbheDecomposition,
    round_half_away,
    he_map,
    apply_map,
    equalize_he,
    bbhe_mean_level,
    bbhe_decompose,
    equalize_bbhe,
    equalize,
)
from ops.histogram import Histogram, compute_histogram, histogram_cdf, uniformity_deviation
from ops.stats import sample_mean
from ops.synth import two_gaussian_image
from tests import oracles
from tests.strategies import gray_images
from utils.errors import EmptyRegion, LevelMismatch, InvalidParams, UnknownMethod


def _shapes(n):
    return [(w, n // w) for w in range(1, n + 1) if n % w == 0]


def _bimodal_corpus():
    """Two-Gaussian images, peaks at L/4 and 3L/4, mass ratios 1:3 to 3:1."""
    ratios = 3.0 ** np.linspace(-1.0, 1.0, 200)
    for seed, ratio in enumerate(ratios):
        yield two_gaussian_image(64, sigma=16.0, ratio=float(ratio), seed=seed)


# --------------------------------------------------
# Rounding
# --------------------------------------------------

@pytest.mark.parametrize(
    "value, expected",
    [(0.5, 1), (1.5, 2), (2.5, 3), (1.75, 2), (5.25, 5), (3.4999999, 3), (-0.5, -1), (0.0, 0)],
)
def test_round_half_away(value, expected):
    assert round_half_away([value]).tolist() == [expected]


# --------------------------------------------------
# he_map / apply_map
# --------------------------------------------------

def test_he_map_one_pixel_per_level():
    assert he_map(Histogram.from_counts([1, 1, 1, 1])).lut.tolist() == [1, 2, 2, 3]


def test_he_map_point_mass():
    assert he_map(Histogram.from_counts([4, 0, 0, 0])).lut.tolist() == [3, 3, 3, 3]


def test_he_map_uniform_256():
    lut = he_map(Histogram.from_counts([1] * 256)).lut
    expected = [oracles.round_half_up(255 * (x + 1) / 256) for x in range(256)]
    assert lut.tolist() == expected
    assert lut[255] == 255


def test_he_map_empty():
    with pytest.raises(EmptyRegion):
        he_map(Histogram.from_counts([0, 0, 0, 0]))


@settings(max_examples=300, deadline=None)
@given(image=gray_images())
def test_he_map_is_monotone_and_tops_out(image):
    hist = compute_histogram(image)
    intensity_map = he_map(hist)
    assert intensity_map.is_monotone()
    assert intensity_map.lut.max() <= image.levels - 1
    top_occupied = int(np.flatnonzero(hist.bins)[-1])
    assert intensity_map.lut[top_occupied] == image.levels - 1


def test_apply_map_examples():
    image = GrayImage.from_pixels([0, 1, 2, 3], 2, 2, levels=4)
    assert apply_map(image, IntensityMap.identity(4)) == image
    assert apply_map(image, IntensityMap([1, 2, 2, 3])).tolist() == [1, 2, 2, 3]
    assert apply_map(image, IntensityMap([2, 2, 2, 2])).tolist() == [2, 2, 2, 2]


def test_apply_map_level_mismatch():
    image = GrayImage.from_pixels([0, 1, 2, 3], 2, 2, levels=8)
    with pytest.raises(LevelMismatch):
        apply_map(image, IntensityMap.identity(4))


def test_intensity_map_rejects_out_of_range_entries():
    with pytest.raises(InvalidParams):
        IntensityMap([0, 4, 1, 2])


# --------------------------------------------------
# equalize_he
# --------------------------------------------------

def test_equalize_he_by_hand(ramp4):
    assert equalize_he(ramp4).tolist() == [2, 4, 5, 7]


def test_equalize_he_constant(constant220):
    assert set(equalize_he(constant220).tolist()) == {255}


def test_equalize_he_matches_literal_transcription_exhaustively():
    levels = 4
    for n in range(1, 7):
        for pixels in itertools.product(range(levels), repeat=n):
            expected = oracles.equalize_he(list(pixels), levels)
            for width, height in _shapes(n):
                image = GrayImage.from_pixels(pixels, width, height, levels)
                assert equalize_he(image).tolist() == expected, (pixels, width)


def test_he_flattens_bimodal_cdfs():
    for image in _bimodal_corpus():
        before = uniformity_deviation(histogram_cdf(compute_histogram(image)))
        after = uniformity_deviation(histogram_cdf(compute_histogram(equalize_he(image))))
        assert after <= before


# --------------------------------------------------
# BBHE
# --------------------------------------------------

def test_bbhe_mean_level_examples(bbhe4, constant220):
    assert bbhe_mean_level(bbhe4) == 2
    assert bbhe_mean_level(constant220) == 220
    assert bbhe_mean_level(GrayImage.from_pixels([0, 255], 2, 1)) == 127


def test_bbhe_decompose_by_hand(bbhe4):
    decomposition = bbhe_decompose(bbhe4)
    assert decomposition.mean_level == 2
    assert decomposition.lower_map.tolist() == [0, 1, 2]
    assert decomposition.upper_map[6 - 3] == 7
    assert (decomposition.lower_count, decomposition.upper_count) == (3, 1)


def test_bbhe_composite_covers_all_levels(bbhe4):
    composite = bbhe_decompose(bbhe4).composite()
    assert composite.levels == bbhe4.levels == 8
    assert composite.lut.tolist()[:3] == [0, 1, 2]


@pytest.mark.parametrize(
    "lower, upper",
    [
        ([0, 1, 2], [3, 4, 5, 6]),
        ([0, 1], [2, 3, 4, 5, 6, 7]),
    ],
)
def test_bbhe_composite_rejects_mismatched_sub_maps(lower, upper):
    decomposition = BbheDecomposition(
        mean_level=2,
        levels=8,
        lower_map=np.array(lower),
        upper_map=np.array(upper),
        lower_count=3,
        upper_count=1,
    )
    with pytest.raises(LevelMismatch):
        decomposition.composite()


def test_bbhe_decompose_constant_image(constant220):
    decomposition = bbhe_decompose(constant220)
    assert decomposition.mean_level == 220
    assert decomposition.lower_map[220] == 220
    assert decomposition.upper_map.tolist() == list(range(221, 256))
    assert decomposition.upper_count == 0


def test_equalize_bbhe_by_hand(bbhe4):
    out = equalize_bbhe(bbhe4)
    assert out.tolist() == [1, 1, 2, 7]
    assert sample_mean(out) == 2.75
    assert sample_mean(equalize_he(bbhe4)) == 5.0


def test_equalize_bbhe_constant(constant220):
    assert equalize_bbhe(constant220) == constant220


def test_equalize_bbhe_matches_literal_transcription_exhaustively():
    levels = 8
    for n in range(1, 6):
        for pixels in itertools.product(range(levels), repeat=n):
            image = GrayImage.from_pixels(pixels, n, 1, levels)
            expected = oracles.equalize_bbhe(list(pixels), levels)
            assert equalize_bbhe(image).tolist() == expected, pixels


@settings(max_examples=1000, deadline=None)
@given(image=gray_images())
def test_bbhe_keeps_each_side_in_its_range(image):
    decomposition = bbhe_decompose(image)
    x_m = decomposition.mean_level
    before = image.flat()
    after = equalize_bbhe(image).flat()

    from_lower = before <= x_m
    assert ((after[from_lower] >= 0) & (after[from_lower] <= x_m)).all()
    assert (after[~from_lower] >= x_m + 1).all()
    assert (after[~from_lower] <= image.levels - 1).all()

    assert decomposition.lower_count + decomposition.upper_count == image.count
    assert int((after <= x_m).sum()) == decomposition.lower_count
    assert decomposition.composite().is_monotone()


def test_bbhe_preserves_brightness_more_often_than_he():
    wins = 0
    total = 0
    for image in _bimodal_corpus():
        original = sample_mean(image)
        bbhe_error = abs(sample_mean(equalize_bbhe(image)) - original)
        he_error = abs(sample_mean(equalize_he(image)) - original)
        wins += bbhe_error <= he_error
        total += 1
    assert wins >= 0.9 * total


# --------------------------------------------------
# Dispatch
# --------------------------------------------------

@given(name=st.sampled_from(["he", "bbhe"]))
def test_equalize_dispatches_by_name(name):
    image = GrayImage.from_pixels([1, 1, 2, 6], 2, 2, levels=8)
    direct = equalize_he(image) if name == "he" else equalize_bbhe(image)
    assert equalize(image, name) == direct
    assert equalize(image, EqualizationMethod(name)) == direct


def test_unknown_method():
    with pytest.raises(UnknownMethod):
        EqualizationMethod.parse("clahe")
    with pytest.raises(UnknownMethod):
        equalize(GrayImage.from_pixels([0, 1], 2, 1), "foo")
