import numpy as np
import pytest
from hypothesis import given, settings

from imaging.gray_image import GrayImage, RegionOfInterest
from ops.histogram import (
    Histogram,
    NormalizedHistogram,
    CumulativeDistribution,
    compute_histogram,
    normalize,
    cumulative,
    histogram_cdf,
    uniformity_deviation,
)
from tests import oracles
from tests.strategies import gray_images
from utils.errors import EmptyRegion, InvalidDistribution, RoiOutOfBounds


# --------------------------------------------------
# compute_histogram
# --------------------------------------------------

def test_hand_count():
    hist = compute_histogram(GrayImage.from_pixels([1, 3, 1, 0], 2, 2, levels=4))
    assert hist.bins.tolist() == [1, 2, 0, 1]
    assert hist.total == 4


def test_constant_image():
    hist = compute_histogram(GrayImage.from_pixels([5] * 100, 10, 10))
    assert hist.bins[5] == 100
    assert hist.bins.sum() == 100
    assert hist.levels == 256


def test_random_image_matches_rescan_oracle():
    rng = np.random.default_rng(7)
    image = GrayImage.from_array(rng.integers(0, 256, size=(32, 32)))
    expected = oracles.count_levels(image.tolist(), 256)
    assert compute_histogram(image).bins.tolist() == expected


def test_roi_histogram_counts_region_only():
    image = GrayImage.from_pixels([1, 2, 3, 4], 2, 2, levels=8)
    hist = compute_histogram(image, RegionOfInterest(1, 0, 1, 2))
    assert hist.total == 2
    assert hist.bins[2] == 1 and hist.bins[4] == 1


def test_roi_out_of_bounds():
    image = GrayImage.from_pixels([1, 2, 3, 4], 2, 2)
    with pytest.raises(RoiOutOfBounds):
        compute_histogram(image, RegionOfInterest(0, 0, 3, 1))


@settings(max_examples=200, deadline=None)
@given(image=gray_images())
def test_counts_are_conserved_and_position_free(image):
    hist = compute_histogram(image)
    assert hist.total == image.width * image.height
    assert hist.levels == image.levels

    rng = np.random.default_rng(0)
    shuffled = GrayImage.from_array(
        rng.permutation(image.flat()).reshape(image.shape), image.levels
    )
    assert compute_histogram(shuffled) == hist


# --------------------------------------------------
# normalize / cumulative
# --------------------------------------------------

def test_normalize_by_hand():
    probs = normalize(Histogram.from_counts([1, 2, 0, 1])).probs
    assert probs.tolist() == [0.25, 0.5, 0.0, 0.25]


def test_normalize_empty_histogram():
    with pytest.raises(EmptyRegion):
        normalize(Histogram.from_counts([0, 0, 0, 0]))


def test_cumulative_by_hand():
    cdf = cumulative(normalize(Histogram.from_counts([1, 2, 0, 1]))).cdf
    assert cdf.tolist() == [0.25, 0.75, 0.75, 1.0]


def test_uniform_cdf_is_linear():
    cdf = histogram_cdf(Histogram.from_counts([3, 3, 3, 3])).cdf
    assert cdf.tolist() == [0.25, 0.5, 0.75, 1.0]
    assert uniformity_deviation(CumulativeDistribution(cdf)) == 0.0


def test_random_probs_match_prefix_sum_oracle():
    rng = np.random.default_rng(11)
    hist = Histogram.from_counts(rng.integers(0, 50, size=256))
    norm = normalize(hist)
    expected = oracles.prefix_sum(norm.probs.tolist())
    np.testing.assert_allclose(cumulative(norm).cdf, expected, rtol=0, atol=1e-12)


@settings(max_examples=1000, deadline=None)
@given(image=gray_images())
def test_distribution_axioms(image):
    norm = normalize(compute_histogram(image))
    assert (norm.probs >= 0).all()
    assert abs(norm.probs.sum() - 1.0) <= 1e-9

    cdf = cumulative(norm).cdf
    assert (np.diff(cdf) >= 0).all()
    assert abs(cdf[-1] - 1.0) <= 1e-9
    assert ((cdf >= 0) & (cdf <= 1 + 1e-9)).all()


# --------------------------------------------------
# Type invariants
# --------------------------------------------------

def test_histogram_rejects_negative_counts():
    with pytest.raises(InvalidDistribution):
        Histogram.from_counts([1, -1, 2])


def test_normalized_histogram_must_sum_to_one():
    with pytest.raises(InvalidDistribution):
        NormalizedHistogram(np.array([0.5, 0.4]))


def test_cdf_must_not_decrease():
    with pytest.raises(InvalidDistribution):
        CumulativeDistribution(np.array([0.6, 0.5, 1.0]))


def test_uniformity_deviation_of_point_mass():
    cdf = histogram_cdf(Histogram.from_counts([4, 0, 0, 0]))
    assert uniformity_deviation(cdf) == pytest.approx(0.75)
