import pytest

from imaging.gray_image import GrayImage
from imaging.pgm_codec import save_pgm


@pytest.fixture
def ramp4():
    """[1, 3, 5, 7] as a 2×2 image with L=8."""
    return GrayImage.from_pixels([1, 3, 5, 7], 2, 2, levels=8)


@pytest.fixture
def bbhe4():
    """[1, 1, 2, 6] as a 2×2 image with L=8."""
    return GrayImage.from_pixels([1, 1, 2, 6], 2, 2, levels=8)


@pytest.fixture
def constant220():
    return GrayImage.from_pixels([220] * 25, 5, 5)


@pytest.fixture
def write_pgm(tmp_path):
    def _write(image: GrayImage, name: str = "image.pgm", binary: bool = True):
        path = tmp_path / name
        path.write_bytes(save_pgm(image, binary=binary))
        return path
    return _write
