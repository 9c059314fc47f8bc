"""
PGM Codec (Netpbm P2 / P5)
Persistence-only layer.

STRICT RULES:
- Header comments ('#' to end of line) are skipped on read, never written
- maxval <= 255 only (one byte per P5 sample)
- levels = maxval + 1 when that is a power of two, otherwise 256 with
  sample values kept as-is (no rescaling)
"""

import logging
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from config.settings import (
    PGM_ASCII_MAGIC,
    PGM_BINARY_MAGIC,
    PGM_MAX_MAXVAL,
    DEFAULT_LEVELS,
)
from imaging.gray_image import GrayImage
from utils.artifacts import write_atomic
from utils.errors import (
    ImageIOError,
    MalformedHeader,
    TruncatedData,
    UnsupportedMaxval,
    CorruptSample,
    InvalidImage,
)

logger = logging.getLogger(__name__)

_WHITESPACE = b" \t\r\n\v\f"


# --------------------------------------------------
# Header scanning
# --------------------------------------------------

def _skip_space_and_comments(data: bytes, pos: int) -> int:
    while pos < len(data):
        ch = data[pos:pos + 1]
        if ch in _WHITESPACE and ch:
            pos += 1
        elif ch == b"#":
            end = data.find(b"\n", pos)
            pos = len(data) if end == -1 else end + 1
        else:
            break
    return pos


def _read_header_int(data: bytes, pos: int, name: str) -> Tuple[int, int]:
    pos = _skip_space_and_comments(data, pos)
    start = pos
    while pos < len(data) and data[pos:pos + 1].isdigit():
        pos += 1
    if start == pos:
        raise MalformedHeader(f"missing or non-numeric {name} in PGM header")
    return int(data[start:pos]), pos


def _parse_header(data: bytes) -> Tuple[bytes, int, int, int, int]:
    """
    Returns (magic, width, height, maxval, raster_offset).
    """
    magic = data[:2]
    if magic not in (PGM_ASCII_MAGIC, PGM_BINARY_MAGIC):
        raise MalformedHeader(f"bad PGM magic {magic!r}")
    if data[2:3] and data[2:3] not in _WHITESPACE and data[2:3] != b"#":
        raise MalformedHeader("PGM magic must be followed by whitespace")

    width, pos = _read_header_int(data, 2, "width")
    height, pos = _read_header_int(data, pos, "height")
    maxval, pos = _read_header_int(data, pos, "maxval")

    if width < 1 or height < 1:
        raise MalformedHeader(f"PGM dimensions must be positive, got {width}x{height}")
    if maxval < 1:
        raise MalformedHeader(f"PGM maxval must be positive, got {maxval}")
    if maxval > PGM_MAX_MAXVAL:
        raise UnsupportedMaxval(f"maxval {maxval} exceeds {PGM_MAX_MAXVAL}")

    # Exactly one whitespace byte separates maxval from the raster
    if pos < len(data):
        if data[pos:pos + 1] not in _WHITESPACE:
            raise MalformedHeader("maxval must be followed by whitespace")
        pos += 1
    elif magic == PGM_BINARY_MAGIC:
        raise TruncatedData("P5 raster is missing")

    return magic, width, height, maxval, pos


def levels_for_maxval(maxval: int) -> int:
    levels = maxval + 1
    if levels & (levels - 1) == 0:
        return levels
    return DEFAULT_LEVELS


# --------------------------------------------------
# Decode
# --------------------------------------------------

def _ascii_samples(data: bytes, pos: int, count: int) -> np.ndarray:
    samples: List[int] = []
    tokens = data[pos:].split(b"#")
    # Drop comment text up to end of line in every chunk after a '#'
    chunks = [tokens[0]] + [
        t.split(b"\n", 1)[1] if b"\n" in t else b"" for t in tokens[1:]
    ]
    for chunk in chunks:
        for token in chunk.split():
            if not token.isdigit():
                raise CorruptSample(f"non-numeric P2 sample {token[:16]!r}")
            samples.append(int(token))
            if len(samples) == count:
                return np.asarray(samples, dtype=np.int64)
    raise TruncatedData(f"expected {count} samples, found {len(samples)}")


def _binary_samples(data: bytes, pos: int, count: int) -> np.ndarray:
    raster = data[pos:pos + count]
    if len(raster) < count:
        raise TruncatedData(f"expected {count} samples, found {len(raster)}")
    return np.frombuffer(raster, dtype=np.uint8).astype(np.int64)


def load_pgm(data: bytes) -> GrayImage:
    magic, width, height, maxval, pos = _parse_header(data)
    count = width * height

    if magic == PGM_ASCII_MAGIC:
        samples = _ascii_samples(data, pos, count)
    else:
        samples = _binary_samples(data, pos, count)

    if samples.max() > maxval:
        raise CorruptSample(f"sample {int(samples.max())} exceeds maxval {maxval}")

    return GrayImage(width, height, levels_for_maxval(maxval), samples)


# --------------------------------------------------
# Encode
# --------------------------------------------------

def save_pgm(image: GrayImage, binary: bool = True) -> bytes:
    if image.levels - 1 > PGM_MAX_MAXVAL:
        raise InvalidImage(f"levels {image.levels} cannot be stored in 8-bit PGM")

    magic = PGM_BINARY_MAGIC if binary else PGM_ASCII_MAGIC
    header = b"%s\n%d %d\n%d\n" % (magic, image.width, image.height, image.levels - 1)

    if binary:
        return header + image.pixels.astype(np.uint8).tobytes()

    rows = [
        b" ".join(b"%d" % v for v in row)
        for row in image.pixels.tolist()
    ]
    return header + b"\n".join(rows) + b"\n"


# --------------------------------------------------
# Files
# --------------------------------------------------

def read_image(path: Union[str, Path]) -> GrayImage:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise ImageIOError(f"cannot read {path}: {e.strerror or e}") from e

    image = load_pgm(data)
    logger.info("🖼️  Loaded %s (%dx%d, L=%d)", path, image.width, image.height, image.levels)
    return image


def write_image(image: GrayImage, path: Union[str, Path], binary: bool = True) -> Path:
    path = write_atomic(path, save_pgm(image, binary=binary))
    logger.info("💾 Wrote %s", path)
    return path
