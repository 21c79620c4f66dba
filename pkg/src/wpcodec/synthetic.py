"""Synthetic test images."""

import numpy as np

from .errors import InvalidInputError
from .pixmap import Image

KINDS = ("horizontal", "vertical", "gradient", "constant", "noise")
BAND = 8


def generate(kind: str, size: int, seed: int = 42, value: int = 128) -> Image:
    if size < 2:
        raise InvalidInputError("size must be >= 2")
    if kind == "horizontal":
        rows = np.where((np.arange(size) // BAND) % 2 == 0, 0, 255)
        data = np.repeat(rows[:, None], size, axis=1)
    elif kind == "vertical":
        data = generate("horizontal", size).samples.T
    elif kind == "gradient":
        yy, xx = np.mgrid[0:size, 0:size]
        data = np.floor((xx + yy) * 255 / (2 * (size - 1)) + 0.5)
    elif kind == "constant":
        data = np.full((size, size), value)
    elif kind == "noise":
        data = np.random.default_rng(seed).integers(0, 256, (size, size))
    else:
        raise InvalidInputError(f"unknown image kind {kind!r}")
    return Image(np.asarray(data, dtype=np.uint8))
