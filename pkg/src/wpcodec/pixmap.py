"""Binary PGM/PPM I/O and the RGB <-> Y, B-Y, R-Y colour separation."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from ._numeric import round_half_away
from .errors import (
    InvalidInputError,
    PNMHeaderError,
    PNMMagicError,
    PNMMaxvalError,
    PNMTruncatedError,
)

LUMA_R = 0.299
LUMA_G = 0.587
LUMA_B = 0.114


@dataclass(eq=False)
class Image:
    """8-bit raster. ``samples`` has shape (height, width) or (height, width, 3)."""

    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.ndim == 3 and s.shape[2] == 1:
            s = s[:, :, 0]
        if s.ndim not in (2, 3) or (s.ndim == 3 and s.shape[2] != 3):
            raise InvalidInputError(f"bad sample array shape {s.shape}")
        if s.shape[0] < 1 or s.shape[1] < 1:
            raise InvalidInputError("image dimensions must be positive")
        if s.dtype != np.uint8:
            if np.any(s < 0) or np.any(s > 255) or np.any(s != np.floor(s)):
                raise InvalidInputError("samples must be integers in [0, 255]")
            s = s.astype(np.uint8)
        self.samples = np.ascontiguousarray(s)

    @classmethod
    def from_flat(cls, width: int, height: int, channels: int, samples) -> "Image":
        arr = np.asarray(samples)
        if arr.size != width * height * channels:
            raise InvalidInputError("samples length must equal width*height*channels")
        shape = (height, width) if channels == 1 else (height, width, channels)
        return cls(arr.reshape(shape))

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def width(self) -> int:
        return self.samples.shape[1]

    @property
    def channels(self) -> int:
        return 1 if self.samples.ndim == 2 else 3

    @property
    def raw_size(self) -> int:
        return self.samples.size

    def __eq__(self, other):
        if not isinstance(other, Image):
            return NotImplemented
        return (self.samples.shape == other.samples.shape
                and bool(np.array_equal(self.samples, other.samples)))

    def __repr__(self):
        return f"Image({self.width}x{self.height}x{self.channels})"


@dataclass
class PlaneSet:
    """One (gray) or three (Y, U, V) float64 planes of identical shape."""

    planes: list = field(default_factory=list)

    def __post_init__(self):
        self.planes = [np.asarray(p, dtype=np.float64) for p in self.planes]
        if len(self.planes) not in (1, 3):
            raise InvalidInputError("a plane set holds 1 or 3 planes")
        shape = self.planes[0].shape
        if any(p.shape != shape or p.ndim != 2 for p in self.planes):
            raise InvalidInputError("planes must be 2-D and share dimensions")
        if not all(np.all(np.isfinite(p)) for p in self.planes):
            raise InvalidInputError("plane values must be finite")

    @property
    def height(self) -> int:
        return self.planes[0].shape[0]

    @property
    def width(self) -> int:
        return self.planes[0].shape[1]


_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def load_pnm(data: bytes) -> Image:
    """Parse a binary PGM (P5) or PPM (P6) with maxval 255."""
    data = bytes(data)
    if len(data) < 2:
        raise PNMTruncatedError("truncated header")
    magic = data[:2]
    if magic == b"P5":
        channels = 1
    elif magic == b"P6":
        channels = 3
    else:
        raise PNMMagicError(f"unsupported magic {magic!r}")

    pos = 2
    fields = []
    for _ in range(3):
        m = _TOKEN.match(data, pos)
        if m is None:
            raise PNMTruncatedError("truncated header")
        tok = m.group(1)
        # a token running to EOF is unterminated and may be cut short
        if m.end() == len(data):
            raise PNMTruncatedError("truncated header")
        if not tok.isdigit():
            raise PNMHeaderError(f"bad header field {tok!r}")
        fields.append(int(tok))
        pos = m.end()
    width, height, maxval = fields
    if not data[pos:pos + 1].isspace():
        raise PNMHeaderError("header must end with a single whitespace byte")
    pos += 1
    if maxval != 255:
        raise PNMMaxvalError(f"maxval {maxval} unsupported, only 255")
    if width < 1 or height < 1:
        raise PNMHeaderError("dimensions must be positive")

    n = width * height * channels
    payload = data[pos:pos + n]
    if len(payload) < n:
        raise PNMTruncatedError(f"payload has {len(payload)} of {n} bytes")
    return Image.from_flat(width, height, channels, np.frombuffer(payload, dtype=np.uint8))


def save_pnm(img: Image) -> bytes:
    magic = b"P5" if img.channels == 1 else b"P6"
    header = magic + b"\n%d %d\n255\n" % (img.width, img.height)
    return header + img.samples.tobytes()


def rgb_to_yuv(img: Image) -> PlaneSet:
    if img.channels != 3:
        raise InvalidInputError("colour separation needs a 3-channel image")
    rgb = img.samples.astype(np.float64)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    # same weights as 0.299R + 0.587G + 0.114B, but exact for R = G = B
    y = g + LUMA_R * (r - g) + LUMA_B * (b - g)
    return PlaneSet([y, b - y, r - y])


def yuv_to_rgb(ps: PlaneSet) -> Image:
    if len(ps.planes) != 3:
        raise InvalidInputError("inverse colour separation needs 3 planes")
    y, u, v = ps.planes
    b = u + y
    r = v + y
    g = (y - LUMA_R * r - LUMA_B * b) / LUMA_G
    rgb = np.stack([r, g, b], axis=-1)
    return Image(np.clip(round_half_away(rgb), 0, 255).astype(np.uint8))


def plane_to_gray(plane: np.ndarray) -> Image:
    return Image(np.clip(round_half_away(plane), 0, 255).astype(np.uint8))
