"""Hard thresholding and uniform scalar quantisation of leaf blocks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import round_half_away
from .errors import InvalidInputError


@dataclass
class QuantConfig:
    hard_threshold: float = 4.0
    step: float = 1.0
    protect_dc: bool = True

    def __post_init__(self):
        if not self.hard_threshold >= 0:
            raise InvalidInputError("hard threshold must be >= 0")
        if not self.step > 0 or not np.isfinite(self.step):
            raise InvalidInputError("quantiser step must be a positive finite number")


def hard_threshold(block, t: float) -> np.ndarray:
    """Zero every coefficient with ``|x| <= t``."""
    block = np.asarray(block, dtype=np.float64)
    return np.where(np.abs(block) <= t, 0.0, block)


def quantize(block, step: float) -> np.ndarray:
    if not step > 0:
        raise InvalidInputError("quantiser step must be positive")
    return round_half_away(np.asarray(block, dtype=np.float64) / step).astype(np.int64)


def dequantize(q, step: float) -> np.ndarray:
    if not step > 0:
        raise InvalidInputError("quantiser step must be positive")
    return np.asarray(q, dtype=np.float64) * step


def is_dc_path(path: str) -> bool:
    return all(c == "A" for c in path)


def quantize_leaf(path: str, block, cfg: QuantConfig) -> np.ndarray:
    if not (cfg.protect_dc and is_dc_path(path)):
        block = hard_threshold(block, cfg.hard_threshold)
    return quantize(block, cfg.step)
