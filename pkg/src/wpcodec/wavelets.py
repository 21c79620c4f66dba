"""Mother-wavelet filter banks and one-level separable 2-D analysis/synthesis.

Orthogonal families (haar, db2, db4) run as periodised orthonormal filter
banks, so synthesis is the exact transpose of analysis and energy is kept.
The symmetric biorthogonal bior2_2 bank uses whole-sample symmetric
extension.  Odd-length axes are first extended by one mirrored sample, which
gives ceil(n/2) coefficients per band and is discarded again on synthesis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache

import numpy as np

from .errors import InvalidInputError, UnsupportedWaveletError


class WaveletId(IntEnum):
    HAAR = 0
    DB2 = 1
    DB4 = 2
    BIOR2_2 = 3

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class FilterPair:
    id: WaveletId
    analysis_lo: tuple
    analysis_hi: tuple
    synthesis_lo: tuple
    synthesis_hi: tuple
    orthogonal: bool


@dataclass
class QuadSplit:
    a: np.ndarray
    h: np.ndarray
    v: np.ndarray
    d: np.ndarray

    def bands(self):
        return (self.a, self.h, self.v, self.d)


_S2 = math.sqrt(2.0)
_S3 = math.sqrt(3.0)

_ORTHO_LOWPASS = {
    WaveletId.HAAR: (1 / _S2, 1 / _S2),
    WaveletId.DB2: (
        (1 + _S3) / (4 * _S2),
        (3 + _S3) / (4 * _S2),
        (3 - _S3) / (4 * _S2),
        (1 - _S3) / (4 * _S2),
    ),
    WaveletId.DB4: (
        0.23037781330889650,
        0.71484657055291565,
        0.63088076792985891,
        -0.027983769416859854,
        -0.18703481171909308,
        0.030841381835560764,
        0.032883011666885200,
        -0.010597401785069032,
    ),
}


def _qmf(lo):
    n = len(lo)
    return tuple((-1) ** k * lo[n - 1 - k] for k in range(n))


def _make(wid: WaveletId) -> FilterPair:
    if wid in _ORTHO_LOWPASS:
        lo = _ORTHO_LOWPASS[wid]
        hi = _qmf(lo)
        return FilterPair(wid, lo, hi, lo, hi, orthogonal=True)
    # LeGall 5/3 pair, centred taps, scaled so the lowpass DC gain is sqrt(2)
    return FilterPair(
        wid,
        analysis_lo=tuple(_S2 * t / 8 for t in (-1, 2, 6, 2, -1)),
        analysis_hi=tuple(_S2 * t / 4 for t in (1, -2, 1)),
        synthesis_lo=tuple(_S2 * t / 4 for t in (1, 2, 1)),
        synthesis_hi=tuple(_S2 * t / 8 for t in (1, 2, -6, 2, 1)),
        orthogonal=False,
    )


_REGISTRY = {wid: _make(wid) for wid in WaveletId}


def parse_wavelet(name) -> WaveletId:
    if isinstance(name, WaveletId):
        return name
    if isinstance(name, int) and not isinstance(name, bool):
        try:
            return WaveletId(name)
        except ValueError:
            raise UnsupportedWaveletError(f"unsupported wavelet id {name}") from None
    try:
        return WaveletId[str(name).upper()]
    except KeyError:
        raise UnsupportedWaveletError(f"unsupported wavelet {name!r}") from None


def get_filters(wid) -> FilterPair:
    return _REGISTRY[parse_wavelet(wid)]


def _reflect(j: np.ndarray, m: int) -> np.ndarray:
    # whole-sample symmetric about 0 and m-1
    if m == 1:
        return np.zeros_like(j)
    period = 2 * m - 2
    r = np.mod(j, period)
    return np.where(r >= m, period - r, r)


@lru_cache(maxsize=512)
def _analysis_index(m: int, taps: int, start: int, step_offset: int, periodic: bool):
    # gather index for output i, tap k: position 2*i + step_offset + k - start
    i = np.arange(m // 2)[:, None]
    k = np.arange(taps)[None, :]
    j = 2 * i + step_offset + k - start
    idx = np.mod(j, m) if periodic else _reflect(j, m)
    idx.setflags(write=False)
    return idx


@lru_cache(maxsize=512)
def _synthesis_index(m: int, taps: int, centre: int, periodic: bool):
    j = np.arange(m)[:, None]
    k = np.arange(taps)[None, :]
    if periodic:
        idx = np.mod(j - k, m)
    else:
        idx = _reflect(j + k - centre, m)
    idx.setflags(write=False)
    return idx


def _analyze_last(x: np.ndarray, f: FilterPair):
    n = x.shape[-1]
    if n % 2:
        x = np.concatenate([x, x[..., -1:]], axis=-1)
    m = x.shape[-1]
    lo = np.asarray(f.analysis_lo)
    hi = np.asarray(f.analysis_hi)
    if f.orthogonal:
        ilo = _analysis_index(m, len(lo), 0, 0, True)
        ihi = _analysis_index(m, len(hi), 0, 0, True)
    else:
        ilo = _analysis_index(m, len(lo), len(lo) // 2, 0, False)
        ihi = _analysis_index(m, len(hi), len(hi) // 2, 1, False)
    return x[..., ilo] @ lo, x[..., ihi] @ hi


def _synthesize_last(lo_c: np.ndarray, hi_c: np.ndarray, f: FilterPair, n: int):
    m = n + (n % 2)
    if lo_c.shape[-1] != m // 2 or hi_c.shape[-1] != m // 2:
        raise InvalidInputError(
            f"subband length {lo_c.shape[-1]}/{hi_c.shape[-1]} does not match target {n}")
    shape = lo_c.shape[:-1] + (m,)
    u = np.zeros(shape)
    w = np.zeros(shape)
    f0 = np.asarray(f.synthesis_lo)
    f1 = np.asarray(f.synthesis_hi)
    if f.orthogonal:
        u[..., 0::2] = lo_c
        w[..., 0::2] = hi_c
        x = u[..., _synthesis_index(m, len(f0), 0, True)] @ f0
        x += w[..., _synthesis_index(m, len(f1), 0, True)] @ f1
    else:
        u[..., 0::2] = lo_c
        w[..., 1::2] = hi_c
        x = u[..., _synthesis_index(m, len(f0), len(f0) // 2, False)] @ f0
        x += w[..., _synthesis_index(m, len(f1), len(f1) // 2, False)] @ f1
    return x[..., :n]


def analyze1d(x, f: FilterPair, axis: int = -1):
    """Split ``x`` along ``axis`` into (lowpass, highpass) halves."""
    x = np.moveaxis(np.asarray(x, dtype=np.float64), axis, -1)
    if x.shape[-1] < 2:
        raise InvalidInputError("cannot decompose an axis of length < 2")
    lo, hi = _analyze_last(x, f)
    return np.moveaxis(lo, -1, axis), np.moveaxis(hi, -1, axis)


def synthesize1d(lo, hi, f: FilterPair, n: int, axis: int = -1):
    lo = np.moveaxis(np.asarray(lo, dtype=np.float64), axis, -1)
    hi = np.moveaxis(np.asarray(hi, dtype=np.float64), axis, -1)
    if lo.shape != hi.shape:
        raise InvalidInputError("lowpass and highpass shapes differ")
    return np.moveaxis(_synthesize_last(lo, hi, f, n), -1, axis)


def analyze2d(p, f: FilterPair) -> QuadSplit:
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 2 or p.shape[0] < 2 or p.shape[1] < 2:
        raise InvalidInputError(f"plane of shape {p.shape} is too small to decompose")
    row_lo, row_hi = analyze1d(p, f, axis=1)
    a, h = analyze1d(row_lo, f, axis=0)
    v, d = analyze1d(row_hi, f, axis=0)
    return QuadSplit(a, h, v, d)


def split_shape(shape) -> tuple:
    return tuple((s + 1) // 2 for s in shape)


def synthesize2d(q: QuadSplit, f: FilterPair, shape=None) -> np.ndarray:
    """Invert :func:`analyze2d`; ``shape`` is the original plane shape."""
    bands = [np.asarray(b, dtype=np.float64) for b in q.bands()]
    sub = bands[0].shape
    if any(b.shape != sub or b.ndim != 2 for b in bands):
        raise InvalidInputError("the four subbands must share 2-D dimensions")
    if shape is None:
        shape = (2 * sub[0], 2 * sub[1])
    shape = tuple(int(s) for s in shape)
    if split_shape(shape) != sub:
        raise InvalidInputError(f"subbands {sub} do not match target {shape}")
    a, h, v, d = bands
    row_lo = synthesize1d(a, h, f, shape[0], axis=0)
    row_hi = synthesize1d(v, d, f, shape[0], axis=0)
    return synthesize1d(row_lo, row_hi, f, shape[1], axis=1)
