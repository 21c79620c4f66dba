"""Enhanced run-length coding and canonical Huffman bit coding.

Bit strings are plain ``str`` objects of '0'/'1' characters, MSB first.
"""

from __future__ import annotations

import heapq
import struct
from dataclasses import dataclass

import numpy as np

from .errors import CorruptDataError, InvalidInputError, TruncatedDataError

MAX_CODE_LENGTH = 32
_LUT_BITS = 16


def rle_smooth(seq, delta: int) -> np.ndarray:
    """Replace each symbol within ``delta`` of the current run value by that value.

    The run value only moves when a symbol is rejected, so a slow drift
    cannot drag the run along.
    """
    if delta < 0:
        raise InvalidInputError("delta must be >= 0")
    seq = np.asarray(seq, dtype=np.int64)
    if delta == 0 or seq.size == 0:
        return seq.copy()
    out = seq.tolist()
    rep = out[0]
    for i in range(1, len(out)):
        x = out[i]
        if abs(x - rep) <= delta:
            out[i] = rep
        else:
            rep = x
    return np.asarray(out, dtype=np.int64)


def rle_encode(seq):
    """Maximal runs as ``(values, runs)`` integer arrays."""
    seq = np.asarray(seq, dtype=np.int64).ravel()
    if seq.size == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    starts = np.flatnonzero(np.concatenate(([True], seq[1:] != seq[:-1])))
    runs = np.diff(np.append(starts, seq.size))
    return seq[starts], runs


def rle_pairs(seq) -> list:
    values, runs = rle_encode(seq)
    return list(zip(values.tolist(), runs.tolist()))


def rle_decode(values, runs=None) -> np.ndarray:
    """Expand runs.  Accepts ``(values, runs)`` arrays or a list of pairs."""
    if runs is None:
        pairs = list(values)
        values = [v for v, _ in pairs]
        runs = [r for _, r in pairs]
    values = np.asarray(values, dtype=np.int64)
    runs = np.asarray(runs, dtype=np.int64)
    if values.shape != runs.shape:
        raise CorruptDataError("value and run counts differ")
    if np.any(runs <= 0):
        raise CorruptDataError("run lengths must be positive")
    return np.repeat(values, runs)


@dataclass(frozen=True)
class HuffmanTable:
    """Canonical prefix code given by ``symbols`` (ascending) and their lengths."""

    symbols: tuple
    lengths: tuple

    def __post_init__(self):
        if len(self.symbols) != len(self.lengths):
            raise InvalidInputError("one length per symbol required")
        if list(self.symbols) != sorted(set(self.symbols)):
            raise InvalidInputError("symbols must be distinct and ascending")
        if any(not 1 <= n <= MAX_CODE_LENGTH for n in self.lengths):
            raise InvalidInputError(f"code lengths must lie in [1, {MAX_CODE_LENGTH}]")
        if kraft_sum(self.lengths) > 1:
            raise InvalidInputError("code lengths violate the Kraft inequality")

    @classmethod
    def from_lengths(cls, lengths: dict) -> "HuffmanTable":
        syms = sorted(lengths)
        return cls(tuple(syms), tuple(lengths[s] for s in syms))

    def length_map(self) -> dict:
        return dict(zip(self.symbols, self.lengths))

    def canonical_order(self):
        return sorted(zip(self.lengths, self.symbols))

    def codes(self) -> dict:
        """symbol -> (code, length), assigned in (length, symbol) order."""
        out = {}
        code = 0
        prev = 0
        for length, sym in self.canonical_order():
            code <<= length - prev
            out[sym] = (code, length)
            code += 1
            prev = length
        return out


def kraft_sum(lengths) -> float:
    # exact for lengths <= 32
    return sum(1 << (MAX_CODE_LENGTH - n) for n in lengths) / (1 << MAX_CODE_LENGTH)


def _limit_lengths(lengths: dict, freqs: dict, max_len: int) -> dict:
    lengths = {s: min(n, max_len) for s, n in lengths.items()}
    budget = 1 << max_len

    def used():
        return sum(1 << (max_len - n) for n in lengths.values())

    # lengthen the rarest codes that still have room until the code fits
    order = sorted(lengths, key=lambda s: (freqs[s], -s))
    while used() > budget:
        for s in order:
            if lengths[s] < max_len:
                lengths[s] += 1
                break
    return lengths


def huffman_build(freqs: dict, max_len: int = MAX_CODE_LENGTH) -> HuffmanTable:
    """Optimal code lengths for ``freqs`` in canonical form.

    Merges are ordered by (count, smallest symbol in subtree) so equal
    inputs always give the same table.
    """
    freqs = {int(s): int(c) for s, c in freqs.items() if c > 0}
    if not freqs:
        raise InvalidInputError("cannot build a Huffman code for an empty alphabet")
    if len(freqs) == 1:
        return HuffmanTable.from_lengths({next(iter(freqs)): 1})

    depth = dict.fromkeys(freqs, 0)
    heap = [(c, s, [s]) for s, c in freqs.items()]
    heapq.heapify(heap)
    while len(heap) > 1:
        c1, k1, m1 = heapq.heappop(heap)
        c2, k2, m2 = heapq.heappop(heap)
        for s in m1:
            depth[s] += 1
        for s in m2:
            depth[s] += 1
        heapq.heappush(heap, (c1 + c2, min(k1, k2), m1 + m2))

    if max(depth.values()) > max_len:
        depth = _limit_lengths(depth, freqs, max_len)
    return HuffmanTable.from_lengths(depth)


def table_for(seq) -> HuffmanTable:
    syms, counts = np.unique(np.asarray(seq, dtype=np.int64), return_counts=True)
    return huffman_build(dict(zip(syms.tolist(), counts.tolist())))


def huffman_encode(seq, table: HuffmanTable) -> str:
    codes = {s: format(c, f"0{n}b") for s, (c, n) in table.codes().items()}
    try:
        return "".join([codes[s] for s in np.asarray(seq, dtype=np.int64).tolist()])
    except KeyError as e:
        raise InvalidInputError(f"symbol {e.args[0]} not in the code table") from None


def huffman_decode(bits: str, table: HuffmanTable, count: int, pos: int = 0):
    """Decode ``count`` symbols starting at bit ``pos``.

    Returns ``(symbols, end_pos)``.
    """
    if count == 0:
        return np.zeros(0, np.int64), pos
    if not table.symbols:
        raise CorruptDataError("empty code table for a non-empty stream")
    max_len = max(table.lengths)
    if max_len > _LUT_BITS:
        return _decode_slow(bits, table, count, pos)

    lut_sym = [0] * (1 << max_len)
    lut_len = [0] * (1 << max_len)
    for sym, (code, n) in table.codes().items():
        lo = code << (max_len - n)
        hi = (code + 1) << (max_len - n)
        lut_sym[lo:hi] = [sym] * (hi - lo)
        lut_len[lo:hi] = [n] * (hi - lo)

    tail = np.frombuffer(bits[pos:].encode("ascii"), dtype=np.uint8) - ord("0")
    nbits = tail.size
    padded = np.concatenate([tail, np.zeros(max_len, np.uint8)])
    weights = 1 << np.arange(max_len - 1, -1, -1, dtype=np.int64)
    windows = (np.lib.stride_tricks.sliding_window_view(padded, max_len) @ weights).tolist()

    out = [0] * count
    p = 0
    try:
        for i in range(count):
            w = windows[p]
            n = lut_len[w]
            if n == 0:
                raise CorruptDataError(f"invalid code at bit {pos + p}")
            out[i] = lut_sym[w]
            p += n
    except IndexError:
        raise TruncatedDataError("bit stream exhausted") from None
    if p > nbits:
        raise TruncatedDataError("bit stream exhausted")
    return np.asarray(out, dtype=np.int64), pos + p


def _decode_slow(bits: str, table: HuffmanTable, count: int, pos: int):
    by_code = {(n, c): s for s, (c, n) in table.codes().items()}
    max_len = max(table.lengths)
    out = []
    for _ in range(count):
        code = 0
        for n in range(1, max_len + 1):
            if pos >= len(bits):
                raise TruncatedDataError("bit stream exhausted")
            code = (code << 1) | (bits[pos] == "1")
            pos += 1
            sym = by_code.get((n, code))
            if sym is not None:
                out.append(sym)
                break
        else:
            raise CorruptDataError(f"invalid code ending at bit {pos}")
    return np.asarray(out, dtype=np.int64), pos


def bits_to_bytes(bits: str) -> bytes:
    if not bits:
        return b""
    pad = -len(bits) % 8
    return int(bits + "0" * pad, 2).to_bytes((len(bits) + pad) // 8, "big")


def bytes_to_bits(data: bytes) -> str:
    if not data:
        return ""
    return format(int.from_bytes(data, "big"), f"0{8 * len(data)}b")


def table_to_bytes(table: HuffmanTable) -> bytes:
    """Alphabet size (u32) then (symbol i32, length u8) in (length, symbol) order."""
    out = [struct.pack(">I", len(table.symbols))]
    for length, sym in table.canonical_order():
        out.append(struct.pack(">iB", sym, length))
    return b"".join(out)


def table_from_bytes(buf: bytes, offset: int = 0):
    """Parse a serialised table; returns ``(table, new_offset)``."""
    if offset + 4 > len(buf):
        raise TruncatedDataError("truncated code table")
    (size,) = struct.unpack_from(">I", buf, offset)
    offset += 4
    if offset + 5 * size > len(buf):
        raise TruncatedDataError("truncated code table")
    entries = [struct.unpack_from(">iB", buf, offset + 5 * i) for i in range(size)]
    offset += 5 * size
    order = [(n, s) for s, n in entries]
    if order != sorted(order) or len({s for s, _ in entries}) != size:
        raise CorruptDataError("code table entries not in canonical order")
    try:
        table = HuffmanTable.from_lengths({s: n for s, n in entries})
    except InvalidInputError as e:
        raise CorruptDataError(f"invalid code table: {e}") from None
    return table, offset
