"""The WPB1 compressed file format.

All integers are big-endian.  See docs/format.md for the byte layout.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np

from .entropy import (
    HuffmanTable,
    bits_to_bytes,
    bytes_to_bits,
    huffman_decode,
    table_from_bytes,
    table_to_bytes,
)
from .errors import (
    BadMagicError,
    ContainerError,
    CorruptContainerError,
    CorruptDataError,
    CorruptTreeError,
    TruncatedContainerError,
    TruncatedDataError,
    UnsupportedVersionError,
)
from .packet_tree import PacketNode, PacketTree, max_level_for, skeleton_from_bits
from .wavelets import WaveletId

MAGIC = b"WPB1"
VERSION = 1
GRAY = 0
YUV = 1

_HEADER = struct.Struct(">4sBBHHBBB")
_PLANE_FIXED = struct.Struct(">ffI")


def _f32(x: float) -> float:
    return float(np.float32(x))


@dataclass
class ContainerHeader:
    colorspace: int
    width: int
    height: int
    wavelet_id: int
    max_level: int
    plane_count: int

    @property
    def shape(self) -> tuple:
        return (self.height, self.width)


@dataclass
class PlaneRecord:
    hard_threshold: float
    quant_step: float
    rle_delta: int
    topology: str
    value_table: HuffmanTable
    run_table: HuffmanTable
    pair_count: int
    payload: bytes
    # decoded (values, runs), filled by validation; not part of the identity
    pairs: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        self.hard_threshold = _f32(self.hard_threshold)
        self.quant_step = _f32(self.quant_step)


def serialize_topology(t) -> str:
    """Preorder split flags: '1' per internal node, '0' per leaf."""
    root = t.root if isinstance(t, PacketTree) else t
    return "".join("0" if n.is_leaf else "1" for n in root.walk())


def deserialize_topology(bits: str, shape=(1 << 15, 1 << 15), max_level: int = 15) -> PacketNode:
    """Inverse of :func:`serialize_topology`; every bit must be consumed."""
    flags = [b == "1" for b in bits]
    try:
        root, used = skeleton_from_bits(flags, shape, max_level)
    except CorruptTreeError as e:
        raise CorruptContainerError(str(e)) from None
    if used != len(flags):
        raise CorruptContainerError(f"{len(flags) - used} trailing topology bits")
    return root


def _check_header(h: ContainerHeader) -> None:
    if h.colorspace not in (GRAY, YUV):
        raise CorruptContainerError(f"unknown colorspace {h.colorspace}")
    if h.plane_count != (1 if h.colorspace == GRAY else 3):
        raise CorruptContainerError("plane count does not match colorspace")
    if not (1 <= h.width <= 0xFFFF and 1 <= h.height <= 0xFFFF):
        raise CorruptContainerError("dimensions out of range")
    if h.wavelet_id not in {w.value for w in WaveletId}:
        raise CorruptContainerError(f"unknown wavelet id {h.wavelet_id}")
    if not 1 <= h.max_level <= max_level_for(h.shape):
        raise CorruptContainerError(f"max_level {h.max_level} invalid for {h.width}x{h.height}")


def _decode_payload(h: ContainerHeader, rec: PlaneRecord, skeleton: PacketNode):
    """Decode values then runs; returns (values, runs, bytes used)."""
    total = sum(n.shape[0] * n.shape[1] for n in skeleton.leaves())
    bits = bytes_to_bits(rec.payload)
    if rec.pair_count > total or 2 * rec.pair_count > len(bits):
        raise CorruptContainerError("pair count exceeds what the payload can hold")
    try:
        values, pos = huffman_decode(bits, rec.value_table, rec.pair_count)
        runs, pos = huffman_decode(bits, rec.run_table, rec.pair_count, pos)
    except TruncatedDataError as e:
        raise TruncatedContainerError(f"payload: {e}") from None
    except CorruptDataError as e:
        raise CorruptContainerError(f"payload: {e}") from None
    if np.any(runs <= 0) or int(runs.sum()) != total:
        raise CorruptContainerError("runs do not cover the coefficient count")
    used = (pos + 7) // 8
    if bits[pos:8 * used].strip("0"):
        raise CorruptContainerError("non-zero payload padding")
    return values, runs, used


def _check_scalars(rec: PlaneRecord) -> None:
    if not (math.isfinite(rec.hard_threshold) and rec.hard_threshold >= 0):
        raise CorruptContainerError("bad hard threshold")
    if not (math.isfinite(rec.quant_step) and rec.quant_step > 0):
        raise CorruptContainerError("bad quantiser step")
    if not 0 <= rec.rle_delta <= 0xFFFFFFFF:
        raise CorruptContainerError("bad rle delta")
    if not 0 <= rec.pair_count <= 0xFFFFFFFF:
        raise CorruptContainerError("bad pair count")


def _check_record(h: ContainerHeader, rec: PlaneRecord) -> PacketNode:
    _check_scalars(rec)
    skeleton = deserialize_topology(rec.topology, h.shape, h.max_level)
    values, runs, used = _decode_payload(h, rec, skeleton)
    if used != len(rec.payload):
        raise CorruptContainerError("payload length does not match its content")
    rec.pairs = (values, runs)
    return skeleton


def write_container(header: ContainerHeader, records) -> bytes:
    records = list(records)
    _check_header(header)
    if len(records) != header.plane_count:
        raise CorruptContainerError("record count does not match plane count")
    out = [_HEADER.pack(MAGIC, VERSION, header.colorspace, header.width, header.height,
                        header.wavelet_id, header.max_level, header.plane_count)]
    for rec in records:
        _check_record(header, rec)
        out.append(_PLANE_FIXED.pack(rec.hard_threshold, rec.quant_step, rec.rle_delta))
        out.append(bits_to_bytes(rec.topology))
        out.append(table_to_bytes(rec.value_table))
        out.append(table_to_bytes(rec.run_table))
        out.append(struct.pack(">I", rec.pair_count))
        out.append(rec.payload)
    return b"".join(out)


def read_container(data: bytes):
    """Parse and fully validate a container; returns ``(header, records)``."""
    data = bytes(data)
    if len(data) < 4:
        raise TruncatedContainerError("shorter than the magic number")
    if data[:4] != MAGIC:
        raise BadMagicError(f"bad magic {data[:4]!r}")
    if len(data) < 5:
        raise TruncatedContainerError("truncated header")
    if data[4] != VERSION:
        raise UnsupportedVersionError(f"unsupported version {data[4]}")
    if len(data) < _HEADER.size:
        raise TruncatedContainerError("truncated header")
    _, _, cs, w, hgt, wid, lvl, count = _HEADER.unpack_from(data)
    header = ContainerHeader(cs, w, hgt, wid, lvl, count)
    _check_header(header)

    pos = _HEADER.size
    records = []
    try:
        for _ in range(count):
            pos, rec = _read_record(data, pos, header)
            records.append(rec)
    except TruncatedDataError as e:
        raise TruncatedContainerError(str(e)) from None
    except CorruptDataError as e:
        raise CorruptContainerError(str(e)) from None
    if pos != len(data):
        raise CorruptContainerError(f"{len(data) - pos} trailing bytes")
    return header, records


def _need(data: bytes, pos: int, n: int) -> None:
    if pos + n > len(data):
        raise TruncatedContainerError(f"need {n} bytes at offset {pos}")


def _read_record(data: bytes, pos: int, header: ContainerHeader):
    _need(data, pos, _PLANE_FIXED.size)
    thr, step, delta = _PLANE_FIXED.unpack_from(data, pos)
    pos += _PLANE_FIXED.size

    max_nodes = (4 ** (header.max_level + 1) - 1) // 3
    flags = [c == "1" for c in bytes_to_bits(data[pos:pos + (max_nodes + 7) // 8])]
    try:
        skeleton, used = skeleton_from_bits(flags, header.shape, header.max_level)
    except CorruptTreeError as e:
        if "ended before" in str(e):
            raise TruncatedContainerError(str(e)) from None
        raise CorruptContainerError(str(e)) from None
    nbytes = (used + 7) // 8
    if any(flags[used:8 * nbytes]):
        raise CorruptContainerError("non-zero topology padding")
    topology = "".join("1" if b else "0" for b in flags[:used])
    pos += nbytes

    value_table, pos = table_from_bytes(data, pos)
    run_table, pos = table_from_bytes(data, pos)
    _need(data, pos, 4)
    (pair_count,) = struct.unpack_from(">I", data, pos)
    pos += 4

    rec = PlaneRecord(thr, step, delta, topology, value_table, run_table, pair_count, data[pos:])
    _check_scalars(rec)
    values, runs, used_bytes = _decode_payload(header, rec, skeleton)
    rec.payload = data[pos:pos + used_bytes]
    rec.pairs = (values, runs)
    return pos + used_bytes, rec


__all__ = [
    "MAGIC", "VERSION", "GRAY", "YUV", "ContainerHeader", "PlaneRecord",
    "serialize_topology", "deserialize_topology", "write_container",
    "read_container", "ContainerError",
]
