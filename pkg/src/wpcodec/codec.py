"""Encode/decode pipelines and the fidelity/size metrics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .container import (
    GRAY,
    YUV,
    ContainerHeader,
    PlaneRecord,
    deserialize_topology,
    read_container,
    serialize_topology,
    write_container,
)
from .entropy import bits_to_bytes, huffman_encode, rle_decode, rle_encode, rle_smooth, table_for
from .errors import CorruptContainerError, InvalidInputError
from .packet_tree import (
    CostConfig,
    PacketNode,
    PacketTree,
    attach_blocks,
    build_best_tree,
    reconstruct,
)
from .pixmap import Image, PlaneSet, plane_to_gray, rgb_to_yuv, yuv_to_rgb
from .quantizer import QuantConfig, dequantize, quantize_leaf
from .wavelets import get_filters, parse_wavelet

_INT32 = (-(1 << 31), (1 << 31) - 1)


@dataclass
class CodecConfig:
    wavelet: str = "db2"
    max_level: int = 3
    cost_threshold: float = 8.0
    luma: QuantConfig = field(default_factory=lambda: QuantConfig(4.0, 1.0))
    chroma: QuantConfig = field(default_factory=lambda: QuantConfig(8.0, 2.0))
    rle_delta: int = 0

    def __post_init__(self):
        parse_wavelet(self.wavelet)
        if self.max_level < 1:
            raise InvalidInputError("max_level must be >= 1")
        if not self.cost_threshold >= 0:
            raise InvalidInputError("cost threshold must be >= 0")
        if self.rle_delta < 0 or self.rle_delta > 0xFFFFFFFF:
            raise InvalidInputError("rle delta must be a 32-bit unsigned integer")


@dataclass
class PlaneInfo:
    """Encoder-side view of one plane, kept for inspection and tests."""

    tree: PacketTree
    symbols: np.ndarray  # quantised coefficients in coding order, before smoothing
    record: PlaneRecord


def plane_transposed(root: PacketNode) -> bool:
    """Default scan orientation for a plane, derived from its tree shape.

    A detail band that was pruned early holds the significant edges.  When
    the V (vertical-edge) subtree has fewer leaves than the H subtree the
    plane varies mostly along rows, so it is scanned column by column.
    """
    if root.is_leaf:
        return False
    _, h, v, _ = root.children
    return len(v.leaves()) < len(h.leaves())


def leaf_transposed(path: str, plane_default: bool) -> bool:
    detail = path.rstrip("A")
    if detail.endswith("H"):
        return False
    if detail.endswith("V"):
        return True
    return plane_default


def _scan(q: np.ndarray, transposed: bool) -> np.ndarray:
    return (q.T if transposed else q).ravel()


def _unscan(flat: np.ndarray, shape, transposed: bool) -> np.ndarray:
    if transposed:
        return flat.reshape(shape[1], shape[0]).T
    return flat.reshape(shape)


def _encode_plane(plane, f, cfg: CodecConfig, qcfg: QuantConfig) -> PlaneInfo:
    qcfg = QuantConfig(float(np.float32(qcfg.hard_threshold)), float(np.float32(qcfg.step)),
                       qcfg.protect_dc)
    tree = build_best_tree(plane, f, CostConfig(cfg.cost_threshold, cfg.max_level))
    default = plane_transposed(tree.root)
    parts = [_scan(quantize_leaf(n.path, n.block, qcfg), leaf_transposed(n.path, default))
             for n in tree.leaves()]
    symbols = np.concatenate(parts)
    if symbols.min() < _INT32[0] or symbols.max() > _INT32[1]:
        raise InvalidInputError("quantised coefficient exceeds 32 bits; use a larger step")
    values, runs = rle_encode(rle_smooth(symbols, cfg.rle_delta))
    vt, rt = table_for(values), table_for(runs)
    payload = bits_to_bytes(huffman_encode(values, vt) + huffman_encode(runs, rt))
    record = PlaneRecord(qcfg.hard_threshold, qcfg.step, cfg.rle_delta,
                         serialize_topology(tree), vt, rt, len(values), payload)
    return PlaneInfo(tree, symbols, record)


def encode_verbose(img: Image, cfg: CodecConfig | None = None):
    """Like :func:`encode` but also returns per-plane :class:`PlaneInfo`."""
    cfg = cfg or CodecConfig()
    if img.width < 2 or img.height < 2:
        raise InvalidInputError("images must be at least 2x2")
    wid = parse_wavelet(cfg.wavelet)
    f = get_filters(wid)
    if img.channels == 1:
        planes = [img.samples.astype(np.float64)]
        colorspace = GRAY
    else:
        planes = rgb_to_yuv(img).planes
        colorspace = YUV
    infos = [_encode_plane(p, f, cfg, cfg.luma if i == 0 else cfg.chroma)
             for i, p in enumerate(planes)]
    header = ContainerHeader(colorspace, img.width, img.height, int(wid), cfg.max_level,
                             len(planes))
    if img.width > 0xFFFF or img.height > 0xFFFF:
        raise InvalidInputError("images are limited to 65535 pixels per side")
    return write_container(header, [i.record for i in infos]), infos


def encode(img: Image, cfg: CodecConfig | None = None) -> bytes:
    return encode_verbose(img, cfg)[0]


def _plane_symbols(header: ContainerHeader, rec: PlaneRecord):
    skeleton = deserialize_topology(rec.topology, header.shape, header.max_level)
    values, runs = rec.pairs
    return skeleton, rle_decode(values, runs)


def decode_symbols(data: bytes) -> list:
    """Quantised coefficients of every plane, in coding order."""
    header, records = read_container(data)
    return [_plane_symbols(header, rec)[1] for rec in records]


def decode(data: bytes) -> Image:
    header, records = read_container(data)
    f = get_filters(header.wavelet_id)
    planes = []
    for rec in records:
        skeleton, symbols = _plane_symbols(header, rec)
        default = plane_transposed(skeleton)
        blocks = []
        pos = 0
        for node in skeleton.leaves():
            size = node.shape[0] * node.shape[1]
            q = _unscan(symbols[pos:pos + size], node.shape, leaf_transposed(node.path, default))
            blocks.append(dequantize(q, rec.quant_step))
            pos += size
        if pos != symbols.size:
            raise CorruptContainerError("coefficient count does not match the tree")
        attach_blocks(skeleton, blocks)
        planes.append(reconstruct(PacketTree(skeleton, f.id, header.shape), f))
    if header.colorspace == GRAY:
        return plane_to_gray(planes[0])
    return yuv_to_rgb(PlaneSet(planes))


def psnr(a: Image, b: Image) -> float:
    if a.samples.shape != b.samples.shape:
        raise InvalidInputError(f"cannot compare {a!r} with {b!r}")
    diff = a.samples.astype(np.float64) - b.samples.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0:
        return math.inf
    return 10 * math.log10(255.0 ** 2 / mse)


@dataclass
class Metrics:
    compression_ratio: float
    percentage_compression: float
    psnr_db: float | None = None


def compression_stats(original_bytes: int, compressed_bytes: int) -> Metrics:
    if original_bytes <= 0 or compressed_bytes <= 0:
        raise InvalidInputError("sizes must be positive")
    return Metrics(original_bytes / compressed_bytes,
                   (1 - compressed_bytes / original_bytes) * 100)


def evaluate(img: Image, cfg: CodecConfig | None = None):
    """Encode, decode and measure.  Returns ``(container, reconstruction, Metrics)``."""
    data = encode(img, cfg)
    out = decode(data)
    m = compression_stats(img.raw_size, len(data))
    m.psnr_db = psnr(img, out)
    return data, out, m
