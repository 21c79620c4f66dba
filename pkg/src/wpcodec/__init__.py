"""Wavelet-packet best-tree image codec with enhanced run-length and Huffman coding."""

from .codec import CodecConfig, Metrics, compression_stats, decode, encode, evaluate, psnr
from .pixmap import Image, load_pnm, save_pnm
from .quantizer import QuantConfig

__all__ = [
    "CodecConfig", "Metrics", "QuantConfig", "Image",
    "encode", "decode", "evaluate", "psnr", "compression_stats",
    "load_pnm", "save_pnm",
]
