#!/usr/bin/env python3
"""Table-style compression report over a directory of PGM/PPM images.

    python scripts/bench.py [DIR] [--wavelet db2 --levels 3 ...]

Without DIR the synthetic corpus (horizontal, vertical, gradient, constant,
noise at 256x256) is used.
"""

import argparse
import pathlib
import sys

from wpcodec import codec
from wpcodec.cli import fmt_db
from wpcodec.errors import WPBError
from wpcodec.pixmap import load_pnm
from wpcodec.quantizer import QuantConfig
from wpcodec.synthetic import KINDS, generate


def images(directory):
    if directory is None:
        for kind in KINDS:
            yield kind.upper(), generate(kind, 256)
        return
    for path in sorted(pathlib.Path(directory).iterdir()):
        if path.suffix.lower() in (".pgm", ".ppm", ".pnm"):
            try:
                yield path.stem.upper(), load_pnm(path.read_bytes())
            except WPBError as e:
                print(f"skipping {path}: {e}", file=sys.stderr)


def main(argv=None):
    d = codec.CodecConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("directory", nargs="?")
    p.add_argument("--wavelet", default=d.wavelet)
    p.add_argument("--levels", type=int, default=d.max_level)
    p.add_argument("--cost-threshold", type=float, default=d.cost_threshold)
    p.add_argument("--threshold", type=float, default=d.luma.hard_threshold)
    p.add_argument("--step", type=float, default=d.luma.step)
    p.add_argument("--chroma-threshold", type=float, default=d.chroma.hard_threshold)
    p.add_argument("--chroma-step", type=float, default=d.chroma.step)
    p.add_argument("--rle-delta", type=int, default=d.rle_delta)
    args = p.parse_args(argv)
    cfg = codec.CodecConfig(
        wavelet=args.wavelet, max_level=args.levels, cost_threshold=args.cost_threshold,
        luma=QuantConfig(args.threshold, args.step),
        chroma=QuantConfig(args.chroma_threshold, args.chroma_step),
        rle_delta=args.rle_delta,
    )
    print(f"{'Image':<14}{'Percentage':>12}{'Ratio':>10}{'PSNR (dB)':>12}")
    for name, img in images(args.directory):
        _, _, m = codec.evaluate(img, cfg)
        print(f"{name:<14}{m.percentage_compression:>12.4f}{m.compression_ratio:>10.2f}"
              f"{fmt_db(m.psnr_db):>12}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
