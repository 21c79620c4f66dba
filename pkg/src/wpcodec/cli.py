"""Command-line front end: ``wpb encode|decode|info|metrics|gen``."""

from __future__ import annotations

import argparse
import math
import sys

from . import codec
from .container import GRAY, read_container
from .errors import UnsupportedWaveletError, WPBError
from .packet_tree import PacketTree
from .pixmap import load_pnm, save_pnm
from .quantizer import QuantConfig
from .synthetic import KINDS, generate
from .wavelets import WaveletId

EXIT_OK, EXIT_ERROR, EXIT_USAGE = 0, 1, 2


class CommandError(Exception):
    pass


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as e:
        raise CommandError(f"cannot open {path}: {e.strerror}") from None


def _write(path: str, data: bytes) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as e:
        raise CommandError(f"cannot write {path}: {e.strerror}") from None


def fmt_db(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.4f}"


def config_from_args(args) -> codec.CodecConfig:
    d = codec.CodecConfig()
    luma = QuantConfig(
        d.luma.hard_threshold if args.threshold is None else args.threshold,
        d.luma.step if args.step is None else args.step,
    )
    chroma = QuantConfig(
        d.chroma.hard_threshold if args.chroma_threshold is None else args.chroma_threshold,
        d.chroma.step if args.chroma_step is None else args.chroma_step,
    )
    return codec.CodecConfig(
        wavelet=args.wavelet,
        max_level=args.levels,
        cost_threshold=args.cost_threshold,
        luma=luma,
        chroma=chroma,
        rle_delta=args.rle_delta,
    )


def cmd_encode(args) -> int:
    img = load_pnm(_read(args.input))
    cfg = config_from_args(args)
    data = codec.encode(img, cfg)
    _write(args.output, data)
    stats = codec.compression_stats(img.raw_size, len(data))
    line = f"ratio={stats.compression_ratio:.4f} percent={stats.percentage_compression:.4f}"
    if args.verify:
        line += f" psnr={fmt_db(codec.psnr(img, codec.decode(data)))}"
    else:
        line += " psnr=-"
    print(line)
    return EXIT_OK


def cmd_decode(args) -> int:
    img = codec.decode(_read(args.input))
    _write(args.output, save_pnm(img))
    return EXIT_OK


def cmd_info(args) -> int:
    header, records = read_container(_read(args.input))
    print(f"magic=WPB1 version=1 colorspace={'gray' if header.colorspace == GRAY else 'yuv'} "
          f"width={header.width} height={header.height} "
          f"wavelet={WaveletId(header.wavelet_id).label} levels={header.max_level}")
    trees = []
    for rec in records:
        skeleton = codec.deserialize_topology(rec.topology, header.shape, header.max_level)
        trees.append(PacketTree(skeleton, header.wavelet_id, header.shape))
    print(f"planes={header.plane_count} leaves={sum(len(t.leaves()) for t in trees)} "
          f"depth={max(t.depth for t in trees)}")
    names = ["Y"] if header.colorspace == GRAY else ["Y", "U", "V"]
    for name, rec, tree in zip(names, records, trees):
        hist = ",".join(f"{k}:{v}" for k, v in tree.depth_histogram().items())
        print(f"[plane {name}] leaves={len(tree.leaves())} depth={tree.depth} histogram={hist} "
              f"threshold={rec.hard_threshold:g} step={rec.quant_step:g} delta={rec.rle_delta} "
              f"value_table={len(rec.value_table.symbols)} run_table={len(rec.run_table.symbols)} "
              f"pairs={rec.pair_count} payload_bytes={len(rec.payload)}")
    return EXIT_OK


def cmd_metrics(args) -> int:
    a = load_pnm(_read(args.a))
    b = load_pnm(_read(args.b))
    print(fmt_db(codec.psnr(a, b)))
    return EXIT_OK


def cmd_gen(args) -> int:
    _write(args.output, save_pnm(generate(args.kind, args.size, seed=args.seed)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    d = codec.CodecConfig()
    parser = argparse.ArgumentParser(prog="wpb", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="compress a PGM/PPM file")
    enc.add_argument("input")
    enc.add_argument("output")
    enc.add_argument("--wavelet", default=d.wavelet,
                     help="haar, db2, db4 or bior2_2 (default %(default)s)")
    enc.add_argument("--levels", type=int, default=d.max_level)
    enc.add_argument("--cost-threshold", type=float, default=d.cost_threshold)
    enc.add_argument("--threshold", type=float, help=f"luma hard threshold ({d.luma.hard_threshold:g})")
    enc.add_argument("--step", type=float, help=f"luma quantiser step ({d.luma.step:g})")
    enc.add_argument("--chroma-threshold", type=float,
                     help=f"chroma hard threshold ({d.chroma.hard_threshold:g})")
    enc.add_argument("--chroma-step", type=float, help=f"chroma step ({d.chroma.step:g})")
    enc.add_argument("--rle-delta", type=int, default=d.rle_delta)
    enc.add_argument("--verify", action="store_true", help="decode again and report PSNR")
    enc.set_defaults(func=cmd_encode)

    dec = sub.add_parser("decode", help="decompress to PGM/PPM")
    dec.add_argument("input")
    dec.add_argument("output")
    dec.set_defaults(func=cmd_decode)

    info = sub.add_parser("info", help="describe a compressed file")
    info.add_argument("input")
    info.set_defaults(func=cmd_info)

    met = sub.add_parser("metrics", help="PSNR between two PGM/PPM files")
    met.add_argument("a")
    met.add_argument("b")
    met.set_defaults(func=cmd_metrics)

    gen = sub.add_parser("gen", help="write a synthetic test image")
    gen.add_argument("kind", choices=KINDS)
    gen.add_argument("size", type=int)
    gen.add_argument("output")
    gen.add_argument("--seed", type=int, default=42)
    gen.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedWaveletError as e:
        print(f"wpb: usage error: {e}", file=sys.stderr)
    except (CommandError, WPBError) as e:
        print(f"wpb: {e}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
