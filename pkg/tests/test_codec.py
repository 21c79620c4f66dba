import math

import numpy as np
import pytest

from wpcodec import codec
from wpcodec.codec import CodecConfig, QuantConfig, compression_stats, decode, encode, psnr
from wpcodec.container import read_container
from wpcodec.entropy import rle_smooth
from wpcodec.errors import ContainerError, InvalidInputError
from wpcodec.pixmap import Image
from wpcodec.synthetic import generate


def test_constant_image():
    img = generate("constant", 64, value=77)
    data, infos = codec.encode_verbose(img)
    assert len(data) < 0.1 * img.raw_size
    values, runs = read_container(data)[1][0].pairs
    assert runs.max() > 0.9 * runs.sum()
    assert decode(data) == img


def test_determinism():
    img = generate("noise", 40, seed=3)
    cfg = CodecConfig(wavelet="db4", max_level=2, rle_delta=2)
    assert encode(img, cfg) == encode(img, cfg)


def test_too_small_image():
    with pytest.raises(InvalidInputError):
        encode(Image(np.zeros((1, 1), np.uint8)))
    with pytest.raises(InvalidInputError):
        encode(generate("gradient", 4), CodecConfig(max_level=3))


def test_gradient_fine_quantiser():
    img = generate("gradient", 256)
    cfg = CodecConfig(luma=QuantConfig(0, 0.5), rle_delta=0)
    assert psnr(img, decode(encode(img, cfg))) >= 50


def test_truncated_container_errors():
    data = encode(generate("gradient", 32))
    for n in (0, 3, 12, len(data) // 2, len(data) - 1):
        with pytest.raises(ContainerError):
            decode(data[:n])


def test_psnr_values():
    a = generate("noise", 16, seed=1)
    assert psnr(a, a) == math.inf
    b = Image(np.where(a.samples < 128, a.samples + 1, a.samples - 1).astype(np.uint8))
    assert psnr(a, b) == pytest.approx(20 * math.log10(255), abs=1e-12)
    assert round(psnr(a, b), 4) == 48.1308
    with pytest.raises(InvalidInputError):
        psnr(a, generate("noise", 8))


def test_compression_stats():
    m = compression_stats(100, 100)
    assert (m.compression_ratio, m.percentage_compression) == (1.0, 0.0)
    m = compression_stats(400, 100)
    assert (m.compression_ratio, m.percentage_compression) == (4.0, 75.0)
    for o, c in [(65536, 6553), (3, 7), (196608, 1)]:
        m = compression_stats(o, c)
        assert abs(m.percentage_compression - (1 - 1 / m.compression_ratio) * 100) <= 1e-12
    with pytest.raises(InvalidInputError):
        compression_stats(0, 5)


@pytest.mark.parametrize("delta", [0, 1, 4])
def test_coding_stage_is_lossless(delta):
    img = generate("noise", 33, seed=9)
    data, infos = codec.encode_verbose(img, CodecConfig(max_level=2, rle_delta=delta))
    got = codec.decode_symbols(data)[0]
    assert np.array_equal(got, rle_smooth(infos[0].symbols, delta))
    if delta == 0:
        assert np.array_equal(got, infos[0].symbols)


def test_gray_equals_rgb_replica_luma():
    gray = generate("gradient", 48)
    rgb = Image(np.repeat(gray.samples[:, :, None], 3, axis=2))
    g = read_container(encode(gray))[1][0]
    c = read_container(encode(rgb))[1][0]
    assert g == c
    back = decode(encode(rgb)).samples
    expect = decode(encode(gray)).samples
    for ch in range(3):
        assert np.array_equal(back[:, :, ch], expect)


@pytest.mark.parametrize("wavelet", ["haar", "db2", "db4", "bior2_2"])
@pytest.mark.parametrize("shape", [(2, 2), (5, 7), (31, 18), (40, 40, 3), (9, 13, 3)])
def test_roundtrip_shapes(wavelet, shape):
    rng = np.random.default_rng(sum(shape))
    img = Image(rng.integers(0, 256, shape, dtype=np.uint8))
    levels = max(1, min(2, int(np.log2(min(shape[:2])))))
    cfg = CodecConfig(wavelet=wavelet, max_level=levels,
                      luma=QuantConfig(0, 0.25), chroma=QuantConfig(0, 0.25))
    out = decode(encode(img, cfg))
    assert out.samples.shape == img.samples.shape
    assert psnr(img, out) >= 45


def test_nonzero_count_monotone_in_threshold():
    img = generate("gradient", 128)
    counts = []
    pairs = []
    for t in (0, 1, 2, 4, 8, 16):
        _, infos = codec.encode_verbose(img, CodecConfig(luma=QuantConfig(t, 1.0)))
        counts.append(int(np.count_nonzero(infos[0].symbols)))
        pairs.append(infos[0].record.pair_count)
    assert counts == sorted(counts, reverse=True)


def test_horizontal_vertical_symmetry():
    h = len(encode(generate("horizontal", 128)))
    v = len(encode(generate("vertical", 128)))
    assert abs(h - v) <= 0.05 * max(h, v)


def test_scan_orientation_rules():
    assert codec.leaf_transposed("AV", False) is True
    assert codec.leaf_transposed("VAA", False) is True
    assert codec.leaf_transposed("HA", True) is False
    assert codec.leaf_transposed("AAA", True) is True
    assert codec.leaf_transposed("AD", False) is False
