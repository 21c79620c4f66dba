import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from wpcodec.errors import (
    InvalidInputError,
    PNMHeaderError,
    PNMMagicError,
    PNMMaxvalError,
    PNMTruncatedError,
)
from wpcodec.pixmap import Image, PlaneSet, load_pnm, rgb_to_yuv, save_pnm, yuv_to_rgb


def test_load_p5():
    img = load_pnm(b"P5\n2 2\n255\n" + bytes([0, 128, 255, 64]))
    assert (img.width, img.height, img.channels) == (2, 2, 1)
    assert img.samples.tolist() == [[0, 128], [255, 64]]


def test_load_p6_red_pixel():
    img = load_pnm(b"P6\n1 1\n255\n" + bytes([255, 0, 0]))
    assert img.channels == 3
    assert img.samples[0, 0].tolist() == [255, 0, 0]


def test_comment_before_dimensions():
    img = load_pnm(b"P5\n# made by hand\n1 1\n255\n\x07")
    assert img.samples.tolist() == [[7]]


@pytest.mark.parametrize(
    "data, exc",
    [
        (b"P9\n1 1\n255\n\x00", PNMMagicError),
        (b"P5\n1 1\n65535\n\x00\x00", PNMMaxvalError),
        (b"P5\n2 2\n255\n\x00\x01", PNMTruncatedError),
        (b"P5\n2 2", PNMTruncatedError),
        (b"P5\n2 x\n255\n\x00", PNMHeaderError),
        (b"P", PNMTruncatedError),
    ],
)
def test_load_errors(data, exc):
    with pytest.raises(exc):
        load_pnm(data)


def test_save_gray_exact_bytes():
    assert save_pnm(Image(np.array([[7]], np.uint8))) == b"P5\n1 1\n255\n\x07"


def test_save_rgb_payload_length():
    data = save_pnm(Image(np.zeros((2, 2, 3), np.uint8)))
    assert data.startswith(b"P6\n2 2\n255\n")
    assert len(data) - len(b"P6\n2 2\n255\n") == 12


def test_image_rejects_out_of_range():
    with pytest.raises(InvalidInputError):
        Image(np.array([[256]]))
    with pytest.raises(InvalidInputError):
        Image.from_flat(2, 2, 1, [1, 2, 3])


images = st.one_of(
    arrays(np.uint8, st.tuples(st.integers(1, 9), st.integers(1, 9))),
    arrays(np.uint8, st.tuples(st.integers(1, 9), st.integers(1, 9), st.just(3))),
)


@given(images)
def test_save_load_roundtrip(samples):
    img = Image(samples)
    assert load_pnm(save_pnm(img)) == img


def test_yuv_gray_pixel():
    ps = rgb_to_yuv(Image(np.full((1, 1, 3), 100, np.uint8)))
    assert [p[0, 0] for p in ps.planes] == [100.0, 0.0, 0.0]


def test_yuv_pure_blue():
    y, u, v = (p[0, 0] for p in rgb_to_yuv(Image(np.array([[[0, 0, 255]]], np.uint8))).planes)
    assert y == pytest.approx(29.07, abs=1e-9)
    assert u == pytest.approx(225.93, abs=1e-9)
    assert v == pytest.approx(-29.07, abs=1e-9)


@given(st.integers(0, 255))
def test_gray_maps_to_zero_chroma_exactly(c):
    _, u, v = rgb_to_yuv(Image(np.full((1, 1, 3), c, np.uint8))).planes
    assert u[0, 0] == 0.0 and v[0, 0] == 0.0


def _ps(y, u, v):
    return PlaneSet([np.array([[y]]), np.array([[u]]), np.array([[v]])])


@pytest.mark.parametrize(
    "yuv, rgb",
    [
        ((100, 0, 0), [100, 100, 100]),
        ((29.07, 225.93, -29.07), [0, 0, 255]),
        ((300, 0, 0), [255, 255, 255]),
    ],
)
def test_yuv_to_rgb_examples(yuv, rgb):
    assert yuv_to_rgb(_ps(*yuv)).samples[0, 0].tolist() == rgb


def test_colour_roundtrip_random_pixels():
    rng = np.random.default_rng(7)
    img = Image(rng.integers(0, 256, (100, 100, 3), dtype=np.uint8))
    back = yuv_to_rgb(rgb_to_yuv(img))
    diff = np.abs(back.samples.astype(int) - img.samples.astype(int))
    assert diff.max() <= 1


def test_colour_errors():
    with pytest.raises(InvalidInputError):
        rgb_to_yuv(Image(np.zeros((2, 2), np.uint8)))
    with pytest.raises(InvalidInputError):
        yuv_to_rgb(PlaneSet([np.zeros((2, 2))]))
