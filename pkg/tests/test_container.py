import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_record
from fuzzing import check_mutant, generated_containers, mutate
from wpcodec.container import (
    GRAY,
    YUV,
    ContainerHeader,
    read_container,
    serialize_topology,
    deserialize_topology,
    write_container,
)
from wpcodec.errors import (
    BadMagicError,
    ContainerError,
    CorruptContainerError,
    UnsupportedVersionError,
)
from wpcodec.packet_tree import CostConfig, PacketNode, build_best_tree
from wpcodec.wavelets import get_filters


def _tree(bits):
    return deserialize_topology(bits, (64, 64), 3)


@pytest.mark.parametrize("bits", ["0", "10000", "110000000"])
def test_topology_examples(bits):
    root = _tree(bits)
    assert serialize_topology(root) == bits


def test_topology_of_built_tree():
    tree = build_best_tree(np.full((4, 4), 10.0), get_filters("haar"), CostConfig(5, 2))
    assert serialize_topology(tree) == "1" + "10000" * 4


@pytest.mark.parametrize("bits", ["1", "", "00", "100000", "11000"])
def test_topology_errors(bits):
    with pytest.raises(CorruptContainerError):
        _tree(bits)


def random_tree(draw_bits, depth=0, max_depth=3):
    if depth < max_depth and draw_bits():
        return "1" + "".join(random_tree(draw_bits, depth + 1, max_depth) for _ in range(4))
    return "0"


@given(st.randoms(use_true_random=False))
def test_topology_roundtrip_random_trees(rnd):
    bits = random_tree(lambda: rnd.random() < 0.5)
    root = _tree(bits)
    assert isinstance(root, PacketNode)
    assert serialize_topology(root) == bits
    assert len(bits) == sum(1 for _ in root.walk())


def test_minimal_container_roundtrip(minimal_container):
    header, records = minimal_container
    data = write_container(header, records)
    h2, r2 = read_container(data)
    assert (h2, r2) == (header, records)
    assert write_container(h2, r2) == data
    assert data[:4] == b"WPB1" and data[4] == 1
    assert r2[0].pairs[0].tolist() == [1, 2, 3, 4]


def test_header_layout(minimal_container):
    data = write_container(*minimal_container)
    assert data[:13] == b"WPB1" + bytes([1, 0, 0, 2, 0, 2, 0, 1, 1])


def test_bad_magic_and_version(minimal_container):
    data = write_container(*minimal_container)
    with pytest.raises(BadMagicError):
        read_container(b"XXXX" + data[4:])
    with pytest.raises(UnsupportedVersionError):
        read_container(data[:4] + b"\x02" + data[5:])


def test_trailing_bytes(minimal_container):
    data = write_container(*minimal_container)
    with pytest.raises(CorruptContainerError):
        read_container(data + b"\x00")


def test_every_prefix_is_an_error(minimal_container):
    data = write_container(*minimal_container)
    for n in range(len(data)):
        with pytest.raises(ContainerError):
            read_container(data[:n])


def test_write_rejects_inconsistent_records(minimal_container):
    header, records = minimal_container
    with pytest.raises(CorruptContainerError):
        write_container(ContainerHeader(YUV, 2, 2, 0, 1, 3), records)
    with pytest.raises(CorruptContainerError):
        write_container(header, [make_record(np.array([1, 2, 3]))])
    with pytest.raises(CorruptContainerError):
        write_container(ContainerHeader(GRAY, 2, 2, 9, 1, 1), records)
    with pytest.raises(CorruptContainerError):
        write_container(ContainerHeader(GRAY, 2, 2, 0, 2, 1), records)


def test_reals_stored_as_f32():
    rec = make_record(np.array([0, 0, 0, 0]), threshold=0.1, step=0.3)
    assert rec.hard_threshold == float(np.float32(0.1))
    header = ContainerHeader(GRAY, 2, 2, 0, 1, 1)
    assert read_container(write_container(header, [rec]))[1] == [rec]


def test_generated_roundtrip():
    for data in generated_containers(30):
        header, records = read_container(data)
        assert write_container(header, records) == data
        assert read_container(write_container(header, records)) == (header, records)


def test_fuzz_small():
    rng = np.random.default_rng(5)
    corpus = generated_containers(10, seed=1)
    seen = {"error": 0, "valid": 0}
    for i in range(500):
        seen[check_mutant(mutate(corpus[i % len(corpus)], rng))] += 1
    assert seen["error"] > 0
