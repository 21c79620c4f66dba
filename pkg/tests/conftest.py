import numpy as np
import pytest

from wpcodec.container import GRAY, ContainerHeader, PlaneRecord
from wpcodec.entropy import bits_to_bytes, huffman_encode, rle_encode, table_for


def make_record(symbols, topology="0", threshold=0.0, step=1.0, delta=0):
    values, runs = rle_encode(symbols)
    vt, rt = table_for(values), table_for(runs)
    payload = bits_to_bytes(huffman_encode(values, vt) + huffman_encode(runs, rt))
    return PlaneRecord(threshold, step, delta, topology, vt, rt, len(values), payload)


@pytest.fixture
def minimal_container():
    header = ContainerHeader(GRAY, 2, 2, 0, 1, 1)
    return header, [make_record(np.array([1, 2, 3, 4]))]


ACCEPTANCE_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: call with (number, passed, detail)."""

    def record(number, passed, detail):
        ACCEPTANCE_RESULTS.append((number, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {detail}")
