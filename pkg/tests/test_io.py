import numpy as np
import pytest

from tubal import io
from tubal.errors import ParseError


@pytest.fixture
def tensor():
    return np.random.default_rng(0).standard_normal((2, 3, 4))


def test_text_round_trip(tmp_path, tensor):
    path = tmp_path / "a.txt"
    io.write_text(path, tensor)
    assert path.read_text().splitlines()[0] == "2 3 4"
    assert np.array_equal(io.read_tensor(path), tensor)


def test_text_ordering(tmp_path):
    path = tmp_path / "a.txt"
    path.write_text("1 2 2\n1 2\n3 4\n")
    A = io.read_text(path)
    assert A[0, 0].tolist() == [1, 2] and A[0, 1].tolist() == [3, 4]


def test_binary_round_trip(tmp_path, tensor):
    path = tmp_path / "a.tubl"
    io.write_tensor(path, tensor, binary=True)
    raw = path.read_bytes()
    assert raw[:4] == b"TUBL" and len(raw) == 16 + 8 * tensor.size
    assert np.array_equal(io.read_tensor(path), tensor)


@pytest.mark.parametrize("text", [
    "", "2 2", "2 2 1\n1 2 3", "2 2 1\n1 2 3 x", "0 1 1\n", "1 1 1\nnan", "1 1 2\n1 2 3",
])
def test_text_errors(tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(ParseError):
        io.read_tensor(path)


def test_binary_errors(tmp_path, tensor):
    path = tmp_path / "a.tubl"
    io.write_binary(path, tensor)
    raw = path.read_bytes()
    for bad in (raw[:10], raw[:-8], b"TUBX" + raw[4:]):
        path.write_bytes(bad)
        with pytest.raises(ParseError):
            io.read_binary(path)
