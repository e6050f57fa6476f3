"""Tensor file formats.

Text: first line ``m n p``, then ``m*n*p`` whitespace-separated values with
i outermost and k innermost.  Binary: 16-byte header (``b"TUBL"`` and
little-endian u32 ``m, n, p``) followed by little-endian f64 values in the
same order.
"""
import struct

import numpy as np

from .errors import ParseError

MAGIC = b"TUBL"
_HEADER = struct.Struct("<4sIII")


def write_text(path, A):
    A = np.asarray(A, dtype=float)
    m, n, p = A.shape
    with open(path, "w") as fh:
        fh.write(f"{m} {n} {p}\n")
        for i in range(m):
            for j in range(n):
                fh.write(" ".join(repr(float(x)) for x in A[i, j]) + "\n")


def read_text(path):
    with open(path) as fh:
        tokens = fh.read().split()
    if len(tokens) < 3:
        raise ParseError(f"{path}: missing 'm n p' header")
    try:
        m, n, p = (int(t) for t in tokens[:3])
        values = np.array([float(t) for t in tokens[3:]])
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None
    if min(m, n, p) < 1:
        raise ParseError(f"{path}: dimensions must be positive, got {m} {n} {p}")
    if values.size != m * n * p:
        raise ParseError(f"{path}: expected {m * n * p} values, found {values.size}")
    if not np.all(np.isfinite(values)):
        raise ParseError(f"{path}: non-finite values")
    return values.reshape(m, n, p)


def write_binary(path, A):
    A = np.asarray(A, dtype="<f8")
    m, n, p = A.shape
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, m, n, p))
        fh.write(np.ascontiguousarray(A).tobytes())


def read_binary(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < _HEADER.size:
        raise ParseError(f"{path}: truncated header")
    magic, m, n, p = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise ParseError(f"{path}: bad magic {magic!r}")
    payload = raw[_HEADER.size:]
    if len(payload) != 8 * m * n * p:
        raise ParseError(f"{path}: expected {8 * m * n * p} payload bytes, found {len(payload)}")
    A = np.frombuffer(payload, dtype="<f8").reshape(m, n, p).astype(float)
    if not np.all(np.isfinite(A)):
        raise ParseError(f"{path}: non-finite values")
    return A


def read_tensor(path):
    """Read either format, picking binary when the file starts with the magic."""
    with open(path, "rb") as fh:
        head = fh.read(4)
    return read_binary(path) if head == MAGIC else read_text(path)


def write_tensor(path, A, binary=False):
    (write_binary if binary else write_text)(path, A)
