"""Exact arithmetic over Z4 on numpy integer arrays.

Vectors are 1-D and matrices 2-D ``uint8`` arrays whose entries lie in
{0, 1, 2, 3}.  All helpers return freshly reduced arrays and never mutate
their inputs.

Vectors are ordered lexicographically with 0 < 1 < 2 < 3, first coordinate
most significant.  :func:`pack` maps a vector to the integer whose base-4
digits are its entries, so integer order on packed words coincides with
:func:`lex_compare`; codeword sets are stored packed throughout the package.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

DTYPE = np.uint8
UNITS = (1, 3)


def as_z4(data, ndim: int | None = None) -> np.ndarray:
    """Coerce ``data`` to a reduced Z4 array (a copy)."""
    arr = np.array(data, dtype=np.int64)
    if ndim is not None and arr.ndim != ndim:
        if ndim == 2 and arr.size == 0:
            arr = arr.reshape(0, 0)
        else:
            raise ValueError(f"expected a {ndim}-D array, got shape {arr.shape}")
    return np.mod(arr, 4).astype(DTYPE)


def vector(entries: Iterable[int]) -> np.ndarray:
    return as_z4(list(entries), ndim=1)


def matrix(rows: Sequence[Sequence[int]], cols: int | None = None) -> np.ndarray:
    """Build a Z4 matrix; ``cols`` is needed only to shape an empty row list."""
    if len(rows) == 0:
        return np.zeros((0, cols or 0), dtype=DTYPE)
    return as_z4(rows, ndim=2)


def identity(k: int) -> np.ndarray:
    return np.eye(k, dtype=DTYPE)


def negate(x) -> np.ndarray:
    return as_z4(-np.asarray(x, dtype=np.int64))


def add(x, y) -> np.ndarray:
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {y.shape}")
    return as_z4(x.astype(np.int64) + y)


def mat_mul(m, n) -> np.ndarray:
    m = np.asarray(m, dtype=np.int64)
    n = np.asarray(n, dtype=np.int64)
    if m.ndim != 2 or n.ndim != 2:
        raise ValueError("mat_mul expects 2-D matrices")
    if m.shape[1] != n.shape[0]:
        raise ValueError(f"cannot multiply {m.shape} by {n.shape}")
    return as_z4(m @ n)


def inner_product(x, y) -> int:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"inner product needs equal-length vectors, got {x.shape} and {y.shape}")
    return int(np.dot(x, y) % 4)


def lex_compare(a, b) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 1 or a.shape != b.shape:
        raise ValueError(f"lex_compare needs equal-length vectors, got {a.shape} and {b.shape}")
    diff = np.nonzero(a != b)[0]
    if diff.size == 0:
        return 0
    k = diff[0]
    return -1 if a[k] < b[k] else 1


def is_row_sorted(m) -> bool:
    m = np.asarray(m)
    return all(lex_compare(m[i], m[i + 1]) <= 0 for i in range(m.shape[0] - 1))


def is_col_sorted(m) -> bool:
    return is_row_sorted(np.asarray(m).T)


def powers(n: int) -> np.ndarray:
    """Place values 4**(n-1), ..., 4, 1 used by :func:`pack`."""
    return 4 ** np.arange(n - 1, -1, -1, dtype=np.int64)


def pack(rows) -> np.ndarray | int:
    """Pack vectors (last axis) into base-4 integers, first coordinate most significant."""
    rows = np.asarray(rows, dtype=np.int64)
    packed = rows @ powers(rows.shape[-1])
    return int(packed) if rows.ndim == 1 else packed


def unpack(words, n: int) -> np.ndarray:
    """Inverse of :func:`pack` for an array of words of length ``n``."""
    words = np.asarray(words, dtype=np.int64)
    shifts = 2 * np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((words[..., None] >> shifts) & 3).astype(DTYPE)


def span_words(rows, orders: Sequence[int]) -> np.ndarray:
    """All Z4 combinations ``sum a_i * rows[i]`` with ``0 <= a_i < orders[i]``.

    Returns the codewords as a (prod(orders), n) matrix; duplicates are kept
    when the rows are dependent.
    """
    rows = np.asarray(rows, dtype=np.int64)
    n = rows.shape[1]
    words = np.zeros((1, n), dtype=np.int64)
    for row, order in zip(rows, orders):
        coeffs = np.arange(order, dtype=np.int64)
        words = (words[:, None, :] + coeffs[None, :, None] * row).reshape(-1, n) % 4
    return words.astype(DTYPE)


def all_vectors(n: int, alphabet: Sequence[int] = (0, 1, 2, 3)) -> np.ndarray:
    """Every vector of length ``n`` over ``alphabet`` in lexicographic order."""
    alphabet = sorted(alphabet)
    grids = np.meshgrid(*([np.asarray(alphabet)] * n), indexing="ij")
    if n == 0:
        return np.zeros((1, 0), dtype=DTYPE)
    return np.stack([g.ravel() for g in grids], axis=1).astype(DTYPE)
