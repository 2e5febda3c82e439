"""Small dense linear-algebra kernels over plain Python sequences.

Every state in this package is at most 6-dimensional, so the kernels work
on tuples of floats. Summation always runs left to right over the row,
which keeps results bit-identical across runs and platforms.
"""

from __future__ import annotations

import math
from typing import Sequence

Vector = Sequence[float]
Matrix = Sequence[Sequence[float]]


def as_vector(values, length: int | None = None, name: str = "vector") -> tuple[float, ...]:
    """Convert external input to a tuple of finite floats.

    Raises ValueError on a length mismatch or a NaN/Inf entry.
    """
    vec = tuple(float(v) for v in values)
    if length is not None and len(vec) != length:
        raise ValueError(f"{name} must have {length} entries, got {len(vec)}")
    if not all(math.isfinite(v) for v in vec):
        raise ValueError(f"{name} has non-finite entries")
    return vec


def matvec(M: Matrix, x: Vector) -> tuple[float, ...]:
    """Row-by-row product ``M @ x``."""
    n = len(x)
    out = []
    for row in M:
        if len(row) != n:
            raise ValueError(f"dimension mismatch: row of length {len(row)} against vector of length {n}")
        acc = 0.0
        for a, b in zip(row, x):
            acc += a * b
        out.append(acc)
    return tuple(out)


def transpose_apply(H: Matrix, r: Vector) -> tuple[float, ...]:
    """Compute ``H.T @ r`` without building the transpose."""
    if len(H) != len(r):
        raise ValueError(f"dimension mismatch: {len(H)} rows against vector of length {len(r)}")
    if not H:
        raise ValueError("cannot infer column count of an empty matrix")
    out = [0.0] * len(H[0])
    for row, coeff in zip(H, r):
        if len(row) != len(out):
            raise ValueError("ragged matrix")
        for c, a in enumerate(row):
            out[c] += a * coeff
    return tuple(out)


def norm2(x: Vector) -> float:
    # math.hypot scales internally, so (1e200, 1e200) does not overflow.
    return math.hypot(*x)


def add(x: Vector, y: Vector) -> tuple[float, ...]:
    return tuple(a + b for a, b in zip(x, y, strict=True))


def sub(x: Vector, y: Vector) -> tuple[float, ...]:
    return tuple(a - b for a, b in zip(x, y, strict=True))


def scale(alpha: float, x: Vector) -> tuple[float, ...]:
    return tuple(alpha * a for a in x)


def dot(x: Vector, y: Vector) -> float:
    acc = 0.0
    for a, b in zip(x, y, strict=True):
        acc += a * b
    return acc


def matmul(P: Matrix, Q: Matrix) -> tuple[tuple[float, ...], ...]:
    cols = transpose(Q)
    return tuple(tuple(dot(row, col) for col in cols) for row in P)


def identity(n: int) -> tuple[tuple[float, ...], ...]:
    return tuple(tuple(1.0 if r == c else 0.0 for c in range(n)) for r in range(n))


def transpose(M: Matrix) -> tuple[tuple[float, ...], ...]:
    return tuple(zip(*M))


# Reference kernels kept deliberately different from the ones above; tests
# compare the two paths against each other.

def matvec_by_columns(M: Matrix, x: Vector) -> tuple[float, ...]:
    """``M @ x`` accumulated column by column, from the last column down."""
    out = [0.0] * len(M)
    for c in reversed(range(len(x))):
        for r in range(len(M)):
            out[r] += M[r][c] * x[c]
    return tuple(out)


def transpose_apply_materialized(H: Matrix, r: Vector) -> tuple[float, ...]:
    return matvec_by_columns(transpose(H), r)
