"""Kernel evaluation and the dense transform matrix."""

from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np

from .core import AngleBranch, half_turns
from .errors import AllocationFailure, IndexOutOfRange

__all__ = [
    "FrftMatrix",
    "CirculantCheck",
    "MATRIX_CAP",
    "kernel_value",
    "kernel_block",
    "build_matrix",
    "is_circulant",
]

MATRIX_CAP = 16384


@dataclass(frozen=True)
class FrftMatrix:
    """Dense ``N x N`` transform matrix; ``entries[n, k] == K[k, n]``."""

    alpha: float
    n_points: int
    entries: np.ndarray

    def __matmul__(self, other):
        return self.entries @ other


class CirculantCheck(NamedTuple):
    circulant: bool
    violation: Optional[Tuple[int, int]]

    def __bool__(self):
        return self.circulant


def kernel_block(params, k, n):
    """Evaluate the kernel on the outer grid ``k[:, None], n[None, :]``.

    Both index vectors must already lie in ``range(N)``. The generic
    branch builds its phase in half-turns from exact integer ``n**2 + k**2``
    and ``n*k mod N`` so every code path sees the same rounding, and the
    result is symmetric in ``k`` and ``n`` bit for bit.
    """
    N = params.n_points
    k = np.asarray(k, dtype=np.int64)[:, None]
    n = np.asarray(n, dtype=np.int64)[None, :]
    if params.branch is AngleBranch.IDENTITY:
        return (k == n).astype(complex)
    if params.branch is AngleBranch.REVERSAL:
        return ((k + n) % N == 0).astype(complex)
    t = half_turns(params.cot_alpha, n * n + k * k)
    t = t - 2.0 * ((n * k) % N) / N
    return params.kappa * np.exp(1j * np.pi * t)


def kernel_value(params, k, n):
    """Return ``K[k, n]`` as a Python complex."""
    N = params.n_points
    for name, i in (("k", k), ("n", n)):
        if not 0 <= i < N:
            raise IndexOutOfRange(f"{name}={i} outside [0, {N})")
    return complex(kernel_block(params, [k], [n])[0, 0])


def build_matrix(params, cap=MATRIX_CAP):
    """Return the dense transform matrix ``W`` with ``X = W @ x``."""
    N = params.n_points
    if N > cap:
        raise AllocationFailure(f"N={N} exceeds the dense matrix cap of {cap}")
    idx = np.arange(N)
    # kernel_block is indexed (k, n); W is indexed (n, k). Symmetric anyway.
    entries = kernel_block(params, idx, idx).T.copy()
    entries.setflags(write=False)
    return FrftMatrix(params.alpha, N, entries)


def is_circulant(matrix, tol=1e-12):
    """Check whether ``W[n, k]`` depends only on ``(n - k) mod N``.

    Returns
    -------
    CirculantCheck
        ``violation`` is the first ``(n, k)`` in row-major order where
        ``|W[n, k] - W[(n - k) mod N, 0]| > tol``, or ``None``.
    """
    W = np.asarray(getattr(matrix, "entries", matrix))
    N = W.shape[0]
    idx = np.arange(N)
    reference = W[(idx[:, None] - idx[None, :]) % N, 0]
    bad = np.argwhere(np.abs(W - reference) > tol)
    if len(bad) == 0:
        return CirculantCheck(True, None)
    n, k = bad[0]
    return CirculantCheck(False, (int(n), int(k)))
