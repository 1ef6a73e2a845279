"""Forward and inverse affine DFrFT.

Two forward paths share one value contract. `frft_direct` sums the kernel
explicitly. `frft_fast` uses the factorization

    X[k] = kappa * exp(A k**2) * sum_n (x[n] exp(A n**2)) exp(B n k)

i.e. chirp, unnormalized DFT, chirp. The same factorization inverted gives
`ifrft`. Note that the transform at ``-alpha`` is *not* the inverse at
``alpha``: the chirps do not cancel across the DFT.

All functions transform along the last axis, so a stack of signals of
shape ``(..., N)`` is handled in one call.
"""

import numpy as np

from .core import AngleBranch, chirp
from .errors import FrftError, InvalidLength, LengthMismatch
from .kernel import kernel_block

__all__ = ["dft", "idft", "frft_direct", "frft_fast", "frft", "ifrft"]

# Elements per kernel block in the direct path (complex128: 64 MiB).
_BLOCK_ELEMENTS = 1 << 22


def _is_pow2(n):
    return n > 0 and n & (n - 1) == 0


def _bit_reverse(n):
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def _fft_radix2(x, sign):
    N = x.shape[-1]
    x = x[..., _bit_reverse(N)]
    lead = x.shape[:-1]
    m = 2
    while m <= N:
        half = m // 2
        # 2*j/m is exact for power-of-two m.
        w = np.exp(sign * 1j * np.pi * (2.0 * np.arange(half) / m))
        blocks = x.reshape(lead + (N // m, m))
        even = blocks[..., :half]
        odd = blocks[..., half:] * w
        x = np.concatenate((even + odd, even - odd), axis=-1).reshape(lead + (N,))
        m *= 2
    return x


def _dft_direct(x, sign):
    N = x.shape[-1]
    idx = np.arange(N)
    twiddle = np.exp(sign * 2j * np.pi * ((idx[:, None] * idx[None, :]) % N) / N)
    return x @ twiddle


def _as_complex(x):
    x = np.asarray(x, dtype=complex)
    if x.ndim == 0:
        raise LengthMismatch("expected a vector, got a scalar")
    return x


def _dft(x, sign):
    x = _as_complex(x)
    N = x.shape[-1]
    if N == 0:
        raise InvalidLength("cannot transform an empty vector")
    if _is_pow2(N):
        return _fft_radix2(x, sign)
    return _dft_direct(x, sign)


def dft(x):
    """Unnormalized DFT, ``X[k] = sum_n x[n] exp(-2j pi n k / N)``.

    Radix-2 for power-of-two lengths, O(N**2) summation otherwise.
    """
    return _dft(x, -1)


def idft(X):
    """Inverse of `dft`, ``x[n] = (1/N) sum_k X[k] exp(+2j pi n k / N)``."""
    X = _as_complex(X)
    return _dft(X, +1) / X.shape[-1]


def _check(params, x):
    x = _as_complex(x)
    if x.shape[-1] != params.n_points:
        raise LengthMismatch(
            f"signal length {x.shape[-1]} does not match N={params.n_points}"
        )
    if not np.all(np.isfinite(x)):
        raise FrftError("signal contains non-finite samples")
    return x


def _permute(params, x):
    # Both delta branches are involutions, so forward and inverse coincide.
    if params.branch is AngleBranch.IDENTITY:
        return x.copy()
    N = params.n_points
    return x[..., (-np.arange(N)) % N]


def frft_direct(params, x):
    """Affine DFrFT by explicit kernel summation, O(N**2)."""
    x = _check(params, x)
    if not params.is_generic:
        return _permute(params, x)
    N = params.n_points
    n = np.arange(N)
    out = np.empty(x.shape, dtype=complex)
    step = max(1, _BLOCK_ELEMENTS // N)
    for start in range(0, N, step):
        k = n[start:start + step]
        out[..., start:start + step] = x @ kernel_block(params, k, n).T
    return out


def frft_fast(params, x):
    """Affine DFrFT via chirp, DFT, chirp."""
    x = _check(params, x)
    if not params.is_generic:
        return _permute(params, x)
    c = chirp(params, np.arange(params.n_points))
    return params.kappa * c * dft(x * c)


def frft(params, x, method="fast"):
    """Forward transform by ``method`` (``'fast'`` or ``'direct'``)."""
    if method == "fast":
        return frft_fast(params, x)
    if method == "direct":
        return frft_direct(params, x)
    raise ValueError(f"unknown method {method!r}")


def ifrft(params, X):
    """Exact inverse of the forward transform.

    ``x[n] = 1/(kappa N) exp(-A n**2) sum_k X[k] exp(-A k**2) exp(+2j pi n k / N)``
    """
    X = _check(params, X)
    if not params.is_generic:
        return _permute(params, X)
    c = chirp(params, np.arange(params.n_points), sign=-1)
    return c * idft(X * c) / params.kappa
