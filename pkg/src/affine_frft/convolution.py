"""Chirp-circular convolution and its fractional-domain image.

With ``x~[n] = x[n] exp(A n**2)`` and likewise for ``h``, the chirp-circular
convolution

    y~[n] = kappa * (h~ (*)_N x~)[n] * exp(-A n**2)

is diagonalized by the affine transform:

    F{y~}[k] = H[k] X[k] exp(-A k**2).

So a known channel can be undone with a single complex tap per
coefficient (`equalize`).
"""

from dataclasses import dataclass

import numpy as np

from .core import chirp
from .errors import BranchUnsupported, LengthMismatch, SpectralNull

__all__ = [
    "ChirpSignal",
    "circular_convolve",
    "chirp_modulate",
    "chirp_circular_convolve",
    "spectral_product",
    "equalize",
]


@dataclass(frozen=True)
class ChirpSignal:
    data: np.ndarray
    source_alpha: float

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.data, dtype=dtype)

    def __len__(self):
        return len(self.data)


def _pair(h, x):
    h = np.asarray(h, dtype=complex)
    x = np.asarray(x, dtype=complex)
    if h.shape[-1:] != x.shape[-1:]:
        raise LengthMismatch(f"lengths differ: {h.shape[-1]} vs {x.shape[-1]}")
    return h, x


def _require_generic(params, what):
    if not params.is_generic:
        raise BranchUnsupported(
            f"{what} needs a generic angle; alpha={params.alpha!r} is on the "
            f"{params.branch.value} branch where the chirp rate is undefined"
        )


def _require_length(params, *arrays):
    for a in arrays:
        if a.shape[-1] != params.n_points:
            raise LengthMismatch(
                f"length {a.shape[-1]} does not match N={params.n_points}"
            )


def circular_convolve(h, x):
    """``y[n] = sum_m h[m] x[(n - m) mod N]``, evaluated by direct summation."""
    h, x = _pair(h, x)
    y = np.zeros(np.broadcast_shapes(h.shape, x.shape), dtype=complex)
    for m in range(x.shape[-1]):
        # np.roll(x, m)[n] == x[(n - m) mod N]
        y += h[..., m, None] * np.roll(x, m, axis=-1)
    return y


def chirp_modulate(x, params, direction="forward"):
    """Multiply by ``exp(A n**2)`` (``'forward'``) or ``exp(-A n**2)`` (``'inverse'``).

    The forward result is wrapped in a `ChirpSignal` that remembers the angle.
    """
    _require_generic(params, "chirp modulation")
    x = np.asarray(x, dtype=complex)
    _require_length(params, x)
    if direction == "forward":
        sign = 1
    elif direction == "inverse":
        sign = -1
    else:
        raise ValueError(f"direction must be 'forward' or 'inverse', not {direction!r}")
    out = x * chirp(params, np.arange(params.n_points), sign)
    if sign > 0:
        return ChirpSignal(out, params.alpha)
    return out


def chirp_circular_convolve(params, h, x):
    """Chirp-modulate both inputs, convolve circularly, de-chirp, scale by kappa.

    The wrapped index ``(n - m) mod N`` addresses the already-modulated
    ``x~``, so the chirp is evaluated at the wrapped representative, not at
    ``n - m``.
    """
    _require_generic(params, "chirp-circular convolution")
    h, x = _pair(h, x)
    _require_length(params, h, x)
    ht = chirp_modulate(h, params).data
    xt = chirp_modulate(x, params).data
    y = circular_convolve(ht, xt)
    return params.kappa * chirp_modulate(y, params, "inverse")


def spectral_product(params, H, X):
    """``Y[k] = H[k] X[k] exp(-A k**2)``."""
    _require_generic(params, "the spectral product")
    H, X = _pair(H, X)
    _require_length(params, H, X)
    return H * X * chirp(params, np.arange(params.n_points), sign=-1)


def equalize(params, Y, H, eps=None):
    """Single-tap fractional-domain equalizer, ``X[k] = Y[k] exp(A k**2) / H[k]``.

    Parameters
    ----------
    params : FrftParams
    Y : array_like
        Received spectrum.
    H : array_like
        Channel spectrum (transform of the channel impulse response).
    eps : float, optional
        Null threshold on ``|H[k]|``. Defaults to ``1e-12 * max|H|``.

    Raises
    ------
    SpectralNull
        Listing every ``k`` with ``|H[k]| < eps``. Nothing is regularized.
    """
    _require_generic(params, "equalization")
    Y, H = _pair(Y, H)
    _require_length(params, Y, H)
    mag = np.abs(H)
    if eps is None:
        eps = max(1e-12 * float(mag.max()), np.finfo(float).tiny)
    if not eps > 0:
        raise ValueError("eps must be positive")
    nulls = np.flatnonzero(np.any(mag < eps, axis=tuple(range(mag.ndim - 1))))
    if len(nulls):
        raise SpectralNull(nulls, eps)
    return Y * chirp(params, np.arange(params.n_points)) / H
