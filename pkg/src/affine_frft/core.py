"""Angle classification, transform parameters and exact chirp phases.

The affine kernel has three branches. For a generic angle it is

    K[k, n] = kappa * exp(A * (n**2 + k**2) + B * n * k)

with ``A = 1j*pi*cot(alpha)``, ``B = -2j*pi/N`` and
``kappa = sqrt((1 - 1j*cot(alpha)) / N)`` (principal root). At multiples
of ``2*pi`` the kernel is ``delta(k - n)``; at odd multiples of ``pi`` it
is ``delta((k + n) mod N)``.

The identity branch is sometimes printed as ``delta(k - x)``; the ``x`` is
a typo for ``n`` and is read that way here.
"""

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidLength, NearSingularAngle

__all__ = [
    "AngleBranch",
    "FrftParams",
    "DEFAULT_TOL",
    "classify_angle",
    "make_params",
    "half_turns",
    "chirp",
]

DEFAULT_TOL = 1e-12

_TWO_PI = 2.0 * math.pi
# Veltkamp splitter for 53-bit doubles.
_SPLITTER = 134217729.0


class AngleBranch(enum.Enum):
    GENERIC = "generic"
    IDENTITY = "identity"
    REVERSAL = "reversal"


def _near_zero_mod(value, period, tol):
    r = value % period
    return r < tol or period - r < tol


def classify_angle(alpha, tol=DEFAULT_TOL):
    """Return the kernel branch selected by `alpha`.

    Parameters
    ----------
    alpha : float
        Rotation angle in radians.
    tol : float, optional
        Absolute tolerance on the angle modulo ``2*pi``.

    Returns
    -------
    AngleBranch

    Raises
    ------
    NearSingularAngle
        If ``|sin(alpha)| < tol`` but neither delta branch matched.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise NearSingularAngle(f"angle {alpha!r} is not finite")
    if _near_zero_mod(alpha, _TWO_PI, tol):
        return AngleBranch.IDENTITY
    if _near_zero_mod(alpha + math.pi, _TWO_PI, tol):
        return AngleBranch.REVERSAL
    if abs(math.sin(alpha)) < tol:
        raise NearSingularAngle(
            f"angle {alpha!r} is within {tol:g} of a multiple of pi "
            "but matches neither delta branch"
        )
    return AngleBranch.GENERIC


def _cot(alpha):
    # cos/sin of the double nearest pi/2 leaves cot ~ 6e-17, which costs
    # ~1e-12 of phase at N=64; snap the exact quarter-turn to zero.
    r = alpha % math.pi
    if abs(r - 0.5 * math.pi) <= 4.0 * np.finfo(float).eps * max(1.0, abs(alpha)):
        return 0.0
    return math.cos(alpha) / math.sin(alpha)


@dataclass(frozen=True)
class FrftParams:
    """Parameters of an ``n_points``-point affine DFrFT at angle `alpha`.

    ``cot_alpha``, ``chirp_rate`` (A) and ``kappa`` are ``None`` on the two
    delta branches, where they are undefined.
    """

    alpha: float
    n_points: int
    branch: AngleBranch
    cot_alpha: Optional[float]
    chirp_rate: Optional[complex]
    dft_rate: complex
    kappa: Optional[complex]

    @property
    def is_generic(self):
        return self.branch is AngleBranch.GENERIC


def make_params(alpha, n_points, tol=DEFAULT_TOL):
    """Classify `alpha` and derive the coefficients ``A``, ``B`` and ``kappa``."""
    if isinstance(n_points, bool) or int(n_points) != n_points or n_points < 1:
        raise InvalidLength(f"n_points must be a positive integer, got {n_points!r}")
    n_points = int(n_points)
    alpha = float(alpha)
    branch = classify_angle(alpha, tol)
    dft_rate = complex(0.0, -_TWO_PI / n_points)
    if branch is not AngleBranch.GENERIC:
        return FrftParams(alpha, n_points, branch, None, None, dft_rate, None)
    cot = _cot(alpha)
    kappa = cmath.sqrt(complex(1.0, -cot) / n_points)
    return FrftParams(
        alpha, n_points, branch, cot, complex(0.0, math.pi * cot), dft_rate, kappa
    )


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def half_turns(c, m):
    """Return ``c * m`` reduced modulo 2, without losing low-order bits.

    ``exp(1j*pi*c*m)`` only depends on ``c*m mod 2``, but forming ``c*m``
    directly rounds away ~``eps*|c*m|`` of phase, which at ``m ~ N**2``
    is far above the tolerances the transform is held to. The product is
    formed as an unevaluated sum ``p + err`` (Dekker's two-product) and
    only ``p`` is reduced, which ``fmod`` does exactly.

    Parameters
    ----------
    c : float
    m : array_like of int
        Integers below ``2**53``.
    """
    m = np.asarray(m, dtype=np.float64)
    p = c * m
    ch, cl = _split(c)
    mh, ml = _split(m)
    err = ((ch * mh - p) + ch * ml + cl * mh) + cl * ml
    return np.fmod(p, 2.0) + err


def chirp(params, indices, sign=1):
    """Return ``exp(sign * A * indices**2)`` for a generic-branch `params`."""
    idx = np.asarray(indices, dtype=np.int64)
    t = half_turns(params.cot_alpha, idx * idx)
    return np.exp((sign * np.pi * 1j) * t)
