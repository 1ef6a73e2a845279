"""Affine discrete fractional Fourier transform with a circular convolution theorem."""

__version__ = "0.1.0"

from .core import AngleBranch, FrftParams, classify_angle, make_params  # noqa: E402
from .kernel import FrftMatrix, build_matrix, is_circulant, kernel_value  # noqa: E402
from .transform import dft, frft, frft_direct, frft_fast, idft, ifrft  # noqa: E402
from .convolution import (  # noqa: E402
    ChirpSignal,
    chirp_circular_convolve,
    chirp_modulate,
    circular_convolve,
    equalize,
    spectral_product,
)
from .errors import *  # noqa: E402,F401,F403

__all__ = [
    "AngleBranch",
    "FrftParams",
    "classify_angle",
    "make_params",
    "FrftMatrix",
    "build_matrix",
    "is_circulant",
    "kernel_value",
    "dft",
    "idft",
    "frft",
    "frft_direct",
    "frft_fast",
    "ifrft",
    "ChirpSignal",
    "chirp_circular_convolve",
    "chirp_modulate",
    "circular_convolve",
    "equalize",
    "spectral_product",
]
