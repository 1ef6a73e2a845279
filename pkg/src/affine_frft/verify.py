"""Seeded invariant suite behind ``frft verify``.

Every check compares two independently computed quantities and records the
worst residual over the trials. A check passes iff ``residual <= tolerance``.
Checks that only make sense on the generic branch are listed as skipped for
delta-branch angles, never as failed.

Randomness comes from numpy's PCG64 bit generator, seeded per grid point
from ``(seed, N, bits of alpha)``. Results therefore do not depend on the
order (or concurrency) in which grid points are evaluated.
"""

import json
import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List

import numpy as np

from . import __version__
from .convolution import chirp_circular_convolve, spectral_product
from .core import make_params
from .errors import InvalidLength
from .kernel import build_matrix, is_circulant
from .transform import frft_direct, frft_fast, ifrft

__all__ = [
    "DEFAULT_ALPHAS",
    "DEFAULT_NS",
    "GENERATOR",
    "TOLERANCES",
    "VerificationReport",
    "rng_for",
    "run_verification",
]

DEFAULT_ALPHAS = (0.3, 0.7, math.pi / 4, math.pi / 2, 1.9, 2.7)
DEFAULT_NS = (4, 8, 16, 64)
GENERATOR = "numpy.random.PCG64 seeded by SeedSequence([seed, N, alpha_bits_lo, alpha_bits_hi])"

TOLERANCES = {
    "theorem": 1e-10,
    "dft_reduction": 1e-14,
    "dft_convolution": 1e-12,
    "parseval": 1e-10,
    "round_trip": 1e-10,
    "fast_vs_direct": 1e-10,
    "non_circulant": 0.0,
    "kernel_symmetry": 0.0,
    "delta_branch": 0.0,
}

_GENERIC_ONLY = ("theorem", "parseval", "non_circulant")


@dataclass
class VerificationReport:
    checks: List[dict] = field(default_factory=list)
    skipped: List[dict] = field(default_factory=list)
    grid: dict = field(default_factory=dict)
    tool_version: str = __version__

    @property
    def summary(self):
        passed = sum(1 for c in self.checks if c["passed"])
        return {
            "total": len(self.checks),
            "passed": passed,
            "failed": len(self.checks) - passed,
            "skipped": len(self.skipped),
        }

    @property
    def ok(self):
        return all(c["passed"] for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c["passed"]]

    def to_dict(self):
        return {
            "tool": "affine-frft",
            "tool_version": self.tool_version,
            "generator": GENERATOR,
            "grid": self.grid,
            "checks": self.checks,
            "skipped": self.skipped,
            "summary": self.summary,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def rng_for(seed, n_points, alpha):
    lo, hi = struct.unpack("<II", struct.pack("<d", float(alpha)))
    ss = np.random.SeedSequence([int(seed), int(n_points), lo, hi])
    return np.random.Generator(np.random.PCG64(ss))


def _random_signals(rng, trials, N):
    return rng.standard_normal((trials, N)) + 1j * rng.standard_normal((trials, N))


def _entry(name, alpha, N, seed, residual):
    tol = TOLERANCES[name]
    residual = float(residual)
    return {
        "name": name,
        "alpha": float(alpha),
        "n_points": int(N),
        "seed": int(seed),
        "residual": residual,
        "tolerance": tol,
        "passed": bool(residual <= tol),
    }


def _rowmax(a):
    return np.abs(a).max(axis=-1)


def _grid_point(alpha, N, seed, trials):
    p = make_params(alpha, N)
    rng = rng_for(seed, N, alpha)
    x = _random_signals(rng, trials, N)
    checks, skipped = [], []

    direct = frft_direct(p, x)
    fast = frft_fast(p, x)
    checks.append(_entry("fast_vs_direct", alpha, N, seed,
                         (_rowmax(fast - direct) / _rowmax(direct)).max()))
    checks.append(_entry("round_trip", alpha, N, seed,
                         _rowmax(ifrft(p, direct) - x).max()))
    W = build_matrix(p).entries
    checks.append(_entry("kernel_symmetry", alpha, N, seed, np.abs(W - W.T).max()))

    if not p.is_generic:
        idx = np.arange(N)
        expect = x if p.branch.value == "identity" else x[:, (-idx) % N]
        checks.append(_entry("delta_branch", alpha, N, seed, np.abs(direct - expect).max()))
        for name in _GENERIC_ONLY:
            skipped.append({
                "name": name,
                "alpha": float(alpha),
                "n_points": int(N),
                "reason": f"{p.branch.value} branch: check applies to generic angles only",
            })
        return checks, skipped

    h = _random_signals(rng, trials, N)
    H = frft_direct(p, h)
    lhs = frft_direct(p, chirp_circular_convolve(p, h, x))
    rhs = spectral_product(p, H, direct)
    scale = 1.0 + _rowmax(H) * _rowmax(direct)
    checks.append(_entry("theorem", alpha, N, seed, (_rowmax(lhs - rhs) / scale).max()))

    csc = 1.0 / abs(math.sin(alpha))
    ex = np.sum(np.abs(x) ** 2, axis=-1)
    eX = np.sum(np.abs(direct) ** 2, axis=-1)
    checks.append(_entry("parseval", alpha, N, seed, (np.abs(eX - csc * ex) / (csc * ex)).max()))

    if N >= 2:
        verdict = is_circulant(W)
        checks.append(_entry("non_circulant", alpha, N, seed, 0.0 if not verdict else 1.0))
    else:
        skipped.append({
            "name": "non_circulant", "alpha": float(alpha), "n_points": int(N),
            "reason": "every 1x1 matrix is circulant",
        })
    return checks, skipped


def _dft_point(N, seed, trials):
    alpha = math.pi / 2
    p = make_params(alpha, N)
    idx = np.arange(N)
    unitary = np.exp(-2j * np.pi * ((idx[:, None] * idx[None, :]) % N) / N) / math.sqrt(N)
    checks = [_entry("dft_reduction", alpha, N, seed,
                     np.abs(build_matrix(p).entries - unitary).max())]
    rng = rng_for(seed, N, alpha)
    h = _random_signals(rng, trials, N)
    x = _random_signals(rng, trials, N)
    # Classical theorem: DFT(h (*) x) = DFT(h) DFT(x); unitary scaling gives 1/N.
    lhs = frft_direct(p, chirp_circular_convolve(p, h, x))
    rhs = np.fft.fft(h) * np.fft.fft(x) / N
    scale = 1.0 + _rowmax(np.fft.fft(h)) * _rowmax(np.fft.fft(x)) / N
    checks.append(_entry("dft_convolution", alpha, N, seed, (_rowmax(lhs - rhs) / scale).max()))
    return checks


def run_verification(alphas=DEFAULT_ALPHAS, ns=DEFAULT_NS, seed=42, trials=10, jobs=1):
    """Run the invariant suite over the ``alphas x ns`` grid.

    Parameters
    ----------
    alphas : sequence of float
    ns : sequence of int
    seed : int
    trials : int
        Random signals (or signal pairs) per grid point.
    jobs : int
        Worker threads. Output is identical for any value.

    Returns
    -------
    VerificationReport
    """
    alphas = [float(a) for a in alphas]
    ns = [int(n) for n in ns]
    if not alphas or not ns:
        raise InvalidLength("the verification grid is empty")
    if any(n < 1 for n in ns):
        raise InvalidLength(f"grid lengths must be positive, got {ns}")
    if trials < 1:
        raise InvalidLength(f"trials must be positive, got {trials}")
    for a in alphas:
        make_params(a, 1)

    tasks = [(_grid_point, (a, n, seed, trials)) for a in alphas for n in ns]
    tasks += [(_dft_point, (n, seed, trials)) for n in sorted(set(ns))]

    def run(task):
        fn, args = task
        out = fn(*args)
        return out if isinstance(out, tuple) else (out, [])

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, tasks))
    else:
        results = [run(t) for t in tasks]

    report = VerificationReport(grid={
        "alpha": alphas, "n": ns, "seed": int(seed), "trials": int(trials),
    })
    for checks, skipped in results:
        report.checks.extend(checks)
        report.skipped.extend(skipped)
    key = lambda c: (c["name"], c["alpha"], c["n_points"])
    report.checks.sort(key=key)
    report.skipped.sort(key=key)
    return report
