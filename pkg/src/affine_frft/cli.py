"""Command line interface: ``frft transform|convolve|verify|matrix``.

Exit codes::

    0  success
    1  usage (bad flags, bad angle, invalid length)
    2  parse error in an input file
    3  length mismatch
    4  operation needs a generic angle
    5  spectral null in the equalizer
    6  verification failure
    7  I/O error
"""

import argparse
import math
import re
import sys

import numpy as np

from . import __version__
from .convolution import chirp_circular_convolve, spectral_product
from .core import make_params
from .errors import (
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY,
    FrftError,
    IoError,
    LengthMismatch,
)
from .kernel import build_matrix, is_circulant
from .signal_io import (
    atomic_write_text,
    read_signal_file,
    write_matrix,
    write_signal,
)
from .transform import frft, frft_direct, ifrft
from .verify import DEFAULT_ALPHAS, DEFAULT_NS, run_verification

__all__ = ["main", "parse_angle", "build_parser"]

CHECK_TOL = 1e-10

_PI_RE = re.compile(
    r"^(?P<coef>[+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(?P<div>\d+(?:\.\d*)?))?$"
)


def parse_angle(text):
    """Parse radians: a decimal literal or ``[c][*]pi[/d]`` (``pi/2``, ``-3*pi/4``)."""
    s = text.strip().lower()
    try:
        value = float(s)
    except ValueError:
        m = _PI_RE.match(s)
        if m is None:
            raise argparse.ArgumentTypeError(f"invalid angle {text!r}") from None
        coef = m.group("coef")
        c = {"": 1.0, "+": 1.0, "-": -1.0}.get(coef)
        if c is None:
            c = float(coef)
        value = c * math.pi
        if m.group("div"):
            value /= float(m.group("div"))
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"angle {text!r} is not finite")
    return value


def _angle_list(text):
    return [parse_angle(t) for t in text.split(",") if t.strip()]


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer list {text!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _log(msg):
    print(msg, file=sys.stderr)


def _resolve_alpha(args, *files):
    if args.alpha is not None:
        return args.alpha
    for f in files:
        if f.alpha is not None:
            return f.alpha
    raise FrftError("--alpha is required (no alpha annotation in the input file)")


def cmd_transform(args):
    sf = read_signal_file(args.input, args.format)
    alpha = _resolve_alpha(args, sf)
    p = make_params(alpha, sf.n_points)
    if args.inverse:
        out = ifrft(p, sf.samples)
    else:
        out = frft(p, sf.samples, method=args.method)
    write_signal(args.output, out, args.out_format, alpha=alpha)
    _log(f"{'inverse ' if args.inverse else ''}transform: alpha={alpha!r} "
         f"N={p.n_points} branch={p.branch.value}")
    return EXIT_OK


def cmd_convolve(args):
    hf = read_signal_file(args.h, args.format)
    xf = read_signal_file(args.x, args.format)
    if hf.n_points != xf.n_points:
        raise LengthMismatch(f"h has {hf.n_points} samples, x has {xf.n_points}")
    alpha = _resolve_alpha(args, hf, xf)
    p = make_params(alpha, xf.n_points)
    h, x = hf.samples, xf.samples

    def spectral():
        Y = spectral_product(p, frft_direct(p, h), frft_direct(p, x))
        return ifrft(p, Y)

    out = chirp_circular_convolve(p, h, x) if args.domain == "time" else spectral()
    write_signal(args.output, out, args.out_format, alpha=alpha)

    if args.check:
        other = spectral() if args.domain == "time" else chirp_circular_convolve(p, h, x)
        residual = float(np.abs(out - other).max() / (1.0 + np.abs(other).max()))
        ok = residual <= CHECK_TOL
        _log(f"check: residual={residual:.3e} tolerance={CHECK_TOL:.0e} "
             f"{'PASS' if ok else 'FAIL'}")
        if not ok:
            return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args):
    report = run_verification(args.alpha, args.n, seed=args.seed,
                              trials=args.trials, jobs=args.jobs)
    text = report.to_json()
    if args.report:
        atomic_write_text(args.report, text)
    else:
        sys.stdout.write(text)
    s = report.summary
    _log(f"verify: {s['passed']}/{s['total']} passed, {s['failed']} failed, "
         f"{s['skipped']} skipped")
    for c in report.failures():
        _log(f"  FAIL {c['name']} alpha={c['alpha']!r} N={c['n_points']} "
             f"residual={c['residual']:.3e} > {c['tolerance']:.0e}")
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_matrix(args):
    p = make_params(args.alpha, args.n)
    W = build_matrix(p)
    write_matrix(args.output, W)
    verdict = is_circulant(W)
    if verdict.circulant:
        _log("circulant: yes")
    else:
        n, k = verdict.violation
        _log(f"circulant: no (first violation at n={n}, k={k})")
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="frft", description="Affine discrete fractional Fourier transform.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def io_flags(p):
        p.add_argument("--format", choices=("csv", "json"),
                       help="input format (default: from file suffix)")
        p.add_argument("--out-format", choices=("csv", "json"),
                       help="output format (default: from file suffix)")

    t = sub.add_parser("transform", help="forward or inverse DFrFT of a signal file")
    t.add_argument("--alpha", type=parse_angle, help="angle in radians, e.g. 0.7 or pi/2")
    t.add_argument("--input", required=True)
    t.add_argument("--output", required=True)
    t.add_argument("--method", choices=("direct", "fast"), default="fast")
    t.add_argument("--inverse", action="store_true")
    io_flags(t)
    t.set_defaults(func=cmd_transform)

    c = sub.add_parser("convolve", help="chirp-circular convolution of two signals")
    c.add_argument("--alpha", type=parse_angle)
    c.add_argument("--h", required=True, help="channel / filter signal file")
    c.add_argument("--x", required=True, help="input signal file")
    c.add_argument("--output", required=True)
    c.add_argument("--domain", choices=("time", "spectral"), default="time")
    c.add_argument("--check", action="store_true",
                   help="cross-check the time and spectral routes")
    io_flags(c)
    c.set_defaults(func=cmd_convolve)

    v = sub.add_parser("verify", help="run the seeded invariant suite")
    v.add_argument("--alpha", type=_angle_list, default=list(DEFAULT_ALPHAS),
                   help="comma-separated angles")
    v.add_argument("--n", type=_int_list, default=list(DEFAULT_NS),
                   help="comma-separated lengths")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--report", help="JSON report path (default: stdout)")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("matrix", help="write the dense transform matrix as CSV")
    m.add_argument("--alpha", type=parse_angle, required=True)
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--output", required=True)
    m.set_defaults(func=cmd_matrix)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FrftError as exc:
        _log(f"frft {args.command}: {type(exc).__name__}: {exc}")
        return exc.exit_code
    except OSError as exc:
        _log(f"frft {args.command}: {IoError.__name__}: {exc}")
        return IoError.exit_code
    except ValueError as exc:
        _log(f"frft {args.command}: error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
