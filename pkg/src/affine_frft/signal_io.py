"""Reading and writing complex signal files.

Two formats are supported:

* CSV with header ``index,re,im`` and rows ``0 .. N-1`` in order.
* JSON ``{"n": N, "alpha": a, "data": [[re, im], ...]}``, ``alpha`` optional.

Floats are written with 17 significant digits, so anything this module
writes reads back bit for bit. All writes go to a temporary file that is
renamed into place.
"""

import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import IoError, LengthMismatch, ParseError

__all__ = [
    "SignalFile",
    "CSV_HEADER",
    "MATRIX_HEADER",
    "infer_format",
    "read_signal_file",
    "read_signal",
    "write_signal",
    "write_matrix",
    "atomic_write_text",
]

CSV_HEADER = "index,re,im"
MATRIX_HEADER = "n,k,re,im"
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class SignalFile:
    format: str
    samples: np.ndarray
    alpha: Optional[float] = None

    @property
    def n_points(self):
        return len(self.samples)


def _fmt(v):
    return format(float(v), ".17g")


def infer_format(path, format=None):
    if format is not None:
        if format not in FORMATS:
            raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
        return format
    suffix = Path(path).suffix.lower().lstrip(".")
    if suffix in FORMATS:
        return suffix
    raise ParseError(f"cannot infer file format from {str(path)!r}; use csv or json")


def atomic_write_text(path, text):
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    try:
        fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=directory)
        try:
            with os.fdopen(fd, "w", newline="") as f:
                f.write(text)
                f.flush()
                os.fsync(f.fileno())
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        raise IoError(f"cannot write {str(path)!r}: {exc.strerror or exc}") from exc


def _parse_float(text, line, column):
    try:
        v = float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}", line, column) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite value {text!r}", line, column)
    return v


def _read_csv(text):
    lines = text.splitlines()
    if not lines or lines[0].strip() != CSV_HEADER:
        raise ParseError(f"expected header {CSV_HEADER!r}", line=1, column=1)
    values = []
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        fields = raw.split(",")
        if len(fields) != 3:
            raise ParseError(f"expected 3 fields, got {len(fields)}", lineno)
        try:
            index = int(fields[0])
        except ValueError:
            raise ParseError(f"bad index {fields[0]!r}", lineno, 1) from None
        if index != len(values):
            raise ParseError(
                f"index {index} out of order, expected {len(values)}", lineno, 1
            )
        re = _parse_float(fields[1], lineno, 2)
        im = _parse_float(fields[2], lineno, 3)
        values.append(complex(re, im))
    return SignalFile("csv", np.array(values, dtype=complex))


def _read_json(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict) or "n" not in obj or "data" not in obj:
        raise ParseError("expected an object with keys 'n' and 'data'", 1, 1)
    n = obj["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ParseError(f"'n' must be a non-negative integer, got {n!r}")
    data = obj["data"]
    if not isinstance(data, list):
        raise ParseError("'data' must be an array of [re, im] pairs")
    if len(data) != n:
        raise LengthMismatch(f"declared n={n} but data holds {len(data)} pairs")
    values = np.empty(n, dtype=complex)
    for i, pair in enumerate(data):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise ParseError(f"data[{i}] is not a [re, im] pair of numbers")
        if not (math.isfinite(pair[0]) and math.isfinite(pair[1])):
            raise ParseError(f"data[{i}] is not finite")
        values[i] = complex(pair[0], pair[1])
    alpha = obj.get("alpha")
    if alpha is not None:
        if isinstance(alpha, bool) or not isinstance(alpha, (int, float)):
            raise ParseError(f"'alpha' must be a number, got {alpha!r}")
        alpha = float(alpha)
    return SignalFile("json", values, alpha)


def read_signal_file(path, format=None):
    """Parse `path` into a `SignalFile`."""
    fmt = infer_format(path, format)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {str(path)!r}: {exc.strerror or exc}") from exc
    return _read_csv(text) if fmt == "csv" else _read_json(text)


def read_signal(path, format=None):
    """Return the samples in `path` as a complex vector."""
    return read_signal_file(path, format).samples


def write_signal(path, signal, format=None, alpha=None):
    """Write a complex vector as CSV or JSON (chosen by suffix unless given)."""
    fmt = infer_format(path, format)
    x = np.asarray(signal, dtype=complex).ravel()
    if fmt == "csv":
        rows = [CSV_HEADER]
        rows += [f"{i},{_fmt(v.real)},{_fmt(v.imag)}" for i, v in enumerate(x)]
        text = "\n".join(rows) + "\n"
    else:
        obj = {"n": len(x)}
        if alpha is not None:
            obj["alpha"] = float(alpha)
        obj["data"] = [[float(v.real), float(v.imag)] for v in x]
        text = json.dumps(obj) + "\n"
    atomic_write_text(path, text)


def write_matrix(path, matrix):
    """Write a dense matrix as CSV rows ``n,k,re,im`` in row-major order."""
    W = np.asarray(getattr(matrix, "entries", matrix))
    rows = [MATRIX_HEADER]
    for n in range(W.shape[0]):
        for k in range(W.shape[1]):
            v = W[n, k]
            rows.append(f"{n},{k},{_fmt(v.real)},{_fmt(v.imag)}")
    atomic_write_text(path, "\n".join(rows) + "\n")
