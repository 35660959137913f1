"""Signal file formats: two-column CSV, PGM images, JSON run records.

1-D signals travel as ``index,value`` CSV. 2-D signals travel as PGM,
written in the ASCII P2 dialect for diff-ability; both P2 and binary P5
are accepted on input. Higher-dimensional signals flatten to CSV in
C order and are reshaped on read via an explicit dimension count.

Every run writes a single JSON record next to its outputs holding the
parameters needed to reproduce it. Records carry file basenames only and
no timestamps, so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .codec import Signal
from .errors import SignalFileError

CSV_HEADER = "index,value"
ADVANTAGE_HEADER = "n0,ntilde,ratio,lower_bound,in_advantage_region"


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


# ---------------------------------------------------------------------------
# CSV signals
# ---------------------------------------------------------------------------


def read_signal_csv(path) -> np.ndarray:
    """Read a two-column signal CSV into a flat float array."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SignalFileError(path, f"cannot read: {exc.strerror or exc}") from exc
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise SignalFileError(path, "empty file")
    if lines[0] != CSV_HEADER:
        raise SignalFileError(path, f"expected header {CSV_HEADER!r}, got {lines[0]!r}")
    values = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 2:
            raise SignalFileError(path, f"line {lineno}: expected 2 fields, got {len(fields)}")
        try:
            idx = int(fields[0])
            val = float(fields[1])
        except ValueError as exc:
            raise SignalFileError(path, f"line {lineno}: {exc}") from exc
        if idx != len(values):
            raise SignalFileError(path, f"line {lineno}: index {idx} out of order")
        if not math.isfinite(val):
            raise SignalFileError(path, f"line {lineno}: non-finite value")
        values.append(val)
    if not values:
        raise SignalFileError(path, "no data rows")
    return np.asarray(values, dtype=np.float64)


def write_signal_csv(path, values: np.ndarray) -> None:
    """Write values (flattened in C order) as a two-column CSV."""
    flat = np.asarray(values, dtype=np.float64).reshape(-1)
    rows = [CSV_HEADER]
    rows.extend(f"{i},{_fmt(v)}" for i, v in enumerate(flat))
    Path(path).write_text("\n".join(rows) + "\n")


# ---------------------------------------------------------------------------
# PGM images
# ---------------------------------------------------------------------------


def _pgm_tokens(raw: bytes):
    """Yield whitespace-separated header tokens, skipping # comments."""
    pos = 0
    n = len(raw)
    while pos < n:
        ch = raw[pos : pos + 1]
        if ch.isspace():
            pos += 1
            continue
        if ch == b"#":
            eol = raw.find(b"\n", pos)
            pos = n if eol < 0 else eol + 1
            continue
        end = pos
        while end < n and not raw[end : end + 1].isspace():
            end += 1
        yield raw[pos:end], end
        pos = end
    yield None, pos


def read_pgm(path) -> tuple[np.ndarray, int]:
    """Read a P2 or P5 PGM file. Returns (2-D float array, maxval).

    Rows run top to bottom; ``out[row, col]`` follows the same layout as
    2-D signal values (row = second coordinate axis).
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise SignalFileError(path, f"cannot read: {exc.strerror or exc}") from exc
    tokens = _pgm_tokens(raw)
    header = []
    end = 0
    for _ in range(4):
        tok, end = next(tokens)
        if tok is None:
            raise SignalFileError(path, "truncated PGM header")
        header.append(tok)
    magic = header[0].decode("ascii", "replace")
    if magic not in ("P2", "P5"):
        raise SignalFileError(path, f"not a PGM file (magic {magic!r})")
    try:
        width, height, maxval = (int(t) for t in header[1:])
    except ValueError as exc:
        raise SignalFileError(path, f"bad PGM header: {exc}") from exc
    if width < 1 or height < 1 or maxval < 1 or maxval > 65535:
        raise SignalFileError(path, f"bad PGM dimensions {width}x{height}, maxval {maxval}")

    count = width * height
    if magic == "P2":
        try:
            data = np.array(raw[end:].split(), dtype=np.int64)
        except ValueError as exc:
            raise SignalFileError(path, f"bad P2 sample data: {exc}") from exc
    else:
        body = raw[end + 1 :]  # single whitespace byte separates header from raster
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        need = count * dtype.itemsize
        if len(body) < need:
            raise SignalFileError(path, f"P5 raster holds {len(body)} bytes, need {need}")
        data = np.frombuffer(body[:need], dtype=dtype).astype(np.int64)
    if data.size != count:
        raise SignalFileError(path, f"expected {count} samples, got {data.size}")
    if data.min() < 0 or data.max() > maxval:
        raise SignalFileError(path, f"sample outside [0, {maxval}]")
    return data.reshape(height, width).astype(np.float64), maxval


def write_pgm(path, values: np.ndarray, maxval: int | None = None) -> None:
    """Write a 2-D array as ASCII P2, rounding values to integers."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"PGM needs a 2-D array, got {arr.ndim}-D")
    if maxval is None:
        maxval = max(255, int(np.rint(arr.max())) if arr.size else 255)
    pixels = np.clip(np.rint(arr), 0, maxval).astype(np.int64)
    lines = ["P2", f"{arr.shape[1]} {arr.shape[0]}", str(maxval)]
    lines.extend(" ".join(str(v) for v in row) for row in pixels)
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Signal-level dispatch
# ---------------------------------------------------------------------------


def read_signal(path, dims: int | None = None, levels: int | None = None) -> Signal:
    """Load a Signal from a CSV or PGM file, validating its shape.

    ``dims`` reshapes a flat CSV into a ``dims``-dimensional cube (the
    sample count must be a power-of-two extent raised to ``dims``). PGM
    input is always 2-D; passing a conflicting ``dims`` is an error.
    ``levels`` quantizes: for PGM it defaults to maxval + 1.
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".pgm":
        if dims not in (None, 2):
            raise SignalFileError(path, f"PGM input is 2-D, cannot read as {dims}-D")
        arr, maxval = read_pgm(path)
        if levels is None:
            levels = maxval + 1
    else:
        flat = read_signal_csv(path)
        d = 1 if dims is None else dims
        extent = round(flat.size ** (1.0 / d))
        while extent**d < flat.size:
            extent += 1
        if extent**d != flat.size:
            raise SignalFileError(
                path, f"{flat.size} samples do not fill a {d}-D cube"
            )
        arr = flat.reshape((extent,) * d)
    try:
        return Signal(arr, levels=levels)
    except ValueError as exc:
        raise SignalFileError(path, str(exc)) from exc


def write_signal(path, signal: Signal, maxval: int | None = None) -> None:
    """Write a Signal to CSV or PGM based on the path suffix."""
    path = Path(path)
    if path.suffix.lower() == ".pgm":
        if signal.ndim != 2:
            raise ValueError(f"cannot write {signal.ndim}-D signal as PGM")
        if maxval is None and signal.levels is not None:
            maxval = signal.levels - 1
        write_pgm(path, signal.values, maxval=maxval)
    else:
        write_signal_csv(path, signal.values)


# ---------------------------------------------------------------------------
# Run records and analysis tables
# ---------------------------------------------------------------------------


def write_metadata(path, record: dict) -> None:
    """Write one JSON run record, deterministically formatted."""
    Path(path).write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")


def read_metadata(path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise SignalFileError(path, f"cannot read: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise SignalFileError(path, f"bad JSON: {exc}") from exc


def write_advantage_csv(path, cells) -> None:
    """Write advantage-map cells with the fixed five-column header."""
    rows = [ADVANTAGE_HEADER]
    for cell in cells:
        rows.append(
            ",".join(
                (
                    str(cell.qubits_per_axis),
                    str(cell.octaves),
                    _fmt(cell.ratio),
                    _fmt(cell.lower_bound),
                    "true" if cell.in_region else "false",
                )
            )
        )
    Path(path).write_text("\n".join(rows) + "\n")
