"""Classical resampling ground truth: block means and sample replication.

These run in plain real arithmetic directly on signal values and share no
code with the register simulation, so the two routes check each other.
"""

from __future__ import annotations

import numpy as np

from .codec import Signal


def _check_octaves(signal: Signal, octaves: int, for_down: bool) -> int:
    if octaves < 1:
        raise ValueError(f"octaves must be >= 1, got {octaves}")
    factor = 1 << octaves
    if for_down and factor >= signal.extent:
        raise ValueError(
            f"cannot reduce extent {signal.extent} by a factor {factor}"
        )
    return factor


def block_average(signal: Signal, octaves: int) -> Signal:
    """Mean over non-overlapping hyper-cubic blocks of side 2**octaves."""
    factor = _check_octaves(signal, octaves, for_down=True)
    arr = signal.values
    for axis in range(arr.ndim):
        shape = arr.shape[:axis] + (arr.shape[axis] // factor, factor)
        shape += arr.shape[axis + 1 :]
        arr = arr.reshape(shape).mean(axis=axis + 1)
    rates = None
    if signal.rates is not None:
        rates = tuple(r / factor for r in signal.rates)
    return Signal(arr, rates=rates)


def nn_interpolate(signal: Signal, octaves: int) -> Signal:
    """Repeat every sample 2**octaves consecutive times along every axis."""
    factor = _check_octaves(signal, octaves, for_down=False)
    arr = signal.values
    for axis in range(arr.ndim):
        arr = np.repeat(arr, factor, axis=axis)
    rates = None
    if signal.rates is not None:
        rates = tuple(r * factor for r in signal.rates)
    return Signal(arr, rates=rates, levels=signal.levels)


def strided_rect_convolution(signal: Signal, window_side: int, stride: int) -> Signal:
    """Convolve with a hyper-cubic window of ones, advancing by the stride.

    Only stride == window_side is supported (exact tiling); the result then
    holds the raw block sums, i.e. 2**(octaves * d) times the block means.
    """
    if stride != window_side:
        raise ValueError(
            f"stride {stride} must equal the window side {window_side}"
        )
    if window_side < 2 or window_side & (window_side - 1):
        raise ValueError(f"window side {window_side} is not a power of two >= 2")
    if signal.extent % window_side:
        raise ValueError(
            f"window side {window_side} does not tile extent {signal.extent}"
        )
    d = signal.ndim
    out_extent = signal.extent // window_side
    out = np.zeros((out_extent,) * d)
    for pos in np.ndindex(*out.shape):
        total = 0.0
        for off in np.ndindex(*((window_side,) * d)):
            src = tuple(p * window_side + o for p, o in zip(pos, off))
            total += signal.values[src]
        out[pos] = total
    return Signal(out)
