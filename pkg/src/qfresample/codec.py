"""Classical signals and their translation to and from register states.

A signal's value array is indexed ``values[e_{d-1}, ..., e_0]``: the last
array axis is coordinate axis 0, so flattening in C order yields the basis
ordering of ``qfresample.registers`` (coordinate axis 0 least significant).
``rates[i]`` is the sampling rate of coordinate axis i.

Encoding stores square roots of the normalized values as amplitudes, so the
measurement distribution returns the values divided by their total.  The
total (the intensity) travels alongside every state classically; decoding
is a multiplication by it, never a guess.
"""

from __future__ import annotations

import numpy as np

from .analysis import ShotHistogram
from .errors import EncodingError
from .registers import DEFAULT_QUBIT_CAP, make_layout
from .states import Distribution, PureState


class Signal:
    """Non-negative sample grid, hyper-cubic with power-of-two extent.

    ``rates`` optionally records per-coordinate-axis sampling rates in Hz.
    ``levels`` optionally declares the signal digital: every value must then
    be an integer in [0, levels - 1].
    """

    def __init__(
        self,
        values: np.ndarray,
        rates: tuple[float, ...] | None = None,
        levels: int | None = None,
    ):
        vals = np.asarray(values, dtype=np.float64)
        if vals.ndim < 1:
            raise ValueError("values must have at least one axis")
        extent = vals.shape[0]
        if any(s != extent for s in vals.shape):
            raise ValueError(f"axes differ in extent: {vals.shape}")
        if extent < 1 or extent & (extent - 1):
            raise ValueError(f"extent {extent} is not a power of two")
        if vals.size and float(vals.min()) < 0.0:
            raise ValueError(f"negative sample value {vals.min()}")
        if rates is not None:
            rates = tuple(float(r) for r in rates)
            if len(rates) != vals.ndim:
                raise ValueError(
                    f"{len(rates)} rates for {vals.ndim} axes"
                )
            if any(r <= 0 for r in rates):
                raise ValueError("rates must be positive")
        if levels is not None:
            if levels < 2:
                raise ValueError(f"levels must be >= 2, got {levels}")
            if not np.array_equal(vals, np.round(vals)):
                raise ValueError("digital signal has non-integer values")
            if float(vals.max(initial=0.0)) > levels - 1:
                raise ValueError(
                    f"value {vals.max()} exceeds top level {levels - 1}"
                )
        self.values = vals
        self.rates = rates
        self.levels = levels

    @property
    def ndim(self) -> int:
        return self.values.ndim

    @property
    def extent(self) -> int:
        return self.values.shape[0]

    @property
    def intensity(self) -> float:
        return float(self.values.sum())


def encode(signal: Signal, cap: int = DEFAULT_QUBIT_CAP) -> tuple[PureState, float]:
    """Amplitude-encode a signal; returns the state and the stored intensity.

    The amplitude at basis index e is sqrt(values[e] / intensity).
    """
    intensity = signal.intensity
    if intensity <= 0.0:
        raise EncodingError("signal has zero intensity, nothing to encode")
    extent = signal.extent
    qubits = extent.bit_length() - 1
    if qubits < 1:
        raise ValueError(f"extent {extent} is too small to encode")
    layout = make_layout(signal.ndim, qubits, cap=cap)
    amps = np.sqrt(signal.values / intensity).reshape(-1).astype(np.complex128)
    return PureState(amps, layout), intensity


def decode_exact(
    dist: Distribution,
    output_intensity: float,
    shape: tuple[int, ...] | None = None,
    rates: tuple[float, ...] | None = None,
) -> Signal:
    """Scale a measured distribution back to signal values.

    Inverse of :func:`encode` when ``output_intensity`` is the encoded
    intensity.  ``shape``, when given, is checked against the register.
    """
    layout = dist.layout
    expected = (layout.extent,) * layout.ndim
    if shape is not None and tuple(shape) != expected:
        raise ValueError(f"shape {tuple(shape)} does not match register {expected}")
    values = (output_intensity * dist.probabilities).reshape(expected)
    return Signal(values, rates=rates)


def reconstruct_from_shots(
    hist: ShotHistogram,
    output_intensity: float,
    levels: int | None = None,
    rates: tuple[float, ...] | None = None,
) -> tuple[Signal, np.ndarray]:
    """Point estimates and confidence half-widths from measured counts.

    The estimate at outcome m is intensity * f_m, rounded and clipped to the
    level alphabet when ``levels`` is given.  The half-width
    2 * intensity * sqrt(f_m (1 - f_m) / M) is the normal-approximation
    interval at two standard errors; it is zero where f_m is 0 or 1.
    """
    layout = hist.layout
    shape = (layout.extent,) * layout.ndim
    f = hist.frequencies
    estimates = output_intensity * f
    halfwidths = 2.0 * output_intensity * np.sqrt(f * (1.0 - f) / hist.shots)
    if levels is not None:
        estimates = np.clip(np.round(estimates), 0, levels - 1)
    signal = Signal(estimates.reshape(shape), rates=rates, levels=levels)
    return signal, halfwidths.reshape(shape)
