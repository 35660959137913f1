"""Shot sampling, reconstruction error statistics, and cost-crossover maps.

Sampling uses numpy's default PCG64 generator seeded explicitly; every
histogram records its seed so runs can be replayed bit for bit.

The crossover calculators compare the asymptotic operation counts of the
classical and quantum resampling routes, keeping the written prefactors
(8 * d * L**2 and 4 * L**2) so the emitted maps carry concrete ratios
rather than bare growth orders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .registers import RegisterLayout
from .states import Distribution


@dataclass(frozen=True)
class ShotHistogram:
    """Outcome counts from repeated measurement of one distribution."""

    counts: np.ndarray
    layout: RegisterLayout
    shots: int
    seed: int

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "counts", counts)
        if counts.shape != (self.layout.size,):
            raise ValueError(
                f"count vector of shape {counts.shape} does not match "
                f"layout size {self.layout.size}"
            )
        if counts.min() < 0:
            raise ValueError("negative count")
        if int(counts.sum()) != self.shots:
            raise ValueError(
                f"counts sum to {int(counts.sum())}, expected {self.shots}"
            )
        if self.shots < 1:
            raise ValueError("shots must be >= 1")

    @property
    def frequencies(self) -> np.ndarray:
        return self.counts / self.shots

    def merge(self, other: "ShotHistogram") -> "ShotHistogram":
        if other.layout != self.layout:
            raise ValueError("histograms cover different layouts")
        return ShotHistogram(
            self.counts + other.counts,
            self.layout,
            self.shots + other.shots,
            self.seed,
        )


def sample_shots(dist: Distribution, shots: int, seed: int) -> ShotHistogram:
    """Draw ``shots`` independent outcomes from ``dist`` (one multinomial).

    Deterministic for a fixed seed.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    rng = np.random.default_rng(seed)
    p = dist.probabilities / dist.probabilities.sum()
    counts = rng.multinomial(shots, p)
    return ShotHistogram(counts, dist.layout, shots, seed)


def mean_mse(hist: ShotHistogram, output_intensity: float) -> float:
    """Mean over outcomes of the per-sample squared reconstruction error.

    Each reconstructed value carries variance 4 * I**2 * f * (1 - f) / M
    under the normal approximation; this returns the arithmetic mean of
    that quantity over all outcomes of the register.
    """
    f = hist.frequencies
    per_outcome = 4.0 * output_intensity**2 * f * (1.0 - f) / hist.shots
    return float(per_outcome.mean())


def shots_required(
    scale: float,
    mse_target: float,
    ndim: int,
    qubits_per_axis: int,
    worst_case: bool = False,
) -> int:
    """Shots needed to push the mean squared error below ``mse_target``.

    ``scale`` is the mean reconstructed value for the typical-case bound, or
    the number of representable levels when ``worst_case`` is set (the value
    bound replaces the mean); the arithmetic is the same either way:
    ceil(4 * scale**2 * K / mse_target) with K outcomes in the register.
    """
    if mse_target <= 0:
        raise ValueError(f"mse_target must be positive, got {mse_target}")
    outcomes = 1 << (ndim * qubits_per_axis)
    raw = 4.0 * scale**2 * outcomes / mse_target
    del worst_case  # semantic marker only; both bounds share the formula
    return int(math.ceil(raw))


def adaptive_sample(
    dist: Distribution,
    mse_target: float,
    output_intensity: float,
    batch: int,
    seed: int,
) -> ShotHistogram:
    """Accumulate batches of shots until mean_mse drops to ``mse_target``.

    The estimated error is O(1/M), so termination is guaranteed.  One
    generator drives all batches; the same seed replays the same run.
    """
    if mse_target <= 0:
        raise ValueError(f"mse_target must be positive, got {mse_target}")
    if batch < 1:
        raise ValueError(f"batch must be >= 1, got {batch}")
    rng = np.random.default_rng(seed)
    p = dist.probabilities / dist.probabilities.sum()
    counts = np.zeros(dist.layout.size, dtype=np.int64)
    shots = 0
    while True:
        counts += rng.multinomial(batch, p)
        shots += batch
        hist = ShotHistogram(counts, dist.layout, shots, seed)
        if mean_mse(hist, output_intensity) <= mse_target:
            return hist


# ---------------------------------------------------------------------------
# Cost-crossover maps: where the quantum route undercuts direct classical
# processing, as a function of register width and resolution shift.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdvantageParams:
    """Problem parameters for the cost comparison.

    ``level_bits`` is the number of classical bits per sample (so the
    sample alphabet has 2**level_bits values); ``mse_target`` is the mean
    squared error the shot budget must reach.
    """

    ndim: int
    level_bits: int
    mse_target: float

    def __post_init__(self):
        if self.ndim < 1:
            raise ValueError(f"ndim must be >= 1, got {self.ndim}")
        if self.level_bits < 1:
            raise ValueError(f"level_bits must be >= 1, got {self.level_bits}")
        if self.mse_target <= 0:
            raise ValueError(
                f"mse_target must be positive, got {self.mse_target}"
            )

    @property
    def levels(self) -> int:
        return 1 << self.level_bits


def advantage_bounds(params: AdvantageParams, qubits_per_axis: int) -> tuple[float, int]:
    """Octave window (lower, upper) in which downsampling pays off.

    The lower bound is where the quantum operation count falls below the
    classical one; the upper bound is the register width itself (nothing is
    left to discard beyond it).  The window is empty when lower >= upper.
    """
    if qubits_per_axis < 1:
        raise ValueError(f"qubits_per_axis must be >= 1, got {qubits_per_axis}")
    d = params.ndim
    lower = (
        2 * params.level_bits
        + 3
        + 2 * math.log2(qubits_per_axis)
        + math.log2(d / params.mse_target)
    ) / d
    return lower, qubits_per_axis


def _quantum_cost(params: AdvantageParams, width: int, out_qubits_per_axis: int) -> float:
    levels = float(params.levels)
    return (
        8.0
        * params.ndim
        * levels**2
        / params.mse_target
        * width**2
        * 2.0 ** (params.ndim * out_qubits_per_axis)
    )


def complexity_ratio(
    params: AdvantageParams,
    qubits_per_axis: int,
    octaves: int,
    direction: str,
) -> float:
    """Classical / quantum operation-count ratio for one grid point.

    ``direction`` is "down" or "up".  Ratios above 1 mean the quantum route
    is cheaper.  The upward ratio never exceeds 1 for meaningful parameters
    (reading out the enlarged register already costs as much as classical
    interpolation).
    """
    if direction == "down":
        if not 1 <= octaves < qubits_per_axis:
            raise ValueError(
                f"octaves must satisfy 1 <= octaves < {qubits_per_axis}, "
                f"got {octaves}"
            )
        out = qubits_per_axis - octaves
        classical = 2.0 ** (params.ndim * qubits_per_axis)
        quantum = _quantum_cost(params, qubits_per_axis, out)
    elif direction == "up":
        if octaves < 1:
            raise ValueError(f"octaves must be >= 1, got {octaves}")
        out = qubits_per_axis + octaves
        classical = 2.0 ** (params.ndim * out)
        quantum = _quantum_cost(params, out, out)
    else:
        raise ValueError(f"direction must be 'down' or 'up', got {direction!r}")
    return classical / quantum


@dataclass(frozen=True)
class AdvantageCell:
    """One grid point of an advantage map."""

    qubits_per_axis: int
    octaves: int
    ratio: float
    lower_bound: float
    in_region: bool


def advantage_map(
    params: AdvantageParams,
    qubit_range: range,
    octave_range: range,
) -> list[AdvantageCell]:
    """Tabulate the downsampling cost ratio over a (width, octaves) grid.

    Grid points with octaves outside [1, width) have no downsampling
    interpretation and are skipped; every emitted cell carries the crossover
    bound for its width and whether it sits inside the advantage window.
    """
    if len(qubit_range) == 0 or len(octave_range) == 0:
        raise ValueError("empty grid range")
    cells = []
    for width in qubit_range:
        lower, upper = advantage_bounds(params, width)
        for octaves in octave_range:
            if not 1 <= octaves < width:
                continue
            ratio = complexity_ratio(params, width, octaves, "down")
            cells.append(
                AdvantageCell(
                    qubits_per_axis=width,
                    octaves=octaves,
                    ratio=ratio,
                    lower_bound=lower,
                    in_region=lower <= octaves < upper,
                )
            )
    return cells
