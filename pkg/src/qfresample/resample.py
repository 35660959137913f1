"""Register-level resampling pipelines and the patch-based wrapper.

Downsampling separates every subregister into block-index qubits (the
top n0 - octaves) and within-block offset qubits (the bottom octaves),
discards the offset register, and measures the block register:

    H (all) -> discard the bottom octaves per axis -> H (kept)

Summing out the offset qubits collapses each run of 2**octaves
consecutive samples (per axis) into one outcome, so the measured
distribution holds the normalized block sums of the input and the decoded
signal is the grid of block means.  The Hadamard sandwich cannot change
that distribution: the layer on the traced qubits is absorbed by the
trace and the kept-side layers cancel.  The engine tests assert this
invariance, and the layers stay because they give both engines a real
gate path that would expose any register bookkeeping error.

Upsampling adjoins fresh |0> qubits at the top of every subregister and
runs the mirror sequence, transforming forward only on the original data
qubits and back on the whole enlarged register:

    pad |0> (top, per axis) -> H (all) -> F (data bits per axis)
    -> F^-1 (full subregisters) -> H (all)

The output is again pure, and its distribution replicates every input
sample over the adjoined sub-grid (consecutive copies along every axis).

Two constructions of the padding stage are provided.  The plain variant
relies on the pad qubits entering the spectrum at the top of each
subregister by placement.  The fan-out variant additionally drives every
pad qubit with a controlled-NOT from its subregister's most significant
data qubit, right after the Hadamard layer.  At that point the pads sit in
the X eigenstate the Hadamards prepared, which the fan-out leaves fixed, so
both constructions yield one and the same output distribution; placing the
fan-out anywhere the pads are not in that eigenstate breaks the
equivalence, which the variant tests pin down numerically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .analysis import sample_shots
from .codec import Signal, decode_exact, encode, reconstruct_from_shots
from .registers import DEFAULT_QUBIT_CAP, RegisterLayout, make_layout
from .states import (
    Distribution,
    PureState,
    _hadamard_ops,
    _qft_ops,
    _run_ops_vector,
    append_padding,
    discard_bottom,
    discard_bottom_branches,
    hadamard_all,
    probabilities,
)

VARIANTS = ("swap-padding", "cnot")
DOWN_METHODS = ("branch", "density")


@dataclass(frozen=True)
class ResampleParams:
    """Resolution shift: each axis extent changes by a factor 2**octaves."""

    octaves: int

    def __post_init__(self):
        if self.octaves < 1:
            raise ValueError(f"octaves must be >= 1, got {self.octaves}")

    @property
    def factor(self) -> int:
        return 1 << self.octaves


@dataclass(frozen=True)
class ResampleResult:
    """Outcome of one pipeline run.

    ``output_intensity`` is the factor that scales the distribution back to
    signal values; ``ratio`` is the exact qubit-count ratio between the
    larger and the smaller register of the run.
    """

    distribution: Distribution
    output_layout: RegisterLayout
    output_intensity: float
    output_rates: tuple[float, ...] | None
    ratio: Fraction
    direction: str
    method: str
    variant: str | None = None


def _scaled_rates(
    rates: tuple[float, ...] | None, factor: int, direction: str
) -> tuple[float, ...] | None:
    if rates is None:
        return None
    if direction == "down":
        return tuple(r / factor for r in rates)
    return tuple(r * factor for r in rates)


def downsample(
    state: PureState,
    params: ResampleParams,
    intensity: float = 1.0,
    rates: tuple[float, ...] | None = None,
    method: str = "branch",
) -> ResampleResult:
    """Shrink every axis by 2**octaves; returns the output distribution.

    ``method`` selects the engine: "branch" evolves one conditional pure
    branch per discarded basis value at statevector memory cost, "density"
    carries the reduced density matrix.  Both give the same distribution.
    The reported output intensity is the input intensity divided by the
    block volume, making decoded values block means.
    """
    if method not in DOWN_METHODS:
        raise ValueError(f"method must be one of {DOWN_METHODS}, got {method!r}")
    layout = state.layout
    octaves = params.octaves
    if octaves >= layout.qubits_per_axis:
        raise ValueError(
            f"cannot discard {octaves} of {layout.qubits_per_axis} qubits per axis"
        )
    prepared = hadamard_all(state)

    if method == "branch":
        branches, out_layout = discard_bottom_branches(prepared, octaves)
        flat = branches.reshape(-1)
        _run_ops_vector(flat, _hadamard_ops(range(out_layout.total_qubits)))
        probs = np.sum(np.abs(branches) ** 2, axis=0)
    else:
        reduced = discard_bottom(prepared, octaves)
        out_layout = reduced.layout
        restored = hadamard_all(reduced)
        probs = np.real(np.diagonal(restored.density)).copy()

    factor = params.factor
    return ResampleResult(
        distribution=Distribution(probs, out_layout),
        output_layout=out_layout,
        output_intensity=intensity / factor**layout.ndim,
        output_rates=_scaled_rates(rates, factor, "down"),
        ratio=Fraction(layout.qubits_per_axis, out_layout.qubits_per_axis),
        direction="down",
        method=method,
    )


def upsample(
    state: PureState,
    params: ResampleParams,
    intensity: float = 1.0,
    rates: tuple[float, ...] | None = None,
    variant: str = "swap-padding",
    cap: int = DEFAULT_QUBIT_CAP,
) -> tuple[PureState, ResampleResult]:
    """Grow every axis by 2**octaves; returns the output state and result.

    The pipeline is unitary, so the full pure state is returned alongside
    the bookkeeping.  The reported output intensity is the input intensity
    times the replication volume, making decoded values copies of the
    originals.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    padded = append_padding(state, params.octaves, cap=cap)
    layout = padded.layout
    d = layout.ndim
    n_in = state.layout.qubits_per_axis
    n_out = layout.qubits_per_axis

    vec = padded.amplitudes.copy()
    _run_ops_vector(vec, _hadamard_ops(range(layout.total_qubits)))
    if variant == "cnot":
        k = kernels.active()
        for axis in range(d):
            base = axis * n_out
            for pad_bit in range(n_in, n_out):
                k.apply_cnot(vec, base + n_in - 1, base + pad_bit)
    for axis in range(d):
        base = axis * n_out
        _run_ops_vector(vec, _qft_ops(list(range(base, base + n_in)), False))
    for axis in range(d):
        _run_ops_vector(vec, _qft_ops(list(layout.axis_bits(axis)), True))
    _run_ops_vector(vec, _hadamard_ops(range(layout.total_qubits)))
    out_state = PureState(vec, layout)

    factor = params.factor
    result = ResampleResult(
        distribution=probabilities(out_state),
        output_layout=layout,
        output_intensity=intensity * factor**d,
        output_rates=_scaled_rates(rates, factor, "up"),
        ratio=Fraction(n_out, n_in),
        direction="up",
        method="statevector",
        variant=variant,
    )
    return out_state, result


def roundtrip_up_down(
    state: PureState,
    octaves: int,
    intensity: float = 1.0,
    rates: tuple[float, ...] | None = None,
    variant: str = "swap-padding",
    method: str = "branch",
    cap: int = DEFAULT_QUBIT_CAP,
) -> ResampleResult:
    """Upsample then downsample by the same shift.

    Block-averaging a replicated signal recovers it exactly, so the final
    distribution matches the input state's distribution.
    """
    params = ResampleParams(octaves)
    grown, up_result = upsample(
        state, params, intensity=intensity, rates=rates, variant=variant, cap=cap
    )
    return downsample(
        grown,
        params,
        intensity=up_result.output_intensity,
        rates=up_result.output_rates,
        method=method,
    )


def downsample_signal(
    signal: Signal, octaves: int, method: str = "branch"
) -> tuple[Signal, ResampleResult]:
    """Encode, downsample, decode.  Output values are block means."""
    state, intensity = encode(signal)
    result = downsample(
        state,
        ResampleParams(octaves),
        intensity=intensity,
        rates=signal.rates,
        method=method,
    )
    decoded = decode_exact(
        result.distribution, result.output_intensity, rates=result.output_rates
    )
    return decoded, result


def upsample_signal(
    signal: Signal,
    octaves: int,
    variant: str = "swap-padding",
    cap: int = DEFAULT_QUBIT_CAP,
) -> tuple[Signal, ResampleResult]:
    """Encode, upsample, decode.  Output values replicate the input's."""
    state, intensity = encode(signal)
    _, result = upsample(
        state,
        ResampleParams(octaves),
        intensity=intensity,
        rates=signal.rates,
        variant=variant,
        cap=cap,
    )
    decoded = decode_exact(
        result.distribution, result.output_intensity, rates=result.output_rates
    )
    return decoded, result


@dataclass(frozen=True)
class PatchSummary:
    """Bookkeeping for a patchwise run.

    Intensity grids are indexed like the value array (coordinate axis 0
    last).  ``ci_halfwidths`` covers the whole reassembled signal and is
    None for exact runs; ``zero_patches`` counts patches that carried no
    signal and bypassed the register pipeline.  ``ratio`` is None when a
    down shift empties the patch register (each patch reduces to its
    mean, leaving no output qubits to compare against).
    """

    patch_extent: int
    patches_per_axis: int
    ratio: Fraction | None
    output_rates: tuple[float, ...] | None
    input_intensities: np.ndarray
    output_intensities: np.ndarray
    ci_halfwidths: np.ndarray | None
    zero_patches: int


def patch_resample(
    signal: Signal,
    patch_extent: int,
    direction: str,
    octaves: int,
    variant: str = "swap-padding",
    method: str = "branch",
    mode: str = "exact",
    shots: int | None = None,
    seed: int | None = None,
    cap: int = DEFAULT_QUBIT_CAP,
) -> tuple[Signal, PatchSummary]:
    """Resample non-overlapping hyper-cubic patches independently.

    Each patch is encoded with its own intensity, run through the register
    pipeline, and decoded; outputs are reassembled in the original patch
    order.  An all-zero patch cannot be encoded and is mapped to an all-zero
    output patch directly.  A down shift equal to the patch width reduces
    every patch to the single sample holding its mean, an outcome that is
    deterministic even in shots mode.  In shots mode every other patch gets
    its own ``shots`` draws from a sub-seed derived from ``seed`` and the
    patch position.
    """
    if direction not in ("down", "up"):
        raise ValueError(f"direction must be 'down' or 'up', got {direction!r}")
    if patch_extent < 2 or patch_extent & (patch_extent - 1):
        raise ValueError(f"patch extent {patch_extent} is not a power of two >= 2")
    if signal.extent % patch_extent:
        raise ValueError(
            f"patch extent {patch_extent} does not tile extent {signal.extent}"
        )
    if mode not in ("exact", "shots"):
        raise ValueError(f"mode must be 'exact' or 'shots', got {mode!r}")
    if mode == "shots":
        if shots is None or shots < 1:
            raise ValueError("shots mode needs a positive shot count")
        if seed is None:
            raise ValueError("shots mode needs a seed")

    d = signal.ndim
    params = ResampleParams(octaves)
    factor = params.factor
    if direction == "down":
        if factor > patch_extent:
            raise ValueError(
                f"cannot reduce patch extent {patch_extent} by a factor {factor}"
            )
        # factor == patch_extent empties the patch register: every patch
        # collapses to the single outcome holding its mean.
        out_patch = patch_extent // factor
    else:
        out_patch = patch_extent * factor
    collapse = direction == "down" and out_patch == 1

    blocks = signal.extent // patch_extent
    out = np.zeros((blocks * out_patch,) * d)
    halfwidths = np.zeros_like(out) if mode == "shots" else None
    in_intensities = np.zeros((blocks,) * d)
    out_intensities = np.zeros((blocks,) * d)
    ratio = None
    output_rates = None
    zero_patches = 0

    for counter, pos in enumerate(np.ndindex(*((blocks,) * d))):
        src = tuple(
            slice(p * patch_extent, (p + 1) * patch_extent) for p in pos
        )
        dst = tuple(slice(p * out_patch, (p + 1) * out_patch) for p in pos)
        patch = Signal(signal.values[src], rates=signal.rates, levels=signal.levels)
        in_intensities[pos] = patch.intensity

        if patch.intensity == 0.0:
            zero_patches += 1
            continue

        if collapse:
            mean = patch.intensity / factor**d
            out_intensities[pos] = mean
            out[dst] = mean
            if halfwidths is not None:
                halfwidths[dst] = 0.0
            output_rates = _scaled_rates(signal.rates, factor, direction)
            continue

        state, intensity = encode(patch, cap=cap)
        if direction == "down":
            result = downsample(
                state, params, intensity=intensity, rates=patch.rates, method=method
            )
        else:
            _, result = upsample(
                state,
                params,
                intensity=intensity,
                rates=patch.rates,
                variant=variant,
                cap=cap,
            )
        ratio = result.ratio
        output_rates = result.output_rates
        out_intensities[pos] = result.output_intensity

        if mode == "exact":
            decoded = decode_exact(result.distribution, result.output_intensity)
            out[dst] = decoded.values
        else:
            sub_seed = int(
                np.random.SeedSequence(entropy=(seed, counter)).generate_state(1)[0]
            )
            hist = sample_shots(result.distribution, shots, sub_seed)
            levels = signal.levels if direction == "up" else None
            decoded, hw = reconstruct_from_shots(
                hist, result.output_intensity, levels=levels
            )
            out[dst] = decoded.values
            halfwidths[dst] = hw

    if ratio is None and not collapse:
        # every patch was empty; the shift bookkeeping still applies
        base = patch_extent.bit_length() - 1
        if direction == "down":
            ratio = Fraction(base, base - octaves)
        else:
            ratio = Fraction(base + octaves, base)
    if output_rates is None:
        output_rates = _scaled_rates(signal.rates, factor, direction)

    out_signal = Signal(out, rates=output_rates)
    summary = PatchSummary(
        patch_extent=patch_extent,
        patches_per_axis=blocks,
        ratio=ratio,
        output_rates=output_rates,
        input_intensities=in_intensities,
        output_intensities=out_intensities,
        ci_halfwidths=halfwidths,
        zero_patches=zero_patches,
    )
    return out_signal, summary
