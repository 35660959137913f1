"""Quantum-register frequency resampling of digital signals.

Signals are amplitude-encoded into qubit registers (one subregister per
axis), resampled by whole octaves (powers of two per axis), and read out
either as exact distributions or through seeded finite-shot sampling.
Downsampling yields block means, upsampling nearest-neighbor replication.
The analysis layer covers shot-budget arithmetic and the classical-vs-
quantum operation-count comparison.
"""

from . import kernels
from .analysis import (
    AdvantageCell,
    AdvantageParams,
    ShotHistogram,
    adaptive_sample,
    advantage_bounds,
    advantage_map,
    complexity_ratio,
    mean_mse,
    sample_shots,
    shots_required,
)
from .codec import Signal, decode_exact, encode, reconstruct_from_shots
from .errors import CapacityError, EncodingError, SignalFileError
from .fileio import (
    read_metadata,
    read_pgm,
    read_signal,
    read_signal_csv,
    write_advantage_csv,
    write_metadata,
    write_pgm,
    write_signal,
    write_signal_csv,
)
from .reference import block_average, nn_interpolate, strided_rect_convolution
from .registers import DEFAULT_QUBIT_CAP, QubitId, RegisterLayout, make_layout
from .resample import (
    DOWN_METHODS,
    VARIANTS,
    PatchSummary,
    ResampleParams,
    ResampleResult,
    downsample,
    downsample_signal,
    patch_resample,
    roundtrip_up_down,
    upsample,
    upsample_signal,
)
from .states import (
    Distribution,
    MixedState,
    PureState,
    append_padding,
    apply_cnot,
    discard_bottom,
    discard_bottom_branches,
    discard_top,
    discard_top_branches,
    hadamard_all,
    md_qft,
    probabilities,
    qft,
)

__version__ = "0.1.0"

__all__ = [
    "AdvantageCell",
    "AdvantageParams",
    "CapacityError",
    "DEFAULT_QUBIT_CAP",
    "DOWN_METHODS",
    "Distribution",
    "EncodingError",
    "MixedState",
    "PatchSummary",
    "PureState",
    "QubitId",
    "RegisterLayout",
    "ResampleParams",
    "ResampleResult",
    "ShotHistogram",
    "Signal",
    "SignalFileError",
    "VARIANTS",
    "adaptive_sample",
    "advantage_bounds",
    "advantage_map",
    "append_padding",
    "apply_cnot",
    "block_average",
    "complexity_ratio",
    "decode_exact",
    "discard_bottom",
    "discard_bottom_branches",
    "discard_top",
    "discard_top_branches",
    "downsample",
    "downsample_signal",
    "encode",
    "hadamard_all",
    "kernels",
    "make_layout",
    "md_qft",
    "mean_mse",
    "nn_interpolate",
    "patch_resample",
    "probabilities",
    "qft",
    "read_metadata",
    "read_pgm",
    "read_signal",
    "read_signal_csv",
    "reconstruct_from_shots",
    "roundtrip_up_down",
    "sample_shots",
    "shots_required",
    "strided_rect_convolution",
    "upsample",
    "upsample_signal",
    "write_advantage_csv",
    "write_metadata",
    "write_pgm",
    "write_signal",
    "write_signal_csv",
    "__version__",
]
