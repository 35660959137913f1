"""Dense simulation of multi-axis registers: pure states, mixed states, gates.

Gates are built from the per-qubit kernels in ``qfresample.kernels``; no full
operator matrix is ever materialized.  Density matrices evolve by applying
the same kernels to row bits and (conjugated) to column bits of the flattened
matrix: for an n-qubit density matrix, flat index = row * 2**n + col, so row
bit q lives at flat position q + n and column bit q at flat position q.

The Fourier transform on one subregister follows the standard ladder of
Hadamard and controlled-phase gates, followed by explicit swap gates, so
that the forward transform has matrix elements

    F[k, e] = exp(+2j * pi * k * e / N) / sqrt(N)

on that axis.  The multi-axis transform is the tensor product of the per-axis
transforms.

Partial tracing removes the top ``ntilde`` qubits of every subregister; the
kept qubits close ranks, preserving their relative significance, which yields
a register of the reduced layout directly.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .errors import CapacityError
from .registers import (
    DEFAULT_QUBIT_CAP,
    QubitId,
    RegisterLayout,
    global_position,
    make_layout,
)

NORM_ATOL = 1e-10
TRACE_ATOL = 1e-10
HERMITIAN_ATOL = 1e-10
EIGENVALUE_FLOOR = -1e-9
PROB_SUM_ATOL = 1e-9

_H_GATE = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / math.sqrt(2.0)
_X_GATE = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)

_Op = tuple


class PureState:
    """Statevector over a register layout.

    ``amplitudes`` is a C-contiguous complex128 vector of length
    ``layout.size`` with unit norm (checked to 1e-10 on construction).
    """

    def __init__(self, amplitudes: np.ndarray, layout: RegisterLayout):
        amps = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        if amps.shape != (layout.size,):
            raise ValueError(
                f"amplitude vector of shape {amps.shape} does not match "
                f"layout size {layout.size}"
            )
        self.amplitudes = amps
        self.layout = layout
        self.validate()

    def validate(self) -> None:
        norm_sq = float(np.sum(np.abs(self.amplitudes) ** 2))
        if abs(norm_sq - 1.0) > NORM_ATOL:
            raise ValueError(f"state norm squared {norm_sq} deviates from 1")

    def copy(self) -> "PureState":
        return PureState(self.amplitudes.copy(), self.layout)

    @classmethod
    def from_basis(cls, layout: RegisterLayout, index: int) -> "PureState":
        amps = np.zeros(layout.size, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps, layout)


class MixedState:
    """Density matrix over a register layout.

    Trace and Hermiticity are checked on construction (1e-10); positivity is
    a separate O(K^3) check exposed as :meth:`min_eigenvalue` and asserted in
    the test suite with an eigenvalue floor of -1e-9.
    """

    def __init__(self, density: np.ndarray, layout: RegisterLayout):
        rho = np.ascontiguousarray(density, dtype=np.complex128)
        if rho.shape != (layout.size, layout.size):
            raise ValueError(
                f"density matrix of shape {rho.shape} does not match "
                f"layout size {layout.size}"
            )
        self.density = rho
        self.layout = layout
        self.validate()

    def validate(self) -> None:
        trace = complex(np.trace(self.density))
        if abs(trace - 1.0) > TRACE_ATOL:
            raise ValueError(f"density trace {trace} deviates from 1")
        dev = float(np.max(np.abs(self.density - self.density.conj().T)))
        if dev > HERMITIAN_ATOL:
            raise ValueError(f"density deviates from Hermitian by {dev}")

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.density)[0])

    def copy(self) -> "MixedState":
        return MixedState(self.density.copy(), self.layout)

    @classmethod
    def from_pure(cls, state: PureState) -> "MixedState":
        rho = np.outer(state.amplitudes, state.amplitudes.conj())
        return cls(rho, state.layout)


class Distribution:
    """Measurement probabilities over the computational basis of a layout.

    Entries are clamped at zero against harmless negative round-off (down to
    -1e-9); the total must be 1 within 1e-9.
    """

    def __init__(self, probabilities: np.ndarray, layout: RegisterLayout):
        p = np.asarray(probabilities, dtype=np.float64)
        if p.shape != (layout.size,):
            raise ValueError(
                f"probability vector of shape {p.shape} does not match "
                f"layout size {layout.size}"
            )
        if float(p.min()) < -PROB_SUM_ATOL:
            raise ValueError(f"negative probability {p.min()}")
        total = float(p.sum())
        if abs(total - 1.0) > PROB_SUM_ATOL:
            raise ValueError(f"probabilities sum to {total}, not 1")
        self.probabilities = np.clip(p, 0.0, None)
        self.layout = layout


# ---------------------------------------------------------------------------
# Gate sequences.  An op is ("1q", bit, gate), ("cp", bit_a, bit_b, phase) or
# ("swap", bit_a, bit_b); sequences run through either backend unchanged.
# ---------------------------------------------------------------------------


def _hadamard_ops(bits: Iterable[int]) -> Iterator[_Op]:
    for b in bits:
        yield ("1q", b, _H_GATE)


def _qft_ops(bits: list[int], inverse: bool) -> Iterator[_Op]:
    """Fourier ladder on an ordered bit list (bits[0] least significant)."""
    n = len(bits)
    if not inverse:
        for j in range(n - 1, -1, -1):
            yield ("1q", bits[j], _H_GATE)
            for m in range(j - 1, -1, -1):
                angle = 2.0 * math.pi / (1 << (j - m + 1))
                yield ("cp", bits[m], bits[j], complex(math.cos(angle), math.sin(angle)))
        for i in range(n // 2):
            yield ("swap", bits[i], bits[n - 1 - i])
    else:
        for i in range(n // 2):
            yield ("swap", bits[i], bits[n - 1 - i])
        for j in range(n):
            for m in range(j):
                angle = -2.0 * math.pi / (1 << (j - m + 1))
                yield ("cp", bits[m], bits[j], complex(math.cos(angle), math.sin(angle)))
            yield ("1q", bits[j], _H_GATE)


def _run_ops_vector(vec: np.ndarray, ops: Iterable[_Op]) -> None:
    k = kernels.active()
    for op in ops:
        if op[0] == "1q":
            k.apply_1q(vec, op[1], op[2])
        elif op[0] == "cp":
            k.apply_cphase(vec, op[1], op[2], op[3])
        else:
            k.apply_swap(vec, op[1], op[2])


def _run_ops_density(flat: np.ndarray, n: int, ops: Iterable[_Op]) -> None:
    """Two-sided application: U on row bits (offset n), conj(U) on column bits."""
    k = kernels.active()
    for op in ops:
        if op[0] == "1q":
            k.apply_1q(flat, op[1] + n, op[2])
            k.apply_1q(flat, op[1], op[2].conj())
        elif op[0] == "cp":
            k.apply_cphase(flat, op[1] + n, op[2] + n, op[3])
            k.apply_cphase(flat, op[1], op[2], op[3].conjugate())
        else:
            k.apply_swap(flat, op[1] + n, op[2] + n)
            k.apply_swap(flat, op[1], op[2])


def _apply_ops(state: PureState | MixedState, ops: Iterable[_Op]):
    if isinstance(state, PureState):
        vec = state.amplitudes.copy()
        _run_ops_vector(vec, ops)
        return PureState(vec, state.layout)
    if isinstance(state, MixedState):
        rho = state.density.copy()
        _run_ops_density(rho.reshape(-1), state.layout.total_qubits, ops)
        return MixedState(rho, state.layout)
    raise TypeError(f"expected PureState or MixedState, got {type(state).__name__}")


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------


def hadamard_all(state):
    """Hadamard on every qubit of the register."""
    return _apply_ops(state, _hadamard_ops(range(state.layout.total_qubits)))


def qft(state, axis: int, inverse: bool = False):
    """Fourier transform on one subregister (forward phase +2 pi i)."""
    bits = list(state.layout.axis_bits(axis))
    return _apply_ops(state, _qft_ops(bits, inverse))


def md_qft(state, inverse: bool = False):
    """Fourier transform on every subregister (tensor product across axes)."""
    layout = state.layout
    result = state
    for axis in range(layout.ndim):
        result = _apply_ops(result, _qft_ops(list(layout.axis_bits(axis)), inverse))
    return result


def apply_cnot(state, control: QubitId, target: QubitId):
    """Controlled-NOT between two distinct qubits of the register."""
    c = global_position(state.layout, control)
    t = global_position(state.layout, target)
    if c == t:
        raise ValueError(f"control and target coincide at global position {c}")
    if isinstance(state, PureState):
        vec = state.amplitudes.copy()
        kernels.active().apply_cnot(vec, c, t)
        return PureState(vec, state.layout)
    if isinstance(state, MixedState):
        rho = state.density.copy()
        flat = rho.reshape(-1)
        n = state.layout.total_qubits
        k = kernels.active()
        k.apply_cnot(flat, c + n, t + n)
        k.apply_cnot(flat, c, t)
        return MixedState(rho, state.layout)
    raise TypeError(f"expected PureState or MixedState, got {type(state).__name__}")


def _split_bits(
    layout: RegisterLayout, ntilde: int, end: str = "top"
) -> tuple[list[int], list[int]]:
    """(traced, kept) global bit positions for dropping ntilde bits per axis.

    ``end="top"`` drops the most significant bits of every axis,
    ``end="bottom"`` the least significant ones.
    """
    n0 = layout.qubits_per_axis
    if not 1 <= ntilde < n0:
        raise ValueError(f"ntilde must satisfy 1 <= ntilde < {n0}, got {ntilde}")
    if end not in ("top", "bottom"):
        raise ValueError(f"end must be 'top' or 'bottom', got {end!r}")
    traced = []
    kept = []
    for axis in range(layout.ndim):
        base = axis * n0
        if end == "top":
            kept.extend(base + q for q in range(n0 - ntilde))
            traced.extend(base + q for q in range(n0 - ntilde, n0))
        else:
            traced.extend(base + q for q in range(ntilde))
            kept.extend(base + q for q in range(ntilde, n0))
    return traced, kept


def _regroup(vec: np.ndarray, n: int, front_bits: list[int], back_bits: list[int]) -> np.ndarray:
    """Matrix whose row index runs over front_bits, column over back_bits.

    Bit significance is preserved inside each group (descending global
    position = descending significance).
    """
    tensor = vec.reshape((2,) * n)
    axes = [n - 1 - b for b in sorted(front_bits, reverse=True)]
    axes += [n - 1 - b for b in sorted(back_bits, reverse=True)]
    out = tensor.transpose(axes).reshape(1 << len(front_bits), 1 << len(back_bits))
    if np.shares_memory(out, vec):
        out = out.copy()
    return out


def _discard(state, ntilde: int, end: str) -> MixedState:
    layout = state.layout
    traced, kept = _split_bits(layout, ntilde, end)
    out_layout = make_layout(layout.ndim, layout.qubits_per_axis - ntilde, cap=layout.total_qubits)
    if isinstance(state, PureState):
        branches = _regroup(state.amplitudes, layout.total_qubits, traced, kept)
        rho = branches.T @ branches.conj()
        return MixedState(rho, out_layout)
    if isinstance(state, MixedState):
        n = layout.total_qubits
        tensor = state.density.reshape((2,) * (2 * n))
        row = [n - 1 - b for b in sorted(traced, reverse=True)]
        row += [n - 1 - b for b in sorted(kept, reverse=True)]
        col = [2 * n - 1 - b for b in sorted(traced, reverse=True)]
        col += [2 * n - 1 - b for b in sorted(kept, reverse=True)]
        t_dim = 1 << len(traced)
        k_dim = 1 << len(kept)
        grouped = tensor.transpose(row + col).reshape(t_dim, k_dim, t_dim, k_dim)
        rho = np.einsum("iaib->ab", grouped)
        return MixedState(np.ascontiguousarray(rho), out_layout)
    raise TypeError(f"expected PureState or MixedState, got {type(state).__name__}")


def discard_top(state, ntilde: int) -> MixedState:
    """Partial trace over the ntilde most significant qubits of every axis."""
    return _discard(state, ntilde, "top")


def discard_bottom(state, ntilde: int) -> MixedState:
    """Partial trace over the ntilde least significant qubits of every axis."""
    return _discard(state, ntilde, "bottom")


def _discard_branches(
    state: PureState, ntilde: int, end: str
) -> tuple[np.ndarray, RegisterLayout]:
    if not isinstance(state, PureState):
        raise TypeError(f"expected PureState, got {type(state).__name__}")
    layout = state.layout
    traced, kept = _split_bits(layout, ntilde, end)
    out_layout = make_layout(layout.ndim, layout.qubits_per_axis - ntilde, cap=layout.total_qubits)
    branches = _regroup(state.amplitudes, layout.total_qubits, traced, kept)
    return branches, out_layout


def discard_top_branches(state: PureState, ntilde: int) -> tuple[np.ndarray, RegisterLayout]:
    """Unnormalized pure branches of the top-bit partial trace.

    Returns a (2**(d*ntilde), 2**n_kept) matrix whose row t is the state
    conditioned on the traced qubits reading t, and the reduced layout.
    Summing |row|^2 column-wise after further row-local processing
    reproduces the density-matrix path exactly, at statevector memory cost.
    """
    return _discard_branches(state, ntilde, "top")


def discard_bottom_branches(state: PureState, ntilde: int) -> tuple[np.ndarray, RegisterLayout]:
    """Unnormalized pure branches of the bottom-bit partial trace.

    Same contract as discard_top_branches with the least significant
    ntilde qubits of every axis traced instead.
    """
    return _discard_branches(state, ntilde, "bottom")


def append_padding(
    state: PureState,
    ntilde: int,
    pad_state: np.ndarray | None = None,
    cap: int = DEFAULT_QUBIT_CAP,
) -> PureState:
    """Adjoin ntilde fresh qubits at the top of every subregister.

    ``pad_state`` is the single-qubit state of each fresh qubit (default
    |0>).  The new qubits become the most significant bits of their axis, so
    the old coordinate e becomes e + N0 * t for pad value t.
    """
    if not isinstance(state, PureState):
        raise TypeError(f"expected PureState, got {type(state).__name__}")
    if ntilde < 1:
        raise ValueError(f"ntilde must be >= 1, got {ntilde}")
    if pad_state is None:
        pad = np.array([1.0, 0.0], dtype=np.complex128)
    else:
        pad = np.asarray(pad_state, dtype=np.complex128)
        if pad.shape != (2,):
            raise ValueError(f"pad_state must have shape (2,), got {pad.shape}")
        if abs(float(np.sum(np.abs(pad) ** 2)) - 1.0) > NORM_ATOL:
            raise ValueError("pad_state is not normalized")
    layout = state.layout
    d, n0 = layout.ndim, layout.qubits_per_axis
    out_layout = make_layout(d, n0 + ntilde, cap=cap)

    pad_axis = pad
    for _ in range(ntilde - 1):
        pad_axis = np.multiply.outer(pad_axis, pad).reshape(-1)
    pad_block = pad_axis
    for _ in range(d - 1):
        pad_block = np.multiply.outer(pad_block, pad_axis)
    pad_block = pad_block.reshape((1 << ntilde,) * d)

    in_tensor = state.amplitudes.reshape((layout.extent,) * d)
    out = np.multiply.outer(pad_block, in_tensor)
    perm = []
    for axis in range(d):
        perm.extend((axis, d + axis))
    out = out.transpose(perm).reshape(-1)
    return PureState(out, out_layout)


def probabilities(state) -> Distribution:
    """Computational-basis measurement distribution of a state."""
    if isinstance(state, PureState):
        p = np.abs(state.amplitudes) ** 2
    elif isinstance(state, MixedState):
        p = np.real(np.diagonal(state.density)).copy()
    else:
        raise TypeError(f"expected PureState or MixedState, got {type(state).__name__}")
    return Distribution(p, state.layout)
