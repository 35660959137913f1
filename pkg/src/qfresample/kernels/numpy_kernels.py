"""Pure-numpy gate kernels operating in place on flat complex statevectors.

Every kernel takes the vector, one or two global bit positions and (where
needed) gate data.  Bit b of the array index addresses the qubit at global
position b, matching the layout conventions in ``registers``.

The reshape tricks below expose a chosen bit as its own axis: a vector of
length N viewed as (N >> (b+1), 2, 1 << b) puts bit b on the middle axis
with pure views, so no index arrays are materialized.
"""

from __future__ import annotations

import numpy as np


def apply_1q(vec: np.ndarray, bit: int, gate: np.ndarray) -> None:
    """Apply a 2x2 gate to one qubit of ``vec`` in place."""
    low = 1 << bit
    view = vec.reshape(-1, 2, low)
    a = view[:, 0, :]
    b = view[:, 1, :]
    new_a = gate[0, 0] * a + gate[0, 1] * b
    new_b = gate[1, 0] * a + gate[1, 1] * b
    view[:, 0, :] = new_a
    view[:, 1, :] = new_b


def _two_bit_view(vec: np.ndarray, bit_hi: int, bit_lo: int) -> np.ndarray:
    """View with bits (hi, lo) as axes 1 and 3; requires bit_hi > bit_lo."""
    mid = 1 << (bit_hi - bit_lo - 1)
    low = 1 << bit_lo
    return vec.reshape(-1, 2, mid, 2, low)


def apply_cphase(vec: np.ndarray, bit_a: int, bit_b: int, phase: complex) -> None:
    """Multiply amplitudes with both bits set by ``phase`` (diagonal gate)."""
    hi, lo = (bit_a, bit_b) if bit_a > bit_b else (bit_b, bit_a)
    view = _two_bit_view(vec, hi, lo)
    view[:, 1, :, 1, :] *= phase


def apply_cnot(vec: np.ndarray, control: int, target: int) -> None:
    """Flip ``target`` where ``control`` is set, in place."""
    if control > target:
        view = _two_bit_view(vec, control, target)
        sel0 = view[:, 1, :, 0, :]
        sel1 = view[:, 1, :, 1, :]
    else:
        view = _two_bit_view(vec, target, control)
        sel0 = view[:, 0, :, 1, :]
        sel1 = view[:, 1, :, 1, :]
    tmp = sel0.copy()
    sel0[...] = sel1
    sel1[...] = tmp


def apply_swap(vec: np.ndarray, bit_a: int, bit_b: int) -> None:
    """Exchange the two qubits: swap amplitudes of ...01... and ...10..."""
    if bit_a == bit_b:
        return
    hi, lo = (bit_a, bit_b) if bit_a > bit_b else (bit_b, bit_a)
    view = _two_bit_view(vec, hi, lo)
    sel0 = view[:, 0, :, 1, :]
    sel1 = view[:, 1, :, 0, :]
    tmp = sel0.copy()
    sel0[...] = sel1
    sel1[...] = tmp
