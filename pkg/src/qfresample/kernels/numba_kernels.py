"""Numba-compiled gate kernels, drop-in equivalents of ``numpy_kernels``.

Same in-place semantics and bit conventions; explicit loops let LLVM emit
tight code over the 2**n amplitudes.  Compiled artifacts are disk-cached so
the JIT cost is paid once per machine.
"""

from __future__ import annotations

import numba
import numpy as np

NUMBA_OPTS: dict = {"cache": True}


def njit(func):
    return numba.njit(func, **NUMBA_OPTS)


@njit
def apply_1q(vec: np.ndarray, bit: int, gate: np.ndarray) -> None:
    step = 1 << bit
    block = step << 1
    g00 = gate[0, 0]
    g01 = gate[0, 1]
    g10 = gate[1, 0]
    g11 = gate[1, 1]
    for base in range(0, vec.shape[0], block):
        for off in range(step):
            i0 = base + off
            i1 = i0 + step
            a = vec[i0]
            b = vec[i1]
            vec[i0] = g00 * a + g01 * b
            vec[i1] = g10 * a + g11 * b


@njit
def apply_cphase(vec: np.ndarray, bit_a: int, bit_b: int, phase: complex) -> None:
    mask = (1 << bit_a) | (1 << bit_b)
    for i in range(vec.shape[0]):
        if i & mask == mask:
            vec[i] = vec[i] * phase


@njit
def apply_cnot(vec: np.ndarray, control: int, target: int) -> None:
    cmask = 1 << control
    tmask = 1 << target
    for i in range(vec.shape[0]):
        if (i & cmask) != 0 and (i & tmask) == 0:
            j = i | tmask
            tmp = vec[i]
            vec[i] = vec[j]
            vec[j] = tmp


@njit
def apply_swap(vec: np.ndarray, bit_a: int, bit_b: int) -> None:
    if bit_a == bit_b:
        return
    amask = 1 << bit_a
    bmask = 1 << bit_b
    for i in range(vec.shape[0]):
        if (i & amask) != 0 and (i & bmask) == 0:
            j = (i ^ amask) | bmask
            tmp = vec[i]
            vec[i] = vec[j]
            vec[j] = tmp
