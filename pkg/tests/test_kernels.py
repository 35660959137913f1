"""Kernel backends against dense operator oracles and against each other."""

import numpy as np
import pytest

from qfresample import kernels
from qfresample.kernels import numpy_kernels

from dense_ops import (
    HADAMARD,
    cnot_operator,
    cphase_operator,
    single_qubit_operator,
    swap_operator,
)

BACKENDS = [numpy_kernels]
if kernels.HAS_NUMBA:
    BACKENDS.append(kernels.numba_kernels)


def random_vec(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return np.ascontiguousarray(v, dtype=np.complex128)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@pytest.mark.parametrize("n,bit", [(1, 0), (3, 0), (3, 1), (3, 2), (5, 3)])
def test_apply_1q_matches_dense(backend, n, bit):
    rng = np.random.default_rng(7 * n + bit)
    gate = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    gate = np.ascontiguousarray(gate, dtype=np.complex128)
    vec = random_vec(n, seed=n * 10 + bit)
    expected = single_qubit_operator(n, bit, gate) @ vec
    got = vec.copy()
    backend.apply_1q(got, bit, gate)
    np.testing.assert_allclose(got, expected, atol=1e-12)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@pytest.mark.parametrize("n,a,b", [(2, 0, 1), (3, 0, 2), (4, 1, 3), (4, 3, 1), (5, 2, 4)])
def test_apply_cphase_matches_dense(backend, n, a, b):
    phase = np.exp(0.731j)
    vec = random_vec(n, seed=n + a + 10 * b)
    expected = cphase_operator(n, a, b, phase) @ vec
    got = vec.copy()
    backend.apply_cphase(got, a, b, phase)
    np.testing.assert_allclose(got, expected, atol=1e-12)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@pytest.mark.parametrize(
    "n,control,target", [(2, 0, 1), (2, 1, 0), (3, 0, 2), (3, 2, 0), (4, 1, 3), (4, 3, 1)]
)
def test_apply_cnot_matches_dense(backend, n, control, target):
    vec = random_vec(n, seed=3 * n + control + 7 * target)
    expected = cnot_operator(n, control, target) @ vec
    got = vec.copy()
    backend.apply_cnot(got, control, target)
    np.testing.assert_allclose(got, expected, atol=1e-12)


def test_cnot_truth_table():
    # basis |control=1, target=0> maps to |control=1, target=1>
    vec = np.zeros(4, dtype=np.complex128)
    vec[1] = 1.0  # bit0 = control = 1, bit1 = target = 0
    numpy_kernels.apply_cnot(vec, 0, 1)
    expected = np.zeros(4, dtype=np.complex128)
    expected[3] = 1.0
    np.testing.assert_array_equal(vec, expected)


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda m: m.__name__.rsplit(".", 1)[-1])
@pytest.mark.parametrize("n,a,b", [(2, 0, 1), (3, 0, 2), (4, 1, 3), (5, 4, 0)])
def test_apply_swap_matches_dense(backend, n, a, b):
    vec = random_vec(n, seed=n + 5 * a + b)
    expected = swap_operator(n, a, b) @ vec
    got = vec.copy()
    backend.apply_swap(got, a, b)
    np.testing.assert_allclose(got, expected, atol=1e-12)


def test_swap_same_bit_is_identity():
    vec = random_vec(3, seed=1)
    got = vec.copy()
    numpy_kernels.apply_swap(got, 1, 1)
    np.testing.assert_array_equal(got, vec)


@pytest.mark.skipif(not kernels.HAS_NUMBA, reason="numba not installed")
def test_backend_parity_on_random_circuits():
    """Both backends must agree on the same random gate sequence."""
    rng = np.random.default_rng(42)
    n = 8
    for trial in range(5):
        start = random_vec(n, seed=100 + trial)
        a = start.copy()
        b = start.copy()
        for _ in range(30):
            which = rng.integers(0, 4)
            if which == 0:
                gate = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
                gate = np.ascontiguousarray(gate, dtype=np.complex128)
                bit = int(rng.integers(0, n))
                numpy_kernels.apply_1q(a, bit, gate)
                kernels.numba_kernels.apply_1q(b, bit, gate)
            elif which == 1:
                x, y = rng.choice(n, size=2, replace=False)
                phase = np.exp(1j * rng.normal())
                numpy_kernels.apply_cphase(a, int(x), int(y), phase)
                kernels.numba_kernels.apply_cphase(b, int(x), int(y), phase)
            elif which == 2:
                x, y = rng.choice(n, size=2, replace=False)
                numpy_kernels.apply_cnot(a, int(x), int(y))
                kernels.numba_kernels.apply_cnot(b, int(x), int(y))
            else:
                x, y = rng.choice(n, size=2, replace=False)
                numpy_kernels.apply_swap(a, int(x), int(y))
                kernels.numba_kernels.apply_swap(b, int(x), int(y))
        np.testing.assert_allclose(a, b, atol=1e-13)


def test_hadamard_constant_is_unitary():
    np.testing.assert_allclose(HADAMARD @ HADAMARD, np.eye(2), atol=1e-15)


def test_backend_selection():
    previous = kernels.active_name()
    try:
        assert kernels.set_backend("numpy") == "numpy"
        assert kernels.active() is numpy_kernels
        if kernels.HAS_NUMBA:
            assert kernels.set_backend("numba") == "numba"
            assert kernels.active() is kernels.numba_kernels
            assert kernels.set_backend("auto") == "numba"
        with pytest.raises(ValueError):
            kernels.set_backend("cuda")
    finally:
        kernels.set_backend(previous)
