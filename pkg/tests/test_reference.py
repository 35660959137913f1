"""Sanity checks on the classical reference implementations.

These functions are the oracles the pipeline tests compare against, so
they get their own independent checks on tiny hand-computed cases.
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qfresample.codec import Signal
from qfresample.reference import block_average, nn_interpolate, strided_rect_convolution


def test_block_average_1d_hand_case():
    sig = Signal(np.array([1.0, 3.0, 5.0, 7.0]))
    out = block_average(sig, 1)
    np.testing.assert_array_equal(out.values, [2.0, 6.0])


def test_block_average_2d_hand_case():
    vals = np.array(
        [
            [1.0, 1.0, 2.0, 2.0],
            [1.0, 1.0, 2.0, 2.0],
            [3.0, 3.0, 4.0, 4.0],
            [3.0, 3.0, 4.0, 4.0],
        ]
    )
    out = block_average(Signal(vals), 1)
    np.testing.assert_array_equal(out.values, [[1.0, 2.0], [3.0, 4.0]])


def test_block_average_full_collapse_is_mean():
    sig = Signal(np.arange(8, dtype=float))
    with pytest.raises(ValueError):
        block_average(sig, 3)  # would leave extent 1, below the encodable floor
    out = block_average(sig, 2)
    np.testing.assert_allclose(out.values, [1.5, 5.5])


def test_block_average_scales_rates_and_drops_levels():
    sig = Signal(np.array([0.0, 1.0, 2.0, 3.0]), rates=(256.0,), levels=4)
    out = block_average(sig, 1)
    assert out.rates == (128.0,)
    assert out.levels is None  # means leave the integer alphabet


def test_nn_interpolate_1d_hand_case():
    out = nn_interpolate(Signal(np.array([1.0, 3.0, 5.0, 7.0])), 1)
    np.testing.assert_array_equal(out.values, [1, 1, 3, 3, 5, 5, 7, 7])


def test_nn_interpolate_2d_replicates_blocks():
    out = nn_interpolate(Signal(np.array([[1.0, 2.0], [3.0, 4.0]])), 1)
    np.testing.assert_array_equal(
        out.values,
        [
            [1.0, 1.0, 2.0, 2.0],
            [1.0, 1.0, 2.0, 2.0],
            [3.0, 3.0, 4.0, 4.0],
            [3.0, 3.0, 4.0, 4.0],
        ],
    )


def test_nn_interpolate_scales_rates_and_keeps_levels():
    sig = Signal(np.array([0.0, 3.0]), rates=(32.0,), levels=4)
    out = nn_interpolate(sig, 2)
    assert out.rates == (128.0,)
    assert out.levels == 4


@given(
    st.integers(1, 3),
    st.integers(2, 4),
    st.integers(1, 2),
    st.integers(0, 2**31 - 1),
)
def test_interpolate_then_average_is_identity(ndim, n0, octaves, seed):
    rng = np.random.default_rng(seed)
    vals = rng.uniform(0.0, 9.0, size=((1 << n0) if ndim == 1 else (1 << n0,) * ndim))
    vals = np.asarray(vals).reshape((1 << n0,) * ndim)
    sig = Signal(vals)
    back = block_average(nn_interpolate(sig, octaves), octaves)
    np.testing.assert_allclose(back.values, vals, atol=1e-12)


@given(st.integers(1, 2), st.integers(2, 4), st.integers(0, 2**31 - 1))
def test_block_average_preserves_total_mass(ndim, n0, seed):
    rng = np.random.default_rng(seed)
    vals = rng.uniform(0.0, 5.0, size=(1 << n0,) * ndim)
    sig = Signal(vals)
    out = block_average(sig, 1)
    assert out.values.sum() * 2**ndim == pytest.approx(vals.sum())


def test_strided_convolution_equals_scaled_block_average():
    rng = np.random.default_rng(42)
    vals = rng.uniform(0.0, 7.0, size=(8, 8))
    sig = Signal(vals)
    conv = strided_rect_convolution(sig, 4, 4)
    avg = block_average(sig, 2)
    np.testing.assert_allclose(conv.values, avg.values * 16.0, atol=1e-10)


def test_strided_convolution_rejects_mismatched_stride():
    sig = Signal(np.arange(8, dtype=float))
    with pytest.raises(ValueError):
        strided_rect_convolution(sig, 4, 2)
    with pytest.raises(ValueError):
        strided_rect_convolution(sig, 3, 3)


def test_octave_bounds_rejected():
    sig = Signal(np.arange(4, dtype=float))
    with pytest.raises(ValueError):
        block_average(sig, 0)
    with pytest.raises(ValueError):
        nn_interpolate(sig, 0)
    with pytest.raises(ValueError):
        block_average(sig, 2)
