"""Simulation engine against dense oracles: transforms, tracing, padding."""

import numpy as np
import pytest

from qfresample.errors import CapacityError
from qfresample.registers import QubitId, make_layout
from qfresample.states import (
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

from dense_ops import (
    cnot_operator,
    dft_matrix,
    hadamard_tensor,
    kron_chain,
    md_dft_matrix,
    pad_embed_brute,
    partial_trace_brute,
)


def random_pure(layout, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=layout.size) + 1j * rng.normal(size=layout.size)
    v /= np.linalg.norm(v)
    return PureState(v, layout)


def random_mixed(layout, seed, ranks=3):
    rng = np.random.default_rng(seed)
    rho = np.zeros((layout.size, layout.size), dtype=complex)
    weights = rng.dirichlet(np.ones(ranks))
    for r in range(ranks):
        v = rng.normal(size=layout.size) + 1j * rng.normal(size=layout.size)
        v /= np.linalg.norm(v)
        rho += weights[r] * np.outer(v, v.conj())
    return MixedState(rho, layout)


# ---------------------------------------------------------------------------
# Hadamard layer
# ---------------------------------------------------------------------------


def test_hadamard_all_on_zero_state():
    layout = make_layout(1, 2)
    state = hadamard_all(PureState.from_basis(layout, 0))
    np.testing.assert_allclose(state.amplitudes, np.full(4, 0.5), atol=1e-12)


def test_hadamard_all_matches_dense():
    layout = make_layout(2, 2)
    state = random_pure(layout, 11)
    expected = hadamard_tensor(4) @ state.amplitudes
    got = hadamard_all(state)
    np.testing.assert_allclose(got.amplitudes, expected, atol=1e-12)


def test_hadamard_all_is_involution():
    layout = make_layout(3, 2)
    state = random_pure(layout, 12)
    back = hadamard_all(hadamard_all(state))
    np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-10)


def test_hadamard_all_mixed_matches_dense():
    layout = make_layout(1, 3)
    state = random_mixed(layout, 13)
    h = hadamard_tensor(3)
    expected = h @ state.density @ h.conj().T
    got = hadamard_all(state)
    np.testing.assert_allclose(got.density, expected, atol=1e-12)


# ---------------------------------------------------------------------------
# Fourier transforms
# ---------------------------------------------------------------------------


def test_qft_single_qubit_is_hadamard():
    layout = make_layout(1, 1)
    plus = qft(PureState.from_basis(layout, 0), axis=0)
    np.testing.assert_allclose(plus.amplitudes, [1 / np.sqrt(2)] * 2, atol=1e-12)


def test_qft_two_qubit_basis_column():
    # second basis state of a 4-sample axis picks up quarter-turn phases
    layout = make_layout(1, 2)
    state = qft(PureState.from_basis(layout, 1), axis=0)
    expected = 0.5 * np.array([1, 1j, -1, -1j])
    np.testing.assert_allclose(state.amplitudes, expected, atol=1e-12)


@pytest.mark.parametrize("n0", [1, 2, 3, 4, 5])
def test_qft_matches_dense_single_axis(n0):
    layout = make_layout(1, n0)
    state = random_pure(layout, 20 + n0)
    expected = dft_matrix(layout.extent) @ state.amplitudes
    got = qft(state, axis=0)
    np.testing.assert_allclose(got.amplitudes, expected, atol=1e-10)


@pytest.mark.parametrize("axis", [0, 1])
def test_qft_acts_on_one_axis_only(axis):
    layout = make_layout(2, 2)
    state = random_pure(layout, 31 + axis)
    eye = np.eye(layout.extent, dtype=complex)
    factors = [eye, eye]
    factors[axis] = dft_matrix(layout.extent)
    expected = kron_chain(factors) @ state.amplitudes
    got = qft(state, axis=axis)
    np.testing.assert_allclose(got.amplitudes, expected, atol=1e-10)


def test_qft_inverse_round_trip():
    layout = make_layout(2, 3)
    state = random_pure(layout, 40)
    back = qft(qft(state, axis=1), axis=1, inverse=True)
    np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-10)


def test_qft_inverse_matches_dense():
    layout = make_layout(1, 3)
    state = random_pure(layout, 41)
    expected = dft_matrix(layout.extent, inverse=True) @ state.amplitudes
    got = qft(state, axis=0, inverse=True)
    np.testing.assert_allclose(got.amplitudes, expected, atol=1e-10)


@pytest.mark.parametrize("ndim,n0", [(1, 4), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_md_qft_matches_kron_oracle(ndim, n0):
    layout = make_layout(ndim, n0)
    state = random_pure(layout, 50 + 10 * ndim + n0)
    expected = md_dft_matrix(ndim, layout.extent) @ state.amplitudes
    got = md_qft(state)
    np.testing.assert_allclose(got.amplitudes, expected, atol=1e-10)


def test_md_qft_inverse_matches_kron_oracle():
    layout = make_layout(2, 2)
    state = random_pure(layout, 60)
    expected = md_dft_matrix(2, layout.extent, inverse=True) @ state.amplitudes
    got = md_qft(state, inverse=True)
    np.testing.assert_allclose(got.amplitudes, expected, atol=1e-10)


def test_md_qft_round_trip_mixed():
    layout = make_layout(2, 2)
    state = random_mixed(layout, 61)
    back = md_qft(md_qft(state), inverse=True)
    np.testing.assert_allclose(back.density, state.density, atol=1e-10)


def test_md_qft_mixed_matches_dense_conjugation():
    layout = make_layout(2, 2)
    state = random_mixed(layout, 62)
    f = md_dft_matrix(2, layout.extent)
    expected = f @ state.density @ f.conj().T
    got = md_qft(state)
    np.testing.assert_allclose(got.density, expected, atol=1e-10)


def test_md_qft_preserves_norm():
    layout = make_layout(3, 2)
    state = random_pure(layout, 63)
    out = md_qft(state)
    assert abs(np.sum(np.abs(out.amplitudes) ** 2) - 1.0) < 1e-10


# ---------------------------------------------------------------------------
# Partial trace
# ---------------------------------------------------------------------------


def test_discard_top_bell_state_gives_maximally_mixed():
    layout = make_layout(1, 2)
    amps = np.zeros(4, dtype=complex)
    amps[0] = amps[3] = 1 / np.sqrt(2)
    reduced = discard_top(PureState(amps, layout), ntilde=1)
    np.testing.assert_allclose(reduced.density, np.eye(2) / 2, atol=1e-12)


def test_discard_top_product_state():
    # top qubit in |0>, bottom in a superposition: tracing the top is lossless
    layout = make_layout(1, 2)
    amps = np.zeros(4, dtype=complex)
    amps[0] = 0.6
    amps[1] = 0.8
    reduced = discard_top(PureState(amps, layout), ntilde=1)
    expected = np.array([[0.36, 0.48], [0.48, 0.64]])
    np.testing.assert_allclose(reduced.density, expected, atol=1e-12)


@pytest.mark.parametrize("ndim,n0,ntilde", [(1, 3, 1), (1, 3, 2), (2, 2, 1), (3, 2, 1), (2, 3, 2)])
def test_discard_top_pure_matches_brute_force(ndim, n0, ntilde):
    layout = make_layout(ndim, n0)
    state = random_pure(layout, 70 + 10 * ndim + n0 + ntilde)
    traced = [
        axis * n0 + q for axis in range(ndim) for q in range(n0 - ntilde, n0)
    ]
    rho_full = np.outer(state.amplitudes, state.amplitudes.conj())
    expected = partial_trace_brute(rho_full, traced, layout.total_qubits)
    got = discard_top(state, ntilde)
    np.testing.assert_allclose(got.density, expected, atol=1e-12)
    assert got.layout.qubits_per_axis == n0 - ntilde
    assert got.layout.ndim == ndim


@pytest.mark.parametrize("ndim,n0,ntilde", [(1, 3, 1), (2, 2, 1), (2, 3, 2)])
def test_discard_top_mixed_matches_brute_force(ndim, n0, ntilde):
    layout = make_layout(ndim, n0)
    state = random_mixed(layout, 80 + 10 * ndim + n0 + ntilde)
    traced = [
        axis * n0 + q for axis in range(ndim) for q in range(n0 - ntilde, n0)
    ]
    expected = partial_trace_brute(state.density, traced, layout.total_qubits)
    got = discard_top(state, ntilde)
    np.testing.assert_allclose(got.density, expected, atol=1e-12)


def test_discard_top_preserves_trace_and_positivity():
    layout = make_layout(2, 3)
    state = random_pure(layout, 90)
    reduced = discard_top(state, 2)
    assert abs(np.trace(reduced.density) - 1.0) < 1e-10
    assert reduced.min_eigenvalue() > -1e-9


def test_discard_top_rejects_bad_ntilde():
    layout = make_layout(1, 3)
    state = random_pure(layout, 91)
    with pytest.raises(ValueError):
        discard_top(state, 0)
    with pytest.raises(ValueError):
        discard_top(state, 3)


def test_branches_reconstruct_reduced_density():
    layout = make_layout(2, 3)
    state = random_pure(layout, 92)
    branches, out_layout = discard_top_branches(state, 1)
    assert branches.shape == (4, 16)
    assert out_layout.qubits_per_axis == 2
    rho = branches.T @ branches.conj()
    np.testing.assert_allclose(rho, discard_top(state, 1).density, atol=1e-12)


def test_branches_do_not_alias_input():
    layout = make_layout(1, 3)
    state = random_pure(layout, 93)
    before = state.amplitudes.copy()
    branches, _ = discard_top_branches(state, 1)
    branches += 1.0
    np.testing.assert_array_equal(state.amplitudes, before)


@pytest.mark.parametrize("ndim,n0,ntilde", [(1, 3, 1), (1, 3, 2), (2, 2, 1), (3, 2, 1), (2, 3, 2)])
def test_discard_bottom_pure_matches_brute_force(ndim, n0, ntilde):
    layout = make_layout(ndim, n0)
    state = random_pure(layout, 170 + 10 * ndim + n0 + ntilde)
    traced = [axis * n0 + q for axis in range(ndim) for q in range(ntilde)]
    rho_full = np.outer(state.amplitudes, state.amplitudes.conj())
    expected = partial_trace_brute(rho_full, traced, layout.total_qubits)
    got = discard_bottom(state, ntilde)
    np.testing.assert_allclose(got.density, expected, atol=1e-12)
    assert got.layout.qubits_per_axis == n0 - ntilde


@pytest.mark.parametrize("ndim,n0,ntilde", [(1, 3, 1), (2, 2, 1), (2, 3, 2)])
def test_discard_bottom_mixed_matches_brute_force(ndim, n0, ntilde):
    layout = make_layout(ndim, n0)
    state = random_mixed(layout, 180 + 10 * ndim + n0 + ntilde)
    traced = [axis * n0 + q for axis in range(ndim) for q in range(ntilde)]
    expected = partial_trace_brute(state.density, traced, layout.total_qubits)
    got = discard_bottom(state, ntilde)
    np.testing.assert_allclose(got.density, expected, atol=1e-12)


def test_discard_bottom_sums_probability_blocks():
    # kept value is the block index e >> ntilde on every axis
    layout = make_layout(1, 3)
    state = random_pure(layout, 181)
    reduced = discard_bottom(state, 1)
    probs_in = np.abs(state.amplitudes) ** 2
    np.testing.assert_allclose(
        np.real(np.diagonal(reduced.density)),
        probs_in.reshape(4, 2).sum(axis=1),
        atol=1e-12,
    )


def test_discard_bottom_branches_reconstruct_density():
    layout = make_layout(2, 3)
    state = random_pure(layout, 182)
    branches, out_layout = discard_bottom_branches(state, 1)
    assert branches.shape == (4, 16)
    assert out_layout.qubits_per_axis == 2
    rho = branches.T @ branches.conj()
    np.testing.assert_allclose(rho, discard_bottom(state, 1).density, atol=1e-12)


# ---------------------------------------------------------------------------
# Padding
# ---------------------------------------------------------------------------


def test_append_padding_zero_pad_example():
    layout = make_layout(1, 1)
    state = PureState(np.array([0.6, 0.8]), layout)
    padded = append_padding(state, 1)
    np.testing.assert_allclose(padded.amplitudes, [0.6, 0.8, 0.0, 0.0], atol=1e-12)
    assert padded.layout.qubits_per_axis == 2


def test_append_padding_plus_pad():
    layout = make_layout(1, 1)
    state = PureState(np.array([1.0, 0.0]), layout)
    plus = np.array([1.0, 1.0]) / np.sqrt(2)
    padded = append_padding(state, 1, pad_state=plus)
    np.testing.assert_allclose(
        padded.amplitudes, [1 / np.sqrt(2), 0.0, 1 / np.sqrt(2), 0.0], atol=1e-12
    )


@pytest.mark.parametrize("ndim,n0,ntilde", [(1, 2, 1), (1, 2, 2), (2, 2, 1), (3, 1, 1), (2, 1, 2)])
def test_append_padding_matches_brute_force(ndim, n0, ntilde):
    layout = make_layout(ndim, n0)
    state = random_pure(layout, 100 + 10 * ndim + n0 + ntilde)
    rng = np.random.default_rng(200 + ndim + n0)
    pad = rng.normal(size=2) + 1j * rng.normal(size=2)
    pad /= np.linalg.norm(pad)
    expected = pad_embed_brute(state.amplitudes, ndim, n0, ntilde, pad)
    got = append_padding(state, ntilde, pad_state=pad)
    np.testing.assert_allclose(got.amplitudes, expected, atol=1e-12)
    assert got.layout.qubits_per_axis == n0 + ntilde


def test_append_padding_then_discard_recovers_state():
    layout = make_layout(2, 2)
    state = random_pure(layout, 110)
    padded = append_padding(state, 1)
    reduced = discard_top(padded, 1)
    expected = np.outer(state.amplitudes, state.amplitudes.conj())
    np.testing.assert_allclose(reduced.density, expected, atol=1e-12)


def test_append_padding_capacity():
    layout = make_layout(1, 3)
    state = random_pure(layout, 111)
    with pytest.raises(CapacityError):
        append_padding(state, 2, cap=4)


def test_append_padding_rejects_bad_pad():
    layout = make_layout(1, 2)
    state = random_pure(layout, 112)
    with pytest.raises(ValueError):
        append_padding(state, 1, pad_state=np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        append_padding(state, 0)


# ---------------------------------------------------------------------------
# CNOT at the register level
# ---------------------------------------------------------------------------


def test_apply_cnot_matches_dense_across_axes():
    layout = make_layout(2, 2)
    state = random_pure(layout, 120)
    control, target = QubitId(1, 1), QubitId(0, 0)
    expected = cnot_operator(4, 3, 0) @ state.amplitudes
    got = apply_cnot(state, control, target)
    np.testing.assert_allclose(got.amplitudes, expected, atol=1e-12)


def test_apply_cnot_mixed():
    layout = make_layout(1, 2)
    state = random_mixed(layout, 121)
    op = cnot_operator(2, 1, 0)
    expected = op @ state.density @ op.conj().T
    got = apply_cnot(state, QubitId(0, 1), QubitId(0, 0))
    np.testing.assert_allclose(got.density, expected, atol=1e-12)


def test_apply_cnot_rejects_same_qubit():
    layout = make_layout(1, 2)
    state = random_pure(layout, 122)
    with pytest.raises(ValueError):
        apply_cnot(state, QubitId(0, 1), QubitId(0, 1))


# ---------------------------------------------------------------------------
# Probabilities and validation
# ---------------------------------------------------------------------------


def test_probabilities_pure():
    layout = make_layout(1, 1)
    state = PureState(np.array([0.6, 0.8j]), layout)
    dist = probabilities(state)
    np.testing.assert_allclose(dist.probabilities, [0.36, 0.64], atol=1e-12)


def test_probabilities_mixed_diag():
    layout = make_layout(1, 2)
    state = random_mixed(layout, 130)
    dist = probabilities(state)
    np.testing.assert_allclose(
        dist.probabilities, np.real(np.diag(state.density)), atol=1e-12
    )
    assert abs(dist.probabilities.sum() - 1.0) < 1e-9


def test_pure_state_rejects_bad_norm():
    layout = make_layout(1, 1)
    with pytest.raises(ValueError):
        PureState(np.array([1.0, 1.0]), layout)
    with pytest.raises(ValueError):
        PureState(np.array([1.0, 0.0, 0.0]), layout)


def test_mixed_state_rejects_bad_trace_and_asymmetry():
    layout = make_layout(1, 1)
    with pytest.raises(ValueError):
        MixedState(np.eye(2), layout)
    bad = np.array([[0.5, 0.5], [0.1, 0.5]])
    with pytest.raises(ValueError):
        MixedState(bad, layout)


def test_distribution_validation():
    layout = make_layout(1, 1)
    with pytest.raises(ValueError):
        Distribution(np.array([0.7, 0.7]), layout)
    with pytest.raises(ValueError):
        Distribution(np.array([1.5, -0.5]), layout)
    d = Distribution(np.array([1.0, -1e-12]), layout)
    assert d.probabilities[1] == 0.0
