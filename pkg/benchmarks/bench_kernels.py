"""Time the gate kernels and the end-to-end pipelines per backend.

Usage:
    python3 benchmarks/bench_kernels.py [--qubits N] [--repeat R]

Runs the single-qubit, controlled-phase, and swap primitives on a dense
statevector, plus the full transform and resampling pipelines, under the
numpy backend and (when importable) the numba backend, and prints one
table of best-of-R wall times.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from qfresample import kernels
from qfresample.codec import Signal, encode
from qfresample.registers import make_layout
from qfresample.resample import ResampleParams, downsample, upsample
from qfresample.states import PureState, hadamard_all, md_qft

H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)


def _random_state(n_qubits: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    vec = rng.normal(size=1 << n_qubits) + 1j * rng.normal(size=1 << n_qubits)
    return (vec / np.linalg.norm(vec)).astype(np.complex128)


def _best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _benchmarks(n_qubits: int):
    layout = make_layout(1, n_qubits, cap=max(24, n_qubits))
    base = _random_state(n_qubits, 11)
    sig_vals = np.abs(_random_state(n_qubits, 12)) ** 2 * 100.0 + 1.0

    def bench_1q():
        k = kernels.active()
        vec = base.copy()
        for bit in range(n_qubits):
            k.apply_1q(vec, bit, H)

    def bench_cphase():
        k = kernels.active()
        vec = base.copy()
        for hi in range(n_qubits - 1, 0, -1):
            for lo in range(hi):
                k.apply_cphase(vec, hi, lo, np.exp(2j * np.pi / (1 << (hi - lo + 1))))

    def bench_swap():
        k = kernels.active()
        vec = base.copy()
        for bit in range(n_qubits // 2):
            k.apply_swap(vec, bit, n_qubits - 1 - bit)

    def bench_qft():
        md_qft(hadamard_all(PureState(base.copy(), layout)))

    def bench_down():
        state, intensity = encode(Signal(sig_vals))
        downsample(state, ResampleParams(2), intensity=intensity)

    def bench_up():
        small = Signal(sig_vals[: 1 << (n_qubits - 2)])
        state, intensity = encode(small)
        upsample(state, ResampleParams(2), intensity=intensity, cap=max(24, n_qubits))

    return [
        ("hadamard layer", bench_1q),
        ("cphase ladder", bench_cphase),
        ("swap layer", bench_swap),
        ("full transform", bench_qft),
        ("downsample x4", bench_down),
        ("upsample x4", bench_up),
    ]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--qubits", type=int, default=18, help="register width (default 18)")
    parser.add_argument("--repeat", type=int, default=5, help="repetitions, best kept (default 5)")
    args = parser.parse_args()

    backends = kernels.available_backends()
    results: dict[str, dict[str, float]] = {}
    for backend in backends:
        kernels.set_backend(backend)
        rows = {}
        for name, fn in _benchmarks(args.qubits):
            fn()  # warm-up: triggers compilation on the jit backend
            rows[name] = _best_of(fn, args.repeat)
        results[backend] = rows
    kernels.set_backend(None)

    names = [name for name, _ in _benchmarks(args.qubits)]
    both = "numpy" in results and "numba" in results
    width = max(len(n) for n in names)
    header = f"{'benchmark'.ljust(width)}  " + "  ".join(f"{b:>10}" for b in backends)
    if both:
        header += "  numba speedup"
    print(f"{args.qubits} qubits, best of {args.repeat}")
    print(header)
    print("-" * len(header))
    for name in names:
        times = [results[b][name] for b in backends]
        line = f"{name.ljust(width)}  " + "  ".join(f"{t * 1e3:9.2f}ms" for t in times)
        if both and results["numba"][name] > 0:
            line += f"  {results['numpy'][name] / results['numba'][name]:9.2f}x"
        print(line)


if __name__ == "__main__":
    main()
