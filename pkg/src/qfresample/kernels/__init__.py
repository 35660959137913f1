"""Selectable gate-kernel backend: numba-compiled loops or pure numpy.

The environment variable QFRESAMPLE_KERNELS picks the backend:

* ``numba``  - require the compiled kernels (error if numba is missing),
* ``numpy``  - force the pure-numpy fallback,
* ``auto``   - numba when importable, numpy otherwise (the default).

Both backends expose the same four in-place operations (apply_1q,
apply_cphase, apply_cnot, apply_swap) with identical semantics, so
everything built on top of them is backend-agnostic.  ``set_backend`` allows
an explicit override at runtime, which tests and benchmarks use.
"""

from __future__ import annotations

import os

from . import numpy_kernels

try:
    from . import numba_kernels

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba_kernels = None
    HAS_NUMBA = False

ENV_VAR = "QFRESAMPLE_KERNELS"

_BACKENDS = {"numpy": numpy_kernels}
if HAS_NUMBA:
    _BACKENDS["numba"] = numba_kernels

_active_name: str | None = None


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def _resolve_name(name: str | None) -> str:
    if name is None:
        name = os.environ.get(ENV_VAR, "auto").strip().lower() or "auto"
    if name == "auto":
        return "numba" if HAS_NUMBA else "numpy"
    if name not in _BACKENDS:
        raise ValueError(
            f"unknown kernel backend {name!r}; available: {available_backends()}"
        )
    return name


def set_backend(name: str | None) -> str:
    """Select the backend by name ('numpy', 'numba', 'auto' or None to re-read env)."""
    global _active_name
    _active_name = _resolve_name(name)
    return _active_name


def active_name() -> str:
    global _active_name
    if _active_name is None:
        _active_name = _resolve_name(None)
    return _active_name


def active():
    """The module implementing the currently selected backend."""
    return _BACKENDS[active_name()]
