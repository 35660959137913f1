"""Register layout and index arithmetic for multi-axis qubit registers.

Conventions used everywhere in this package:

* A d-dimensional signal with 2**n0 samples per axis is held in d
  subregisters of n0 qubits each, one subregister per axis.
* Basis indexing is little-endian.  A coordinate tuple (e_0, ..., e_{d-1})
  maps to the basis index sum_i e_i * (2**n0)**i, so subregister 0 occupies
  the least significant bits and subregister d-1 the most significant.
* Within a subregister, qubit q contributes 2**q to its axis coordinate;
  q = n0 - 1 is the most significant qubit of the axis.
* The global bit position of qubit q of subregister s is s*n0 + q, i.e.
  bit s*n0 + q of the basis index.

A configurable cap (default 24 qubits in total) bounds every layout so that
dense simulation cannot silently exhaust memory.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError

DEFAULT_QUBIT_CAP = 24


@dataclass(frozen=True)
class QubitId:
    """Addresses one qubit as (axis, bit): subregister index and position.

    ``bit`` runs from 0 (least significant for the axis coordinate) to
    n0 - 1 (most significant).
    """

    axis: int
    bit: int


@dataclass(frozen=True)
class RegisterLayout:
    """Shape of a register: ``ndim`` subregisters of ``qubits_per_axis`` qubits."""

    ndim: int
    qubits_per_axis: int

    @property
    def total_qubits(self) -> int:
        return self.ndim * self.qubits_per_axis

    @property
    def extent(self) -> int:
        """Number of samples per axis, 2**qubits_per_axis."""
        return 1 << self.qubits_per_axis

    @property
    def size(self) -> int:
        """Total number of basis states, extent**ndim."""
        return 1 << self.total_qubits

    def axis_bits(self, axis: int) -> range:
        """Global bit positions occupied by one subregister, ascending."""
        if not 0 <= axis < self.ndim:
            raise ValueError(f"axis {axis} out of range [0, {self.ndim})")
        start = axis * self.qubits_per_axis
        return range(start, start + self.qubits_per_axis)


def make_layout(ndim: int, qubits_per_axis: int, cap: int = DEFAULT_QUBIT_CAP) -> RegisterLayout:
    """Validated constructor for :class:`RegisterLayout`.

    Raises ValueError for non-positive dimensions and CapacityError when
    ndim * qubits_per_axis exceeds ``cap``.
    """
    if ndim < 1:
        raise ValueError(f"ndim must be >= 1, got {ndim}")
    if qubits_per_axis < 1:
        raise ValueError(f"qubits_per_axis must be >= 1, got {qubits_per_axis}")
    total = ndim * qubits_per_axis
    if total > cap:
        raise CapacityError(
            f"register of {ndim} x {qubits_per_axis} = {total} qubits exceeds cap of {cap}"
        )
    return RegisterLayout(ndim, qubits_per_axis)


def tuple_to_index(layout: RegisterLayout, coords: tuple[int, ...]) -> int:
    """Basis index of a coordinate tuple, little-endian in the axis number."""
    if len(coords) != layout.ndim:
        raise ValueError(f"expected {layout.ndim} coordinates, got {len(coords)}")
    extent = layout.extent
    index = 0
    for axis in reversed(range(layout.ndim)):
        e = coords[axis]
        if not 0 <= e < extent:
            raise ValueError(f"coordinate {e} on axis {axis} out of range [0, {extent})")
        index = index * extent + e
    return index


def index_to_tuple(layout: RegisterLayout, index: int) -> tuple[int, ...]:
    """Coordinate tuple for a basis index; inverse of :func:`tuple_to_index`."""
    if not 0 <= index < layout.size:
        raise ValueError(f"index {index} out of range [0, {layout.size})")
    extent = layout.extent
    coords = []
    for _ in range(layout.ndim):
        coords.append(index % extent)
        index //= extent
    return tuple(coords)


def global_position(layout: RegisterLayout, qubit: QubitId) -> int:
    """Global bit position of a qubit, s*n0 + q."""
    if not 0 <= qubit.axis < layout.ndim:
        raise ValueError(f"axis {qubit.axis} out of range [0, {layout.ndim})")
    if not 0 <= qubit.bit < layout.qubits_per_axis:
        raise ValueError(
            f"bit {qubit.bit} out of range [0, {layout.qubits_per_axis})"
        )
    return qubit.axis * layout.qubits_per_axis + qubit.bit
