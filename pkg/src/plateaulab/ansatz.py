"""Layered hardware-efficient circuits with configurable entangling topology.

A circuit of L layers on n qubits has 2nL angles, laid out layer-major: within
layer l, angles[2nl : 2nl+n] are the RY angles of qubits 0..n-1 and
angles[2nl+n : 2nl+2n] the RZ angles. Each layer applies its rotations
(RY then RZ per qubit) followed by the fixed CNOT entangler.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import statevector as sv
from .statevector import StateVector, init_zero

_NORM_TOL = 1e-10


class Topology(enum.Enum):
    NEAREST_NEIGHBOR = "nearest_neighbor"
    ALL_TO_ALL = "all_to_all"


@dataclass(frozen=True)
class CircuitSpec:
    """Shape of one ansatz: qubit count, layer count, entangling topology."""

    n_qubits: int
    layers: int
    topology: Topology

    def __post_init__(self) -> None:
        if not sv.MIN_QUBITS <= self.n_qubits <= sv.MAX_QUBITS:
            raise ValueError(f"n_qubits must be in [2, 12], got {self.n_qubits}")
        if self.layers < 1:
            raise ValueError(f"layers must be >= 1, got {self.layers}")

    @property
    def param_count(self) -> int:
        return 2 * self.n_qubits * self.layers


def entangler_pairs(spec: CircuitSpec) -> list[tuple[int, int]]:
    """CNOT (control, target) pairs of one entangling sub-layer, in order."""
    n = spec.n_qubits
    if spec.topology is Topology.NEAREST_NEIGHBOR:
        return [(k, k + 1) for k in range(n - 1)]
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def gate_count(spec: CircuitSpec) -> int:
    """Total gates: 2n rotations per layer plus the entangler CNOTs."""
    n, L = spec.n_qubits, spec.layers
    if spec.topology is Topology.NEAREST_NEIGHBOR:
        return L * (3 * n - 1)
    return L * (n * (n - 1) // 2 + 2 * n)


def circuit_gates(spec: CircuitSpec) -> Iterator[tuple]:
    """Yield the circuit's gates in application order.

    Items are ("ry", qubit, param_index), ("rz", qubit, param_index) or
    ("cnot", control, target).
    """
    n = spec.n_qubits
    pairs = entangler_pairs(spec)
    for layer in range(spec.layers):
        base = 2 * n * layer
        for k in range(n):
            yield ("ry", k, base + k)
            yield ("rz", k, base + n + k)
        for control, target in pairs:
            yield ("cnot", control, target)


def _check_params(spec: CircuitSpec, params) -> np.ndarray:
    angles = np.asarray(params, dtype=np.float64)
    if angles.shape != (spec.param_count,):
        raise ValueError(
            f"expected {spec.param_count} angles, got shape {angles.shape}"
        )
    return angles


def run_circuit(spec: CircuitSpec, params) -> StateVector:
    """Apply the full layered circuit to the all-zeros state."""
    angles = _check_params(spec, params)
    state = init_zero(spec.n_qubits)
    amps = state.amplitudes
    n = spec.n_qubits
    for gate in circuit_gates(spec):
        kind, a, b = gate
        if kind == "ry":
            sv._apply_ry_inplace(amps, n, a, angles[b])
        elif kind == "rz":
            sv._apply_rz_inplace(amps, n, a, angles[b])
        else:
            sv._apply_cnot_inplace(amps, n, a, b)
    norm_sq = float(np.sum(np.abs(amps) ** 2))
    if abs(norm_sq - 1.0) > _NORM_TOL:
        raise ArithmeticError(f"statevector norm drifted: |psi|^2 = {norm_sq}")
    return state


def run_circuit_batch(spec: CircuitSpec, angles_batch: np.ndarray) -> np.ndarray:
    """Evaluate the circuit for a whole batch of angle vectors at once.

    ``angles_batch`` has shape (B, param_count); returns complex amplitudes
    of shape (B, 2^n). One vectorized pass over the gate list amortizes the
    per-gate overhead across the batch, which is what makes parameter-shift
    sweeps cheap.
    """
    angles_batch = np.asarray(angles_batch, dtype=np.float64)
    if angles_batch.ndim != 2 or angles_batch.shape[1] != spec.param_count:
        raise ValueError(
            f"expected batch of shape (B, {spec.param_count}), "
            f"got {angles_batch.shape}"
        )
    n = spec.n_qubits
    batch = angles_batch.shape[0]
    amps = np.zeros((batch, 2**n), dtype=np.complex128)
    amps[:, 0] = 1.0
    for gate in circuit_gates(spec):
        kind, a, b = gate
        if kind == "ry":
            view = amps.reshape(batch, 2 ** (n - 1 - a), 2, 2**a)
            half = angles_batch[:, b] / 2.0
            c = np.cos(half)[:, None, None]
            s = np.sin(half)[:, None, None]
            a0 = view[:, :, 0, :]
            a1 = view[:, :, 1, :]
            new0 = c * a0 - s * a1
            new1 = s * a0 + c * a1
            view[:, :, 0, :] = new0
            view[:, :, 1, :] = new1
        elif kind == "rz":
            view = amps.reshape(batch, 2 ** (n - 1 - a), 2, 2**a)
            half = angles_batch[:, b] / 2.0
            phase = np.exp(-1j * half)[:, None, None]
            view[:, :, 0, :] *= phase
            view[:, :, 1, :] *= np.conj(phase)
        else:
            control, target = a, b
            q_hi, q_lo = max(control, target), min(control, target)
            view = amps.reshape(
                batch, 2 ** (n - 1 - q_hi), 2, 2 ** (q_hi - q_lo - 1), 2, 2**q_lo
            )
            if control == q_hi:
                block = view[:, :, 1, :, :, :]
                tmp = block[:, :, :, 0, :].copy()
                block[:, :, :, 0, :] = block[:, :, :, 1, :]
                block[:, :, :, 1, :] = tmp
            else:
                tmp = view[:, :, 0, :, 1, :].copy()
                view[:, :, 0, :, 1, :] = view[:, :, 1, :, 1, :]
                view[:, :, 1, :, 1, :] = tmp
    norms = np.sum(amps.real**2 + amps.imag**2, axis=1)
    if np.max(np.abs(norms - 1.0)) > _NORM_TOL:
        raise ArithmeticError("statevector norm drifted in batch evaluation")
    return amps
