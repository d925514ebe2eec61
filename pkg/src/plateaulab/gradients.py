"""Exact gradients and the gradient-variance estimation protocol.

Expectation values of this gate set are trigonometric in each angle, so the
pi/2 parameter-shift rule gives exact derivatives. Composite physics losses
are quadratic in the outputs, so their gradients are assembled as J^T * dL/df
with J the parameter-shift Jacobian of the outputs and dL/df analytic;
shifting the full nonlinear loss directly would be wrong.

All randomness flows through ``draw_params``: sample i of a run is drawn from
a generator seeded by (seed, n_qubits, layers, i), so draws are independent
of evaluation order and shared across loss configurations of the same shape,
making cross-configuration comparisons paired.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .ansatz import CircuitSpec, _check_params, run_circuit_batch
from .losses import Discretization, LossConfig, LossKind, check_pairing, d_loss_d_outputs

SHIFT = np.pi / 2.0


@dataclass(frozen=True)
class VarianceReport:
    """Per-parameter and mean gradient variances for one configuration."""

    per_param_variance: np.ndarray
    mean_variance: float
    n_samples: int
    seed: int


@lru_cache(maxsize=None)
def _z_sign_table(n_qubits: int) -> np.ndarray:
    # Row k holds the +-1 signs of <Z_k> over the 2^n basis states.
    idx = np.arange(2**n_qubits)
    return np.stack([1.0 - 2.0 * ((idx >> k) & 1) for k in range(n_qubits)])


@lru_cache(maxsize=None)
def _parity_sign_table(n_qubits: int) -> np.ndarray:
    idx = np.arange(2**n_qubits)
    parity = np.zeros_like(idx)
    for k in range(n_qubits):
        parity ^= (idx >> k) & 1
    return 1.0 - 2.0 * parity


def _batch_probs(spec: CircuitSpec, angles_batch: np.ndarray) -> np.ndarray:
    amps = run_circuit_batch(spec, angles_batch)
    return amps.real**2 + amps.imag**2


def _batch_outputs(spec: CircuitSpec, angles_batch: np.ndarray) -> np.ndarray:
    """Per-qubit <Z> for every batch row; shape (B, n)."""
    return _batch_probs(spec, angles_batch) @ _z_sign_table(spec.n_qubits).T


def _shift_batch(angles: np.ndarray) -> np.ndarray:
    # Rows 0..p-1 shift angle j by +pi/2, rows p..2p-1 by -pi/2.
    p = angles.size
    shifted = np.tile(angles, (2 * p, 1))
    j = np.arange(p)
    shifted[j, j] += SHIFT
    shifted[p + j, j] -= SHIFT
    return shifted


def jacobian_outputs(spec: CircuitSpec, params) -> np.ndarray:
    """Parameter-shift Jacobian of the outputs: entry (k, j) = df_k/dphi_j."""
    angles = _check_params(spec, params)
    p = spec.param_count
    f_shifted = _batch_outputs(spec, _shift_batch(angles))
    return (f_shifted[:p] - f_shifted[p:]).T / 2.0


def loss_gradient(
    config: LossConfig, spec: CircuitSpec, params, disc: Discretization
) -> np.ndarray:
    """Exact gradient of the configured loss with respect to all angles."""
    check_pairing(config, spec, disc)
    angles = _check_params(spec, params)
    p = spec.param_count
    if config.kind in (LossKind.GLOBAL_COST, LossKind.LOCAL_COST):
        probs = _batch_probs(spec, _shift_batch(angles))
        if config.kind is LossKind.GLOBAL_COST:
            values = probs @ _parity_sign_table(spec.n_qubits)
        else:
            values = probs @ _z_sign_table(spec.n_qubits)[0]
        return (values[:p] - values[p:]) / 2.0
    batch = np.vstack([_shift_batch(angles), angles[None, :]])
    f_all = _batch_outputs(spec, batch)
    jac = (f_all[:p] - f_all[p : 2 * p]).T / 2.0
    return jac.T @ d_loss_d_outputs(config, f_all[-1], disc)


def finite_difference_gradient(
    loss: Callable[[np.ndarray], float], params, h: float
) -> np.ndarray:
    """Central finite-difference gradient of an arbitrary scalar function."""
    if h <= 0:
        raise ValueError(f"step h must be positive, got {h}")
    angles = np.asarray(params, dtype=np.float64)
    grad = np.empty(angles.size)
    for j in range(angles.size):
        up = angles.copy()
        down = angles.copy()
        up[j] += h
        down[j] -= h
        grad[j] = (loss(up) - loss(down)) / (2.0 * h)
    return grad


def draw_params(seed: int, n_qubits: int, layers: int, index: int) -> np.ndarray:
    """Uniform [0, 2pi) angles for sample ``index`` of a seeded run."""
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    ss = np.random.SeedSequence([seed, n_qubits, layers, index])
    rng = np.random.default_rng(ss)
    return rng.uniform(0.0, 2.0 * np.pi, 2 * n_qubits * layers)


def gradient_variance(
    config: LossConfig,
    spec: CircuitSpec,
    disc: Discretization,
    n_samples: int,
    seed: int,
) -> VarianceReport:
    """Sample gradients at random initializations and report their variance.

    Each of the ``n_samples`` draws gets its own counter-derived substream,
    the per-parameter variances use the unbiased K-1 divisor, and the mean
    is the plain arithmetic mean over parameters.
    """
    if n_samples < 2:
        raise ValueError(f"need at least 2 samples, got {n_samples}")
    grads = np.stack(
        [
            loss_gradient(
                config, spec, draw_params(seed, spec.n_qubits, spec.layers, k), disc
            )
            for k in range(n_samples)
        ]
    )
    per_param = grads.var(axis=0, ddof=1)
    return VarianceReport(
        per_param_variance=per_param,
        mean_variance=float(np.mean(per_param)),
        n_samples=n_samples,
        seed=seed,
    )
