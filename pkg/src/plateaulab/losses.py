"""Loss functions mapping circuit outputs to scalars.

Four configurations are supported: a global parity cost, a single-qubit local
cost, and two physics-informed losses (data MSE plus a weighted physics
penalty) differing only in which entangling topology they pair with. The
physics penalty is either a squared-gradient penalty on the output profile or
the mean squared residual of a steady PDE operator, selected by whether the
config carries a PDE kind.

Outputs live on a periodic unit-length grid with one collocation point per
qubit, so dx = 1/n. Residuals are steady-state: time derivatives are zero and
only the spatial operator is tested.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .ansatz import CircuitSpec, Topology, run_circuit
from .statevector import StateVector, expect_z, expect_z_string


@dataclass(frozen=True)
class Heat:
    """Linear diffusion: residual kappa * d2f/dx2."""

    kappa: float = 0.01

    name = "heat"


@dataclass(frozen=True)
class Burgers:
    """Nonlinear advection-diffusion: residual f*df/dx - nu * d2f/dx2."""

    nu: float = 0.01

    name = "burgers"


@dataclass(frozen=True)
class SaintVenant:
    """Shallow-water continuity closed by Manning's discharge relation.

    The output profile maps to a cross-section area A = (f+1)/2 + epsilon_floor
    (the floor keeps the fractional power well defined), the wide-channel
    approximation sets the hydraulic radius equal to A, and the residual is
    the spatial divergence of the discharge Q = A^(5/3) * sqrt(S_f) / n_M.
    """

    manning_n: float = 0.035
    friction_slope: float = 0.001
    epsilon_floor: float = 0.05

    name = "saint_venant"

    def __post_init__(self) -> None:
        if self.epsilon_floor <= 0:
            raise ValueError("epsilon_floor must be positive")


PdeKind = Union[Heat, Burgers, SaintVenant]


@dataclass(frozen=True)
class Discretization:
    """Periodic collocation grid with one point per qubit, dx = 1/n."""

    n_points: int

    def __post_init__(self) -> None:
        # A centered +-1 stencil wants >= 3 points; n = 2 is allowed so the
        # smallest circuits can still be differentiated, with the first
        # derivative degenerating to zero there.
        if self.n_points < 2:
            raise ValueError(f"n_points must be >= 2, got {self.n_points}")

    @property
    def dx(self) -> float:
        return 1.0 / self.n_points


class LossKind(enum.Enum):
    GLOBAL_COST = "global_cost"
    LOCAL_COST = "local_cost"
    PDE_CONSTRAINED = "pde_constrained"
    PDE_STRUCTURED = "pde_structured"


_REQUIRED_TOPOLOGY = {
    LossKind.GLOBAL_COST: Topology.ALL_TO_ALL,
    LossKind.LOCAL_COST: Topology.ALL_TO_ALL,
    LossKind.PDE_CONSTRAINED: Topology.ALL_TO_ALL,
    LossKind.PDE_STRUCTURED: Topology.NEAREST_NEIGHBOR,
}

DEFAULT_PHYSICS_WEIGHT = 0.1


@dataclass(frozen=True)
class LossConfig:
    """One loss configuration.

    For the two PDE kinds, ``pde = None`` selects the squared-gradient
    penalty as the physics term while a concrete PdeKind selects that
    equation's residual loss. ``target_profile = None`` uses the default
    smooth target sin(2*pi*k/n) at evaluation time.
    """

    kind: LossKind
    pde: Optional[PdeKind] = None
    physics_weight: float = DEFAULT_PHYSICS_WEIGHT
    target_profile: Optional[tuple] = None

    def __post_init__(self) -> None:
        if self.kind in (LossKind.GLOBAL_COST, LossKind.LOCAL_COST) and self.pde is not None:
            raise ValueError(f"{self.kind.value} does not take a PDE")
        if self.physics_weight < 0:
            raise ValueError("physics_weight must be nonnegative")
        if self.target_profile is not None:
            coerced = tuple(float(x) for x in self.target_profile)
            object.__setattr__(self, "target_profile", coerced)

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def pde_name(self) -> Optional[str]:
        return None if self.pde is None else self.pde.name

    def required_topology(self) -> Topology:
        return _REQUIRED_TOPOLOGY[self.kind]

    def target(self, n: int) -> np.ndarray:
        if self.target_profile is not None:
            t = np.asarray(self.target_profile, dtype=np.float64)
            if t.shape != (n,):
                raise ValueError(f"target profile must have length {n}")
            return t
        return default_target(n)


def default_target(n: int) -> np.ndarray:
    """Fixed smooth data target: sin(2*pi*k/n) on the unit grid."""
    return np.sin(2.0 * np.pi * np.arange(n) / n)


def all_configs(physics_weight: float = DEFAULT_PHYSICS_WEIGHT) -> list[LossConfig]:
    """The four standard configurations, physics term = gradient penalty."""
    return [
        LossConfig(LossKind.GLOBAL_COST),
        LossConfig(LossKind.LOCAL_COST),
        LossConfig(LossKind.PDE_CONSTRAINED, physics_weight=physics_weight),
        LossConfig(LossKind.PDE_STRUCTURED, physics_weight=physics_weight),
    ]


def output_vector(state: StateVector) -> np.ndarray:
    """Per-qubit Pauli-Z expectations, component k = <Z_k>."""
    return np.array([expect_z(state, k) for k in range(state.n_qubits)])


def _check_profile(f, disc: Discretization) -> np.ndarray:
    arr = np.asarray(f, dtype=np.float64)
    if arr.shape != (disc.n_points,):
        raise ValueError(f"expected {disc.n_points} grid values, got shape {arr.shape}")
    return arr


def centered_d1(f, disc: Discretization) -> np.ndarray:
    """Periodic centered first difference (f_{k+1} - f_{k-1}) / (2 dx)."""
    arr = _check_profile(f, disc)
    return (np.roll(arr, -1) - np.roll(arr, 1)) / (2.0 * disc.dx)


def centered_d2(f, disc: Discretization) -> np.ndarray:
    """Periodic centered second difference (f_{k+1} - 2 f_k + f_{k-1}) / dx^2."""
    arr = _check_profile(f, disc)
    return (np.roll(arr, -1) - 2.0 * arr + np.roll(arr, 1)) / disc.dx**2


def physics_loss_gradient_penalty(f, disc: Discretization) -> float:
    """Mean squared centered first difference of the profile."""
    d1 = centered_d1(f, disc)
    return float(np.mean(d1**2))


def _manning_discharge(pde: SaintVenant, area: np.ndarray) -> np.ndarray:
    coeff = np.sqrt(pde.friction_slope) / pde.manning_n
    return coeff * area ** (5.0 / 3.0)


def pde_residual(f, pde: PdeKind, disc: Discretization) -> np.ndarray:
    """Steady spatial residual of the given PDE on the periodic grid."""
    arr = _check_profile(f, disc)
    if isinstance(pde, Heat):
        res = pde.kappa * centered_d2(arr, disc)
    elif isinstance(pde, Burgers):
        res = arr * centered_d1(arr, disc) - pde.nu * centered_d2(arr, disc)
    elif isinstance(pde, SaintVenant):
        area = (arr + 1.0) / 2.0 + pde.epsilon_floor
        with np.errstate(invalid="ignore"):
            discharge = _manning_discharge(pde, area)
        if not np.all(np.isfinite(discharge)):
            raise ArithmeticError(
                "non-finite discharge (negative area raised to fractional power)"
            )
        res = centered_d1(discharge, disc)
    else:
        raise TypeError(f"unknown PDE kind: {pde!r}")
    if not np.all(np.isfinite(res)):
        raise ArithmeticError("non-finite PDE residual")
    return res


def pde_loss(f, pde: PdeKind, disc: Discretization) -> float:
    """Mean squared residual over the collocation points."""
    res = pde_residual(f, pde, disc)
    return float(np.mean(res**2))


def data_loss(f, target) -> float:
    """Mean squared error between profile and target."""
    arr = np.asarray(f, dtype=np.float64)
    tgt = np.asarray(target, dtype=np.float64)
    if arr.shape != tgt.shape:
        raise ValueError(f"length mismatch: {arr.shape} vs {tgt.shape}")
    return float(np.mean((arr - tgt) ** 2))


def physics_term(config: LossConfig, f, disc: Discretization) -> float:
    """The unweighted physics penalty the config selects."""
    if config.pde is None:
        return physics_loss_gradient_penalty(f, disc)
    return pde_loss(f, config.pde, disc)


def loss_from_outputs(config: LossConfig, f, disc: Discretization) -> float:
    """Composite data + physics loss evaluated on an output profile."""
    arr = np.asarray(f, dtype=np.float64)
    target = config.target(arr.size)
    return data_loss(arr, target) + config.physics_weight * physics_term(config, arr, disc)


def d_loss_d_outputs(config: LossConfig, f, disc: Discretization) -> np.ndarray:
    """Analytic gradient of the composite loss with respect to the outputs.

    The stencils are linear maps, so their adjoints are again stencils
    (centered_d1 is antisymmetric, centered_d2 symmetric); the pointwise
    nonlinearities of Burgers and Saint-Venant contribute diagonal factors.
    """
    arr = _check_profile(f, disc)
    n = arr.size
    target = config.target(n)
    grad = (2.0 / n) * (arr - target)
    lam = config.physics_weight
    if lam == 0.0:
        return grad
    if config.pde is None:
        d1 = centered_d1(arr, disc)
        grad += lam * (-(2.0 / n) * centered_d1(d1, disc))
        return grad
    pde = config.pde
    res = pde_residual(arr, pde, disc)
    if isinstance(pde, Heat):
        phys = (2.0 / n) * pde.kappa * centered_d2(res, disc)
    elif isinstance(pde, Burgers):
        d1f = centered_d1(arr, disc)
        phys = (2.0 / n) * (
            d1f * res - centered_d1(arr * res, disc) - pde.nu * centered_d2(res, disc)
        )
    else:
        area = (arr + 1.0) / 2.0 + pde.epsilon_floor
        coeff = np.sqrt(pde.friction_slope) / pde.manning_n
        dq_df = coeff * (5.0 / 3.0) * area ** (2.0 / 3.0) * 0.5
        phys = -(2.0 / n) * dq_df * centered_d1(res, disc)
    return grad + lam * phys


def total_loss(config: LossConfig, spec: CircuitSpec, params, disc: Discretization) -> float:
    """Run the circuit and evaluate the configured loss."""
    check_pairing(config, spec, disc)
    state = run_circuit(spec, params)
    if config.kind is LossKind.GLOBAL_COST:
        return expect_z_string(state, range(spec.n_qubits))
    if config.kind is LossKind.LOCAL_COST:
        return expect_z(state, 0)
    return loss_from_outputs(config, output_vector(state), disc)


def check_pairing(config: LossConfig, spec: CircuitSpec, disc: Discretization) -> None:
    """Reject mismatched config/topology/grid combinations."""
    required = config.required_topology()
    if spec.topology is not required:
        raise ValueError(
            f"{config.name} requires topology {required.value}, "
            f"got {spec.topology.value}"
        )
    if disc.n_points != spec.n_qubits:
        raise ValueError(
            f"grid has {disc.n_points} points but circuit has {spec.n_qubits} qubits"
        )
