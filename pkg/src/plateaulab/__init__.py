"""Statevector laboratory for gradient-variance and trainability experiments
on variational quantum circuits with physics-informed loss functions."""

from .statevector import (
    DensityMatrix,
    StateVector,
    apply_cnot,
    apply_ry,
    apply_rz,
    expect_z,
    expect_z_string,
    init_zero,
    reduced_density_matrix,
    von_neumann_entropy,
)
from .ansatz import (
    CircuitSpec,
    Topology,
    circuit_gates,
    entangler_pairs,
    gate_count,
    run_circuit,
)
from .losses import (
    Burgers,
    Discretization,
    Heat,
    LossConfig,
    LossKind,
    SaintVenant,
    all_configs,
    centered_d1,
    centered_d2,
    data_loss,
    default_target,
    output_vector,
    pde_loss,
    pde_residual,
    physics_loss_gradient_penalty,
    total_loss,
)
from .gradients import (
    VarianceReport,
    draw_params,
    finite_difference_gradient,
    gradient_variance,
    jacobian_outputs,
    loss_gradient,
)
from .experiments import (
    EntropyResult,
    ScalingFit,
    ScalingModel,
    SweepResult,
    TrainTrace,
    entanglement_sweep,
    fit_scaling,
    per_param_distribution,
    sweep_depth,
    sweep_pde,
    sweep_qubits,
    train,
)

__version__ = "0.1.0"
