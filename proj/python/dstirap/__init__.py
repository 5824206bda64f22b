"""Double-STIRAP geometric phase-gate simulator."""

from ._core import (
    PhysicsParams,
    average_gate_fidelity_unitary,
    c6_atomic_units,
    c6_to_freq_units,
    cesium_defaults,
    extract_channel_superop,
    gate_fidelity,
    grover_success,
    ideal_gate_unitary,
    ideal_success_probability,
    interaction_strength,
    optimal_iterations,
    run_grover_ideal,
    transfer_amplitude,
    version,
)

__version__ = version()

__all__ = [
    "PhysicsParams",
    "average_gate_fidelity_unitary",
    "c6_atomic_units",
    "c6_to_freq_units",
    "cesium_defaults",
    "extract_channel_superop",
    "gate_fidelity",
    "grover_success",
    "ideal_gate_unitary",
    "ideal_success_probability",
    "interaction_strength",
    "optimal_iterations",
    "run_grover_ideal",
    "transfer_amplitude",
    "version",
]
