"""Zipper entanglement renormalization for 1D free-fermion ground states."""

from ._core import (
    ModelSpec,
    RGConfig,
    binary_entropy,
    bloch_hamiltonian,
    entanglement_entropy,
    entanglement_spectrum,
    ground_state_correlation,
    preset_names,
    run,
    run_preset,
)

__all__ = [
    "ModelSpec",
    "RGConfig",
    "binary_entropy",
    "bloch_hamiltonian",
    "entanglement_entropy",
    "entanglement_spectrum",
    "ground_state_correlation",
    "preset_names",
    "run",
    "run_preset",
]
