"""Quantum bouncer eigenstates and their classical limit, studied in Fourier space."""

from .bouncer import (BouncerState, DensityGrid, PhysicalParams, classical_density,
                      gravitational_length, load_species, make_state, quantum_density,
                      regime_estimate, tail_probability, wavefunction)
from .correspondence import (WindowPolicy, albright_moment, classical_coefficient,
                             convergence_study, local_average, quantum_coefficient_albright,
                             quantum_coefficient_closed, quantum_coefficient_numeric)
from .errors import AccuracyError, DomainError
from .special import airy_ai, airy_ai_prime, airy_zero, erf_rotated

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "BouncerState", "DensityGrid", "DomainError", "PhysicalParams",
    "WindowPolicy", "airy_ai", "airy_ai_prime", "airy_zero", "albright_moment",
    "classical_coefficient", "classical_density", "convergence_study", "erf_rotated",
    "gravitational_length", "load_species", "local_average", "make_state",
    "quantum_coefficient_albright", "quantum_coefficient_closed",
    "quantum_coefficient_numeric", "quantum_density", "regime_estimate",
    "tail_probability", "wavefunction",
]
