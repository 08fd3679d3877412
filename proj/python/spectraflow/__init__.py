"""Spectral diagnostics for Rabi, Jaynes-Cummings and asymmetric Rabi models."""

from ._core import (
    ConvergenceError,
    NumericalError,
    converge,
    crossings,
    eigh,
    eigvalsh,
    hamiltonian,
    histogram,
    run,
    spectral_flow,
    spectrum,
    uncertainty,
    uniform_grid,
)

__all__ = [
    "ConvergenceError",
    "NumericalError",
    "converge",
    "crossings",
    "eigh",
    "eigvalsh",
    "hamiltonian",
    "histogram",
    "run",
    "spectral_flow",
    "spectrum",
    "uncertainty",
    "uniform_grid",
]
