"""Central numerical tolerance configuration.

Every tolerance used by the library lives in one frozen record so that the
defaults are visible in a single place and can be overridden together
(e.g. from the command line).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # Matrix-level gates (relative to max(1, maxabs)).
    hermiticity: float = 1e-12
    # Density-matrix gates.
    state_hermiticity: float = 1e-10
    unit_trace: float = 1e-10
    psd_epsilon: float = 1e-8  # eigenvalues in [-psd_epsilon, 0) clamp to zero
    # Derived-quantity gates.
    sqrt_residual: float = 1e-9
    eig_reconstruction: float = 1e-10
    gamma_imag: float = 1e-10
    parseval: float = 1e-10
    basis_orthonormality: float = 1e-12
    projector_tolerance: float = 1e-10
    # Optimizer stopping rule.
    optimizer_rel_improvement: float = 1e-10

    def replace(self, **overrides: float) -> "Tolerances":
        return dataclasses.replace(self, **overrides)

    @classmethod
    def from_overrides(cls, overrides: dict[str, float]) -> "Tolerances":
        known = {f.name for f in dataclasses.fields(cls)}
        bad = sorted(set(overrides) - known)
        if bad:
            raise KeyError(f"unknown tolerance keys: {', '.join(bad)}")
        return cls(**overrides)


DEFAULT_TOLERANCES = Tolerances()
