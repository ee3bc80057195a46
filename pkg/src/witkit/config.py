"""Numerical tolerances and certifier defaults shared across the package."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    matrix_eq: float = 1e-12
    hermitian: float = 1e-10
    jacobi_offdiag: float = 1e-13
    classify: float = 1e-10
    eig_tol: float = 1e-10
    bp_tol: float = 1e-6
    sigma_threshold: float = 3.0

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if not value > 0:
                raise ValueError(f"tolerance {name} must be positive, got {value}")


@dataclass(frozen=True)
class CertifierSettings:
    restarts: int = 64
    iters: int = 200
    tol: float = 1e-12
    seed: int = 0


TOL = Tolerances()
CERTIFIER = CertifierSettings()


def from_env(prefix: str = "WK_", environ=None) -> tuple[Tolerances, CertifierSettings]:
    """Defaults overridden by ``WK_SEED``, ``WK_BP_TOL`` and ``WK_RESTARTS``."""
    environ = os.environ if environ is None else environ
    tol, cert = TOL, CERTIFIER
    if f"{prefix}BP_TOL" in environ:
        tol = replace(tol, bp_tol=float(environ[f"{prefix}BP_TOL"]))
    if f"{prefix}SEED" in environ:
        cert = replace(cert, seed=int(environ[f"{prefix}SEED"]))
    if f"{prefix}RESTARTS" in environ:
        cert = replace(cert, restarts=int(environ[f"{prefix}RESTARTS"]))
    return tol, cert
