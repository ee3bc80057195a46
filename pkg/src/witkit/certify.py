"""Numerical block-positivity certification and the PPT oracle."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .config import CERTIFIER, TOL
from .linalg import hermitian_eigen, is_hermitian, partial_transpose
from .states import DensityMatrix
from .witnesses import Witness


@dataclass(frozen=True)
class WitnessVerdict:
    min_product_value: float
    min_eigenvalue: float
    is_block_positive: bool
    is_witness: bool
    restarts_used: int

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ProductMinimum:
    value: float
    a: np.ndarray
    b: np.ndarray


def _random_unit(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    return v / np.linalg.norm(v)


def _lowest(h: np.ndarray) -> tuple[float, np.ndarray]:
    w, v = np.linalg.eigh(h)
    return float(w[0]), v[:, 0]


def product_minimum(matrix, dims, restarts: int, iters: int, tol: float, seed: int) -> ProductMinimum:
    """Smallest ``<a(x)b|W|a(x)b>`` found by alternating minimization over unit vectors.

    With ``b`` fixed the optimal ``a`` is the lowest eigenvector of the
    contracted ``dA x dA`` matrix, and symmetrically for ``b``. Every restart
    draws its start from its own child of ``SeedSequence(seed)``.
    """
    d_a, d_b = dims
    t = np.asarray(matrix, dtype=complex).reshape(d_a, d_b, d_a, d_b)
    best = ProductMinimum(np.inf, np.zeros(d_a), np.zeros(d_b))
    for child in np.random.SeedSequence(seed).spawn(restarts):
        rng = np.random.default_rng(child)
        b = _random_unit(rng, d_b)
        value = np.inf
        for _ in range(iters):
            _, a = _lowest(np.einsum("ijkl,j,l->ik", t, b.conj(), b))
            new, b = _lowest(np.einsum("ijkl,i,k->jl", t, a.conj(), a))
            converged = abs(value - new) < tol
            value = new
            if converged:
                break
        if value < best.value:
            best = ProductMinimum(value, a, b)
    return best


def block_positivity_min(
    w,
    restarts: int = CERTIFIER.restarts,
    iters: int = CERTIFIER.iters,
    tol: float = CERTIFIER.tol,
    seed: int = CERTIFIER.seed,
    bp_tol: float = TOL.bp_tol,
    eig_tol: float = TOL.eig_tol,
    dims=None,
) -> WitnessVerdict:
    """Certify ``w`` from above: a negative ``min_product_value`` proves it is not block-positive."""
    if isinstance(w, Witness):
        matrix, dims = w.matrix, w.dims
    else:
        matrix = np.asarray(w, dtype=complex)
        if dims is None:
            side = int(round(np.sqrt(matrix.shape[0])))
            dims = (side, side)
    if not is_hermitian(matrix, TOL.hermitian):
        raise ValueError("block positivity is only defined for Hermitian operators")
    found = product_minimum(matrix, tuple(dims), restarts, iters, tol, seed)
    min_eig = hermitian_eigen(matrix).min
    is_bp = found.value >= -bp_tol
    return WitnessVerdict(
        min_product_value=float(found.value),
        min_eigenvalue=min_eig,
        is_block_positive=bool(is_bp),
        is_witness=bool(is_bp and min_eig < -eig_tol),
        restarts_used=int(restarts),
    )


def ppt_min_eigenvalue(rho: DensityMatrix, subsystem: str = "B") -> float:
    """Lowest eigenvalue of the partial transpose; negative means entangled."""
    return hermitian_eigen(partial_transpose(rho.matrix, subsystem, rho.dims)).min


def negative_eigenvector_witness(rho: DensityMatrix) -> Witness:
    """``|v><v|^Gamma`` for the lowest eigenvector ``v`` of ``rho^Gamma``."""
    spec = hermitian_eigen(partial_transpose(rho.matrix, "B", rho.dims))
    v = spec.eigenvectors[:, 0]
    m = partial_transpose(np.outer(v, v.conj()), "B", rho.dims)
    return Witness(m, rho.dims, "ProjectorPT", {"psi": v, "subsystem": "B"})
