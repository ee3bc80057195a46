"""Dense complex linear algebra for small bipartite operators.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. A basis
vector ``|i>|j>`` of a ``dA x dB`` system sits at row ``i * dB + j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import TOL

SUBSYSTEMS = ("A", "B")


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in ascending order with matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def min(self) -> float:
        return float(self.eigenvalues[0])

    def __iter__(self):
        yield self.eigenvalues
        yield self.eigenvectors


def as_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    return arr


def is_hermitian(m, tol: float = TOL.matrix_eq) -> bool:
    m = as_matrix(m)
    return m.shape[0] == m.shape[1] and float(np.max(np.abs(m - m.conj().T), initial=0.0)) <= tol


def tensor(*ops) -> np.ndarray:
    """Kronecker product of one or more matrices (or vectors)."""
    if not ops:
        raise ValueError("tensor needs at least one operand")
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op, dtype=complex))
    return out


def _check_bipartite(m: np.ndarray, dims) -> tuple[int, int]:
    d_a, d_b = (int(x) for x in dims)
    if m.shape != (d_a * d_b, d_a * d_b):
        raise ValueError(f"matrix of shape {m.shape} does not act on {d_a}x{d_b}")
    return d_a, d_b


def _check_subsystem(subsystem: str) -> str:
    if subsystem not in SUBSYSTEMS:
        raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
    return subsystem


def partial_transpose(m, subsystem: str = "B", dims=(2, 2)) -> np.ndarray:
    m = as_matrix(m)
    d_a, d_b = _check_bipartite(m, dims)
    t = m.reshape(d_a, d_b, d_a, d_b)
    if _check_subsystem(subsystem) == "A":
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return np.ascontiguousarray(t.reshape(d_a * d_b, d_a * d_b))


def partial_trace(m, subsystem: str = "B", dims=(2, 2)) -> np.ndarray:
    """Trace out ``subsystem`` and return the reduced operator on the other factor."""
    m = as_matrix(m)
    d_a, d_b = _check_bipartite(m, dims)
    t = m.reshape(d_a, d_b, d_a, d_b)
    if _check_subsystem(subsystem) == "B":
        return np.einsum("ijkj->ik", t)
    return np.einsum("ijil->jl", t)


def trace_inner(a, b) -> complex:
    """``Tr(A B)``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0] or a.shape[0] != b.shape[1]:
        raise ValueError(f"incompatible shapes {a.shape} and {b.shape}")
    return complex(np.einsum("ij,ji->", a, b))


def expectation(op, rho) -> float:
    """Real part of ``Tr(op rho)`` for Hermitian arguments."""
    return trace_inner(op, rho).real


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigen(m, tol: float | None = None, max_sweeps: int = 100) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the real symmetric Jacobi rotation to the resulting 2x2 block.
    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||M||_F)``.
    """
    a = as_matrix(m).copy()
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"expected a square matrix, got {a.shape}")
    if not is_hermitian(a, TOL.hermitian):
        raise ValueError("hermitian_eigen requires a Hermitian matrix")
    tol = TOL.jacobi_offdiag if tol is None else tol
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))

    for _ in range(max_sweeps):
        if _offdiag_norm(a) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # columns p, q of the unitary: diag(1, conj(phase)) @ [[c, s], [-s, c]]
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                cols = [p, q]
                a[:, cols] = a[:, cols] @ rot
                a[cols, :] = rot.conj().T @ a[cols, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, cols] = v[:, cols] @ rot
    else:
        if _offdiag_norm(a) > tol * scale:
            raise RuntimeError("Jacobi iteration did not converge")

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return Spectrum(eigenvalues=w[order], eigenvectors=v[:, order])


def min_eigenvalue(m) -> float:
    return hermitian_eigen(m).min


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


def swap_operator(d: int) -> np.ndarray:
    """Matrix of ``|i>|j> -> |j>|i>`` on ``C^d (x) C^d``."""
    f = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            f[j * d + i, i * d + j] = 1.0
    return f
