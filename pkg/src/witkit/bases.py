"""Orthonormal Hermitian operator bases and Bloch-type decompositions.

Generalized Gell-Mann elements are normalized so that ``Tr(G_a G_b) = delta_ab``,
with ``G_0 = 1/sqrt(d)``. Element order is fixed: identity, diagonal
``D(1..d-1)``, symmetric ``S(j,k)`` and antisymmetric ``A(j,k)``, the last two
in lexicographic ``(j, k)`` order with 1-based ``j < k``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .config import TOL
from .linalg import as_matrix, is_hermitian


class Label(NamedTuple):
    kind: str  # "I", "D", "S" or "A"
    j: int = 0
    k: int = 0

    def __str__(self):
        if self.kind == "I":
            return "I"
        if self.kind == "D":
            return f"D{self.j}"
        return f"{self.kind}{self.j}{self.k}"


@dataclass(frozen=True)
class OperatorBasis:
    d: int
    elements: np.ndarray  # shape (d*d, d, d)
    labels: tuple[Label, ...]

    def __len__(self):
        return len(self.labels)

    def __getitem__(self, item) -> np.ndarray:
        if isinstance(item, Label):
            item = self.labels.index(item)
        return self.elements[item]

    def index(self, label: Label) -> int:
        return self.labels.index(label)

    def gram(self) -> np.ndarray:
        return np.einsum("aij,bji->ab", self.elements, self.elements)


def _diagonal_element(l: int, d: int) -> np.ndarray:
    diag = np.zeros(d)
    diag[:l] = 1.0
    diag[l] = -float(l)
    return np.diag(diag).astype(complex) / np.sqrt(l * (l + 1))


@lru_cache(maxsize=None)
def _gell_mann(d: int) -> OperatorBasis:
    elements = [np.eye(d, dtype=complex) / np.sqrt(d)]
    labels = [Label("I")]
    for l in range(1, d):
        elements.append(_diagonal_element(l, d))
        labels.append(Label("D", l))
    pairs = list(itertools.combinations(range(d), 2))
    for j, k in pairs:
        g = np.zeros((d, d), dtype=complex)
        g[j, k] = g[k, j] = 1.0 / np.sqrt(2)
        elements.append(g)
        labels.append(Label("S", j + 1, k + 1))
    for j, k in pairs:
        g = np.zeros((d, d), dtype=complex)
        g[j, k] = -1j / np.sqrt(2)
        g[k, j] = 1j / np.sqrt(2)
        elements.append(g)
        labels.append(Label("A", j + 1, k + 1))
    arr = np.array(elements)
    arr.setflags(write=False)
    return OperatorBasis(d=d, elements=arr, labels=tuple(labels))


def gell_mann_basis(d: int) -> OperatorBasis:
    if int(d) != d or d < 2:
        raise ValueError(f"local dimension must be an integer >= 2, got {d}")
    return _gell_mann(int(d))


@lru_cache(maxsize=None)
def _pauli() -> OperatorBasis:
    gm = _gell_mann(2)
    order = [Label("I"), Label("S", 1, 2), Label("A", 1, 2), Label("D", 1)]
    arr = np.array([gm[lab] for lab in order])
    arr.setflags(write=False)
    return OperatorBasis(d=2, elements=arr, labels=tuple(order))


def pauli_basis() -> OperatorBasis:
    """``(1, sx, sy, sz) / sqrt(2)``, the qubit Gell-Mann set in conventional order."""
    return _pauli()


PAULI = {
    "I": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class BlochDecomposition:
    """Coefficients of ``X = alpha 1(x)1 + sum a_i G_i(x)1 + sum b_i 1(x)G_i + sum C_ij G_i(x)G_j``.

    Indices run over the traceless elements ``1..d^2-1`` of the basis used
    for the decomposition, so ``C`` of the flip operator is the identity.
    """

    d: int
    alpha: float
    a: np.ndarray
    b: np.ndarray
    C: np.ndarray
    basis: OperatorBasis

    def reconstruct(self) -> np.ndarray:
        g = self.basis.elements[1:]
        eye = np.eye(self.d, dtype=complex)
        out = self.alpha * np.eye(self.d * self.d, dtype=complex)
        out += sum(np.kron(ai * gi, eye) for ai, gi in zip(self.a, g))
        out += sum(np.kron(eye, bi * gi) for bi, gi in zip(self.b, g))
        out += np.einsum("ab,aij,bkl->ikjl", self.C, g, g).reshape(self.d**2, self.d**2)
        return out

    def rescaled_form(self) -> tuple[float, np.ndarray, np.ndarray, np.ndarray]:
        """Rescale to ``X = (1/d^2){t 1(x)1 + a'.G(x)1 + b'.1(x)G + C' G(x)G}``.

        Returns ``(t, a', b', C')``; ``t`` equals ``Tr X``.
        """
        s = float(self.d**2)
        return s * self.alpha, s * self.a, s * self.b, s * self.C

    def off_diagonal_max(self) -> float:
        off = self.C - np.diag(np.diag(self.C))
        return float(np.max(np.abs(off), initial=0.0))


def bloch_decompose(x, d: int, basis: OperatorBasis | None = None) -> BlochDecomposition:
    x = as_matrix(x)
    if x.shape != (d * d, d * d):
        raise ValueError(f"expected a {d * d}x{d * d} operator, got {x.shape}")
    if not is_hermitian(x, TOL.hermitian):
        raise ValueError("bloch_decompose requires a Hermitian operator")
    basis = gell_mann_basis(d) if basis is None else basis
    g = basis.elements
    t = x.reshape(d, d, d, d)
    # coeff[a, b] = Tr[(G_a (x) G_b) X]
    coeff = np.einsum("aij,bkl,jlik->ab", g, g, t).real
    return BlochDecomposition(
        d=d,
        alpha=float(coeff[0, 0]) / d,
        a=coeff[1:, 0] / np.sqrt(d),
        b=coeff[0, 1:] / np.sqrt(d),
        C=coeff[1:, 1:].copy(),
        basis=basis,
    )


def pauli_coefficients(x) -> np.ndarray:
    """Two-qubit expansion ``X = sum T_mn s_m (x) s_n`` with unnormalized Pauli matrices.

    Returns ``T`` as a 4x4 array indexed by ``(I, x, y, z)``.
    """
    x = as_matrix(x)
    names = ("I", "x", "y", "z")
    T = np.empty((4, 4))
    for m, p in enumerate(names):
        for n, q in enumerate(names):
            T[m, n] = np.einsum("ij,ji->", np.kron(PAULI[p], PAULI[q]), x).real / 4.0
    return T


class CorrelationClass(enum.Enum):
    C0 = "C0"
    C1 = "C1"
    GENERAL = "General"

    def within(self, other: CorrelationClass) -> bool:
        """Class membership with ``C0`` contained in ``C1`` contained in ``General``."""
        order = (CorrelationClass.C0, CorrelationClass.C1, CorrelationClass.GENERAL)
        return order.index(self) <= order.index(other)


@dataclass(frozen=True)
class CorrelationStructure:
    """Split of a correlation matrix into diagonal-block, matched-pair and leftover parts."""

    D: np.ndarray
    S: dict
    A: dict
    residual: float
    off_diagonal: float

    def classify(self, tol: float = TOL.classify) -> CorrelationClass:
        if self.off_diagonal <= tol:
            return CorrelationClass.C0
        if self.residual <= tol:
            return CorrelationClass.C1
        return CorrelationClass.GENERAL


def correlation_structure(dec: BlochDecomposition) -> CorrelationStructure:
    labels = dec.basis.labels[1:]
    kinds = np.array([lab.kind for lab in labels])
    diag_idx = np.flatnonzero(kinds == "D")
    allowed = np.eye(len(labels), dtype=bool)
    allowed[np.ix_(diag_idx, diag_idx)] = True
    C = dec.C
    S = {(lab.j, lab.k): float(C[i, i]) for i, lab in enumerate(labels) if lab.kind == "S"}
    A = {(lab.j, lab.k): float(C[i, i]) for i, lab in enumerate(labels) if lab.kind == "A"}
    return CorrelationStructure(
        D=C[np.ix_(diag_idx, diag_idx)].copy(),
        S=S,
        A=A,
        residual=float(np.max(np.abs(C[~allowed]), initial=0.0)),
        off_diagonal=dec.off_diagonal_max(),
    )


def classify_correlation(dec: BlochDecomposition, tol: float = TOL.classify) -> CorrelationClass:
    """C0 for a diagonal correlation matrix, C1 when only the diagonal-block and matched pairs survive."""
    if any(lab.kind not in "IDSA" for lab in dec.basis.labels):
        raise ValueError("classification needs a Gell-Mann labelled basis")
    return correlation_structure(dec).classify(tol)
