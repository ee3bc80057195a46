"""Witness constructors for two qubits and for ``d x d`` Gell-Mann constructions."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .bases import PAULI, gell_mann_basis
from .config import TOL
from .linalg import as_matrix, is_hermitian, partial_transpose, swap_operator
from .states import FamilyParams, PureState, max_correlated

# Pauli content of W_k = |phi_k><phi_k|^Gamma, transposition on the first qubit:
#   W_k = 1/4 [ 1(x)1 + s0 S(x)S + (a^2 - b^2)(s1 P(x)P + s2 Q(x)Q) + 2ab (sA T(x)1 + sB 1(x)T) ]
# stored as fixed=(S, s0), cos=((P, s1), (Q, s2)), sin=(T, sA, sB).
FAMILY_TABLE = {
    1: {"fixed": ("z", 1), "cos": (("x", 1), ("y", 1)), "sin": ("z", 1, 1)},
    2: {"fixed": ("z", -1), "cos": (("x", 1), ("y", -1)), "sin": ("z", 1, -1)},
    3: {"fixed": ("x", 1), "cos": (("z", 1), ("y", 1)), "sin": ("x", 1, 1)},
    4: {"fixed": ("x", -1), "cos": (("z", 1), ("y", -1)), "sin": ("x", -1, 1)},
    5: {"fixed": ("y", 1), "cos": (("z", 1), ("x", 1)), "sin": ("y", 1, 1)},
    6: {"fixed": ("y", -1), "cos": (("z", 1), ("x", -1)), "sin": ("y", -1, 1)},
}

EXTREMAL_TRANSPOSE = "A"


@dataclass(frozen=True)
class Witness:
    matrix: np.ndarray
    dims: tuple[int, int]
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", tuple(int(x) for x in self.dims))
        if m.shape != (self.dims[0] * self.dims[1],) * 2:
            raise ValueError(f"matrix of shape {m.shape} does not act on {self.dims}")
        if not is_hermitian(m, TOL.matrix_eq):
            raise ValueError("witness operator must be Hermitian")

    def expectation(self, rho) -> float:
        rho = getattr(rho, "matrix", rho)
        return float(np.einsum("ij,ji->", self.matrix, rho).real)

    def provenance(self) -> dict:
        return {"kind": self.kind, "params": _jsonable(self.params)}

    def to_dict(self) -> dict:
        return {**matrix_to_dict(self.matrix, self.dims), "provenance": self.provenance()}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        value = value.tolist()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)) and not isinstance(value, bool):
        return int(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def matrix_to_dict(m, dims) -> dict:
    m = as_matrix(m)
    return {
        "dims": [int(dims[0]), int(dims[1])],
        "re": [float(x) for x in m.real.reshape(-1)],
        "im": [float(x) for x in m.imag.reshape(-1)],
    }


def matrix_from_dict(data: dict) -> tuple[np.ndarray, tuple[int, int]]:
    d_a, d_b = (int(x) for x in data["dims"])
    n = d_a * d_b
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data.get("im", np.zeros(n * n)), dtype=float)
    if re.size != n * n or im.size != n * n:
        raise ValueError(f"expected {n * n} entries for dims {(d_a, d_b)}")
    return (re + 1j * im).reshape(n, n), (d_a, d_b)


def witness_from_dict(data: dict) -> Witness:
    m, dims = matrix_from_dict(data)
    prov = data.get("provenance", {})
    return Witness(m, dims, prov.get("kind", "unknown"), prov.get("params", {}))


def _pp(s: str, t: str) -> np.ndarray:
    return np.kron(PAULI[s], PAULI[t])


def extremal_witness(p: FamilyParams) -> Witness:
    """Family-``k`` extremal two-qubit witness written out in Pauli operators."""
    row = FAMILY_TABLE[p.family]
    a, b = p.a, p.b
    fixed, s0 = row["fixed"]
    (x1, s1), (x2, s2) = row["cos"]
    t, sa, sb = row["sin"]
    m = (
        _pp("I", "I")
        + s0 * _pp(fixed, fixed)
        + (a * a - b * b) * (s1 * _pp(x1, x1) + s2 * _pp(x2, x2))
        + 2 * a * b * (sa * _pp(t, "I") + sb * _pp("I", t))
    ) / 4.0
    return Witness(m, (2, 2), "Extremal2Q", {"family": p.family, "a": a, "b": b})


def projector_witness(psi: PureState, subsystem: str = "B") -> Witness:
    m = partial_transpose(psi.projector(), subsystem, psi.dims)
    return Witness(m, psi.dims, "ProjectorPT", {"psi": psi.amplitudes, "subsystem": subsystem})


def flip_operator(d: int) -> Witness:
    return Witness(swap_operator(d), (d, d), "Flip", {"d": d})


def _unnormalized_max_entangled(d: int) -> np.ndarray:
    """``d P+_d = sum_ij |ii><jj|``."""
    m = np.zeros((d * d, d * d), dtype=complex)
    idx = np.arange(d) * (d + 1)
    m[np.ix_(idx, idx)] = 1.0
    return m


def orthogonal_witness(O, d: int) -> Witness:
    """``1(x)1 - sum O_ab G_a (x) G_b^T`` for a real orthogonal ``d^2 x d^2`` matrix ``O``."""
    O = np.asarray(O, dtype=float)
    if O.shape != (d * d, d * d):
        raise ValueError(f"O must be {d * d}x{d * d}, got {O.shape}")
    if np.max(np.abs(O.T @ O - np.eye(d * d))) > 1e-10:
        raise ValueError("O is not orthogonal")
    g = gell_mann_basis(d).elements
    corr = np.einsum("ab,aij,blk->ikjl", O, g, g).reshape(d * d, d * d)
    return Witness(np.eye(d * d) - corr, (d, d), "Orthogonal", {"O": O, "d": d})


def diagonal_operator(dmat) -> np.ndarray:
    """``sum_ij dmat[i, j] |i><i| (x) |j><j|``."""
    dmat = np.asarray(dmat, dtype=float)
    return np.diag(dmat.reshape(-1)).astype(complex)


def _diagonal_minus_entangled(dmat, d: int) -> np.ndarray:
    return diagonal_operator(dmat) - _unnormalized_max_entangled(d)


def reduction_witness(d: int) -> Witness:
    return Witness(np.eye(d * d) - _unnormalized_max_entangled(d), (d, d), "Reduction", {"d": d})


def example1_diagonal(d: int, k: int) -> np.ndarray:
    dmat = np.zeros((d, d))
    for i in range(d):
        dmat[i, i] = d - k
        for j in range(1, k + 1):
            dmat[i, (i + j) % d] = 1.0
    return dmat


def example1_witness(d: int, k: int) -> Witness:
    """``D - d P+`` with ``d_ii = d - k`` and ones on the next ``k`` cyclic neighbours."""
    if not 1 <= k <= d - 1:
        raise ValueError(f"k must lie in 1..{d - 1}, got {k}")
    return Witness(_diagonal_minus_entangled(example1_diagonal(d, k), d), (d, d), "Example1", {"d": d, "k": k})


class ValidatedWitness(NamedTuple):
    witness: Witness
    is_valid: bool


def example2_valid(d: int, p0: float, p) -> bool:
    p = np.asarray(p, dtype=float)
    if p.size != d or p0 <= 0 or np.any(p <= 0):
        return False
    return bool(d - 2 <= p0 < d - 1 and np.prod(p) >= (d - 1 - p0) ** d)


def example2_diagonal(d: int, p0: float, p) -> np.ndarray:
    """Diagonal pattern: ``p0`` on ``|ii>``, ``p_{i-1}`` on ``|i, i-1>``, ones elsewhere (cyclic, 1-based ``p``)."""
    p = np.asarray(p, dtype=float)
    dmat = np.ones((d, d))
    for i in range(d):
        dmat[i, i] = p0
        dmat[i, (i - 1) % d] = p[(i - 1) % d]
    return dmat


def example2_witness(d: int, p0: float, p) -> ValidatedWitness:
    p = np.asarray(p, dtype=float)
    if p.size != d:
        raise ValueError(f"expected {d} weights p_1..p_d, got {p.size}")
    w = Witness(
        _diagonal_minus_entangled(example2_diagonal(d, p0, p), d), (d, d), "Example2", {"d": d, "p0": p0, "p": p}
    )
    return ValidatedWitness(w, example2_valid(d, p0, p))


class Example3Witness(NamedTuple):
    witness: Witness
    is_valid: bool
    is_extremal_class: bool
    is_indecomposable_class: bool


def example3_diagonal(a: float, b: float, c: float) -> np.ndarray:
    dmat = np.zeros((3, 3))
    for i in range(3):
        dmat[i, i] = a + 1.0
        dmat[i, (i + 1) % 3] = b
        dmat[i, (i + 2) % 3] = c
    return dmat


def example3_predicates(a: float, b: float, c: float, tol: float = TOL.matrix_eq) -> tuple[bool, bool, bool]:
    """(valid witness, in the extremal subclass, in the indecomposable part of that subclass).

    The ``a < 1`` branch uses ``bc >= (1 - a)^2`` so that the reduction point
    ``(0, 1, 1)`` and the extremal surface ``bc = (1 - a)^2`` count as valid.
    """
    nonneg = min(a, b, c) >= 0
    valid = nonneg and a < 2 and a + b + c >= 2 - tol and (a >= 1 or b * c >= (1 - a) ** 2 - tol)
    extremal = nonneg and 0 < a <= 1 and abs(a + b + c - 2) <= tol and abs(b * c - (1 - a) ** 2) <= tol
    return bool(valid), bool(extremal), bool(extremal and abs(b - c) > tol)


def example3_witness(a: float, b: float, c: float) -> Example3Witness:
    if min(a, b, c) < 0:
        raise ValueError("a, b, c must be non-negative")
    w = Witness(_diagonal_minus_entangled(example3_diagonal(a, b, c), 3), (3, 3), "Example3", {"a": a, "b": b, "c": c})
    return Example3Witness(w, *example3_predicates(a, b, c))


def mc_thresholds(x) -> tuple[float, float]:
    """Largest amplitude and largest squared amplitude of a maximally correlated state."""
    x = np.abs(np.asarray(x, dtype=float))
    return float(x.max()), float(x.max() ** 2)


def mc_witness(lam: float, x) -> ValidatedWitness:
    """``lam 1(x)1 - |psi_MC><psi_MC|``; a witness iff ``max x_i^2 <= lam < 1``."""
    psi = max_correlated(x)
    d = psi.dims[0]
    linear, squared = mc_thresholds(x)
    m = lam * np.eye(d * d) - psi.projector()
    w = Witness(
        m, (d, d), "MCThreshold", {"lam": lam, "x": np.asarray(x, dtype=float), "x_max": linear, "x_max_sq": squared}
    )
    return ValidatedWitness(w, bool(squared <= lam < 1.0))


def family_schmidt_bound(p: FamilyParams) -> float:
    """Smallest eigenvalue of the family-``k`` witness, ``-|a^2 - b^2| / 2``."""
    return -abs(p.a * p.a - p.b * p.b) / 2.0

