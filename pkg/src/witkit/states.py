"""States, the amplitude-damping channel and measurement records.

Computational basis labels are 1-based in the public API (``|1>, ..., |d>``)
and 0-based internally.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .bases import PAULI
from .config import TOL
from .linalg import as_matrix, is_hermitian, min_eigenvalue, projector, swap_operator

BELL_KINDS = ("phi+", "phi-", "psi+", "psi-")


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray
    dims: tuple[int, int] = (2, 2)

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", amp)
        object.__setattr__(self, "dims", tuple(int(x) for x in self.dims))
        if amp.size != self.dims[0] * self.dims[1]:
            raise ValueError(f"{amp.size} amplitudes do not fit dims {self.dims}")
        if abs(np.linalg.norm(amp) - 1.0) > TOL.matrix_eq:
            raise ValueError(f"state is not normalized (norm {np.linalg.norm(amp)!r})")

    def projector(self) -> np.ndarray:
        return projector(self.amplitudes)

    def density(self) -> DensityMatrix:
        return DensityMatrix(self.projector(), self.dims)

    def schmidt_coefficients(self) -> np.ndarray:
        return np.linalg.svd(self.amplitudes.reshape(self.dims), compute_uv=False)

    def overlap(self, other: PureState) -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class DensityMatrix:
    matrix: np.ndarray
    dims: tuple[int, int] = (2, 2)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", tuple(int(x) for x in self.dims))
        n = self.dims[0] * self.dims[1]
        if m.shape != (n, n):
            raise ValueError(f"matrix of shape {m.shape} does not act on {self.dims}")
        if not is_hermitian(m, TOL.matrix_eq):
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1.0) > TOL.matrix_eq:
            raise ValueError(f"density matrix trace is {np.trace(m).real!r}, not 1")
        if min_eigenvalue(m) < -TOL.eig_tol:
            raise ValueError("density matrix is not positive semidefinite")


def _ket(d: int, *indices: int) -> np.ndarray:
    v = np.zeros(d ** len(indices), dtype=complex)
    pos = 0
    for i in indices:
        pos = pos * d + i
    v[pos] = 1.0
    return v


def _bell_vector(j: int, k: int, kind: str, d: int) -> np.ndarray:
    if kind not in BELL_KINDS:
        raise ValueError(f"unknown Bell kind {kind!r}; expected one of {BELL_KINDS}")
    sign = 1.0 if kind.endswith("+") else -1.0
    if kind.startswith("phi"):
        v = _ket(d, j, j) + sign * _ket(d, k, k)
    else:
        v = _ket(d, j, k) + sign * _ket(d, k, j)
    return v / math.sqrt(2)


def generalized_bell(j: int, k: int, kind: str, d: int) -> PureState:
    """``(|jj> +- |kk>)/sqrt2`` or ``(|jk> +- |kj>)/sqrt2`` with ``1 <= j < k <= d``."""
    if not 1 <= j < k <= d:
        raise ValueError(f"need 1 <= j < k <= d, got j={j}, k={k}, d={d}")
    return PureState(_bell_vector(j - 1, k - 1, kind, d), (d, d))


def bell_state(kind: str) -> PureState:
    return generalized_bell(1, 2, kind, 2)


@dataclass(frozen=True)
class FamilyParams:
    """One point ``(a, b)`` on a family of the six rank-1 families, ``b = sign_b * sqrt(1 - a^2)``."""

    family: int
    a: float
    sign_b: int = 1

    def __post_init__(self):
        if self.family not in range(1, 7):
            raise ValueError(f"family must be in 1..6, got {self.family}")
        if not abs(self.a) <= 1.0:
            raise ValueError(f"|a| must be <= 1, got {self.a}")
        if self.sign_b not in (1, -1):
            raise ValueError("sign_b must be +1 or -1")

    @property
    def b(self) -> float:
        return self.sign_b * math.sqrt(max(0.0, 1.0 - self.a * self.a))

    @classmethod
    def from_angle(cls, family: int, theta: float) -> FamilyParams:
        a, b = math.cos(theta), math.sin(theta)
        return cls(family, max(-1.0, min(1.0, a)), 1 if b >= 0 else -1)


# (first Bell kind, second Bell kind, imaginary weight on the second)
FAMILY_TERMS = {
    1: ("phi+", "phi-", False),
    2: ("psi+", "psi-", False),
    3: ("phi+", "psi+", False),
    4: ("phi-", "psi-", False),
    5: ("phi+", "psi-", True),
    6: ("phi-", "psi+", True),
}


def _family_vector(p: FamilyParams, j: int, k: int, d: int) -> np.ndarray:
    first, second, imaginary = FAMILY_TERMS[p.family]
    coef = 1j * p.b if imaginary else p.b
    v = p.a * _bell_vector(j, k, first, d) + coef * _bell_vector(j, k, second, d)
    return v / np.linalg.norm(v)


def theorem1_state(p: FamilyParams) -> PureState:
    """Two-qubit member of the six families, e.g. ``a|phi+> + i b|psi->`` for family 5."""
    return PureState(_family_vector(p, 0, 1, 2), (2, 2))


def theorem2_state(p: FamilyParams, j: int, k: int, d: int) -> PureState:
    """Same families embedded on levels ``j < k`` (1-based) of a ``d x d`` system."""
    if not 1 <= j < k <= d:
        raise ValueError(f"need 1 <= j < k <= d, got j={j}, k={k}, d={d}")
    return PureState(_family_vector(p, j - 1, k - 1, d), (d, d))


def werner(f: float) -> DensityMatrix:
    if not -1.0 <= f <= 1.0:
        raise ValueError(f"f must lie in [-1, 1], got {f}")
    m = (np.eye(4) - f * swap_operator(2)) / (2.0 * (2.0 - f))
    return DensityMatrix(m, (2, 2))


def isotropic(p: float) -> DensityMatrix:
    """``(1 - p) 1/4 + p |phi+><phi+|``; entangled iff ``p > 1/3``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    m = (1.0 - p) * np.eye(4) / 4.0 + p * bell_state("phi+").projector()
    return DensityMatrix(m, (2, 2))


def bell_diagonal(p1: float, p2: float, p3: float, p4: float) -> DensityMatrix:
    """Mixture of ``phi+, phi-, psi+, psi-`` with the given weights."""
    probs = np.array([p1, p2, p3, p4], dtype=float)
    if np.any(probs < -TOL.matrix_eq) or abs(probs.sum() - 1.0) > TOL.matrix_eq:
        raise ValueError(f"weights must form a probability vector, got {probs}")
    m = sum(w * bell_state(kind).projector() for w, kind in zip(probs, BELL_KINDS))
    return DensityMatrix(m, (2, 2))


def max_correlated(x, d: int | None = None) -> PureState:
    """``sum_i x_i |ii>`` for a real unit vector ``x``."""
    x = np.asarray(x, dtype=float).reshape(-1)
    d = x.size if d is None else d
    if x.size != d:
        raise ValueError(f"expected {d} amplitudes, got {x.size}")
    if abs(float(x @ x) - 1.0) > TOL.matrix_eq:
        raise ValueError(f"amplitudes must satisfy sum x_i^2 = 1, got {float(x @ x)!r}")
    v = np.zeros(d * d, dtype=complex)
    v[np.arange(d) * (d + 1)] = x
    return PureState(v, (d, d))


def amplitude_damping_kraus(gamma: float) -> tuple[np.ndarray, np.ndarray]:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    a0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - gamma)]], dtype=complex)
    a1 = np.array([[0.0, math.sqrt(gamma)], [0.0, 0.0]], dtype=complex)
    completeness = a0.conj().T @ a0 + a1.conj().T @ a1
    assert np.allclose(completeness, np.eye(2), atol=TOL.matrix_eq, rtol=0)
    return a0, a1


def amplitude_damping_apply(rho: DensityMatrix, gamma: float, subsystem: str = "B") -> DensityMatrix:
    if rho.dims != (2, 2):
        raise ValueError("amplitude damping acts on two-qubit states")
    eye = np.eye(2)
    out = np.zeros((4, 4), dtype=complex)
    for k in amplitude_damping_kraus(gamma):
        if subsystem == "B":
            op = np.kron(eye, k)
        elif subsystem == "A":
            op = np.kron(k, eye)
        else:
            raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")
        out += op @ rho.matrix @ op.conj().T
    return DensityMatrix(0.5 * (out + out.conj().T), (2, 2))


def damped_bell(gamma: float) -> DensityMatrix:
    return amplitude_damping_apply(bell_state("phi+").density(), gamma, "B")


RECORD_KEYS = ("exx", "eyy", "ezz", "ax", "ay", "az", "bx", "by", "bz")
AXES = ("x", "y", "z")


@dataclass(frozen=True)
class MeasurementRecord:
    """Three correlations ``<s_k (x) s_k>`` and six marginals, optionally with standard errors."""

    exx: float
    eyy: float
    ezz: float
    ax: float = 0.0
    ay: float = 0.0
    az: float = 0.0
    bx: float = 0.0
    by: float = 0.0
    bz: float = 0.0
    shots: int | None = None
    std_err: dict | None = field(default=None)

    def __post_init__(self):
        if self.shots is not None and self.shots <= 0:
            raise ValueError("shots must be positive")
        if self.std_err is not None:
            missing = set(RECORD_KEYS) - set(self.std_err)
            if missing:
                raise ValueError(f"std_err is missing entries {sorted(missing)}")
        for key in RECORD_KEYS:
            value = getattr(self, key)
            slack = 3.0 * self.std_err[key] if self.std_err else 0.0
            if not abs(value) <= 1.0 + slack + TOL.matrix_eq:
                raise ValueError(f"{key}={value!r} is outside [-1, 1]")

    def values(self) -> np.ndarray:
        return np.array([getattr(self, k) for k in RECORD_KEYS])

    def errors(self) -> np.ndarray | None:
        if self.std_err is None:
            return None
        return np.array([self.std_err[k] for k in RECORD_KEYS])

    def correlation(self, axis: str) -> float:
        return getattr(self, f"e{axis}{axis}")

    def to_dict(self) -> dict:
        out = {k: float(getattr(self, k)) for k in RECORD_KEYS}
        if self.shots is not None:
            out["shots"] = int(self.shots)
        if self.std_err is not None:
            out["std_err"] = {k: float(self.std_err[k]) for k in RECORD_KEYS}
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> MeasurementRecord:
        unknown = set(data) - set(RECORD_KEYS) - {"shots", "std_err"}
        if unknown:
            raise ValueError(f"unknown record keys {sorted(unknown)}")
        missing = set(RECORD_KEYS) - set(data)
        if missing:
            raise ValueError(f"record is missing keys {sorted(missing)}")
        kwargs = {k: float(data[k]) for k in RECORD_KEYS}
        if data.get("shots") is not None:
            kwargs["shots"] = int(data["shots"])
        if data.get("std_err") is not None:
            kwargs["std_err"] = {k: float(v) for k, v in data["std_err"].items()}
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text: str) -> MeasurementRecord:
        return cls.from_dict(json.loads(text))


def exact_record(rho: DensityMatrix) -> MeasurementRecord:
    if rho.dims != (2, 2):
        raise ValueError("measurement records are defined for two qubits")
    m = rho.matrix
    eye = PAULI["I"]

    def ev(op):
        return float(np.einsum("ij,ji->", op, m).real)

    vals = {}
    for s in AXES:
        p = PAULI[s]
        vals[f"e{s}{s}"] = ev(np.kron(p, p))
        vals[f"a{s}"] = ev(np.kron(p, eye))
        vals[f"b{s}"] = ev(np.kron(eye, p))
    return MeasurementRecord(**vals)


def _eigenprojectors(axis: str) -> tuple[np.ndarray, np.ndarray]:
    """Projectors onto the +1 and -1 eigenspaces of a Pauli matrix."""
    p = PAULI[axis]
    return (np.eye(2) + p) / 2.0, (np.eye(2) - p) / 2.0


def outcome_probabilities(rho: DensityMatrix, axis: str) -> np.ndarray:
    """Joint probabilities of ``(s_A, s_B)`` in the order ``(++, +-, -+, --)``."""
    plus, minus = _eigenprojectors(axis)
    probs = np.array(
        [np.einsum("ij,ji->", np.kron(pa, pb), rho.matrix).real for pa in (plus, minus) for pb in (plus, minus)]
    )
    probs = np.clip(probs, 0.0, None)
    return probs / probs.sum()


def sampled_record(rho: DensityMatrix, shots: int, seed: int) -> MeasurementRecord:
    """Finite-shot estimate of the record.

    Each of the three settings ``s_k (x) s_k`` gets its own ``shots`` outcome
    pairs, drawn with numpy's PCG64 generator seeded by ``seed``; marginals are
    read off the same outcome pairs. ``std_err`` is the sample standard error.
    """
    if rho.dims != (2, 2):
        raise ValueError("measurement records are defined for two qubits")
    shots = int(shots)
    if shots < 2:
        raise ValueError("need at least two shots per setting")
    rng = np.random.Generator(np.random.PCG64(seed))
    s_a = np.array([1.0, 1.0, -1.0, -1.0])
    s_b = np.array([1.0, -1.0, 1.0, -1.0])
    vals, errs = {}, {}
    for axis in AXES:
        counts = rng.multinomial(shots, outcome_probabilities(rho, axis))
        for key, outcome in ((f"e{axis}{axis}", s_a * s_b), (f"a{axis}", s_a), (f"b{axis}", s_b)):
            mean = float(counts @ outcome) / shots
            var = float(counts @ (outcome - mean) ** 2) / (shots - 1)
            vals[key] = mean
            errs[key] = math.sqrt(var / shots)
    return MeasurementRecord(**vals, shots=shots, std_err=errs)
