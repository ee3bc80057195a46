"""Entanglement detection from the nine numbers of a measurement record.

With ``a = cos t`` and ``b = sin t`` each family expectation reads

    Tr[W_k rho] = 1/4 (1 + w + u cos 2t + v sin 2t),

because ``a^2 - b^2 = cos 2t`` and ``2ab = sin 2t``. The coefficients follow
from the Pauli content of ``W_k`` (``FAMILY_TABLE``): ``w`` is the signed
fixed correlation, ``u`` the signed pair of correlations multiplying
``a^2 - b^2`` and ``v`` the signed marginals multiplying ``2ab``. Over ``t``
the minimum is ``1/4 (1 + w - sqrt(u^2 + v^2))``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .config import TOL
from .states import RECORD_KEYS, MeasurementRecord, damped_bell, exact_record
from .witnesses import FAMILY_TABLE

FAMILIES = tuple(range(1, 7))


@dataclass(frozen=True)
class FamilyExpectation:
    family: int
    w: float
    u: float
    v: float

    def value(self, theta: float) -> float:
        return 0.25 * (1.0 + self.w + self.u * math.cos(2 * theta) + self.v * math.sin(2 * theta))


@dataclass(frozen=True)
class DetectionResult:
    min_value: float
    best_family: int
    best_a: float
    best_b: float
    entangled: bool
    significance: float | None = None
    std_err: float | None = None

    def to_dict(self) -> dict:
        return {
            "min_value": self.min_value,
            "best_family": self.best_family,
            "best_a": self.best_a,
            "best_b": self.best_b,
            "entangled": self.entangled,
            "significance": self.significance,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _gradients(k: int) -> np.ndarray:
    """Rows ``(dw, du, dv)`` of the linear map from record entries to ``(w, u, v)``."""
    row = FAMILY_TABLE[k]
    g = np.zeros((3, len(RECORD_KEYS)))
    index = {key: i for i, key in enumerate(RECORD_KEYS)}
    axis, sign = row["fixed"]
    g[0, index[f"e{axis}{axis}"]] = sign
    for axis, sign in row["cos"]:
        g[1, index[f"e{axis}{axis}"]] = sign
    axis, sa, sb = row["sin"]
    g[2, index[f"a{axis}"]] = sa
    g[2, index[f"b{axis}"]] = sb
    return g


_LINEAR_MAPS = {k: _gradients(k) for k in FAMILIES}


def family_expectation(rec: MeasurementRecord, k: int) -> FamilyExpectation:
    if k not in _LINEAR_MAPS:
        raise ValueError(f"family must be in 1..6, got {k}")
    w, u, v = _LINEAR_MAPS[k] @ rec.values()
    return FamilyExpectation(k, float(w), float(u), float(v))


def minimize_family(fe: FamilyExpectation) -> tuple[float, float]:
    """Closed-form ``(theta*, value)``; ``theta* = 0`` when the expectation is flat."""
    r = math.hypot(fe.u, fe.v)
    theta = 0.0 if r == 0.0 else 0.5 * math.atan2(-fe.v, -fe.u)
    return theta, 0.25 * (1.0 + fe.w - r)


def _value_std_err(fe: FamilyExpectation, errors: np.ndarray) -> float:
    """First-order error of the family minimum, treating record entries as independent."""
    r = math.hypot(fe.u, fe.v)
    dw, du, dv = 0.25, 0.0, 0.0
    if r > 0.0:
        du, dv = -0.25 * fe.u / r, -0.25 * fe.v / r
    grad = np.array([dw, du, dv]) @ _LINEAR_MAPS[fe.family]
    return float(math.sqrt(np.sum((grad * errors) ** 2)))


def detect(rec: MeasurementRecord, sigma_threshold: float = TOL.sigma_threshold) -> DetectionResult:
    """Minimize over all six families; ties go to the lowest family index.

    Exact records are called entangled on strict negativity. Records with
    ``std_err`` need ``min_value < -sigma_threshold * sigma`` where ``sigma``
    is the propagated standard error; ``significance`` is ``-min_value / sigma``.
    """
    best = None
    for k in FAMILIES:
        fe = family_expectation(rec, k)
        theta, value = minimize_family(fe)
        if best is None or value < best[2]:
            best = (fe, theta, value)
    fe, theta, value = best
    a, b = math.cos(theta), math.sin(theta)
    errors = rec.errors()
    if errors is None:
        return DetectionResult(value, fe.family, a, b, bool(value < 0.0))
    sigma = _value_std_err(fe, errors)
    significance = -value / sigma if sigma > 0 else (math.inf if value < 0 else -math.inf)
    return DetectionResult(
        value, fe.family, a, b, bool(value < -sigma_threshold * sigma), float(significance), sigma
    )


def witness_value(rec: MeasurementRecord, k: int, a: float, sign_b: int = 1) -> float:
    """``Tr[W_k(a, b) rho]`` from the record alone, ``b = sign_b * sqrt(1 - a^2)``."""
    if not abs(a) <= 1.0:
        raise ValueError(f"|a| must be <= 1, got {a}")
    fe = family_expectation(rec, k)
    b = sign_b * math.sqrt(max(0.0, 1.0 - a * a))
    return 0.25 * (1.0 + fe.w + (2 * a * a - 1.0) * fe.u + 2 * a * b * fe.v)


@dataclass(frozen=True)
class ScanRow:
    gamma: float
    a_lower: float
    a_upper: float
    min_value: float


def _bisect(f, lo: float, hi: float, tol: float) -> float:
    f_lo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def negative_interval(f, lo: float, hi: float, samples: int = 2001, tol: float = 1e-10) -> tuple[float, float]:
    """Edges of the region where ``f < 0`` on ``[lo, hi]``, refined by bisection.

    Returns ``(nan, nan)`` when no sample is negative. An edge that coincides
    with an end of the range is reported as that end.
    """
    grid = np.linspace(lo, hi, samples)
    vals = np.array([f(x) for x in grid])
    neg = np.flatnonzero(vals < 0)
    if neg.size == 0:
        return math.nan, math.nan
    first, last = neg[0], neg[-1]
    lower = lo if first == 0 else _bisect(f, grid[first - 1], grid[first], tol)
    upper = hi if last == samples - 1 else _bisect(f, grid[last], grid[last + 1], tol)
    return lower, upper


def gamma_scan(gammas, family: int = 2) -> list[ScanRow]:
    """For each damping strength: the ``a`` range in ``[0, 1/sqrt2]`` where ``W_2`` detects, and the optimum."""
    rows = []
    for gamma in gammas:
        rec = exact_record(damped_bell(float(gamma)))
        lower, upper = negative_interval(lambda a: witness_value(rec, family, a), 0.0, 1.0 / math.sqrt(2))
        rows.append(ScanRow(float(gamma), lower, upper, detect(rec).min_value))
    return rows
