import json

import numpy as np
import pytest

from witkit.linalg import hermitian_eigen, partial_trace, swap_operator
from witkit.states import (
    RECORD_KEYS,
    DensityMatrix,
    FamilyParams,
    MeasurementRecord,
    PureState,
    amplitude_damping_apply,
    amplitude_damping_kraus,
    bell_diagonal,
    bell_state,
    damped_bell,
    exact_record,
    generalized_bell,
    isotropic,
    max_correlated,
    outcome_probabilities,
    sampled_record,
    theorem1_state,
    theorem2_state,
    werner,
)

from conftest import I2, SX, SY, SZ, random_density

S2 = np.sqrt(2)


def ket(*idx, d=2):
    v = np.zeros(d * d, dtype=complex)
    v[idx[0] * d + idx[1]] = 1
    return v


def test_bell_states():
    np.testing.assert_allclose(bell_state("phi+").amplitudes, np.array([1, 0, 0, 1]) / S2)
    np.testing.assert_allclose(bell_state("psi-").amplitudes, np.array([0, 1, -1, 0]) / S2)
    assert bell_state("phi+").overlap(bell_state("psi-")) == 0
    with pytest.raises(ValueError):
        bell_state("chi")


def test_generalized_bell():
    v = generalized_bell(1, 2, "phi+", 3).amplitudes
    want = np.zeros(9)
    want[[0, 4]] = 1 / S2
    np.testing.assert_allclose(v, want)
    psi = generalized_bell(1, 3, "psi-", 3).amplitudes
    np.testing.assert_allclose(psi, (ket(0, 2, d=3) - ket(2, 0, d=3)) / S2)
    for kind in ("phi+", "phi-", "psi+", "psi-"):
        np.testing.assert_allclose(generalized_bell(1, 2, kind, 2).amplitudes, bell_state(kind).amplitudes)
    with pytest.raises(ValueError):
        generalized_bell(2, 2, "phi+", 3)
    with pytest.raises(ValueError):
        generalized_bell(1, 4, "phi+", 3)


def test_theorem1_examples():
    s = 1 / S2
    np.testing.assert_allclose(theorem1_state(FamilyParams(1, s)).amplitudes, ket(0, 0), atol=1e-15)
    np.testing.assert_allclose(theorem1_state(FamilyParams(2, 1.0)).amplitudes, bell_state("psi+").amplitudes)
    a = 0.3
    p = FamilyParams(5, a)
    want = a * bell_state("phi+").amplitudes + 1j * p.b * bell_state("psi-").amplitudes
    np.testing.assert_allclose(theorem1_state(p).amplitudes, want, atol=1e-15)


def test_theorem1_entangled_iff_not_balanced(rng):
    for family in range(1, 7):
        for a in (1 / S2, -1 / S2):
            for sign in (1, -1):
                coeffs = theorem1_state(FamilyParams(family, a, sign)).schmidt_coefficients()
                # balanced families 1-2 give product states only for one sign of b
                if coeffs[1] < 1e-12:
                    assert abs(a * FamilyParams(family, a, sign).b) == pytest.approx(0.5)
        for a in rng.uniform(-0.69, 0.69, 5):
            assert theorem1_state(FamilyParams(family, a)).schmidt_coefficients()[1] > 1e-3


def test_theorem1_schmidt_product_identity(rng):
    for family in range(1, 7):
        for a in rng.uniform(-1, 1, 10):
            p = FamilyParams(family, a)
            l1, l2 = theorem1_state(p).schmidt_coefficients()
            assert abs(l1 * l2 - abs(a * a - p.b * p.b) / 2) < 1e-12


def test_family_params_validation():
    with pytest.raises(ValueError):
        FamilyParams(7, 0.1)
    with pytest.raises(ValueError):
        FamilyParams(1, 1.1)
    with pytest.raises(ValueError):
        FamilyParams(1, 0.1, 0)
    p = FamilyParams.from_angle(3, -0.4)
    assert abs(p.a**2 + p.b**2 - 1) < 1e-12 and p.b < 0


def test_theorem2_examples(rng):
    np.testing.assert_allclose(
        theorem2_state(FamilyParams(1, 1.0), 1, 3, 3).amplitudes, generalized_bell(1, 3, "phi+", 3).amplitudes
    )
    for _ in range(20):
        d = int(rng.integers(3, 6))
        j, k = sorted(rng.choice(np.arange(1, d + 1), 2, replace=False))
        psi = theorem2_state(FamilyParams(int(rng.integers(1, 7)), rng.uniform(-1, 1)), j, k, d)
        assert np.sum(psi.schmidt_coefficients() > 1e-12) <= 2
    with pytest.raises(ValueError):
        theorem2_state(FamilyParams(1, 0.5), 3, 2, 3)


def test_werner():
    np.testing.assert_allclose(werner(1.0).matrix, bell_state("psi-").projector(), atol=1e-15)
    np.testing.assert_allclose(werner(0.0).matrix, np.eye(4) / 4)
    for f in np.linspace(-1, 1, 9):
        rho = werner(f)
        assert abs(np.trace(swap_operator(2) @ rho.matrix) - (1 - 2 * f) / (2 - f)) < 1e-14
    assert abs(np.trace(swap_operator(2) @ werner(0.5).matrix)) < 1e-15
    with pytest.raises(ValueError):
        werner(1.5)


def test_werner_entries_at_08():
    m = werner(0.8).matrix.real
    np.testing.assert_allclose(np.diag(m), [0.2 / 2.4, 1 / 2.4, 1 / 2.4, 0.2 / 2.4], atol=1e-15)
    assert abs(m[1, 2] + 0.8 / 2.4) < 1e-15


def test_isotropic():
    np.testing.assert_allclose(isotropic(0).matrix, np.eye(4) / 4)
    np.testing.assert_allclose(isotropic(1).matrix, bell_state("phi+").projector(), atol=1e-15)
    with pytest.raises(ValueError):
        isotropic(-0.1)


def test_bell_diagonal(rng):
    np.testing.assert_allclose(bell_diagonal(1, 0, 0, 0).matrix, bell_state("phi+").projector(), atol=1e-15)
    np.testing.assert_allclose(bell_diagonal(0.25, 0.25, 0.25, 0.25).matrix, np.eye(4) / 4, atol=1e-15)
    for _ in range(50):
        rec = exact_record(bell_diagonal(*rng.dirichlet(np.ones(4))))
        assert max(abs(getattr(rec, k)) for k in ("ax", "ay", "az", "bx", "by", "bz")) <= 1e-12
    with pytest.raises(ValueError):
        bell_diagonal(0.5, 0.5, 0.5, -0.5)


def test_max_correlated():
    np.testing.assert_allclose(max_correlated([1, 0, 0]).amplitudes, ket(0, 0, d=3))
    for d in (2, 3, 4):
        proj = max_correlated(np.full(d, 1 / np.sqrt(d))).projector()
        from witkit.linalg import partial_transpose

        np.testing.assert_allclose(d * proj, partial_transpose(swap_operator(d), "B", (d, d)), atol=1e-14)
    with pytest.raises(ValueError):
        max_correlated([1, 1])


def test_max_correlated_termwise_expansion(rng):
    d = 4
    x = rng.normal(size=d)
    x /= np.linalg.norm(x)
    e = np.eye(d)
    want = sum(x[i] ** 2 * np.kron(np.outer(e[i], e[i]), np.outer(e[i], e[i])) for i in range(d))
    for i in range(d):
        for j in range(i + 1, d):
            eij, eji = np.outer(e[i], e[j]), np.outer(e[j], e[i])
            want = want + x[i] * x[j] * (np.kron(eij, eij) + np.kron(eji, eji))
    np.testing.assert_allclose(max_correlated(x).projector(), want, atol=1e-15)


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(4), (2, 2))
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.5, -0.5, 0, 0]), (2, 2))
    with pytest.raises(ValueError):
        PureState([1, 1, 0, 0], (2, 2))


def test_kraus_completeness():
    for g in np.linspace(0, 1, 11):
        a0, a1 = amplitude_damping_kraus(g)
        np.testing.assert_allclose(a0.conj().T @ a0 + a1.conj().T @ a1, I2, atol=1e-15)
    with pytest.raises(ValueError):
        amplitude_damping_kraus(1.2)


def test_damping_examples():
    phi = bell_state("phi+").density()
    np.testing.assert_allclose(amplitude_damping_apply(phi, 0.0).matrix, phi.matrix, atol=1e-15)
    one = np.zeros((4, 4))
    one[0, 0] = one[2, 2] = 0.5
    np.testing.assert_allclose(damped_bell(1.0).matrix, one, atol=1e-15)
    g = 0.37
    want = np.zeros((4, 4))
    want[0, 0], want[2, 2], want[3, 3] = 0.5, g / 2, (1 - g) / 2
    want[0, 3] = want[3, 0] = np.sqrt(1 - g) / 2
    np.testing.assert_allclose(damped_bell(g).matrix, want, atol=1e-15)


def test_damping_preserves_states(rng):
    for _ in range(30):
        rho = DensityMatrix(random_density(rng, 4), (2, 2))
        for sub in "AB":
            out = amplitude_damping_apply(rho, rng.uniform(), sub)
            assert abs(np.trace(out.matrix) - 1) < 1e-12
            assert hermitian_eigen(out.matrix).min >= -1e-10


def test_exact_record_examples():
    r = exact_record(bell_state("phi+").density())
    assert (r.exx, r.eyy, r.ezz) == pytest.approx((1, -1, 1), abs=1e-15)
    f = 0.6
    r = exact_record(werner(f))
    np.testing.assert_allclose([r.exx, r.eyy, r.ezz], -f / (2 - f), atol=1e-15)
    g = 0.3
    r = exact_record(damped_bell(g))
    np.testing.assert_allclose(
        [r.exx, r.eyy, r.ezz, r.bz, r.az], [np.sqrt(1 - g), -np.sqrt(1 - g), 1 - g, g, 0], atol=1e-15
    )


def test_exact_record_matches_direct_traces(rng):
    rho = random_density(rng, 4)
    r = exact_record(DensityMatrix(rho, (2, 2)))
    for name, op in {"exx": np.kron(SX, SX), "ay": np.kron(SY, I2), "bz": np.kron(I2, SZ)}.items():
        assert abs(getattr(r, name) - np.trace(op @ rho).real) < 1e-14
    assert abs(r.ax - np.trace(SX @ partial_trace(rho, "B")).real) < 1e-14


def test_outcome_probabilities_reproduce_record(rng):
    rho = DensityMatrix(random_density(rng, 4), (2, 2))
    r = exact_record(rho)
    for axis in "xyz":
        p = outcome_probabilities(rho, axis)
        assert abs(p.sum() - 1) < 1e-15
        assert abs(p @ [1, -1, -1, 1] - r.correlation(axis)) < 1e-12
        assert abs(p @ [1, 1, -1, -1] - getattr(r, "a" + axis)) < 1e-12


def test_sampled_record_consistency(rng):
    rho = DensityMatrix(random_density(rng, 4), (2, 2))
    exact = exact_record(rho).values()
    rec = sampled_record(rho, 100_000, seed=3)
    assert np.all(np.abs(rec.values() - exact) <= 5 * rec.errors())
    assert rec.shots == 100_000


def test_sampled_maximally_mixed():
    shots = 100_000
    rec = sampled_record(DensityMatrix(np.eye(4) / 4, (2, 2)), shots, seed=7)
    assert np.all(np.abs(rec.values()) <= 5 / np.sqrt(shots))
    assert np.all(np.abs(rec.values()) <= 5 * rec.errors())


def test_sampled_determinism():
    rho = werner(0.3)
    a, b = sampled_record(rho, 1000, seed=11), sampled_record(rho, 1000, seed=11)
    assert a.to_json() == b.to_json()
    assert a.to_json() != sampled_record(rho, 1000, seed=12).to_json()


def test_sampled_std_err_is_sample_standard_error():
    rec = sampled_record(werner(0.0), 400, seed=1)
    m = rec.exx
    assert abs(rec.std_err["exx"] - np.sqrt((1 - m * m) * 400 / 399 / 400)) < 1e-12


def test_record_json_round_trip():
    rec = sampled_record(werner(0.7), 2000, seed=5)
    text = rec.to_json()
    back = MeasurementRecord.from_json(text)
    assert back == rec
    assert set(json.loads(text)) == set(RECORD_KEYS) | {"shots", "std_err"}
    exact = exact_record(isotropic(0.1 + 1e-17))
    assert MeasurementRecord.from_json(exact.to_json()) == exact


def test_record_validation():
    with pytest.raises(ValueError):
        MeasurementRecord(1.2, 0, 0)
    MeasurementRecord(1.02, 0, 0, shots=10, std_err={k: 0.01 for k in RECORD_KEYS})
    with pytest.raises(ValueError):
        MeasurementRecord.from_dict({"exx": 0, "eyy": 0, "ezz": 0, "ax": 0, "ay": 0, "az": 0, "bx": 0, "by": 0})
    with pytest.raises(ValueError):
        MeasurementRecord(0, 0, 0, shots=0)
