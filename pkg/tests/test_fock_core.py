import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sqztomo.config import boundary_margin
from sqztomo.diagnostics import CutoffError, TruncationWarning
from sqztomo.fock_core import (DensityMatrix, PlebanskiParams, annihilation_matrix,
                               displacement_matrix, matrix_exponential, matrix_from_json,
                               matrix_to_json, number_matrix, plebanski_transform,
                               quadrature_matrices, rotation_matrix, squeeze_matrix,
                               stoler_squeeze, unitarity_defect)
from sqztomo.states import coherent_vector, fock_vector

# |<2k|S(0.5)|0>|^2 for k = 0, 1, 2, frozen from mpmath position-space overlaps
SQUEEZED_VACUUM_05 = [0.88681888397007391, 0.09469109156021773, 0.015166122952961575]


def test_annihilation_lowers():
    a = annihilation_matrix(6)
    for n in range(1, 6):
        np.testing.assert_allclose(a @ fock_vector(n, 6), math.sqrt(n) * fock_vector(n - 1, 6))
    np.testing.assert_allclose(a @ fock_vector(0, 6), 0)


def test_number_operator():
    a = annihilation_matrix(10)
    np.testing.assert_allclose(a.conj().T @ a, number_matrix(10), atol=1e-15)


def test_canonical_commutator_interior_only():
    N = 30
    q, p = quadrature_matrices(N)
    comm = q @ p - p @ q
    np.testing.assert_allclose(comm[:-1, :-1], 1j * np.eye(N - 1), atol=1e-14)
    assert abs(comm[-1, -1] - 1j) > 1  # the truncation defect sits in the last level


def test_cutoff_validation():
    with pytest.raises(ValueError):
        annihilation_matrix(1)


def test_matrix_exponential_rejects_bad_input():
    with pytest.raises(ValueError):
        matrix_exponential(np.ones((2, 3)))
    with pytest.raises(ValueError):
        matrix_exponential(np.array([[np.nan]]))


def test_squeeze_on_vacuum_matches_frozen_oracle():
    psi = squeeze_matrix(0.5, 80) @ fock_vector(0, 80)
    np.testing.assert_allclose(np.abs(psi[[0, 2, 4]]) ** 2, SQUEEZED_VACUUM_05, atol=1e-14)
    assert np.max(np.abs(psi[1::2])) == 0.0


def test_squeeze_amplitude_sign_convention():
    # S(lam) = exp[lam/2 (a^2 - a^dag^2)]: <2|S|0> = -tanh(lam)/sqrt(2 cosh lam)
    lam = 0.3
    psi = squeeze_matrix(lam, 60) @ fock_vector(0, 60)
    assert psi[2].real == pytest.approx(-math.tanh(lam) / math.sqrt(2 * math.cosh(lam)), abs=1e-14)


@pytest.mark.filterwarnings("ignore::sqztomo.diagnostics.TruncationWarning")
@given(st.floats(-0.5, 0.5), st.floats(-0.5, 0.5))
@settings(max_examples=10, deadline=None)
def test_squeeze_group_law(l1, l2):
    # the intermediate sum is truncated, so only the low block is exact
    S = lambda lam: squeeze_matrix(lam, 120, working_dim=480)
    np.testing.assert_allclose((S(l1) @ S(l2))[:10, :10], S(l1 + l2)[:10, :10], atol=1e-12)


def test_squeeze_unitarity():
    # exact in its own space; cropped from a larger one only on columns that stay inside
    with pytest.warns(TruncationWarning):
        own = squeeze_matrix(0.8, 64)
    assert unitarity_defect(own, margin=0) < 1e-12
    cropped = squeeze_matrix(0.5, 64, working_dim=256)
    assert unitarity_defect(cropped, margin=54) < 1e-9
    assert unitarity_defect(cropped) > 0.1


def test_squeeze_range_and_truncation_warning():
    with pytest.raises(ValueError):
        squeeze_matrix(2.5, 10)
    with pytest.warns(TruncationWarning):
        squeeze_matrix(1.5, 12)


def test_stoler_map_is_identity():
    np.testing.assert_allclose(stoler_squeeze(0.4, 60), squeeze_matrix(0.4, 60), atol=1e-14)


def test_stoler_complex_parameter_is_rotated_squeeze():
    # exp[(z a^2 - z* a^dag^2)/2] with z = r e^{i phi} equals R(-phi/2) S(r) R(phi/2)
    r, phi, N = 0.5, 0.9, 60
    R = lambda th: rotation_matrix(th, N)
    lhs = stoler_squeeze(r * np.exp(1j * phi), N)[:30, :30]
    rhs = (R(-phi / 2) @ squeeze_matrix(r, N) @ R(phi / 2))[:30, :30]
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_rotation_is_diagonal_phase():
    R = rotation_matrix(0.7, 5)
    np.testing.assert_allclose(np.diag(R), np.exp(0.7j * (np.arange(5) + 0.5)))


def test_displacement_on_vacuum_is_coherent():
    eta, xi = 0.6, -0.4
    beta = (xi + 1j * eta) / math.sqrt(2)
    psi = displacement_matrix(eta, xi, 40, working_dim=120) @ fock_vector(0, 40)
    np.testing.assert_allclose(psi, coherent_vector(beta, 40), atol=1e-13)


def test_displacement_shifts_quadratures():
    eta, xi, N = 0.5, 0.3, 60
    D = displacement_matrix(eta, xi, N, working_dim=240)
    q, p = quadrature_matrices(N)
    vac = fock_vector(0, N)
    psi = D @ vac
    # exp[i(eta q - xi p)] moves q by xi and p by eta
    assert (psi.conj() @ q @ psi).real == pytest.approx(xi, abs=1e-12)
    assert (psi.conj() @ p @ psi).real == pytest.approx(eta, abs=1e-12)


def test_plebanski_identity_and_norm():
    psi = coherent_vector(0.5, 40)
    np.testing.assert_allclose(plebanski_transform(PlebanskiParams(0, 0, 1.0), psi), psi,
                               atol=1e-14)
    out = plebanski_transform(PlebanskiParams(0.3, -0.2, 1.4), psi, working_dim=160)
    assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValueError):
        PlebanskiParams(0, 0, 0.0)
    with pytest.raises(ValueError):
        plebanski_transform(PlebanskiParams(0, 0, 1.0), 2 * psi)


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(np.ones((2, 3)))
    with pytest.raises(ValueError):
        DensityMatrix(np.array([[0.5, 0.1j], [0.2j, 0.5]]))
    with pytest.raises(CutoffError):
        DensityMatrix(np.diag([0.5, 0.4]))
    with pytest.raises(ValueError):
        DensityMatrix(np.array([[1.2, 0], [0, -0.2]]))
    rho = DensityMatrix(np.diag([0.7, 0.3 - 1e-9]))
    assert rho.tail_mass == pytest.approx(1e-9)
    assert not rho.matrix.flags.writeable
    np.testing.assert_allclose(rho.photon_distribution(), [0.7, 0.3 - 1e-9])


def test_matrix_json_round_trip(rng):
    A = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    data = matrix_to_json(A)
    assert data[1][2] == [A[1, 2].real, A[1, 2].imag]
    np.testing.assert_array_equal(matrix_from_json(data), A)


def test_boundary_margin():
    assert boundary_margin(128) == 13
    assert boundary_margin(10) == 1
