import math
import warnings

import numpy as np
import pytest

from sqztomo.diagnostics import QuadratureWarning, SingularParameterError
from sqztomo.states import StateSpec, make_density
from sqztomo.tomography.frames import TomographyFrame
from sqztomo.tomography.inverse import QuadratureSpec, characteristic_grid
from sqztomo.tomography.kernels import (derived_coefficient, fock_wigner_kernel,
                                        fock_wigner_limit_path, kernel_density_to_squeeze,
                                        kernel_symplectic_to_squeeze, kernel_wigner_to_squeeze,
                                        tilde_parameters, transform_density_kernel,
                                        transform_symplectic_kernel, transform_wigner_kernel,
                                        z_squared)
from sqztomo.tomography.phase_space import GaussianSampler
from sqztomo.tomography.squeeze import squeeze_tomogram_oracle

N_MAX = 8


@pytest.fixture(scope="module")
def coherent_rho():
    return make_density(StateSpec.coherent(1.0), 24)


def _oracle(rho, frame):
    return squeeze_tomogram_oracle(rho, frame, N_MAX).values[0]


@pytest.fixture(scope="module")
def coherent_chi():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QuadratureWarning)
        return characteristic_grid(GaussianSampler.coherent(1.0), QuadratureSpec().scaled(0.25))


@pytest.mark.parametrize("frame", [TomographyFrame(0.5, 1.0), TomographyFrame(-0.4, 0.3),
                                   TomographyFrame(0.2, 1.3)], ids=str)
def test_density_kernel_with_derived_coefficient_matches_oracle(coherent_rho, frame):
    vals = transform_density_kernel(coherent_rho, frame, N_MAX, coefficient="derived", nodes=801)
    np.testing.assert_allclose(vals.real, _oracle(coherent_rho, frame), atol=1e-10)
    assert np.max(np.abs(vals.imag)) < 1e-10


def test_density_kernel_printed_coefficient_disagrees(coherent_rho):
    """The literal quadratic coefficient does not reproduce the tomogram."""
    frame = TomographyFrame(0.5, 1.0)
    vals = transform_density_kernel(coherent_rho, frame, N_MAX, nodes=801)
    err = np.max(np.abs(vals.real - _oracle(coherent_rho, frame)))
    assert err > 1e-2


@pytest.mark.parametrize("frame", [TomographyFrame(0.3, 0.8), TomographyFrame(-0.6, 0.5)],
                         ids=str)
def test_wigner_kernel_with_derived_coefficient_matches_oracle(coherent_rho, frame):
    vals = transform_wigner_kernel(coherent_rho, frame, N_MAX, coefficient="derived", nodes=241)
    np.testing.assert_allclose(vals.real, _oracle(coherent_rho, frame), atol=1e-9)


def test_wigner_kernel_printed_coefficient_disagrees(coherent_rho):
    frame = TomographyFrame(0.3, 0.8)
    vals = transform_wigner_kernel(coherent_rho, frame, N_MAX, nodes=241)
    assert np.max(np.abs(vals.real - _oracle(coherent_rho, frame))) > 1e-2


def test_derived_coefficient_depends_on_frame_not_only_munu():
    a = TomographyFrame(0.3, 0.4)
    theta = math.pi / 2 - 0.4
    b = TomographyFrame(0.3 + math.log(math.tan(theta) / math.tan(0.4)) / 2, theta)
    assert a.mu == pytest.approx(b.mu) and a.nu == pytest.approx(b.nu)
    assert derived_coefficient(a) != pytest.approx(derived_coefficient(b))
    # and the two frames really have different tomograms
    rho = make_density(StateSpec.coherent(1.0), 60)
    assert np.max(np.abs(_oracle(rho, a) - _oracle(rho, b))) > 1e-2


def test_derived_coefficient_rejects_mismatched_frame():
    with pytest.raises(ValueError):
        kernel_density_to_squeeze(0.1, 0.2, 0, 0.5, 0.5, coefficient="derived",
                                  frame=TomographyFrame(0.0, 0.0))


def test_unknown_coefficient():
    with pytest.raises(ValueError):
        kernel_density_to_squeeze(0.1, 0.2, 0, 0.5, 0.5, coefficient="other")


@pytest.mark.parametrize("mu,nu,which", [(1.0, 0.0, "nu"), (0.0, 0.0, "nu")])
def test_printed_coefficient_singularities(mu, nu, which):
    with pytest.raises(SingularParameterError) as info:
        kernel_density_to_squeeze(0.1, 0.2, 1, mu, nu)
    assert info.value.denominator == which


def test_printed_coefficient_singular_at_zero_product():
    with pytest.raises(SingularParameterError):
        kernel_wigner_to_squeeze(0.1, 0.2, 1, 0.0, 1.0)


def test_density_kernel_conjugate_symmetry():
    x, y = 0.3, -1.1
    k_xy = kernel_density_to_squeeze(x, y, 2, 0.6, 0.7)
    k_yx = kernel_density_to_squeeze(y, x, 2, 0.6, 0.7)
    assert k_xy == pytest.approx(np.conj(k_yx))


def test_z_squared_is_real_and_nonnegative_on_manifold():
    q, p = np.meshgrid(np.linspace(-2, 2, 5), np.linspace(-2, 2, 5))
    fr = TomographyFrame(0.4, 0.6)
    z = z_squared(q, p, fr.mu, fr.nu, coefficient="derived", frame=fr)
    assert np.all(np.abs(np.imag(z)) < 1e-14) and np.all(np.real(z) >= -1e-14)


def test_fock_wigner_kernel_is_fock_wigner_over_2pi():
    from sqztomo.tomography.phase_space import wigner_points
    q = np.linspace(-2, 2, 9)[:, None]
    p = np.linspace(-2, 2, 9)[None, :]
    for n in range(4):
        W = wigner_points(make_density(StateSpec.fock(n), n + 2), q, p)
        np.testing.assert_allclose(fock_wigner_kernel(q, p, n), W / (2 * np.pi), atol=1e-14)


def test_limit_path_claim():
    """Near mu = 0, nu = 1 the printed kernel stays about 1/pi away from the
    Fock-state Wigner kernel; the derived coefficient converges to it."""
    printed = fock_wigner_limit_path(0)
    assert not printed.coincides
    assert printed.final_deviation == pytest.approx(1 / math.pi, abs=0.01)
    derived = fock_wigner_limit_path(0, coefficient="derived")
    assert derived.coincides
    assert list(derived.deviations) == sorted(derived.deviations, reverse=True)


def test_tilde_parameters_singular_and_readings():
    with pytest.raises(SingularParameterError):
        tilde_parameters(0.4, 0.6, 0.0, 1.0)
    with pytest.raises(ValueError):
        tilde_parameters(0.4, 0.6, 0.3, 1.0, reading="neither")
    a = tilde_parameters(0.4, 0.6, 0.3, 0.9, reading="swapped")
    b = tilde_parameters(0.3, 0.9, 0.4, 0.6)
    assert a == pytest.approx(b)


def test_symplectic_kernel_has_unit_modulus_phase():
    k = kernel_symplectic_to_squeeze(0, 0.4, 0.6, np.array([0.0, 1.0]), 0.3, 0.9)
    assert abs(k[1] / k[0]) == pytest.approx(1.0)
    assert np.angle(k[1] / k[0]) == pytest.approx(1.0)


def test_symplectic_kernel_readings(coherent_rho, coherent_chi):
    frame = TomographyFrame(0.4, 0.6)
    ref = _oracle(coherent_rho, frame)
    swapped = transform_symplectic_kernel(None, frame, N_MAX, reading="swapped", chi=coherent_chi)
    printed = transform_symplectic_kernel(None, frame, N_MAX, chi=coherent_chi)
    assert np.max(np.abs(swapped.real - ref)) < 1e-3
    assert np.max(np.abs(swapped.imag)) < 1e-12
    assert np.max(np.abs(printed.real - ref)) > 1e-2


def test_symplectic_swapped_reading_limited_to_small_angles(coherent_rho, coherent_chi):
    frame = TomographyFrame(0.2, 1.2)    # |theta| > pi/4
    ref = _oracle(coherent_rho, frame)
    swapped = transform_symplectic_kernel(None, frame, N_MAX, reading="swapped", chi=coherent_chi)
    assert np.max(np.abs(swapped.real - ref)) > 1e-2
