import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import odeint

from sqztomo.dynamics import (ConstantOmega, IntegrationError, SinusoidalOmega, StepOmega,
                              TabulatedOmega, density_grid, density_variance, integrate_epsilon,
                              kanai_coefficients, kanai_density, kanai_moments,
                              parametric_variances, uncertainty_audit)

T = np.linspace(0.0, 20.0, 801)


def test_constant_frequency_is_plane_wave():
    traj = integrate_epsilon(ConstantOmega(), T)
    np.testing.assert_allclose(traj.eps, np.exp(1j * T), atol=1e-10)
    m = parametric_variances(traj).moments
    np.testing.assert_allclose(m.sigma_q, 0.5, atol=1e-10)
    np.testing.assert_allclose(m.sigma_p, 0.5, atol=1e-10)
    np.testing.assert_allclose(m.schur, 0.25, atol=1e-10)


def test_step_profile_exact_solution():
    # omega: 1 -> 2 at t = 5.  Matching value and slope at the step gives
    # eps = e^{5i} (3/4 e^{2i(t-5)} + 1/4 e^{-2i(t-5)}) afterwards.
    traj = integrate_epsilon(StepOmega(), T)
    after = T >= 5.0
    tt = T[after] - 5.0
    exact = cmath.exp(5j) * (0.75 * np.exp(2j * tt) + 0.25 * np.exp(-2j * tt))
    np.testing.assert_allclose(traj.eps[after], exact, atol=1e-9)
    np.testing.assert_allclose(traj.eps[~after], np.exp(1j * T[~after]), atol=1e-10)


@pytest.mark.parametrize("profile", [ConstantOmega(1.3), StepOmega(), SinusoidalOmega(),
                                     SinusoidalOmega(depth=0.3),
                                     TabulatedOmega([0, 4, 8, 20], [1.0, 1.5, 0.8, 1.2])],
                         ids=repr)
def test_wronskian_conserved(profile):
    traj = integrate_epsilon(profile, T)
    assert traj.invariant_drift <= 1e-9


def test_sinusoidal_against_independent_solver():
    prof = SinusoidalOmega(depth=0.2)
    traj = integrate_epsilon(prof, T)

    def rhs(y, t):
        w2 = (1 + 0.2 * math.cos(2 * t)) ** 2
        return [y[2], y[3], -w2 * y[0], -w2 * y[1]]

    ref = odeint(rhs, [1.0, 0.0, 0.0, 1.0], T, rtol=1e-12, atol=1e-13)
    np.testing.assert_allclose(traj.eps, ref[:, 0] + 1j * ref[:, 1], atol=1e-7)


def test_parametric_resonance_squeezes():
    traj = integrate_epsilon(SinusoidalOmega(depth=0.1), np.linspace(0, 60, 2401))
    pm = parametric_variances(traj, alpha=0.5)
    assert pm.squeezed.any()
    assert np.max(pm.moments.sigma_q) > 1.0      # resonance grows the envelope
    np.testing.assert_allclose(pm.moments.schur, 0.25, atol=1e-8)


def test_grid_validation():
    with pytest.raises(ValueError):
        integrate_epsilon(ConstantOmega(), [0.0])
    with pytest.raises(ValueError):
        integrate_epsilon(ConstantOmega(), [0.0, 2.0, 1.0])
    with pytest.raises(ValueError):
        integrate_epsilon(ConstantOmega(5.0), np.linspace(0, 10, 11))
    with pytest.raises(ValueError):
        TabulatedOmega([0, 0], [1, 1])


def test_drift_guard():
    with pytest.raises(IntegrationError):
        integrate_epsilon(SinusoidalOmega(depth=0.3), T, rtol=1e-4, atol=1e-6, drift_tol=1e-12)


def test_kanai_initial_values():
    c = kanai_coefficients(0.0, 0.0)
    assert complex(c.lambda_q) == pytest.approx(math.sqrt(2.0))
    assert complex(c.lambda_p) == pytest.approx(1j / math.sqrt(2.0))


@pytest.mark.parametrize("gamma", [0.0, 0.1, 0.5, 0.9])
def test_kanai_coefficients_solve_damped_equations(gamma):
    """lambda_p solves x'' + 2 gamma x' + x = 0 and lambda_q solves x'' - 2 gamma x' + x = 0."""
    t = np.linspace(0.5, 10, 50)
    h = 1e-4
    f = lambda tt: kanai_coefficients(gamma, tt)
    for attr, sign in (("lambda_p", 1.0), ("lambda_q", -1.0)):
        x = getattr(f(t), attr)
        xp = getattr(f(t + h), attr)
        xm = getattr(f(t - h), attr)
        d1 = (xp - xm) / (2 * h)
        d2 = (xp - 2 * x + xm) / h ** 2
        scale = np.max(np.abs(x))
        assert np.max(np.abs(d2 + sign * 2 * gamma * d1 + x)) < 1e-5 * scale


@pytest.mark.parametrize("gamma", [0.0, 0.1, 0.5])
def test_uncertainty_audit(gamma):
    audit = uncertainty_audit(gamma, np.linspace(0, 30, 601))
    assert audit.constancy_drift <= 1e-6
    assert audit.invariant_value == pytest.approx(1.0, abs=1e-12)
    assert audit.reconciling_scale == pytest.approx(0.25, abs=1e-12)
    assert not audit.matches_stated
    assert list(audit.to_json()) == ["gamma", "invariant_value", "paper_value",
                                     "constancy_drift", "reconciling_scale"]


def test_undamped_width_formula():
    t = np.linspace(0, 10, 101)
    m = kanai_moments(0.0, 1.0, t)
    np.testing.assert_allclose(m.sigma_q, (1 + 3 * np.sin(t) ** 2) / 2, atol=1e-14)


@given(st.floats(0.0, 0.95), st.floats(-2, 2), st.floats(-2, 2), st.floats(0, 15))
@settings(max_examples=40, deadline=None)
def test_density_variance_matches_lambda_p(gamma, re, im, t):
    expected = abs(complex(kanai_coefficients(gamma, t).lambda_p)) ** 2
    assert density_variance(gamma, complex(re, im), t) == pytest.approx(expected, rel=1e-10)


def test_density_normalized():
    q = np.linspace(-40, 40, 8001)
    for t in (0.0, 3.0, 17.0):
        assert np.trapezoid(kanai_density(0.1, 0.5, q, t), q) == pytest.approx(1.0, abs=1e-10)


def test_mean_position_decays():
    t = np.linspace(0, 60, 6001)
    mq = kanai_moments(0.1, 0.5, t).mean_q
    early = np.max(np.abs(mq[t < 10]))
    late = np.max(np.abs(mq[t > 50]))
    assert late < 0.05 * early


def test_density_grid_layout_and_squeezing():
    g = density_grid()
    assert g.density.shape == (301, 241)
    assert np.min(g.moments.sigma_q) < 0.5
    first = g.t[np.argmax(g.moments.sigma_q < 0.5)]
    assert first == pytest.approx(2.7)


@pytest.mark.parametrize("gamma", [-0.1, 1.0, 1.5])
def test_gamma_domain(gamma):
    with pytest.raises(ValueError):
        kanai_coefficients(gamma, 0.0)
