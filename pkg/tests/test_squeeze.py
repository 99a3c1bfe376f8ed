import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import poisson

from sqztomo.states import StateSpec, make_density
from sqztomo.tomography.frames import TomographyFrame
from sqztomo.tomography.squeeze import (closed_form_tomogram, coherent_amplitudes,
                                        coherent_matrix_element,
                                        coherent_matrix_element_printed,
                                        coherent_matrix_element_quadrature, oracle_tomogram,
                                        squeeze_dequantizer, squeeze_tomogram_cat,
                                        squeeze_tomogram_coherent, squeeze_tomogram_fock,
                                        squeeze_tomogram_oracle, squeeze_tomogram_thermal,
                                        squeeze_tomogram_vacuum, thermal_sum_limit)

from conftest import STATE_ZOO

# Frozen from an independent mpmath oracle: |<n| S R |psi>|^2 by adaptive
# quadrature of position-space overlaps with (S f)(x) = e^{lam/2} f(e^lam x),
# 30 significant digits (thermal: Boltzmann sum over m < 45).
ORACLE = {
    "vacuum": (lambda n: squeeze_tomogram_vacuum(n, 0.5), [0, 2, 4],
               [0.88681888397007391, 0.09469109156021773, 0.015166122952961575]),
    "coherent_1": (lambda n: squeeze_tomogram_coherent(n, 0.3, 0.7, 1.0), [0, 1, 2, 3, 4],
                   [0.36978733920121012, 0.33840606211854861, 0.153778893249584,
                    0.074977969112846737, 0.035886952564091517]),
    "coherent_2ei": (lambda n: squeeze_tomogram_coherent(n, -0.6, 0.0, 2 * cmath.exp(1j)),
                     [3, 7], [0.12329079888670008, 0.069933378071130305]),
    "fock_1": (lambda n: squeeze_tomogram_fock(n, 0.4, 1), [1, 3],
               [0.79147225326468357, 0.17138684289653295]),
    "cat_even": (lambda n: squeeze_tomogram_cat(n, 0.2, 0.3, 2.0, 1), [0, 2],
                 [0.068875636339020758, 0.46712065659026176]),
    "cat_odd": (lambda n: squeeze_tomogram_cat(n, -0.5, 1.0, 3.0, -1), [1, 5],
                [0.0087456887897440191, 0.14059724516547435]),
    "thermal_1": (lambda n: squeeze_tomogram_thermal(n, 0.5, 1.0), [0, 1, 2],
                  [0.56885702979172425, 0.16947868102385711, 0.098648019889727335]),
}


@pytest.mark.parametrize("name", sorted(ORACLE))
def test_closed_forms_match_frozen_oracle(name):
    fn, levels, expected = ORACLE[name]
    np.testing.assert_allclose(fn(np.array(levels)), expected, rtol=0, atol=1e-14)


@pytest.mark.parametrize("spec", STATE_ZOO, ids=str)
def test_oracle_matches_closed_form(spec):
    frames = [TomographyFrame(lam, th) for lam in (-0.8, 0.0, 0.45) for th in (0.0, 1.1)]
    orc = oracle_tomogram(spec, frames, 30, 96)
    cf = closed_form_tomogram(spec, frames, 30)
    np.testing.assert_allclose(orc.values, cf.values, atol=1e-10)
    np.testing.assert_allclose(cf.total, 1.0, atol=1e-9)


def test_vacuum_closed_form_is_explicit():
    lam = 0.7
    n = np.arange(0, 12, 2)
    k = n // 2
    expected = np.array([math.comb(2 * j, j) for j in k]) / 4.0 ** k * math.tanh(lam) ** n \
        / math.cosh(lam)
    np.testing.assert_allclose(squeeze_tomogram_vacuum(n, lam), expected, rtol=1e-13)


def test_scalar_inputs_return_scalars():
    assert np.ndim(squeeze_tomogram_vacuum(2, 0.3)) == 0
    assert np.ndim(squeeze_tomogram_fock(1, 0.3, 2)) == 0


def test_negative_level_rejected():
    with pytest.raises(ValueError):
        squeeze_tomogram_vacuum(-1, 0.3)


def test_identity_frame_coherent_is_poisson():
    w = squeeze_tomogram_coherent(np.arange(41), 0.0, 0.0, 3.0)
    np.testing.assert_allclose(w, poisson.pmf(np.arange(41), 9.0), atol=1e-15)


@given(st.floats(-1.5, 1.5), st.floats(-3, 3), st.floats(-2, 2), st.floats(-2, 2))
@settings(max_examples=40, deadline=None)
def test_coherent_amplitudes_normalized(lam, theta, re, im):
    amp = coherent_amplitudes(400, lam, theta, complex(re, im))
    assert np.sum(np.abs(amp) ** 2) == pytest.approx(1.0, abs=1e-10)


def test_coherent_element_against_quadrature():
    for lam in (-0.9, -1e-8, 0.0, 0.6):
        for n in (0, 3, 9):
            exact = coherent_matrix_element(n, lam, 0.4, 1.2 - 0.5j)
            quad = coherent_matrix_element_quadrature(n, lam, 0.4, 1.2 - 0.5j)
            assert abs(exact - quad) < 1e-12


def test_printed_coherent_element_branch():
    """The literal closed form agrees for lam > 0 and departs for lam < 0 once n >= 2."""
    alpha = 1 + 0.5j
    for n in range(5):
        assert abs(coherent_matrix_element_printed(n, 0.4, 0.3, alpha)
                   - coherent_matrix_element(n, 0.4, 0.3, alpha)) < 1e-14
    assert abs(coherent_matrix_element_printed(1, -0.4, 0.3, alpha)
               - coherent_matrix_element(1, -0.4, 0.3, alpha)) < 1e-14
    assert abs(coherent_matrix_element_printed(2, -0.4, 0.3, alpha)
               - coherent_matrix_element(2, -0.4, 0.3, alpha)) > 0.1


def test_fock_tomogram_symmetric_under_lambda_flip_for_even_sums():
    # |<n|S(-lam)|m>|^2 = |<m|S(lam)|n>|^2
    n = np.arange(12)
    for m in (0, 1, 4):
        flipped = squeeze_tomogram_fock(n, -0.6, m)
        direct = np.array([squeeze_tomogram_fock(m, 0.6, k) for k in n])
        np.testing.assert_allclose(flipped, direct, atol=1e-14)


def test_cat_parity_zeros():
    n = np.arange(40)
    even = squeeze_tomogram_cat(n, 0.7, 0.2, 2.0, 1)
    odd = squeeze_tomogram_cat(n, -0.4, 1.0, 2.0, -1)
    assert np.max(even[1::2]) <= 1e-12 and np.max(odd[0::2]) <= 1e-12


def test_thermal_sum_limit():
    assert thermal_sum_limit(1.0) == pytest.approx(-math.log(1e-10), abs=2)
    assert squeeze_tomogram_thermal(0, 0.0, 1.0) == pytest.approx(1 - math.exp(-1.0), abs=1e-14)


def test_oracle_diagnostics():
    rho = make_density(StateSpec.coherent(1.0), 40)
    tomo = squeeze_tomogram_oracle(rho, TomographyFrame(0.5, 0.2), 10)
    assert tomo.route == "oracle" and tomo.values.shape == (1, 11)
    assert tomo.tail_mass[0] == pytest.approx(1.0 - tomo.values[0].sum())
    assert tomo.boundary_mass[0] < 1e-10
    with pytest.raises(ValueError):
        squeeze_tomogram_oracle(rho, TomographyFrame(0.0, 0.0), 39)
    with pytest.raises(ValueError):
        squeeze_tomogram_oracle(rho, TomographyFrame(2.5, 0.0), 10)


def test_clipping_records_minimum():
    tomo = closed_form_tomogram(StateSpec.cat(2.0, 1), [TomographyFrame(0.3, 0.1)], 20)
    assert np.all(tomo.values >= 0)
    assert tomo.min_before_clip <= 1e-12


def test_dequantizer_reproduces_tomogram():
    rho = make_density(StateSpec.cat(1.0, -1), 40)
    fr = TomographyFrame(-0.3, 0.9)
    w = squeeze_tomogram_oracle(rho, fr, 6).values[0]
    for n in range(7):
        val = np.trace(rho.matrix @ squeeze_dequantizer(n, fr, 40)).real
        assert val == pytest.approx(w[n], abs=1e-13)
