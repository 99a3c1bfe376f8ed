import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sqztomo.diagnostics import CutoffError, TruncationWarning
from sqztomo.fock_core import number_matrix
from sqztomo.states import (StateSpec, boltzmann_weights, cat_vector, coherent_vector,
                            coherent_wavefunction, fock_wavefunction, make_density,
                            position_representation, state_vector)

from conftest import STATE_ZOO


@pytest.mark.parametrize("spec", STATE_ZOO, ids=lambda s: s.kind)
def test_density_is_valid(spec):
    rho = make_density(spec, 80)
    assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-10)
    np.testing.assert_allclose(rho.matrix, rho.matrix.conj().T)


def test_coherent_mean_photon_number():
    alpha = 2 * np.exp(0.4j)
    psi = coherent_vector(alpha, 80)
    assert (psi.conj() @ number_matrix(80) @ psi).real == pytest.approx(4.0, abs=1e-12)


def test_coherent_is_annihilation_eigenvector():
    alpha = 0.8 - 0.3j
    psi = coherent_vector(alpha, 60)
    a_psi = np.sqrt(np.arange(1, 60)) * psi[1:]
    np.testing.assert_allclose(a_psi, alpha * psi[:-1], atol=1e-14)


@pytest.mark.parametrize("parity", [1, -1])
def test_cat_parity_and_norm(parity):
    psi = cat_vector(1.3, parity, 60)
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)
    wrong = 1 if parity == 1 else 0
    assert np.max(np.abs(psi[wrong::2])) == 0.0


def test_thermal_weights():
    p = boltzmann_weights(1.5, 200)
    assert p.sum() == pytest.approx(1.0, abs=1e-14)
    nbar = 1.0 / math.expm1(1.0 / 1.5)
    assert (np.arange(200) * p).sum() == pytest.approx(nbar, rel=1e-12)


def test_cutoff_errors():
    with pytest.raises(CutoffError):
        make_density(StateSpec.coherent(5.0), 30)
    with pytest.raises(CutoffError):
        make_density(StateSpec.fock(10), 10)
    with pytest.raises(CutoffError):
        make_density(StateSpec.thermal(20.0), 50)


def test_mixed_state_has_no_vector():
    with pytest.raises(ValueError):
        state_vector(StateSpec.thermal(1.0), 10)


@pytest.mark.parametrize("kwargs", [dict(kind="squeezed"), dict(kind="fock", m=-1),
                                    dict(kind="thermal", T=0.0), dict(kind="cat", alpha=0j),
                                    dict(kind="cat", alpha=1, parity=2)])
def test_invalid_specs(kwargs):
    with pytest.raises(ValueError):
        StateSpec(**kwargs)


@pytest.mark.parametrize("text,expected", [
    ("vacuum", StateSpec.vacuum()),
    ("fock:3", StateSpec.fock(3)),
    ("coherent:3+0j", StateSpec.coherent(3)),
    ("coherent:1-2j", StateSpec.coherent(1 - 2j)),
    ("cat:2:-", StateSpec.cat(2, -1)),
    ("cat:2", StateSpec.cat(2, 1)),
    ("thermal:1.5", StateSpec.thermal(1.5)),
])
def test_parse(text, expected):
    assert StateSpec.parse(text) == expected


@pytest.mark.parametrize("text", ["", "fock", "fock:x", "cat:2:*", "vacuum:1", "coherent"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        StateSpec.parse(text)


def test_canonical_json():
    assert StateSpec.coherent(3).to_json() == {"kind": "coherent", "alpha": [3.0, 0.0]}
    assert StateSpec.thermal(1.5).to_json() == {"kind": "thermal", "T": 1.5}


finite = st.floats(-3, 3, allow_nan=False)


@given(st.one_of(
    st.just(StateSpec.vacuum()),
    st.integers(0, 50).map(StateSpec.fock),
    st.builds(lambda a, b: StateSpec.coherent(complex(a, b)), finite, finite),
    st.builds(lambda a, s: StateSpec.cat(complex(a, 0.5), s), finite, st.sampled_from([1, -1])),
    st.floats(0.01, 5).map(StateSpec.thermal),
))
@settings(max_examples=60)
def test_json_round_trip(spec):
    assert StateSpec.from_json(spec.to_json()) == spec


def test_wavefunctions_match_fock_expansion():
    x = np.linspace(-4, 4, 9)
    alpha = 0.7 + 0.4j
    psi = coherent_vector(alpha, 60)
    from_fock = sum(psi[n] * fock_wavefunction(n, x) for n in range(60))
    np.testing.assert_allclose(coherent_wavefunction(alpha, x), from_fock, atol=1e-13)


def test_position_representation_trace():
    rho = make_density(StateSpec.cat(1.5, -1), 60)
    x = np.linspace(-10, 10, 2001)
    diag = np.diag(position_representation(rho, x)).real
    assert np.trapezoid(diag, x) == pytest.approx(1.0, abs=1e-12)


def test_tail_warning_when_cutoff_is_marginal():
    with pytest.warns(TruncationWarning):
        rho = make_density(StateSpec.thermal(2.0), 30)
    assert rho.tail_mass == pytest.approx(math.exp(-15.0), rel=1e-9)
