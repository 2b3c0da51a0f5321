import math

import numpy as np
import pytest

from telemix import metrics, states as st
from telemix.oracles import BELL_BASIS, chsh_max_oracle, fef_sampling_oracle

SINGLET = st.make_state(st.Werner(1.0))
MIXED = np.eye(4, dtype=complex) / 4.0


def test_bell_basis_orthonormal():
    assert np.allclose(BELL_BASIS.conj().T @ BELL_BASIS, np.eye(4))


def test_fef_oracle_werner():
    got = fef_sampling_oracle(st.make_state(st.Werner(0.9)), 20_000, seed=1)
    assert 0.9 - 2e-3 <= got <= 0.9 + 1e-9


def test_fef_oracle_singlet():
    assert fef_sampling_oracle(SINGLET, 20_000, seed=2) == pytest.approx(1.0, abs=1e-3)


def test_fef_oracle_maximally_mixed():
    assert fef_sampling_oracle(MIXED, 100, seed=3) == pytest.approx(0.25, abs=1e-15)


def test_fef_oracle_deterministic():
    rho = st.make_state(st.Mems(0.4))
    assert fef_sampling_oracle(rho, 500, seed=9) == fef_sampling_oracle(rho, 500, seed=9)
    assert fef_sampling_oracle(rho, 500, seed=10) != fef_sampling_oracle(rho, 500, seed=9)


@pytest.mark.parametrize("spec", [st.Mems(0.3), st.WernerDerivative(0.8, 0.9), st.NmemsNew(0.6)])
def test_fef_oracle_never_exceeds_closed_algorithm(spec):
    rho = st.make_state(spec)
    assert fef_sampling_oracle(rho, 5_000, seed=4) <= metrics.fully_entangled_fraction(rho) + 1e-9


def test_fef_oracle_rejects_zero_samples():
    with pytest.raises(ValueError):
        fef_sampling_oracle(SINGLET, 0, seed=0)


def test_chsh_oracle_singlet_tsirelson():
    assert chsh_max_oracle(SINGLET) == pytest.approx(2 * math.sqrt(2), abs=1e-3)
    assert 2 * math.sqrt(metrics.m_value(SINGLET)) == pytest.approx(2 * math.sqrt(2), abs=1e-14)


def test_chsh_oracle_maximally_mixed():
    assert chsh_max_oracle(MIXED) == pytest.approx(0.0, abs=1e-6)


@pytest.mark.parametrize("spec", [st.Werner(0.8), st.Mems(0.75), st.WernerDerivative(0.95, 0.7),
                                  st.NmemsNew(0.1), st.NmemsNew(0.7)])
def test_chsh_oracle_reaches_horodecki_value(spec):
    rho = st.make_state(spec)
    target = 2 * math.sqrt(metrics.m_value(rho))
    got = chsh_max_oracle(rho)
    assert target - 1e-3 <= got <= target + 1e-9


def test_chsh_oracle_grid_validation():
    with pytest.raises(ValueError):
        chsh_max_oracle(SINGLET, grid=4)
