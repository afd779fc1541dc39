"""Unit tests for the single-atom ladder amplitudes."""

import numpy as np
import pytest

from dtcm.dynamics import jc_amplitudes


def test_ground_atom_empty_cavity_is_stationary():
    for tau in (0.0, 0.7, 3.1):
        branches = jc_amplitudes(0, 0, tau)
        assert len(branches) == 1
        bit, photon, amp = branches[0]
        assert (bit, photon) == (0, 0)
        np.testing.assert_allclose(amp, 1.0, atol=1e-15)


def test_excited_atom_vacuum_rabi():
    tau = 0.6
    branches = dict()
    for bit, photon, amp in jc_amplitudes(1, 0, tau):
        branches[(bit, photon)] = amp
    np.testing.assert_allclose(branches[(1, 0)], np.cos(tau), atol=1e-15)
    np.testing.assert_allclose(branches[(0, 1)], -1j * np.sin(tau), atol=1e-15)
    # full population transfer at a quarter period
    swapped = dict(((b, n), a) for b, n, a in jc_amplitudes(1, 0, np.pi / 2.0))
    np.testing.assert_allclose(abs(swapped[(0, 1)]), 1.0, atol=1e-15)
    np.testing.assert_allclose(swapped[(1, 0)], 0.0, atol=1e-15)


def test_photon_absorption_scales_with_root_n():
    tau = 0.9
    for n in (1, 2, 5):
        branches = dict(((b, m), a) for b, m, a in jc_amplitudes(0, n, tau))
        rabi = np.sqrt(n) * tau
        np.testing.assert_allclose(branches[(0, n)], np.cos(rabi), atol=1e-15)
        np.testing.assert_allclose(branches[(1, n - 1)], -1j * np.sin(rabi), atol=1e-15)


def test_branch_normalization():
    for i in (0, 1):
        for n in (0, 1, 3, 8):
            for tau in np.linspace(0.0, 12.0, 9):
                total = sum(abs(a) ** 2 for _, _, a in jc_amplitudes(i, n, float(tau)))
                np.testing.assert_allclose(total, 1.0, atol=1e-12)


def test_excitation_bookkeeping():
    # bit + photon is conserved along every branch
    for i in (0, 1):
        for n in (0, 1, 4):
            for bit, photon, _ in jc_amplitudes(i, n, 1.3):
                assert bit + photon == i + n


def test_input_validation():
    with pytest.raises(ValueError):
        jc_amplitudes(2, 0, 1.0)
    with pytest.raises(ValueError):
        jc_amplitudes(0, -1, 1.0)
    with pytest.raises(ValueError):
        jc_amplitudes(0, 0, -1.0)
