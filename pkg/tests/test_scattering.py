"""Scattering matrices: values, unitarity, asymptotics, classification."""

import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from abflux import extension as ext, scattering as sc
from conftest import haar_unitary, random_invertible

I2 = np.eye(2)
Z2 = np.zeros((2, 2))


def unitary_with_eigs(e1, e2, rng):
    v = haar_unitary(rng)
    return v @ np.diag([e1, e2]) @ v.conj().T


# ---------------------------------------------------------------------------
# channel phases

def test_channel_phase_values():
    assert sc.ab_phase(0, 0.5) == pytest.approx(-np.pi / 4)
    assert sc.ab_channel_s(0, 0.5) == pytest.approx(-1j)
    assert sc.ab_phase(-3, 0.2) == pytest.approx(0.1 * np.pi)
    for m in range(-6, 7):
        assert abs(sc.ab_channel_s(m, 0.37)) == pytest.approx(1.0)
    assert sc.ab_phase(2, 0.3) == pytest.approx(-0.15 * np.pi)


# ---------------------------------------------------------------------------
# closed cases

def test_reference_condition_constant():
    p = ext.validate_pair(I2, Z2)
    for kappa in (1e-5, 1.0, 1e5):
        assert np.abs(sc.s_tilde(p, 0.3, kappa)).max() == 0.0
        s = sc.s_matrix(p, 0.3, kappa).s
        assert np.allclose(s, sc.s_free(0.3), atol=1e-15)


def test_transparent_condition_constant_conjugate_phases():
    p = ext.validate_pair(Z2, I2)
    expect = np.diag([np.exp(1j * np.pi * 0.3), np.exp(-1j * np.pi * 0.3)])
    for kappa in (1e-4, 0.7, 1e4):
        assert np.allclose(sc.s_matrix(p, 0.3, kappa).s, expect, atol=1e-13)


def test_worked_half_flux_example():
    # (C, D) = (-1, 1), alpha = 1/2, kappa = 2/pi: the Cayley quotient
    # collapses to a scalar ratio times diag(-i, +i)
    p = ext.validate_pair(-I2, I2)
    kappa = 2.0 / np.pi
    ratio = (-np.pi / 2 + 1j) / (-np.pi / 2 - 1j)
    expect_s = ratio * np.diag([-1j, 1j])
    s = sc.s_matrix(p, 0.5, kappa).s
    assert np.abs(s - expect_s).max() <= 1e-13
    raw = sc.s_tilde_raw(p, 0.5, kappa)
    stable = sc.s_tilde(p, 0.5, kappa)
    assert np.abs(raw - stable).max() <= 1e-12
    assert np.abs(stable - (expect_s - np.diag([-1j, 1j]))).max() <= 1e-13


def test_axis_mixed_unitary_constant():
    p = ext.from_unitary(np.diag([1.0, -1.0]))
    expect = np.exp(1j * np.pi * 0.3) * I2
    for kappa in (1e-3, 1.0, 1e3):
        assert np.allclose(sc.s_matrix(p, 0.3, kappa).s, expect, atol=1e-13)


# ---------------------------------------------------------------------------
# unitarity / continuity / cross-check

def test_unitarity_random_sample(rng):
    kappas = np.logspace(-6, 6, 13)
    for alpha in (0.1, 0.5, 0.9):
        for _ in range(40):
            p = ext.from_unitary(haar_unitary(rng))
            for kappa in kappas:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    sm = sc.s_matrix(p, alpha, float(kappa))
                assert sm.unitarity_defect <= 1e-9


@settings(max_examples=40, deadline=None)
@given(th1=st.floats(0.01, 2 * np.pi - 0.01), th2=st.floats(0.01, 2 * np.pi - 0.01),
       alpha=st.floats(1e-3, 1 - 1e-3), logk=st.floats(-5, 5),
       seed=st.integers(0, 2 ** 31))
def test_unitarity_hypothesis(th1, th2, alpha, logk, seed):
    rng = np.random.default_rng(seed)
    u = unitary_with_eigs(np.exp(1j * th1), np.exp(1j * th2), rng)
    p = ext.from_unitary(u)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sm = sc.s_matrix(p, alpha, 10.0 ** logk)
    assert sm.unitarity_defect <= 1e-9


def test_continuity_linear_in_h(rng):
    for _ in range(10):
        p = ext.from_unitary(haar_unitary(rng))
        for kappa in (0.02, 1.0, 80.0):
            s0 = sc.s_matrix(p, 0.3, kappa).s
            d1 = np.abs(sc.s_matrix(p, 0.3, kappa * (1 + 1e-4)).s - s0).max()
            d2 = np.abs(sc.s_matrix(p, 0.3, kappa * (1 + 5e-5)).s - s0).max()
            if d1 > 1e-11:                   # below that, roundoff dominates
                assert d2 <= 0.75 * d1


def test_raw_form_agrees_with_stable_routes(rng):
    for alpha in (0.1, 0.37, 0.5, 0.82):
        for _ in range(30):
            p = ext.from_unitary(haar_unitary(rng))
            for kappa in np.logspace(-2, 2, 7):
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    raw = sc.s_tilde_raw(p, alpha, float(kappa))
                    stable = sc.s_tilde(p, alpha, float(kappa))
                assert np.abs(raw - stable).max() <= 1e-11


def test_equivalence_invariance(rng):
    for _ in range(25):
        p = ext.from_unitary(haar_unitary(rng))
        q = p.scaled(random_invertible(rng))
        for kappa in (1e-2, 1.0, 1e2):
            d = np.abs(sc.s_matrix(p, 0.41, kappa).s
                       - sc.s_matrix(q, 0.41, kappa).s).max()
            assert d <= 1e-11


# ---------------------------------------------------------------------------
# asymptotics

def _rep_cases(rng):
    th = np.exp(1.1j)
    return [
        ("i", ext.from_unitary(-I2), 0.3, "infinity"),
        ("ii", ext.from_unitary(
            unitary_with_eigs(np.exp(0.7j), np.exp(2.0j), rng)), 0.5,
         "infinity"),
        ("iii", ext.from_unitary(unitary_with_eigs(-1.0, th, rng)), 0.5,
         "infinity"),
        ("iv", ext.from_unitary(unitary_with_eigs(-1.0, th, rng)), 0.25,
         "infinity"),
        ("v", ext.from_unitary(unitary_with_eigs(-1.0, th, rng)), 0.75,
         "infinity"),
        ("a", ext.from_unitary(I2), 0.3, "zero"),
        ("b", ext.from_unitary(
            unitary_with_eigs(np.exp(0.7j), -1.0, rng)), 0.25, "zero"),
        ("c", ext.from_unitary(unitary_with_eigs(1.0, th, rng)), 0.5, "zero"),
        # generic-kernel zero-end cases converge like kappa^{2 alpha - 1},
        # so the representatives sit far from alpha = 1/2
        ("d", ext.from_unitary(unitary_with_eigs(1.0, th, rng)), 0.9, "zero"),
        ("e", ext.from_unitary(unitary_with_eigs(1.0, th, rng)), 0.1, "zero"),
    ]


def test_asymptotic_labels_and_limits(rng):
    for name, p, alpha, end in _rep_cases(rng):
        ac = sc.s_asymptotic(p, alpha, end)
        assert ac.label == name
        # limits are unitary with unit-modulus diagonal entries off the
        # projector cases
        assert np.abs(ac.limit.conj().T @ ac.limit - I2).max() <= 1e-12
        if name not in ("iii", "c"):
            assert np.abs(np.abs(np.diag(ac.limit)) - 1.0).max() <= 1e-12
        kappa = 1e8 if end == "infinity" else 1e-8
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            s = sc.s_matrix(p, alpha, kappa).s
        assert np.abs(s - ac.limit).max() <= 1e-3


def test_asymptotic_axis_cases():
    th = np.exp(1.1j)
    p = ext.from_unitary(np.diag([-1.0, th]))     # ker D = first axis
    ac = sc.s_asymptotic(p, 0.62, "infinity")     # alpha > 1/2 but axis wins
    assert ac.label == "iv"
    assert np.allclose(ac.limit, np.exp(-1j * np.pi * 0.62) * I2)
    p = ext.from_unitary(np.diag([th, -1.0]))     # ker D = second axis
    ac = sc.s_asymptotic(p, 0.38, "infinity")
    assert ac.label == "v"
    p = ext.from_unitary(np.diag([th, 1.0]))      # ker C = second axis
    assert sc.s_asymptotic(p, 0.25, "zero").label == "d"
    p = ext.from_unitary(np.diag([1.0, th]))      # ker C = first axis
    assert sc.s_asymptotic(p, 0.75, "zero").label == "e"


def test_asymptotic_projector_case_formula(rng):
    u = unitary_with_eigs(-1.0, np.exp(0.8j), rng)
    p = ext.from_unitary(u)
    ac = sc.s_asymptotic(p, 0.5, "infinity")
    # (2P - 1) diag(i, -i), P the projection onto ker(D)^perp
    tr = ext.reduce_to_triple(p)
    proj = tr.iso @ tr.iso.conj().T
    assert np.abs(ac.limit - (2 * proj - I2) @ np.diag([1j, -1j])).max() <= 1e-12


def test_detd_nonzero_infinity_limit(rng):
    p = ext.from_unitary(unitary_with_eigs(np.exp(0.4j), np.exp(1.9j), rng))
    ac = sc.s_asymptotic(p, 0.31, "infinity")
    assert ac.label == "ii"
    assert np.allclose(
        ac.limit, np.diag([np.exp(1j * np.pi * 0.31),
                           np.exp(-1j * np.pi * 0.31)]))


# ---------------------------------------------------------------------------
# energy independence

def test_energy_independent_bullets(rng):
    cases = [
        (ext.from_unitary(-I2), 0.3, sc.s_free(0.3)),
        (ext.from_unitary(I2), 0.3,
         np.diag([np.exp(1j * np.pi * 0.3), np.exp(-1j * np.pi * 0.3)])),
        (ext.from_unitary(np.diag([1.0, -1.0])), 0.3,
         np.exp(1j * np.pi * 0.3) * I2),
        (ext.from_unitary(np.diag([-1.0, 1.0])), 0.3,
         np.exp(-1j * np.pi * 0.3) * I2),
        (ext.from_unitary(unitary_with_eigs(1.0, -1.0, rng)), 0.5, None),
    ]
    for p, alpha, expect in cases:
        const = sc.classify_energy_independent(p, alpha)
        assert const is not None
        if expect is not None:
            assert np.abs(const - expect).max() <= 1e-12
        for kappa in (1e-3, 1.0, 1e3):
            assert np.abs(sc.s_matrix(p, alpha, kappa).s - const).max() <= 1e-11


def test_half_flux_diag_pair_projector_value():
    # ker C = ker D^perp = first axis at alpha = 1/2 gives diag(i, i)
    p = ext.validate_pair(np.diag([0.0, 1.0]), np.diag([1.0, 0.0]))
    const = sc.classify_energy_independent(p, 0.5)
    assert const is not None
    assert np.abs(const - np.diag([1j, 1j])).max() <= 1e-13
    tr = ext.reduce_to_triple(p)
    proj = tr.iso @ tr.iso.conj().T
    assert np.abs(const - (2 * proj - I2) @ np.diag([1j, -1j])).max() <= 1e-13
    for kappa in (1e-3, 1.0, 1e3):
        assert np.abs(sc.s_matrix(p, 0.5, kappa).s - const).max() <= 1e-12


def test_generic_pairs_energy_dependent(rng):
    for _ in range(50):
        p = ext.from_unitary(haar_unitary(rng))
        assert sc.classify_energy_independent(p, 0.3) is None
        d = np.abs(sc.s_matrix(p, 0.3, 1.0).s - sc.s_matrix(p, 0.3, 10.0).s).max()
        assert d > 1e-11
