"""Weyl-matrix analytic data: coefficients, boundary values, resolvent
correction."""

import numpy as np
import pytest

from abflux import extension as ext, specfun as sf, weyl
from conftest import haar_unitary, random_invertible

I2 = np.eye(2)


# ---------------------------------------------------------------------------
# spectral points and a/b coefficients

def test_spectral_point_branch():
    s = weyl.SpectralPoint.off_axis(-4.0)
    assert s.k == pytest.approx(2j)
    s = weyl.SpectralPoint.off_axis(2.0 - 3.0j)
    assert s.k.imag > 0 and s.k ** 2 == pytest.approx(2.0 - 3.0j)
    with pytest.raises(sf.DomainError):
        weyl.SpectralPoint.off_axis(4.0)


def test_coeff_side_phase_ratio():
    sp = weyl.SpectralPoint.boundary(3.1, "plus")
    sm = weyl.SpectralPoint.boundary(3.1, "minus")
    for nu in (0.2, 0.5, 0.8):
        ap, _ = weyl.coeff_ab(nu, sp)
        am, _ = weyl.coeff_ab(nu, sm)
        assert am / ap == pytest.approx(np.exp(-1j * np.pi * nu), abs=1e-13)


def test_coeff_half_order_at_i():
    s = weyl.SpectralPoint.off_axis(1j)
    a, _ = weyl.coeff_ab(0.5, s)
    expected = -np.sqrt(2) * 1j * np.exp(-1j * np.pi / 8) / np.sqrt(np.pi)
    assert a == pytest.approx(expected, rel=1e-13)


def test_coeff_ratio_real_on_negative_axis():
    s = weyl.SpectralPoint.off_axis(-2.7)
    for nu in (0.15, 0.5, 0.85):
        a, b = weyl.coeff_ab(nu, s)
        assert abs((b / a).imag) <= 1e-14 * abs(b / a)


def test_coeff_endpoint_orders_rejected():
    s = weyl.SpectralPoint.off_axis(1j)
    with pytest.raises(sf.DomainError):
        weyl.coeff_ab(1e-9, s)
    with pytest.raises(sf.DomainError):
        weyl.coeff_ab(1.0 - 1e-9, s)


# ---------------------------------------------------------------------------
# Weyl matrix

def test_weyl_zero_limit():
    for alpha in (0.2, 0.5, 0.8):
        m = weyl.weyl_m(alpha, weyl.SpectralPoint.off_axis(-1e-12)).m
        assert np.abs(np.diag(m)).max() <= 1e-2
        m = weyl.weyl_m(alpha, weyl.SpectralPoint.off_axis(1e-12j)).m
        assert np.abs(np.diag(m)).max() <= 1e-2


def test_weyl_half_flux_closed_values():
    m = weyl.weyl_m(0.5, weyl.SpectralPoint.off_axis(-1.0)).m
    assert np.allclose(m, -I2, atol=1e-14)
    m = weyl.weyl_m(0.5, weyl.SpectralPoint.off_axis(-4.0)).m
    assert np.allclose(m, -2.0 * I2, atol=1e-13)


def test_weyl_boundary_conjugation():
    mp_ = weyl.weyl_m(0.3, weyl.SpectralPoint.boundary(2.0, "plus")).m
    mm = weyl.weyl_m(0.3, weyl.SpectralPoint.boundary(2.0, "minus")).m
    assert np.abs(mp_ - mm.conj()).max() <= 1e-13 * np.abs(mp_).max()


def test_weyl_symmetry_and_herglotz(rng):
    # M(conj z) = M(z)*; Im M >= 0 in the upper half plane
    for _ in range(20):
        z = complex(rng.uniform(-5, 5), rng.uniform(0.05, 5.0))
        m_up = weyl.weyl_m(0.37, weyl.SpectralPoint.off_axis(z)).m
        m_dn = weyl.weyl_m(0.37, weyl.SpectralPoint.off_axis(np.conj(z))).m
        assert np.abs(m_dn - m_up.conj()).max() <= 1e-12 * np.abs(m_up).max()
        im = (m_up - m_up.conj().T) / 2j
        assert np.linalg.eigvalsh(im).min() >= -1e-13 * np.abs(m_up).max()


def test_weyl_real_negative_axis_matches_closed_form():
    from abflux.spectrum import m_entries_negative
    for alpha in (0.25, 0.6):
        for z in (-0.3, -7.0):
            m = weyl.weyl_m(alpha, weyl.SpectralPoint.off_axis(z)).m
            m0, m1 = m_entries_negative(alpha, z)
            assert m[0, 0] == pytest.approx(m0, rel=1e-13)
            assert m[1, 1] == pytest.approx(m1, rel=1e-13)
            assert abs(m[0, 0].imag) <= 1e-15 * abs(m0)


# ---------------------------------------------------------------------------
# deficiency-field profiles

def test_profile_zero_data():
    s = weyl.SpectralPoint.off_axis(1j)
    v0, v1 = weyl.gamma_field_profile(0.3, s, [0.0, 0.0], np.r_[0.5, 1.0])
    assert not np.any(v0) and not np.any(v1)


def test_profile_small_radius_boundary_data():
    # r^alpha * (channel 0 profile) -> xi_0 as r -> 0
    alpha = 0.3
    s = weyl.SpectralPoint.off_axis(2j - 1)
    xi = np.array([0.8 - 0.2j, 0.0])
    r = np.array([1e-7])
    v0, _ = weyl.gamma_field_profile(alpha, s, xi, r)
    assert (r ** alpha * v0)[0] == pytest.approx(xi[0], rel=1e-4)


def test_profile_singular_radius():
    s = weyl.SpectralPoint.off_axis(1j)
    with pytest.raises(sf.SingularArgumentError):
        weyl.gamma_field_profile(0.3, s, [1.0, 0.0], 0.0)


# ---------------------------------------------------------------------------
# resolvent correction

def test_krein_zero_for_reference_condition():
    p = ext.validate_pair(I2, np.zeros((2, 2)))
    s = weyl.SpectralPoint.off_axis(1j)
    assert np.abs(weyl.krein_matrix(p, 0.4, s)).max() == 0.0


def test_krein_closed_value():
    p = ext.validate_pair(-I2, I2)
    s = weyl.SpectralPoint.off_axis(-4.0)
    assert np.allclose(weyl.krein_matrix(p, 0.5, s), I2, atol=1e-13)


def test_krein_adjoint_identity(rng):
    s = weyl.SpectralPoint.off_axis(1j)
    m = weyl.weyl_m(0.37, s).m
    for _ in range(50):
        p = ext.from_unitary(haar_unitary(rng))
        lhs = np.linalg.solve(p.d @ m - p.c, p.d).conj().T
        rhs = np.linalg.solve(p.d @ m.conj() - p.c, p.d)
        assert np.abs(lhs - rhs).max() <= 1e-12


def test_krein_second_form_and_equivalence(rng):
    s = weyl.SpectralPoint.off_axis(0.7 + 1.3j)
    for alpha in (0.3, 0.62):
        m = weyl.weyl_m(alpha, s).m
        for _ in range(20):
            p = ext.from_unitary(haar_unitary(rng))
            k1 = weyl.krein_matrix(p, alpha, s)
            # transported second form -D*(M D* - C*)^{-1}
            k2 = -p.d.conj().T @ np.linalg.inv(m @ p.d.conj().T - p.c.conj().T)
            assert np.abs(k1 - k2).max() <= 1e-11 * max(1, np.abs(k1).max())
            q = p.scaled(random_invertible(rng))
            assert np.abs(weyl.krein_matrix(q, alpha, s) - k1).max() \
                <= 1e-11 * max(1, np.abs(k1).max())


def test_krein_reduction_consistency(rng):
    # -(D M - C)^{-1} D = -I (P M I - L)^{-1} P
    for _ in range(10):
        z = complex(rng.uniform(-3, 3), rng.uniform(0.1, 3))
        s = weyl.SpectralPoint.off_axis(z)
        p = ext.from_unitary(haar_unitary(rng))
        t = ext.reduce_to_triple(p)
        k1 = weyl.krein_matrix(p, 0.44, s)
        if t.dim == 0:
            assert np.abs(k1).max() == 0.0
            continue
        m = weyl.weyl_m(0.44, s).m
        inner = t.iso.conj().T @ m @ t.iso - t.herm
        k2 = -t.iso @ np.linalg.solve(inner, t.iso.conj().T)
        assert np.abs(k1 - k2).max() <= 1e-11 * max(1, np.abs(k1).max())


def test_krein_eigenvalue_hit():
    p = ext.validate_pair(-I2, I2)
    s = weyl.SpectralPoint.off_axis(-1.0)   # z = -1 is the bound state
    with pytest.raises(weyl.EigenvalueHitError):
        weyl.krein_matrix(p, 0.5, s)
