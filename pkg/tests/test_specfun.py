"""Special-function kernel tests: values, identities, quadrature."""

import numpy as np
import pytest

from abflux import _kernels, specfun as sf

SQRT_PI = 1.7724538509055160273


# ---------------------------------------------------------------------------
# Gamma

def test_gamma_factorial_and_half():
    assert sf.complex_gamma(1.0) == pytest.approx(1.0, rel=1e-14)
    assert sf.complex_gamma(0.5) == pytest.approx(SQRT_PI, rel=1e-14)
    assert sf.complex_gamma(10.0).real == pytest.approx(362880.0, rel=1e-13)


@pytest.mark.parametrize("nu", np.arange(0.05, 0.96, 0.1))
def test_gamma_reflection_grid(nu):
    lhs = sf.complex_gamma(1.0 - nu) * sf.complex_gamma(1.0 + nu)
    rhs = np.pi * nu / np.sin(np.pi * nu)
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_gamma_conjugation_exact():
    rng = np.random.default_rng(1)
    z = rng.uniform(-20, 20, 60) + 1j * rng.uniform(-80, 80, 60)
    z = z[np.abs(z - np.round(z.real)) > 1e-3]
    for zz in z:
        a = sf.complex_gamma(np.conj(zz))
        b = np.conj(sf.complex_gamma(zz))
        assert abs(a - b) <= 1e-13 * abs(b)


def test_gamma_ratio_unit_modulus():
    for n in range(7):
        x = np.linspace(-100.0, 100.0, 81)
        lg = _kernels.loggamma_arr(0.5 * (n + 1 + 1j * x))
        ratio = np.exp(2j * lg.imag)
        assert np.abs(np.abs(ratio) - 1.0).max() <= 1e-12


def test_gamma_strip_accuracy():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    rng = np.random.default_rng(2)
    pts = rng.uniform(-30, 30, 40) + 1j * rng.uniform(-50, 50, 40)
    pts = pts[np.minimum(np.abs(pts.imag), np.abs(pts.real - np.round(pts.real))) > 1e-2]
    for z in pts:
        ref = complex(mp.gamma(complex(z)))
        got = sf.complex_gamma(complex(z))
        assert abs(got - ref) <= 1e-12 * abs(ref)


def test_gamma_pole_rejection():
    with pytest.raises(sf.DomainError):
        sf.complex_gamma(-3.0 + 1e-14j)
    with pytest.raises(sf.DomainError):
        sf.log_gamma(0.0)


def test_log_gamma_large_imag_ratio():
    # the log-Gamma path must keep ratio moduli exact far past where Gamma
    # itself is representable
    x = 1e5
    lg = sf.log_gamma(0.5 * (4 + 1j * x))
    ratio = np.exp(lg - np.conj(lg))
    assert abs(abs(ratio) - 1.0) <= 1e-12


# ---------------------------------------------------------------------------
# Bessel J

def test_bessel_small_limit_and_half_order():
    assert sf.bessel_j(0.0, 1e-8) == pytest.approx(1.0, abs=1e-15)
    # half order has the closed form sqrt(2/(pi x)) sin x, zero at x = pi
    # (up to sin(fl(pi)) ~ 1.2e-16)
    assert abs(sf.bessel_j(0.5, np.pi)) <= 1e-15
    x = 2.3
    assert sf.bessel_j(0.5, x) == pytest.approx(
        np.sqrt(2.0 / (np.pi * x)) * np.sin(x), rel=1e-13)


def _j_integral_oracle(nu, x):
    """Independent quadrature of the standard integral representation."""
    osc = sf.integrate(lambda t: np.cos(nu * t - x * np.sin(t)) + 0j,
                       np.linspace(0.0, np.pi, 33), 1e-13)
    tail = sf.integrate(lambda t: np.exp(-nu * t - x * np.sinh(t)) + 0j,
                        np.concatenate([[0.0], np.geomspace(1e-6, 20.0, 24)]),
                        1e-13)
    return (osc.value.real - np.sin(nu * np.pi) * tail.value.real) / np.pi


def test_bessel_integral_representation_oracle():
    frozen = -0.1946192154569133          # oracle value, J_0.3(10)
    assert _j_integral_oracle(0.3, 10.0) == pytest.approx(frozen, abs=1e-12)
    assert sf.bessel_j(0.3, 10.0) == pytest.approx(frozen, rel=1e-9)


@pytest.mark.parametrize("nu", [0.4, 2.5, 7.0, 13.0])
def test_bessel_switch_overlap_agreement(nu):
    # series and large-argument routes must agree around the switch point
    from abflux._kernels import _pure
    switch = max(12.0, 2.0 * nu)
    for x in np.linspace(switch - 2.0, switch + 2.0, 9):
        series = _pure._j_series_dd(nu, np.array([x]))[0]
        other = sf.bessel_j(nu, x)
        env = np.sqrt(2.0 / (np.pi * x))
        assert abs(series - other) <= 1e-10 * env


def test_bessel_large_argument_vs_reference():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    for nu, x in [(0.3, 1e4), (4.0, 3e5), (1.5, 1e6), (11.0, 2e4)]:
        ref = float(mp.besselj(nu, x))
        assert abs(sf.bessel_j(nu, x) - ref) <= 1e-10 * np.sqrt(2 / (np.pi * x))


def test_bessel_envelope_errors():
    with pytest.raises(sf.DomainError):
        sf.bessel_j(21.0, 1.0)
    with pytest.raises(sf.DomainError):
        sf.bessel_j(0.5, 2e6)
    with pytest.raises(sf.DomainError):
        sf.bessel_j(-0.2, 1.0)


# ---------------------------------------------------------------------------
# Hankel H^(1)

def test_hankel_half_order_closed_form():
    for x in [0.3, 2.0, 9.0, 40.0]:
        closed = -1j * np.sqrt(2.0 / (np.pi * x)) * np.exp(1j * x)
        assert sf.hankel1(0.5, x) == pytest.approx(closed, rel=1e-11)


def test_hankel_small_argument_expansion():
    # two-term expansion with O(|w|^{2-nu}) error
    for nu in [0.25, 0.5, 0.8]:
        for w in [1e-4, 1e-4 * np.exp(0.9j), 1e-3 * 1j]:
            lead = sf.hankel1_small_w_expansion(nu, w)
            got = sf.hankel1(nu, w)
            assert abs(got - lead) <= 10.0 * abs(w) ** (2 - nu) * abs(lead)


def test_hankel_leading_coefficient():
    nu, w = 0.35, 1e-5
    lead = -(2.0 ** nu) * 1j / (np.sin(np.pi * nu)
                                * sf.gamma_real(1 - nu)) * w ** (-nu)
    # subleading term is relatively O(|w|^{2 nu}) ~ 3e-4 here
    assert sf.hankel1(nu, w) == pytest.approx(lead, rel=1e-3)


def test_hankel_domain_and_singularity():
    with pytest.raises(sf.SingularArgumentError):
        sf.hankel1(0.3, 0.0)
    with pytest.raises(sf.DomainError):
        sf.hankel1(0.3, -1.0 - 1.0j)
    with pytest.raises(sf.DomainError):
        sf.hankel1(1.3, 1.0)
    # boundary ray arg w = pi is inside the sector
    sf.hankel1(0.3, -2.0 + 0.0j)


def test_hankel_vs_mpmath_rays():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 30
    for nu in [0.2, 0.5, 0.77]:
        for w in [0.7, 5.0 * np.exp(0.25j * np.pi), 30.0 * np.exp(0.75j * np.pi),
                  3j, 120.0, 2.0 - 0.5j]:
            ref = complex(mp.hankel1(nu, complex(w)))
            assert sf.hankel1(nu, w) == pytest.approx(ref, rel=3e-8)


# ---------------------------------------------------------------------------
# restricted 2F1

def test_2f1_at_zero_and_one():
    assert sf.gauss_2f1(0.15, -0.15, 1.0, 0.0) == pytest.approx(1.0, abs=1e-15)
    for n, nu in [(0, 0.3), (1, 0.7), (2, 0.5)]:
        a, b, c = 0.5 * (n + nu), 0.5 * (n - nu), n + 1.0
        got = sf.gauss_2f1(a, b, c, 1.0)
        tgt = sf.gamma_real(c) / (sf.gamma_real(a + 1) * sf.gamma_real(b + 1))
        assert got == pytest.approx(tgt, rel=1e-13)


def _euler_2f1_oracle(a, b, c, x):
    """Euler integral with the (a, b) swap and endpoint flattening."""
    m1 = int(np.ceil(4.0 / a))
    m2 = int(np.ceil(4.0 / (c - a)))
    pref = sf.gamma_real(c) / (sf.gamma_real(a) * sf.gamma_real(c - a))

    def left(u):   # t = u^m1 on [0, 1/2]
        t = u ** m1
        return (m1 * u ** (m1 - 1.0)) * t ** (a - 1.0) \
            * (1.0 - t) ** (c - a - 1.0) * (1.0 - x * t) ** (-b)

    def right(u):  # 1 - t = u^m2 on [1/2, 1]
        t = 1.0 - u ** m2
        return (m2 * u ** (m2 - 1.0)) * t ** (a - 1.0) \
            * (u ** m2) ** (c - a - 1.0) * (1.0 - x * t) ** (-b)

    i1 = sf.integrate(left, np.linspace(0, 0.5 ** (1.0 / m1), 17), 1e-13)
    i2 = sf.integrate(right, np.linspace(0, 0.5 ** (1.0 / m2), 17), 1e-13)
    return pref * (i1.value + i2.value)


def test_2f1_series_vs_euler_integral():
    a, b, c = 0.15, -0.15, 1.0            # (m, nu) = (0, 0.3)
    got = sf.gauss_2f1(a, b, c, 0.5)
    oracle = _euler_2f1_oracle(a, b, c, 0.5 + 0j)
    assert got == pytest.approx(oracle, rel=1e-11)


def test_2f1_beyond_unit_disk_vs_euler():
    a, b, c = 0.85, 0.15, 2.0             # (m, nu) = (1, 0.7)
    x = 2.5 + 1e-3j
    assert sf.gauss_2f1(a, b, c, x) == pytest.approx(
        _euler_2f1_oracle(a, b, c, x), rel=1e-10)


def test_2f1_rejects_foreign_parameters():
    with pytest.raises(sf.UnsupportedParametersError):
        sf.gauss_2f1(0.3, 0.4, 1.5, 0.1)
    with pytest.raises(sf.UnsupportedParametersError):
        sf.gauss_2f1(1.0, 0.5, 2.5, 0.1)


# ---------------------------------------------------------------------------
# quadrature

def test_gk_rule_polynomial_exactness():
    # validates the hard-coded nodes/weights: K15 integrates degree <= 10
    # polynomials to machine precision on arbitrary panels
    rng = np.random.default_rng(3)
    coef = rng.standard_normal(11)
    poly = np.polynomial.Polynomial(coef)
    exact = poly.integ()(3.7) - poly.integ()(-1.2)
    val, err, _ = sf._gk_batch(lambda x: poly(x) + 0j,
                               np.array([-1.2]), np.array([3.7]))
    assert val[0].real == pytest.approx(exact, rel=1e-14)


def test_quadrature_exponential_and_gaussian():
    r = sf.adaptive_quadrature(lambda x: np.exp(-x) + 0j, 1e-12)
    assert r.value.real == pytest.approx(1.0, abs=1e-12)
    assert r.error <= 1e-12 * 10
    r = sf.adaptive_quadrature(lambda x: x * np.exp(-x * x) + 0j, 1e-12)
    assert r.value.real == pytest.approx(0.5, abs=1e-12)


def test_quadrature_bessel_weighted_gaussian_two_schemes():
    # value equals e^{-1/2}; two independent panel schemes must agree
    def f(x):
        return x * _kernels.bessel_j_arr(0.0, x) * np.exp(-0.5 * x * x) + 0j

    mine = sf.adaptive_quadrature(f, 1e-11).value.real
    scipy_integrate = pytest.importorskip("scipy.integrate")
    other, est = scipy_integrate.quad(
        lambda x: x * sf.bessel_j(0.0, x) * np.exp(-0.5 * x * x),
        0.0, np.inf, epsabs=5e-12, epsrel=5e-12)
    assert abs(mine - other) <= 1e-10
    assert mine == pytest.approx(np.exp(-0.5), abs=1e-11)


def test_quadrature_nonconvergence_reports_estimate():
    with pytest.raises(sf.AccuracyError) as info:
        sf.adaptive_quadrature(lambda x: 1.0 / (1.0 + x) + 0j, 1e-10)
    assert np.isfinite(info.value.estimate.real)


def test_oscillatory_regularization_metadata():
    def f(k):
        return _kernels.bessel_j_arr(0.5, k).astype(complex)

    r = sf.adaptive_quadrature(f, 1e-8, oscillation_hint=1.0)
    # int_0^inf J_{1/2} = 1 (conditionally convergent)
    assert r.value.real == pytest.approx(1.0, abs=1e-8)
    assert r.meta["r_cut"] == 200.0
    assert r.meta["k_periods"] == 8


# ---------------------------------------------------------------------------
# backend agreement

def test_backends_agree():
    try:
        from abflux._kernels import _core
    except ImportError:
        pytest.skip("compiled backend not built")
    from abflux._kernels import _pure
    rng = np.random.default_rng(4)
    x = rng.uniform(0.01, 400.0, 600)
    for nu in [0.0, 0.3, 5.5, 18.0]:
        a = _core.bessel_j_arr(nu, x)
        b = _pure.bessel_j_arr(nu, x)
        assert np.abs(a - b).max() <= 1e-13
    w = rng.uniform(0.05, 50.0, 400) * np.exp(1j * rng.uniform(-1.4, np.pi, 400))
    for nu in [0.25, 0.5, 0.9]:
        a = _core.hankel1_arr(nu, w)
        b = _pure.hankel1_arr(nu, w)
        assert (np.abs(a - b) / np.abs(b)).max() <= 3e-8
    z = rng.uniform(-25, 25, 300) + 1j * rng.uniform(-90, 90, 300)
    da = _core.loggamma_arr(z)
    db = _pure.loggamma_arr(z)
    assert np.abs(np.expm1(da - db)).max() <= 1e-12
