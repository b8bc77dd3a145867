"""Pure numpy implementation of the numeric kernels.

Fallback twin of the compiled core (``abflux._kernels._core``). Both expose
the same API and the same algorithms:

* ``loggamma`` -- Lanczos rational approximation (g = 607/128, 15 terms) on
  Re z >= 1/2, reflected in log space elsewhere; conjugate symmetry is exact
  by construction.
* ``bessel_j`` -- power series for x < max(12, 2*nu) (double-double
  accumulation once cancellation can bite), Hankel large-argument expansion
  for low orders, stable upward recurrence for x >= max(12, 2*nu) at
  nu >= 2 (target order stays below x/2, so the recurrence cannot blow up).
* ``hankel1`` -- power-series combination of J_{+nu}, J_{-nu} for |w| < 14,
  large-argument expansion beyond; arguments live in the sector
  arg w in (-pi/2, pi], with negative reals treated as the limit from above.

Array functions are vectorized over the argument with a scalar order; scalar
wrappers delegate to them.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"

_PI = np.pi
_TWOPI_HI = 6.283185307179586
_TWOPI_LO = 2.4492935982947064e-16
_LOG_SQRT_2PI = 0.9189385332046727417803297364056176398

# Lanczos coefficients, g = 607/128, 15 terms.
_LANCZOS_G = 4.7421875
_LANCZOS_C = np.array([
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
])


# ---------------------------------------------------------------------------
# double-double helpers (error-free transforms; vectorized elementwise)

def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _fast_two_sum(a, b):
    # requires |a| >= |b| in the scalar case; numpy path tolerates violations
    # because it is only used to renormalize (hi, lo) pairs
    s = a + b
    return s, b - (s - a)


def _split(a):
    t = 134217729.0 * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(xh, xl, yh, yl):
    s, e = _two_sum(xh, yh)
    e = e + xl + yl
    return _fast_two_sum(s, e)


def _dd_mul(xh, xl, yh, yl):
    p, e = _two_prod(xh, yh)
    e = e + xh * yl + xl * yh
    return _fast_two_sum(p, e)


def _dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    th, tl = _two_prod(q1, yh)
    e = ((xh - th) - tl + xl - q1 * yl) / yh
    return _fast_two_sum(q1, e)


# ---------------------------------------------------------------------------
# complex log-gamma

def _lanczos_loggamma(z):
    """Lanczos log-gamma, valid on Re z >= 0.5 (vectorized, complex input)."""
    acc = np.full_like(z, _LANCZOS_C[0])
    for k in range(1, 15):
        acc = acc + _LANCZOS_C[k] / (z - 1.0 + k)
    t = z + (_LANCZOS_G - 0.5)
    return _LOG_SQRT_2PI + (z - 0.5) * np.log(t) - t + np.log(acc)


def _log_sin_pi_upper(z):
    """A logarithm of sin(pi z) for Im z >= 0 (branch unspecified)."""
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = z.imag <= 7.0
    if small.any():
        out[small] = np.log(np.sin(_PI * z[small]))
    big = ~small
    if big.any():
        zb = z[big]
        # sin(pi z) = e^{-i pi z} (i/2) (1 - e^{2 i pi z}); |e^{2 i pi z}| tiny
        out[big] = (-1j * _PI * zb - np.log(2.0) + 1j * (_PI / 2.0)
                    + np.log1p(-np.exp(2j * _PI * zb)))
    return out


def loggamma_arr(z):
    """A logarithm of Gamma(z), elementwise.

    exp(loggamma_arr(z)) equals Gamma(z); the imaginary part is not
    guaranteed principal after reflection. Conjugate symmetry
    loggamma(conj z) == conj(loggamma(z)) holds exactly.
    """
    z = np.ascontiguousarray(z, dtype=complex)
    out = np.empty_like(z)
    lower = z.imag < 0.0
    work = np.where(lower, np.conj(z), z)

    right = work.real >= 0.5
    if right.any():
        out[right] = _lanczos_loggamma(work[right])
    left = ~right
    if left.any():
        w = work[left]
        out[left] = (np.log(_PI) - _log_sin_pi_upper(w)
                     - _lanczos_loggamma(1.0 - w))
    out[lower] = np.conj(out[lower])
    return out


def loggamma(z):
    return complex(loggamma_arr(np.array([z], dtype=complex))[0])


# ---------------------------------------------------------------------------
# Bessel J, real nonnegative order, x > 0

def _j_series_plain(nu, x):
    q = -0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(300):
        term = term * q / ((k + 1.0) * (nu + k + 1.0))
        total = total + term
        if np.all(np.abs(term) <= 1e-18 * np.abs(total) + 1e-300):
            break
    pref = np.exp(nu * np.log(0.5 * x) - np.real(loggamma_arr(
        np.array([nu + 1.0], dtype=complex))[0]))
    return pref * total


def _j_series_dd(nu, x):
    # double-double accumulation: terms near x ~ 2*nu can exceed the result
    # by ~1e14, so both the term recurrence and the sum carry a compensated
    # low part.
    qh, ql = _two_prod(x, x)
    qh, ql = -0.25 * qh, -0.25 * ql
    th = np.ones_like(x)
    tl = np.zeros_like(x)
    sh = np.ones_like(x)
    sl = np.zeros_like(x)
    for k in range(400):
        th, tl = _dd_mul(th, tl, qh, ql)
        ah, al = _two_sum(nu, k + 1.0)          # exact nu + (k+1)
        dh, de = _two_prod(ah, k + 1.0)
        dh, dl = _fast_two_sum(dh, de + al * (k + 1.0))
        th, tl = _dd_div(th, tl, dh, dl)
        sh, sl = _dd_add(sh, sl, th, tl)
        if np.all(np.abs(th) <= 1e-34 * np.abs(sh) + 1e-300):
            break
    pref = np.exp(nu * np.log(0.5 * x) - np.real(loggamma_arr(
        np.array([nu + 1.0], dtype=complex))[0]))
    return pref * (sh + sl)


def _reduce_two_pi(x):
    """x mod 2*pi, accurate for x up to ~1e8 (extended-precision 2*pi)."""
    n = np.round(x / _TWOPI_HI)
    ph, pl = _two_prod(n, np.full_like(x, _TWOPI_HI))
    r = x - ph
    return (r - n * _TWOPI_LO) - pl


def _j_asym(nu, x):
    """Hankel large-argument expansion; sound for x >= 12 and nu < ~2."""
    chi = _reduce_two_pi(x) - (0.5 * nu + 0.25) * _PI
    f4 = 4.0 * nu * nu
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    # truncation is per element: each x stops once its own term grows or
    # drops below the target, otherwise small-x entries pick up the
    # divergent tail of the expansion
    active = np.ones(x.shape, dtype=bool)
    prev = np.full_like(x, np.inf)
    for k in range(60):
        coef = (f4 - (2 * k + 1.0) ** 2) / (8.0 * (k + 1.0))
        term = term * coef / x
        mag = np.abs(term)
        active &= mag < prev
        prev = mag
        j = k + 1
        sign = -1.0 if (j // 2) % 2 else 1.0
        upd = np.where(active, sign * term, 0.0)
        if j % 2:
            q = q + upd
        else:
            p = p + upd
        active &= mag > 1e-18
        if not active.any():
            break
    return np.sqrt(2.0 / (_PI * x)) * (np.cos(chi) * p - np.sin(chi) * q)


def bessel_j_arr(nu, x):
    x = np.ascontiguousarray(x, dtype=float)
    out = np.empty_like(x)
    zero = x == 0.0
    if zero.any():
        out[zero] = 1.0 if nu == 0.0 else 0.0
    switch = max(12.0, 2.0 * nu)
    ser = (~zero) & (x < switch)
    if ser.any():
        plain = ser & (x <= 10.0)
        if plain.any():
            out[plain] = _j_series_plain(nu, x[plain])
        hard = ser & (x > 10.0)
        if hard.any():
            out[hard] = _j_series_dd(nu, x[hard])
    big = (~zero) & (x >= switch)
    if big.any():
        xb = x[big]
        if nu < 2.0:
            out[big] = _j_asym(nu, xb)
        else:
            steps = int(np.floor(nu))
            mu = nu - steps
            j0 = _j_asym(mu, xb)
            j1 = _j_asym(mu + 1.0, xb)
            for i in range(1, steps):
                j0, j1 = j1, (2.0 * (mu + i) / xb) * j1 - j0
            out[big] = j1
    return out


def bessel_j(nu, x):
    return float(bessel_j_arr(nu, np.array([x], dtype=float))[0])


# ---------------------------------------------------------------------------
# Hankel H^(1), order in (0, 1), complex argument in arg w in (-pi/2, pi]

def _log_upper(w):
    """log w with arg in (-pi/2, pi]; negative reals get arg = +pi."""
    arg = np.angle(w)
    neg_real = (w.imag == 0.0) & (w.real < 0.0)
    arg = np.where(neg_real, _PI, arg)
    return np.log(np.abs(w)) + 1j * arg


def _j_series_complex(order, w, logw):
    q = -0.25 * w * w
    term = np.ones_like(w)
    total = np.ones_like(w)
    for k in range(300):
        term = term * q / ((k + 1.0) * (order + k + 1.0))
        total = total + term
        if np.all(np.abs(term) <= 1e-18 * np.abs(total) + 1e-300):
            break
    pref = np.exp(order * (logw - np.log(2.0))
                  - loggamma_arr(np.array([order + 1.0], dtype=complex))[0])
    return pref * total


def _h1_asym(nu, w, logw):
    f4 = 4.0 * nu * nu
    term = np.ones(w.shape, dtype=complex)
    total = np.ones(w.shape, dtype=complex)
    active = np.ones(w.shape, dtype=bool)
    prev = np.full(w.shape, np.inf)
    for k in range(60):
        coef = (f4 - (2 * k + 1.0) ** 2) / (8.0 * (k + 1.0))
        term = term * (1j * coef) / w
        mag = np.abs(term)
        active &= mag < prev
        prev = mag
        total = total + np.where(active, term, 0.0)
        active &= mag > 1e-18
        if not active.any():
            break
    phase = _reduce_two_pi(w.real) - (0.5 * nu + 0.25) * _PI
    expo = np.exp(-w.imag + 1j * phase)
    amp = np.exp(0.5 * (np.log(2.0 / _PI) - logw))
    return amp * expo * total


def hankel1_arr(nu, w):
    w = np.ascontiguousarray(w, dtype=complex)
    logw = _log_upper(w)
    out = np.empty_like(w)
    aw = np.abs(w)
    # the J_{+nu}/J_{-nu} combination cancels like e^{2 Im w}; hand the upper
    # half-annulus to the large-argument expansion at the error crossover
    small = (aw < 14.0) & (w.imag <= 18.4 - aw)
    if small.any():
        ws, lws = w[small], logw[small]
        jp = _j_series_complex(nu, ws, lws)
        jm = _j_series_complex(-nu, ws, lws)
        out[small] = (jm - np.exp(-1j * _PI * nu) * jp) / (1j * np.sin(_PI * nu))
    big = ~small
    if big.any():
        out[big] = _h1_asym(nu, w[big], logw[big])
    return out


def hankel1(nu, w):
    return complex(hankel1_arr(nu, np.array([w], dtype=complex))[0])


# ---------------------------------------------------------------------------
# real digamma (used for hypergeometric connection coefficients)

def digamma_real(u):
    if u <= 0.0:
        raise ValueError("digamma_real requires a positive argument")
    acc = 0.0
    while u < 10.0:
        acc -= 1.0 / u
        u += 1.0
    inv2 = 1.0 / (u * u)
    tail = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (
        1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))))
    return acc + np.log(u) - 0.5 / u - tail
