# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels (Cython twin of ``_pure``).

Same algorithms as the pure backend: Lanczos log-gamma with log-space
reflection, Bessel J via series / large-argument expansion / stable upward
recurrence, Hankel H^(1) of fractional order via J_{+-nu} series or the
large-argument expansion. Scalar loops run at C speed; array entry points
release nothing fancy, they just loop.
"""

import numpy as np

cimport cython
from libc.math cimport (M_PI, atan2, cos, exp, fabs, floor, hypot, log,
                        log1p, round as c_round, sin, sqrt)

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double complex clog(double complex)
    double cabs(double complex)
    double complex conj(double complex)
    double creal(double complex)
    double cimag(double complex)

BACKEND = "compiled"

cdef double TWOPI_HI = 6.283185307179586
cdef double TWOPI_LO = 2.4492935982947064e-16
cdef double LOG_SQRT_2PI = 0.9189385332046727417803297364056176398
cdef double LANCZOS_G = 4.7421875

cdef double[15] LANCZOS_C
LANCZOS_C[0] = 0.99999999999999709182
LANCZOS_C[1] = 57.156235665862923517
LANCZOS_C[2] = -59.597960355475491248
LANCZOS_C[3] = 14.136097974741747174
LANCZOS_C[4] = -0.49191381609762019978
LANCZOS_C[5] = 0.33994649984811888699e-4
LANCZOS_C[6] = 0.46523628927048575665e-4
LANCZOS_C[7] = -0.98374475304879564677e-4
LANCZOS_C[8] = 0.15808870322491248884e-3
LANCZOS_C[9] = -0.21026444172410488319e-3
LANCZOS_C[10] = 0.21743961811521264320e-3
LANCZOS_C[11] = -0.16431810653676389022e-3
LANCZOS_C[12] = 0.84418223983852743293e-4
LANCZOS_C[13] = -0.26190838401581408670e-4
LANCZOS_C[14] = 0.36899182659531622704e-5


# ---------------------------------------------------------------------------
# double-double helpers

cdef inline double two_sum(double a, double b, double *err) nogil:
    cdef double s = a + b
    cdef double bb = s - a
    err[0] = (a - (s - bb)) + (b - bb)
    return s

cdef inline double fast_two_sum(double a, double b, double *err) nogil:
    cdef double s = a + b
    err[0] = b - (s - a)
    return s

cdef inline double two_prod(double a, double b, double *err) nogil:
    cdef double p = a * b
    cdef double t = 134217729.0 * a
    cdef double ah = t - (t - a)
    cdef double al = a - ah
    t = 134217729.0 * b
    cdef double bh = t - (t - b)
    cdef double bl = b - bh
    err[0] = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p

cdef inline void dd_add(double xh, double xl, double yh, double yl,
                        double *rh, double *rl) nogil:
    cdef double e, s
    s = two_sum(xh, yh, &e)
    e = e + xl + yl
    rh[0] = fast_two_sum(s, e, rl)

cdef inline void dd_mul(double xh, double xl, double yh, double yl,
                        double *rh, double *rl) nogil:
    cdef double e, p
    p = two_prod(xh, yh, &e)
    e = e + xh * yl + xl * yh
    rh[0] = fast_two_sum(p, e, rl)

cdef inline void dd_div(double xh, double xl, double yh, double yl,
                        double *rh, double *rl) nogil:
    cdef double q1 = xh / yh
    cdef double e, th
    th = two_prod(q1, yh, &e)
    cdef double r = ((xh - th) - e + xl - q1 * yl) / yh
    rh[0] = fast_two_sum(q1, r, rl)


# ---------------------------------------------------------------------------
# log-gamma

cdef double complex lanczos_loggamma(double complex z) nogil:
    cdef double complex acc = LANCZOS_C[0]
    cdef int k
    for k in range(1, 15):
        acc = acc + LANCZOS_C[k] / (z - 1.0 + k)
    cdef double complex t = z + (LANCZOS_G - 0.5)
    return LOG_SQRT_2PI + (z - 0.5) * clog(t) - t + clog(acc)

cdef double complex log_sin_pi_upper(double complex z) nogil:
    if cimag(z) <= 7.0:
        return clog(csin_pi(z))
    # sin(pi z) = e^{-i pi z} (i/2) (1 - e^{2 i pi z})
    return (-1j * M_PI * z - log(2.0) + 1j * (M_PI / 2.0)
            + clog(1.0 - cexp(2j * M_PI * z)))

cdef inline double complex csin_pi(double complex z) nogil:
    cdef double x = creal(z) * M_PI
    cdef double y = cimag(z) * M_PI
    return sin(x) * (0.5 * (exp(y) + exp(-y))) + 1j * cos(x) * (0.5 * (exp(y) - exp(-y)))

cdef double complex c_loggamma(double complex z) nogil:
    cdef bint lower = cimag(z) < 0.0
    cdef double complex w = conj(z) if lower else z
    cdef double complex out
    if creal(w) >= 0.5:
        out = lanczos_loggamma(w)
    else:
        out = log(M_PI) - log_sin_pi_upper(w) - lanczos_loggamma(1.0 - w)
    return conj(out) if lower else out


# ---------------------------------------------------------------------------
# Bessel J

cdef double reduce_two_pi(double x) nogil:
    cdef double n = c_round(x / TWOPI_HI)
    cdef double e, ph
    ph = two_prod(n, TWOPI_HI, &e)
    return ((x - ph) - n * TWOPI_LO) - e

cdef double j_series_plain(double nu, double x) nogil:
    cdef double q = -0.25 * x * x
    cdef double term = 1.0, total = 1.0
    cdef int k
    for k in range(300):
        term = term * q / ((k + 1.0) * (nu + k + 1.0))
        total += term
        if fabs(term) <= 1e-18 * fabs(total) + 1e-300:
            break
    cdef double lg = creal(c_loggamma(nu + 1.0 + 0j))
    return exp(nu * log(0.5 * x) - lg) * total

cdef double j_series_dd(double nu, double x) nogil:
    cdef double qh, ql, th, tl, sh, sl, ah, al, dh, dl, de
    cdef int k
    qh = two_prod(x, x, &ql)
    qh = -0.25 * qh
    ql = -0.25 * ql
    th = 1.0; tl = 0.0; sh = 1.0; sl = 0.0
    for k in range(400):
        dd_mul(th, tl, qh, ql, &th, &tl)
        ah = two_sum(nu, k + 1.0, &al)
        dh = two_prod(ah, k + 1.0, &de)
        dh = fast_two_sum(dh, de + al * (k + 1.0), &dl)
        dd_div(th, tl, dh, dl, &th, &tl)
        dd_add(sh, sl, th, tl, &sh, &sl)
        if fabs(th) <= 1e-34 * fabs(sh) + 1e-300:
            break
    cdef double lg = creal(c_loggamma(nu + 1.0 + 0j))
    return exp(nu * log(0.5 * x) - lg) * (sh + sl)

cdef double j_asym(double nu, double x) nogil:
    cdef double chi = reduce_two_pi(x) - (0.5 * nu + 0.25) * M_PI
    cdef double f4 = 4.0 * nu * nu
    cdef double p = 1.0, q = 0.0, term = 1.0, prev = 1e308, coef, mag
    cdef int k, j
    for k in range(60):
        coef = (f4 - (2 * k + 1.0) ** 2) / (8.0 * (k + 1.0))
        term = term * coef / x
        mag = fabs(term)
        if mag >= prev:
            break
        prev = mag
        j = k + 1
        if j % 2:
            q += -term if (j // 2) % 2 else term
        else:
            p += -term if (j // 2) % 2 else term
        if mag <= 1e-18:
            break
    return sqrt(2.0 / (M_PI * x)) * (cos(chi) * p - sin(chi) * q)

cdef double c_bessel_j(double nu, double x) nogil:
    cdef double switch = 12.0 if nu < 6.0 else 2.0 * nu
    cdef double mu, j0, j1, jn
    cdef int steps, i
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if x < switch:
        if x <= 10.0:
            return j_series_plain(nu, x)
        return j_series_dd(nu, x)
    if nu < 2.0:
        return j_asym(nu, x)
    steps = <int>floor(nu)
    mu = nu - steps
    j0 = j_asym(mu, x)
    j1 = j_asym(mu + 1.0, x)
    for i in range(1, steps):
        jn = (2.0 * (mu + i) / x) * j1 - j0
        j0 = j1
        j1 = jn
    return j1


# ---------------------------------------------------------------------------
# Hankel H^(1)

cdef double complex log_upper(double complex w) nogil:
    cdef double arg = atan2(cimag(w), creal(w))
    if cimag(w) == 0.0 and creal(w) < 0.0:
        arg = M_PI
    return log(cabs(w)) + 1j * arg

cdef double complex j_series_complex(double order, double complex w,
                                     double complex logw) nogil:
    cdef double complex q = -0.25 * w * w
    cdef double complex term = 1.0, total = 1.0
    cdef int k
    for k in range(300):
        term = term * q / ((k + 1.0) * (order + k + 1.0))
        total = total + term
        if cabs(term) <= 1e-18 * cabs(total) + 1e-300:
            break
    cdef double complex pref = cexp(order * (logw - log(2.0))
                                    - c_loggamma(order + 1.0 + 0j))
    return pref * total

cdef double complex h1_asym(double nu, double complex w,
                            double complex logw) nogil:
    cdef double f4 = 4.0 * nu * nu
    cdef double complex term = 1.0, total = 1.0
    cdef double prev = 1e308, coef, mag
    cdef int k
    for k in range(60):
        coef = (f4 - (2 * k + 1.0) ** 2) / (8.0 * (k + 1.0))
        term = term * (1j * coef) / w
        mag = cabs(term)
        if mag >= prev:
            break
        prev = mag
        total = total + term
        if mag <= 1e-18:
            break
    cdef double phase = reduce_two_pi(creal(w)) - (0.5 * nu + 0.25) * M_PI
    cdef double complex expo = cexp(-cimag(w) + 1j * phase)
    cdef double complex amp = cexp(0.5 * (log(2.0 / M_PI) - logw))
    return amp * expo * total

cdef double complex c_hankel1(double nu, double complex w) nogil:
    cdef double complex logw = log_upper(w)
    cdef double complex jp, jm
    cdef double aw = cabs(w)
    # the J_{+nu}/J_{-nu} combination cancels like e^{2 Im w}; hand the upper
    # half-annulus to the large-argument expansion at the error crossover
    if aw < 14.0 and cimag(w) <= 18.4 - aw:
        jp = j_series_complex(nu, w, logw)
        jm = j_series_complex(-nu, w, logw)
        return (jm - cexp(-1j * M_PI * nu) * jp) / (1j * sin(M_PI * nu))
    return h1_asym(nu, w, logw)


# ---------------------------------------------------------------------------
# python-visible entry points

def loggamma(z):
    return c_loggamma(complex(z))


def loggamma_arr(z):
    cdef double complex[::1] zv = np.ascontiguousarray(z, dtype=complex)
    out = np.empty(zv.shape[0], dtype=complex)
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i
    for i in range(zv.shape[0]):
        ov[i] = c_loggamma(zv[i])
    return out


def bessel_j(double nu, double x):
    return c_bessel_j(nu, x)


def bessel_j_arr(double nu, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=float)
    out = np.empty(xv.shape[0], dtype=float)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(xv.shape[0]):
        ov[i] = c_bessel_j(nu, xv[i])
    return out


def hankel1(double nu, w):
    return c_hankel1(nu, complex(w))


def hankel1_arr(double nu, w):
    cdef double complex[::1] wv = np.ascontiguousarray(w, dtype=complex)
    out = np.empty(wv.shape[0], dtype=complex)
    cdef double complex[::1] ov = out
    cdef Py_ssize_t i
    for i in range(wv.shape[0]):
        ov[i] = c_hankel1(nu, wv[i])
    return out


def digamma_real(double u):
    if u <= 0.0:
        raise ValueError("digamma_real requires a positive argument")
    cdef double acc = 0.0, inv2, tail
    while u < 10.0:
        acc -= 1.0 / u
        u += 1.0
    inv2 = 1.0 / (u * u)
    tail = inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (
        1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 / 132.0))))
    return acc + log(u) - 0.5 / u - tail
