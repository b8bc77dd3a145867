"""Wave-operator symbols on the spectrum of the dilation generator.

Each angular channel m carries unit-modulus symbols phi_m^+- built from
Gamma-function ratios, and the two interaction channels m in {0, -1} carry
an additional symbol phi~_m interpolating from 0 at x = -infinity to 1 at
x = +infinity. The assembled 2x2 interaction symbol is
diag(phi^-) + diag(phi~) S~(kappa).

All Gamma ratios are evaluated through log-Gamma differences: the moduli of
phi^+- are then exactly 1 and nothing overflows on the |x| <= 1e5 envelope.
A discrete Mellin-multiplier action on log-uniform radial grids is included
(FFT circular convolution in t = log r).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels, specfun
from .extension import ExtensionPair
from .scattering import ab_phase, s_tilde

__all__ = [
    "ChannelSymbol", "AliasingError", "phi_pm", "phi_tilde", "wave_symbol",
    "mellin_action", "tanh_grid",
]

_PI = np.pi
X_ENVELOPE = 1e5

_VARIANTS = ("phi-plus", "phi-minus", "phi-tilde")


class AliasingError(ValueError):
    """Sampled data unusable on the grid (support too close to the edges)."""


@dataclass(frozen=True)
class ChannelSymbol:
    """Symbol selector: channel m, variant, flux alpha."""

    m: int
    variant: str
    alpha: float

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise ValueError(f"variant must be one of {_VARIANTS}")
        if self.variant == "phi-tilde" and self.m not in (0, -1):
            raise specfun.DomainError(
                "phi-tilde exists only on the interaction channels m in {0,-1}")
        if not 0.0 < self.alpha < 1.0:
            raise specfun.DomainError("flux must lie in (0, 1)")

    def values(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.variant == "phi-plus":
            return _phi_pm_values(self.m, self.alpha, x, +1)
        if self.variant == "phi-minus":
            return _phi_pm_values(self.m, self.alpha, x, -1)
        return _phi_tilde_values(self.m, self.alpha, x)

    def value(self, x: float) -> complex:
        return complex(self.values(np.array([float(x)]))[0])


def _check_envelope(x: np.ndarray):
    if x.size and np.abs(x).max() > X_ENVELOPE:
        raise specfun.DomainError(
            f"|x| beyond the log-Gamma envelope {X_ENVELOPE:g}")


def _im_loggamma_half(base: float, x: np.ndarray) -> np.ndarray:
    """Im log Gamma((base + i x)/2) for real base, vectorized."""
    z = 0.5 * (base + 1j * x)
    return _kernels.loggamma_arr(z).imag


def _phi_pm_values(m: int, alpha: float, x: np.ndarray, sign: int):
    _check_envelope(x)
    n = abs(m)
    a = abs(m + alpha)
    delta = ab_phase(m, alpha)
    phase = (-sign * delta
             + 2.0 * _im_loggamma_half(n + 1.0, x)
             - 2.0 * _im_loggamma_half(a + 1.0, x))
    return np.exp(1j * phase)


def _phi_tilde_values(m: int, alpha: float, x: np.ndarray):
    _check_envelope(x)
    n = abs(m)
    a = abs(m + alpha)
    lg = _kernels.loggamma_arr
    log_val = (-np.log(2.0 * _PI) - 0.5j * _PI * n + 0.5 * _PI * x
               + 2j * _im_loggamma_half(n + 1.0, x)
               + lg(0.5 * (1.0 + a - 1j * x))
               + lg(0.5 * (1.0 - a - 1j * x)))
    return np.exp(log_val)


def phi_pm(c: ChannelSymbol, x):
    """Unit-modulus channel symbol phi_m^+ or phi_m^- at x (scalar or array).

    phi^+-(x) = e^{-+ i delta} G((|m|+1+ix)/2)/G((|m|+1-ix)/2)
                * G((|m+a|+1-ix)/2)/G((|m+a|+1+ix)/2); the limits are 1 at
    the sign end and e^{-+ 2 i delta} at the opposite end.
    """
    if c.variant not in ("phi-plus", "phi-minus"):
        raise ValueError("phi_pm needs a phi-plus or phi-minus symbol")
    out = c.values(np.atleast_1d(np.asarray(x, dtype=float)))
    return complex(out[0]) if np.ndim(x) == 0 else out


def phi_tilde(c: ChannelSymbol, x):
    """Interaction-channel symbol phi~_m, m in {0, -1}; 0 at -inf, 1 at +inf.

    (1/2pi) e^{-i pi |m|/2} e^{pi x/2} G((|m|+1+ix)/2)/G((|m|+1-ix)/2)
    * G((1+|m+a|-ix)/2) G((1-|m+a|-ix)/2), assembled in log space so the
    growing exponential and decaying Gamma factors never overflow.
    """
    if c.variant != "phi-tilde":
        raise ValueError("phi_tilde needs a phi-tilde symbol")
    out = c.values(np.atleast_1d(np.asarray(x, dtype=float)))
    return complex(out[0]) if np.ndim(x) == 0 else out


def wave_symbol(p: ExtensionPair, alpha: float, x: float, kappa: float):
    """Interaction-subspace wave-operator symbol diag(phi^-) + diag(phi~) S~."""
    xs = np.array([float(x)])
    minus = np.diag([
        complex(_phi_pm_values(0, alpha, xs, -1)[0]),
        complex(_phi_pm_values(-1, alpha, xs, -1)[0]),
    ])
    tilde = np.diag([
        complex(_phi_tilde_values(0, alpha, xs)[0]),
        complex(_phi_tilde_values(-1, alpha, xs)[0]),
    ])
    return minus + tilde @ s_tilde(p, alpha, kappa)


def tanh_grid(lo: float, hi: float, count: int, stretch: float = 2.0):
    """Grid on [lo, hi] clustered toward both endpoints (tanh spacing)."""
    u = np.linspace(-1.0, 1.0, count)
    mid = 0.5 * (hi + lo)
    half = 0.5 * (hi - lo)
    return mid + half * np.tanh(stretch * u) / np.tanh(stretch)


def mellin_action(symbol, f, r):
    """Apply a dilation-generator symbol to samples on a log-uniform grid.

    ``symbol`` is a :class:`ChannelSymbol`, a complex constant, or a
    callable x -> values. The samples are mapped to t = log r (where the
    radial measure makes g = r f(r) square summable), multiplied in the
    Fourier domain by the symbol, and mapped back; the FFT convolution is
    circular, so samples must vanish near both grid edges.
    """
    r = np.asarray(r, dtype=float)
    f = np.asarray(f, dtype=complex)
    if r.ndim != 1 or r.shape != f.shape or r.size < 16:
        raise ValueError("need matching 1-D grids with at least 16 samples")
    t = np.log(r)
    dt = np.diff(t)
    if np.abs(dt - dt[0]).max() > 1e-9 * abs(dt[0]):
        raise ValueError("grid must be log-uniform")
    guard = max(2, r.size // 32)
    body = np.abs(f).max()
    if body > 0 and max(np.abs(f[:guard]).max(),
                        np.abs(f[-guard:]).max()) > 1e-10 * body:
        raise AliasingError(
            "samples do not vanish near the grid edges; enlarge the grid")
    x_freq = 2.0 * _PI * np.fft.fftfreq(r.size, d=dt[0])
    if isinstance(symbol, ChannelSymbol):
        if np.abs(x_freq).max() > X_ENVELOPE:
            raise AliasingError("grid step too fine for the symbol envelope")
        mult = symbol.values(x_freq)
    elif callable(symbol):
        mult = np.asarray(symbol(x_freq), dtype=complex)
    else:
        mult = complex(symbol) * np.ones_like(x_freq, dtype=complex)
    g = r * f
    return np.fft.ifft(np.fft.fft(g) * mult) / r
