"""Boundary-triple analytic data: a/b coefficients, the Weyl matrix, the
deficiency-field radial profiles, and the rank-<=2 resolvent correction.

Branch bookkeeping is central: k = sqrt(z) carries Im k > 0 off the positive
half-axis, and the positive-energy boundary values differ on the two sides
of the cut by phases e^{-i pi nu}. Powers of k are always evaluated as
exp(beta log k) with arg(log k) frozen per spectral point, never through
(k^2)^beta.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import specfun
from .extension import ExtensionPair

__all__ = [
    "SpectralPoint", "WeylMatrix", "EigenvalueHitError",
    "coeff_ab", "weyl_m", "gamma_field_profile", "krein_matrix",
]

_PI = np.pi


class EigenvalueHitError(ArithmeticError):
    """The resolvent correction was requested at an eigenvalue."""


@dataclass(frozen=True)
class SpectralPoint:
    """Energy z together with the branch data of k = sqrt(z).

    ``side`` is one of ``off-axis`` (z outside [0, inf)), ``boundary-plus``
    or ``boundary-minus`` (limits onto lambda > 0 from above/below the cut).
    ``log_k`` stores log|k| + i arg k with arg k in [0, pi]; the minus-side
    boundary point carries arg k = pi so that continued powers pick up the
    e^{-i pi nu} phases automatically.
    """

    z: complex
    k: complex
    log_k: complex
    side: str

    @classmethod
    def off_axis(cls, z) -> "SpectralPoint":
        z = complex(z)
        if z.imag == 0.0 and z.real >= 0.0:
            raise specfun.DomainError(
                "z on [0, inf); use SpectralPoint.boundary for cut limits")
        k = np.sqrt(z)
        if k.imag < 0.0:
            k = -k
        return cls(z, complex(k), complex(np.log(abs(k)), np.angle(k)),
                   "off-axis")

    @classmethod
    def boundary(cls, lam: float, side: str = "plus") -> "SpectralPoint":
        if lam <= 0.0:
            raise specfun.DomainError("boundary points require lambda > 0")
        kappa = float(np.sqrt(lam))
        if side == "plus":
            return cls(complex(lam), complex(kappa),
                       complex(np.log(kappa), 0.0), "boundary-plus")
        if side == "minus":
            return cls(complex(lam), complex(-kappa),
                       complex(np.log(kappa), _PI), "boundary-minus")
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")

    def __post_init__(self):
        if abs(self.k * self.k - self.z) > 1e-13 * max(1.0, abs(self.z)):
            raise ValueError("k^2 != z beyond tolerance")

    def k_pow(self, beta: float) -> complex:
        """k^beta on the frozen branch."""
        return complex(np.exp(beta * self.log_k))


@dataclass(frozen=True)
class WeylMatrix:
    """Diagonal 2x2 Weyl matrix at a spectral point; channels (0, -1)."""

    m: np.ndarray
    point: SpectralPoint

    @property
    def diag(self) -> np.ndarray:
        return np.diag(self.m).copy()


def _check_order(nu: float):
    if not 1e-6 <= nu <= 1.0 - 1e-6:
        raise specfun.DomainError(
            f"order {nu} must stay 1e-6 away from the endpoints of (0, 1)")


def coeff_ab(nu: float, s: SpectralPoint):
    """Boundary-functional coefficients (a_nu, b_nu) at the spectral point.

    a_nu(z) = -2^nu i k^{-nu} / (sin(pi nu) Gamma(1-nu)),
    b_nu(z) = 2^{-nu} i e^{-i pi nu} k^{nu} / (sin(pi nu) Gamma(1+nu)).
    """
    _check_order(nu)
    sn = np.sin(_PI * nu)
    a = -(2.0 ** nu) * 1j / (sn * specfun.gamma_real(1.0 - nu)) * s.k_pow(-nu)
    b = ((2.0 ** -nu) * 1j * np.exp(-1j * _PI * nu)
         / (sn * specfun.gamma_real(1.0 + nu)) * s.k_pow(nu))
    return a, b


def weyl_m(alpha: float, s: SpectralPoint) -> WeylMatrix:
    """Weyl matrix M(z) = diag over the two channels of order alpha, 1-alpha.

    Entries -(2/pi) sin(pi a) Gamma(1-a)^2 e^{-i pi a} 4^{-a} (k^a)^2 with
    a = alpha and a = 1-alpha; (k^a)^2 is exp(2 a log k) on the frozen
    branch, which also produces the boundary values on both cut sides and
    real negative values on z < 0.
    """
    _check_order(alpha)
    pref = -(2.0 / _PI) * np.sin(_PI * alpha)
    entries = []
    for a in (alpha, 1.0 - alpha):
        g = specfun.gamma_real(1.0 - a)
        entries.append(pref * g * g * np.exp(-1j * _PI * a)
                       * (4.0 ** -a) * s.k_pow(2.0 * a))
    return WeylMatrix(np.diag(entries), s)


def gamma_field_profile(alpha: float, s: SpectralPoint, xi, r):
    """Radial profiles of the deficiency field with boundary data xi.

    Channel 0 carries xi_0 H^(1)_alpha(k r) / a_alpha(z), channel -1 carries
    xi_{-1} H^(1)_{1-alpha}(k r) / a_{1-alpha}(z); normalization constants
    cancel between the basis functions and the defining linear system.
    """
    _check_order(alpha)
    xi = np.asarray(xi, dtype=complex)
    if xi.shape != (2,):
        raise ValueError("xi must be a 2-vector")
    r_arr = np.asarray(r, dtype=float)
    if (np.atleast_1d(r_arr) <= 0).any():
        raise specfun.SingularArgumentError("profiles require r > 0")
    out = []
    for nu, x in ((alpha, xi[0]), (1.0 - alpha, xi[1])):
        if x == 0.0:
            out.append(np.zeros_like(r_arr, dtype=complex)
                       if r_arr.ndim else 0.0 + 0.0j)
            continue
        a, _ = coeff_ab(nu, s)
        out.append(x * specfun.hankel1(nu, s.k * r_arr) / a)
    return out[0], out[1]


def krein_matrix(p: ExtensionPair, alpha: float, s: SpectralPoint) -> np.ndarray:
    """Resolvent-correction matrix -(D M(z) - C)^{-1} D.

    The 2x2 solve goes through the adjugate with a determinant monitor;
    a vanishing determinant at z < 0 means z is an eigenvalue.
    """
    m = weyl_m(alpha, s).m
    t = p.d @ m - p.c
    det = t[0, 0] * t[1, 1] - t[0, 1] * t[1, 0]
    scale = np.linalg.norm(t) ** 2
    # second test catches double roots, where T collapses entirely and the
    # determinant-to-norm ratio stays O(1)
    input_scale = np.linalg.norm(p.d) * np.linalg.norm(m) + np.linalg.norm(p.c)
    if abs(det) < 1e-14 * scale or np.sqrt(scale) < 1e-14 * input_scale:
        raise EigenvalueHitError(
            f"D M(z) - C singular at z = {s.z} (det = {det:.3e})")
    adj = np.array([[t[1, 1], -t[0, 1]], [-t[1, 0], t[0, 0]]], dtype=complex)
    return -(adj / det) @ p.d
