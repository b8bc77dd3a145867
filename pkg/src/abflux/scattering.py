"""Scattering matrices on the two-channel interaction subspace.

S(kappa) = diag(e^{-i pi alpha}, e^{i pi alpha}) + S~(kappa), with the
energy-dependent part evaluated along three numerically stable routes:

* invertible D: a Cayley-type quotient of a Hermitian matrix (unitary to
  machine precision for every kappa),
* rank-one D: a rank-one update with the scalar reduction of the boundary
  data (closed denominators; the alpha = 1/2 case degenerates to a pure
  phase times a projector decomposition),
* D = 0: the constant free matrix.

The direct triple-product form is kept as a cross-check for moderate kappa,
where its kappa powers cannot overflow. High- and low-energy limits follow
an exact case dispatch on the kernels of D and C.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import specfun
from .extension import (ExtensionPair, KERNEL_CUTOFF, KERNEL_WARN,
                        reduce_to_triple)

__all__ = [
    "ScatteringMatrix2", "AsymptoticClass", "ab_phase", "ab_channel_s",
    "s_free", "s_tilde", "s_tilde_raw", "s_matrix", "s_asymptotic",
    "classify_energy_independent",
]

_PI = np.pi
UNITARITY_TOL = 1e-9


@dataclass(frozen=True)
class ScatteringMatrix2:
    """Unitary 2x2 scattering matrix at wavenumber kappa."""

    s: np.ndarray
    kappa: float

    def __post_init__(self):
        defect = np.linalg.norm(self.s.conj().T @ self.s - np.eye(2))
        if defect > UNITARITY_TOL:
            raise ArithmeticError(
                f"scattering matrix lost unitarity: defect {defect:.2e}")

    @property
    def unitarity_defect(self) -> float:
        return float(np.linalg.norm(self.s.conj().T @ self.s - np.eye(2)))


@dataclass(frozen=True)
class AsymptoticClass:
    """Limit of S(kappa) at one end, with its structural case label.

    ``end`` is 'zero' or 'infinity'; ``label`` is i..v for the infinite end
    and a..e for the zero end.
    """

    end: str
    label: str
    limit: np.ndarray


def ab_phase(m: int, alpha: float) -> float:
    """Channel phase shift pi (|m| - |m + alpha|) / 2 of the flux operator."""
    return 0.5 * _PI * (abs(m) - abs(m + alpha))


def ab_channel_s(m: int, alpha: float) -> complex:
    """Channel scattering value e^{2 i delta} (a pure phase)."""
    return complex(np.exp(2j * ab_phase(m, alpha)))


def s_free(alpha: float) -> np.ndarray:
    """Constant scattering matrix of the bare flux: diag(e^{-+ i pi alpha})."""
    return np.diag([np.exp(-1j * _PI * alpha), np.exp(1j * _PI * alpha)])


def _b_phi(alpha: float, kappa: float):
    b1 = specfun.gamma_real(1.0 - alpha) * 2.0 ** -alpha * kappa ** alpha
    b2 = specfun.gamma_real(alpha) * 2.0 ** -(1.0 - alpha) * kappa ** (1.0 - alpha)
    phi = np.array([np.exp(-0.5j * _PI * alpha),
                    np.exp(-0.5j * _PI * (1.0 - alpha))])
    return np.array([b1, b2]), phi


def _check_inputs(alpha: float, kappa: float):
    if not 1e-6 <= alpha <= 1.0 - 1e-6:
        raise specfun.DomainError("flux must stay inside (0, 1)")
    if not kappa > 0.0:
        raise specfun.DomainError("kappa must be positive")


def s_matrix(p: ExtensionPair, alpha: float, kappa: float) -> ScatteringMatrix2:
    """Full scattering matrix S(kappa) = free part + energy-dependent part."""
    return ScatteringMatrix2(s_free(alpha) + s_tilde(p, alpha, kappa), kappa)


def s_tilde(p: ExtensionPair, alpha: float, kappa: float) -> np.ndarray:
    """Energy-dependent part of the scattering matrix.

    Dispatches on rank D; kappa powers that overflow the double range
    saturate to the appropriate energy limit (with a warning).
    """
    _check_inputs(alpha, kappa)
    triple = reduce_to_triple(p)
    if triple.dim == 0:
        return np.zeros((2, 2), dtype=complex)
    if triple.dim == 2:
        s = _s_invertible_d(p, alpha, kappa)
    else:
        s = _s_rank_one(p, triple, alpha, kappa)
    if s is None:                        # saturated kappa power
        end = "zero" if kappa < 1.0 else "infinity"
        warnings.warn(
            f"kappa = {kappa:g} beyond the floating-point range of the "
            f"formula; returning the {end}-energy limit", stacklevel=2)
        s = s_asymptotic(p, alpha, end).limit
    return s - s_free(alpha)


def _cayley_herm(t: np.ndarray, s: float, det_t: float) -> np.ndarray:
    """(T + i s)(T - i s)^{-1} for Hermitian T via the spectral form.

    ``det_t`` must be supplied by the caller from a cancellation-free
    expansion: the small eigenvalue is recovered as det/big, since mid - rad
    loses all digits when the entries blow up with nearly rank-one
    structure (small kappa).
    """
    p = t[0, 0].real
    q = t[1, 1].real
    b = t[0, 1]
    mid = 0.5 * (p + q)
    rad = np.hypot(0.5 * (p - q), abs(b))
    big = mid + rad if mid >= 0.0 else mid - rad
    if big == 0.0:
        lam = (rad, -rad)
    else:
        lam = (big, det_t / big)
    if rad == 0.0:
        vecs = np.eye(2, dtype=complex)
    else:
        v1 = np.array([b, lam[0] - p], dtype=complex)
        alt = np.array([lam[0] - q, np.conj(b)], dtype=complex)
        if np.linalg.norm(alt) > np.linalg.norm(v1):
            v1 = alt
        v1 = v1 / np.linalg.norm(v1)
        v2 = np.array([-np.conj(v1[1]), np.conj(v1[0])])
        vecs = np.column_stack([v1, v2])
    phases = [(l + 1j * s) / (l - 1j * s) if np.isfinite(l) else 1.0
              for l in lam]
    return vecs @ np.diag(phases) @ vecs.conj().T


def _s_invertible_d(p: ExtensionPair, alpha: float, kappa: float):
    a_mat = np.linalg.solve(p.d, p.c)
    a_mat = 0.5 * (a_mat + a_mat.conj().T)
    ell = (_PI / (2.0 * np.sin(_PI * alpha))) * a_mat
    b, phi = _b_phi(alpha, kappa)
    scaled = ell / np.outer(b, b)
    if not np.isfinite(scaled).all():
        return None
    cos_a = np.cos(_PI * alpha)
    j = np.array([1.0, -1.0])
    t = scaled + np.diag(cos_a * j)
    # det(T) assembled term by term: det(L)/(b1 b2)^2 avoids the huge
    # cancellation of t11 t22 - |t12|^2 for nearly rank-one L
    det_l = (ell[0, 0] * ell[1, 1] - ell[0, 1] * ell[1, 0]).real
    det_t = (det_l / (b[0] * b[1]) ** 2 - cos_a * cos_a
             + cos_a * (scaled[1, 1].real - scaled[0, 0].real))
    cay = _cayley_herm(t, np.sin(_PI * alpha), det_t)
    return (phi[:, None] * cay * phi[None, :]) * j[None, :]


def _s_rank_one(p: ExtensionPair, triple, alpha: float, kappa: float):
    u = triple.iso[:, 0]
    ell = triple.herm[0, 0].real
    b, phi = _b_phi(alpha, kappa)
    if alpha == 0.5:
        # pure phase times projector decomposition; unitary by construction
        ratio = (0.5 * _PI * kappa - 1j * ell) / (0.5 * _PI * kappa + 1j * ell)
        proj = np.outer(u, u.conj())
        j = np.diag([1.0, -1.0]).astype(complex)
        return 1j * (ratio * proj + (proj - np.eye(2))) @ j
    if not np.isfinite(b).all() or (b == 0.0).any():
        return None
    phi2 = phi * phi
    c_scalar = (abs(u[0]) ** 2 * b[0] ** 2 * phi2[0]
                + abs(u[1]) ** 2 * b[1] ** 2 * phi2[1])
    denom = c_scalar + ell
    v = b * phi * u
    w = b * phi * u.conj()
    update = (2j * np.sin(_PI * alpha) / denom) * np.outer(v, w)
    free = np.diag([phi2[0], -phi2[1]])
    out = free + update * np.array([1.0, -1.0])[None, :]
    if not np.isfinite(out).all():
        return None
    return out


def s_tilde_raw(p: ExtensionPair, alpha: float, kappa: float) -> np.ndarray:
    """Direct triple-product form of the energy-dependent part.

    Numerically safe only for moderate kappa (the kappa^{2 alpha} powers
    enter un-normalized); kept as an independent cross-check of the stable
    routes.
    """
    _check_inputs(alpha, kappa)
    b, phi = _b_phi(alpha, kappa)
    b2phi2 = np.diag(b * b * phi * phi)
    mid = p.d @ b2phi2 + (_PI / (2.0 * np.sin(_PI * alpha))) * p.c
    right = np.linalg.solve(mid, p.d)
    left = np.diag(b * phi)
    last = np.diag(b * phi * np.array([1.0, -1.0]))
    return 2j * np.sin(_PI * alpha) * left @ right @ last


def _kernel_direction(m: np.ndarray):
    """(rank, unit kernel vector or None) of a 2x2 matrix."""
    _, sv, vh = np.linalg.svd(m)
    if sv[0] == 0.0:
        return 0, None
    small = sv <= KERNEL_CUTOFF * sv[0]
    rank = int((~small).sum())
    if rank == 1:
        return 1, vh.conj().T[:, 1]
    return rank, None


def _axis_alignment(vec: np.ndarray):
    """'first', 'second' or None for a unit vector against the axes."""
    if abs(vec[1]) <= KERNEL_CUTOFF:
        return "first"
    if abs(vec[0]) <= KERNEL_CUTOFF:
        return "second"
    if min(abs(vec[0]), abs(vec[1])) <= KERNEL_WARN:
        warnings.warn(
            "kernel direction nearly axis-aligned; asymptotic case "
            "dispatch may be fragile", stacklevel=3)
    return None


def s_asymptotic(p: ExtensionPair, alpha: float, end: str) -> AsymptoticClass:
    """Closed-form limit of S(kappa) as kappa -> 0 ('zero') or infinity.

    The case label records the structural situation: i..v dispatch on
    ker(D) for the infinite end, a..e on ker(C) for the zero end, with the
    alpha = 1/2 projector cases taking precedence for one-dimensional
    kernels.
    """
    _check_inputs(alpha, 1.0)
    ea = np.exp(1j * _PI * alpha)
    if end == "infinity":
        rank, kvec = _kernel_direction(p.d)
        if rank == 0:
            return AsymptoticClass(end, "i", s_free(alpha))
        if rank == 2:
            return AsymptoticClass(end, "ii", np.diag([ea, 1.0 / ea]))
        if alpha == 0.5:
            proj = np.eye(2) - np.outer(kvec, kvec.conj())
            limit = (2.0 * proj - np.eye(2)) @ np.diag([1j, -1j])
            return AsymptoticClass(end, "iii", limit)
        axis = _axis_alignment(kvec)
        if axis == "first" or (axis != "second" and alpha < 0.5):
            return AsymptoticClass(end, "iv", np.diag([1 / ea, 1 / ea]))
        return AsymptoticClass(end, "v", np.diag([ea, ea]))
    if end == "zero":
        rank, kvec = _kernel_direction(p.c)
        if rank == 0:
            return AsymptoticClass(end, "a", np.diag([ea, 1.0 / ea]))
        if rank == 2:
            return AsymptoticClass(end, "b", s_free(alpha))
        if alpha == 0.5:
            proj = np.eye(2) - np.outer(kvec, kvec.conj())
            limit = (np.eye(2) - 2.0 * proj) @ np.diag([1j, -1j])
            return AsymptoticClass(end, "c", limit)
        axis = _axis_alignment(kvec)
        if axis == "second" or (axis != "first" and alpha > 0.5):
            return AsymptoticClass(end, "d", np.diag([1 / ea, 1 / ea]))
        return AsymptoticClass(end, "e", np.diag([ea, ea]))
    raise ValueError(f"end must be 'zero' or 'infinity', got {end!r}")


def classify_energy_independent(p: ExtensionPair, alpha: float):
    """The constant S matrix if the condition is energy independent, else None.

    Exactly five structural situations are energy independent: D = 0, C = 0,
    the two axis-aligned orthogonal-kernel configurations, and alpha = 1/2
    with both C and D singular.
    """
    _check_inputs(alpha, 1.0)
    rank_d, kd = _kernel_direction(p.d)
    rank_c, kc = _kernel_direction(p.c)
    ea = np.exp(1j * _PI * alpha)
    if rank_d == 0:
        return s_free(alpha)
    if rank_c == 0:
        return np.diag([ea, 1.0 / ea])
    if rank_c == 1 and rank_d == 1:
        axis_c = _axis_alignment(kc)
        axis_d = _axis_alignment(kd)
        if axis_c == "first" and axis_d == "second":
            return np.diag([ea, ea])
        if axis_c == "second" and axis_d == "first":
            return np.diag([1 / ea, 1 / ea])
        if alpha == 0.5:
            proj = np.eye(2) - np.outer(kd, kd.conj())
            return (2.0 * proj - np.eye(2)) @ np.diag([1j, -1j])
    return None
