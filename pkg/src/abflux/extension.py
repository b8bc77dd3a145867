"""Boundary-condition pairs for the two deficiency channels.

A self-adjoint boundary condition is a pair (C, D) of 2x2 complex matrices
with C D* Hermitian and (C|D) of full row rank; pairs related by left
multiplication with an invertible matrix describe the same condition. The
module provides validation, the equivalence test, the bijective U(2)
parametrization C = (1-U)/2, D = i(1+U)/2, and the canonical reduction to
(d, I, L) data built on ker(D).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AdmissibilityError", "ExtensionPair", "UnitaryParam", "TripleReduction",
    "validate_pair", "pairs_equivalent", "from_unitary", "to_unitary",
    "reduce_to_triple", "negative_count",
]

HERM_TOL = 1e-10          # scale-invariant Hermiticity tolerance for C D*
STACK_TOL = 1e-10         # relative smallest singular value of (C|D)
KERNEL_CUTOFF = 1e-12     # relative SVD cutoff for kernel detection
KERNEL_WARN = 1e-8        # proximity band for near-degenerate kernels


class AdmissibilityError(ValueError):
    """The matrices (C, D) do not define a self-adjoint condition."""


def _as_matrix(m, name: str) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.shape != (2, 2):
        raise AdmissibilityError(f"{name} must be 2x2, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise AdmissibilityError(f"{name} has non-finite entries")
    return arr


@dataclass(frozen=True)
class ExtensionPair:
    """Validated boundary-condition pair; construct via :func:`validate_pair`."""

    c: np.ndarray
    d: np.ndarray

    def scaled(self, left: np.ndarray) -> "ExtensionPair":
        """The equivalent pair (L C, L D) for invertible L."""
        left = _as_matrix(left, "L")
        return validate_pair(left @ self.c, left @ self.d)


@dataclass(frozen=True)
class UnitaryParam:
    """Element of U(2) labeling a boundary condition uniquely."""

    u: np.ndarray

    def __post_init__(self):
        arr = _as_matrix(self.u, "U")
        defect = np.linalg.norm(arr.conj().T @ arr - np.eye(2))
        if defect > 1e-12:
            raise AdmissibilityError(f"U*U - 1 has norm {defect:.2e} > 1e-12")
        object.__setattr__(self, "u", arr)


@dataclass(frozen=True)
class TripleReduction:
    """Canonical data (d, I, L): d = rank D, I isometry onto ker(D)^perp,
    L = (D I)^+ C I Hermitian on C^d."""

    dim: int
    iso: np.ndarray     # 2 x dim, isometric columns
    herm: np.ndarray    # dim x dim Hermitian


def validate_pair(c, d) -> ExtensionPair:
    """Check the two admissibility conditions and return the pair.

    C D* must be Hermitian within a scale-invariant tolerance, and the 2x4
    stack (C|D) must have full row rank (relative smallest singular value).
    """
    c = _as_matrix(c, "C")
    d = _as_matrix(d, "D")
    cd = c @ d.conj().T
    scale = 1.0 + np.linalg.norm(c) * np.linalg.norm(d)
    herm_defect = np.linalg.norm(cd - cd.conj().T)
    if herm_defect > HERM_TOL * scale:
        raise AdmissibilityError(
            f"C D* is not Hermitian: defect {herm_defect:.3e} "
            f"exceeds {HERM_TOL * scale:.3e}")
    stack = np.hstack([c, d])
    sv = np.linalg.svd(stack, compute_uv=False)
    if sv[-1] <= STACK_TOL * sv[0]:
        raise AdmissibilityError(
            f"(C|D) is rank deficient: singular values {sv}")
    cc = c.copy()
    dd = d.copy()
    cc.flags.writeable = False
    dd.flags.writeable = False
    return ExtensionPair(cc, dd)


def pairs_equivalent(p: ExtensionPair, q: ExtensionPair) -> bool:
    """True iff the pairs are left-multiples of each other.

    Equality of the row spaces of the 2x4 stacks, tested by comparing the
    orthogonal projectors built from the top right-singular vectors.
    """
    proj = []
    for pair in (p, q):
        stack = np.hstack([pair.c, pair.d])
        _, _, vh = np.linalg.svd(stack)
        v = vh[:2].conj().T
        proj.append(v @ v.conj().T)
    return bool(np.linalg.norm(proj[0] - proj[1]) <= 1e-8)


def from_unitary(u) -> ExtensionPair:
    """Pair (C, D) = ((1-U)/2, i(1+U)/2); always admissible."""
    if not isinstance(u, UnitaryParam):
        u = UnitaryParam(_as_matrix(u, "U"))
    eye = np.eye(2)
    return validate_pair(0.5 * (eye - u.u), 0.5j * (eye + u.u))


def to_unitary(p: ExtensionPair) -> UnitaryParam:
    """Inverse of :func:`from_unitary` up to pair equivalence.

    U = -(C - iD)^{-1} (C + iD); admissibility makes C -+ iD invertible, so
    a singular solve here is an internal error, not a user error.
    """
    lhs = p.c - 1j * p.d
    rhs = p.c + 1j * p.d
    sv = np.linalg.svd(lhs, compute_uv=False)
    if sv[-1] <= 1e-14 * sv[0]:
        raise RuntimeError(
            "C - iD numerically singular for an admissible pair (bug)")
    u = -np.linalg.solve(lhs, rhs)
    return UnitaryParam(u)


def _kernel_split(m: np.ndarray):
    """(rank, kernel basis, cokernel basis) of a 2x2 matrix via SVD.

    Column phases are fixed so the first non-negligible entry is real
    positive; a singular value inside the proximity band triggers a warning.
    """
    _, sv, vh = np.linalg.svd(m)
    top = sv[0]
    if top == 0.0:
        return 0, np.eye(2, dtype=complex), np.zeros((2, 0), dtype=complex)
    small = sv <= KERNEL_CUTOFF * top
    if (~small & (sv <= KERNEL_WARN * top)).any():
        warnings.warn(
            "singular value close to the kernel cutoff; rank decision "
            f"may be fragile (sv = {sv})", stacklevel=3)
    rank = int((~small).sum())
    v = vh.conj().T
    kern = _fix_phases(v[:, rank:])
    cokern = _fix_phases(v[:, :rank])
    return rank, kern, cokern


def _fix_phases(cols: np.ndarray) -> np.ndarray:
    out = cols.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        nz = np.nonzero(np.abs(col) > 1e-12)[0]
        if nz.size:
            ph = col[nz[0]] / abs(col[nz[0]])
            out[:, j] = col / ph
    return out


def reduce_to_triple(p: ExtensionPair) -> TripleReduction:
    """Canonical (d, I, L) reduction of a pair along ker(D)."""
    rank, _, cokern = _kernel_split(p.d)
    if rank == 0:
        return TripleReduction(0, np.zeros((2, 0), dtype=complex),
                               np.zeros((0, 0), dtype=complex))
    iso = cokern
    di = p.d @ iso
    ci = p.c @ iso
    herm, *_ = np.linalg.lstsq(di, ci, rcond=None)
    defect = np.linalg.norm(herm - herm.conj().T)
    if defect > 1e-8 * (1.0 + np.linalg.norm(herm)):
        raise AdmissibilityError(
            f"reduction produced a non-Hermitian block (defect {defect:.2e})")
    herm = 0.5 * (herm + herm.conj().T)
    return TripleReduction(rank, iso, herm)


def negative_count(p: ExtensionPair) -> int:
    """Number of strictly negative eigenvalues of the Hermitian matrix C D*.

    This equals the number of negative bound states of the associated
    operator, and is invariant under pair equivalence (the count is an
    inertia index, preserved by *-congruence).
    """
    cd = p.c @ p.d.conj().T
    cd = 0.5 * (cd + cd.conj().T)
    vals = np.linalg.eigvalsh(cd)
    tol = 1e-12 * max(1.0, float(np.abs(vals).max()))
    return int((vals < -tol).sum())
