import numpy as np
import pytest


def haar_unitary(rng) -> np.ndarray:
    """Haar-distributed 2x2 unitary (QR of a complex Gaussian, phase-fixed)."""
    g = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
    q, r = np.linalg.qr(g / np.sqrt(2.0))
    return q * (np.diag(r) / np.abs(np.diag(r)))[None, :]


def random_invertible(rng, min_det=0.3) -> np.ndarray:
    while True:
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        if abs(np.linalg.det(m)) >= min_det:
            return m


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
