"""Spectral and scattering data for planar point-flux boundary conditions.

Every self-adjoint condition is a matrix pair (C, D) (equivalently a U(2)
element); the package computes its negative bound states, its 2x2 scattering
matrix with high/low-energy classification, and its wave-operator symbols,
and ships quadrature oracles that confirm the underlying integral
identities. Numeric kernels run compiled when the extension is built, pure
numpy otherwise (``kernel_backend()`` tells which).
"""

from .extension import (AdmissibilityError, ExtensionPair, TripleReduction,
                        UnitaryParam, from_unitary, negative_count,
                        pairs_equivalent, reduce_to_triple, to_unitary,
                        validate_pair)
from .scattering import (AsymptoticClass, ScatteringMatrix2, ab_channel_s,
                         ab_phase, classify_energy_independent, s_asymptotic,
                         s_free, s_matrix, s_tilde, s_tilde_raw)
from .specfun import (AccuracyError, DomainError, SingularArgumentError,
                      UnsupportedParametersError, adaptive_quadrature,
                      bessel_j, complex_gamma, gauss_2f1, hankel1,
                      kernel_backend, log_gamma)
from .spectrum import (BoundState, RootSearchError, eigenvalue_determinant,
                       eigenfunction_profile, find_negative_eigenvalues)
from .verify import (OracleReport, boundary_value_check, dirac_limit_check,
                     hankel_norm_check, mellin_pair_check, standard_suite)
from .waveop import (AliasingError, ChannelSymbol, mellin_action, phi_pm,
                     phi_tilde, wave_symbol)
from .weyl import (EigenvalueHitError, SpectralPoint, WeylMatrix, coeff_ab,
                   gamma_field_profile, krein_matrix, weyl_m)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
