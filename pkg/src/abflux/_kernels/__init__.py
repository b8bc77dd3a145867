"""Numeric kernel layer: compiled core with a pure-numpy fallback.

The compiled extension is preferred when importable; set ``ABFLUX_PURE=1``
to force the pure backend (used by the benchmark and the backend-agreement
tests).
"""

import os

if os.environ.get("ABFLUX_PURE"):
    from . import _pure as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _pure as _impl

BACKEND = _impl.BACKEND

loggamma = _impl.loggamma
loggamma_arr = _impl.loggamma_arr
bessel_j = _impl.bessel_j
bessel_j_arr = _impl.bessel_j_arr
hankel1 = _impl.hankel1
hankel1_arr = _impl.hankel1_arr
digamma_real = _impl.digamma_real
