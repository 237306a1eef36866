"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The backend is chosen once at import time. Set ``HS_HOLEVO_KERNELS=numpy``
to force the fallback; the numba path is used otherwise when numba imports.
Both backends stay importable as :data:`numba_backend` (``None`` when numba
is missing) and :data:`numpy_backend` so they can be compared directly.
"""

import os
from types import SimpleNamespace

from . import _loops, _vectorized

_NAMES = ("kron", "partial_trace", "trace_product", "hs_half_trace_square", "pinch", "jacobi_eigvalsh")

numpy_backend = SimpleNamespace(name="numpy", **{k: getattr(_vectorized, k) for k in _NAMES})


def _build_numba():
    try:
        import numba
    except ImportError:
        return None
    jit = numba.njit(cache=True, nogil=True)
    ns = {k: jit(getattr(_loops, k)) for k in _NAMES}
    # jacobi_eigvalsh calls _off_norm; compile it in the loop module's namespace
    _loops._off_norm = jit(_loops._off_norm)
    return SimpleNamespace(name="numba", **ns)


numba_backend = _build_numba()


def _select():
    want = os.environ.get("HS_HOLEVO_KERNELS", "").strip().lower()
    if want == "numpy" or numba_backend is None:
        return numpy_backend
    if want not in ("", "numba"):
        raise ValueError(f"HS_HOLEVO_KERNELS must be 'numba' or 'numpy', got {want!r}")
    return numba_backend


active = _select()
BACKEND = active.name

kron = active.kron
partial_trace = active.partial_trace
trace_product = active.trace_product
hs_half_trace_square = active.hs_half_trace_square
pinch = active.pinch
jacobi_eigvalsh = active.jacobi_eigvalsh

__all__ = ["BACKEND", "active", "numba_backend", "numpy_backend", *_NAMES]
