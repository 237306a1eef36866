"""Dense complex linear algebra on small matrices.

A "complex matrix" here is a 2-D ``numpy.ndarray`` of dtype ``complex128``
with finite entries and total dimension at most :data:`MAX_DIM`.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import ConvergenceError, DimensionError, InstanceTooLarge, NotHermitianError

MAX_DIM = 64
TOL_HERM = 1e-10
JACOBI_TOL = 1e-12


def as_complex_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a C-contiguous complex128 matrix and check invariants."""
    a = np.ascontiguousarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _square(a: np.ndarray, what: str = "matrix") -> int:
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"{what} must be square, got shape {a.shape}")
    return a.shape[0]


def kron(a, b, max_dim: int = MAX_DIM) -> np.ndarray:
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    rows, cols = a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
    if max(rows, cols) > max_dim:
        raise InstanceTooLarge(f"kron result {rows}x{cols} exceeds cap {max_dim}")
    return kernels.kron(a, b)


def partial_trace(m, dim_a: int, dim_b: int, keep: str) -> np.ndarray:
    """Reduce a bipartite operator on A⊗B to the subsystem named by ``keep``."""
    m = as_complex_matrix(m)
    n = _square(m)
    if dim_a < 1 or dim_b < 1 or dim_a * dim_b != n:
        raise DimensionError(f"dim_a*dim_b = {dim_a}*{dim_b} does not match size {n}")
    keep = keep.upper()
    if keep not in ("A", "B"):
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return kernels.partial_trace(m, dim_a, dim_b, keep == "A")


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def is_hermitian(m, tol: float = TOL_HERM) -> bool:
    m = as_complex_matrix(m)
    return m.shape[0] == m.shape[1] and hermiticity_defect(m) <= tol


def hermitian_eigenvalues(m, tol_herm: float = TOL_HERM) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, in descending order."""
    m = as_complex_matrix(m)
    _square(m)
    defect = hermiticity_defect(m)
    if defect > tol_herm:
        raise NotHermitianError(f"matrix is not Hermitian (max |m - m^H| = {defect:.3e})")
    w, sweeps = kernels.jacobi_eigvalsh(m, JACOBI_TOL)
    if sweeps < 0:
        raise ConvergenceError("Jacobi eigensolver did not converge")
    tr = float(np.trace(m).real)
    if abs(float(np.sum(w)) - tr) > 1e-10 * max(1.0, abs(tr)):
        raise ConvergenceError("eigenvalue sum does not reproduce the trace")
    return w


def trace_product(a, b) -> complex:
    """tr(a @ b) without forming the product."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    if _square(a) != _square(b):
        raise DimensionError(f"incompatible shapes {a.shape} and {b.shape}")
    return complex(kernels.trace_product(a, b))


def spectral_norm(m) -> float:
    """Largest absolute eigenvalue of a Hermitian matrix."""
    w = hermitian_eigenvalues(m)
    return float(np.max(np.abs(w)))
