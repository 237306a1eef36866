"""Validated quantum objects and the classical-quantum constructions.

The classical register P and the outcome register M both use the
computational basis. All types are frozen; their arrays are marked
read-only after validation.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .errors import (
    DimensionError,
    NegativeEigenvalueError,
    NormalizationError,
    NotHermitianError,
    TraceError,
    ValidationError,
)
from .linalg import (
    as_complex_matrix,
    hermiticity_defect,
    hermitian_eigenvalues,
    kron,
    partial_trace,
)

DEFAULT_TOL = 1e-10
PROB_TOL = 1e-12

_tolerance: contextvars.ContextVar[float] = contextvars.ContextVar("validation_tolerance", default=DEFAULT_TOL)


def get_validation_tolerance() -> float:
    return _tolerance.get()


@contextlib.contextmanager
def validation_tolerance(tol: float) -> Iterator[float]:
    """Temporarily set tol_herm / tol_psd / trace tolerance for validation."""
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    token = _tolerance.set(float(tol))
    try:
        yield tol
    finally:
        _tolerance.reset(token)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix."""

    matrix: np.ndarray
    eigenvalues: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self.dim})"


def density_from_matrix(m, tolerance: float | None = None) -> DensityMatrix:
    tol = get_validation_tolerance() if tolerance is None else tolerance
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"density matrix must be square, got {a.shape}")
    defect = hermiticity_defect(a)
    if defect > tol:
        raise NotHermitianError(f"not Hermitian: max |m - m^H| = {defect:.3e}")
    w = hermitian_eigenvalues(a, tol_herm=tol)
    if w[-1] < -tol:
        raise NegativeEigenvalueError(f"negative eigenvalue {w[-1]:.3e}")
    tr = float(np.trace(a).real)
    if abs(tr - 1.0) > tol:
        raise TraceError(f"trace is {tr!r}, expected 1")
    return DensityMatrix(_frozen(a), _frozen(w))


def as_density(x) -> DensityMatrix:
    return x if isinstance(x, DensityMatrix) else density_from_matrix(x)


def pure_state_density(amplitudes) -> DensityMatrix:
    psi = np.asarray(amplitudes, dtype=np.complex128).ravel()
    norm = float(np.linalg.norm(psi))
    if psi.size == 0 or abs(norm - 1.0) > PROB_TOL:
        raise NormalizationError(f"state vector norm is {norm!r}")
    return density_from_matrix(np.outer(psi, psi.conj()))


def maximally_mixed(dim: int) -> DensityMatrix:
    return density_from_matrix(np.eye(dim) / dim)


@dataclass(frozen=True, eq=False)
class ClassicalDistribution:
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64).ravel()
        if p.size == 0 or not np.all(np.isfinite(p)):
            raise ValidationError("distribution must be a non-empty finite vector")
        if np.any(p < 0):
            raise ValidationError(f"negative probability {p.min()!r}")
        if abs(p.sum() - 1.0) > PROB_TOL:
            raise ValidationError(f"probabilities sum to {p.sum()!r}")
        object.__setattr__(self, "probs", _frozen(p))

    def __len__(self) -> int:
        return self.probs.size

    def embed(self) -> DensityMatrix:
        """Diagonal density matrix carrying these probabilities."""
        return density_from_matrix(np.diag(self.probs))


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Table p(x, y) with x indexing rows and y indexing columns."""

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.float64)
        if t.ndim != 2 or t.size == 0 or not np.all(np.isfinite(t)):
            raise ValidationError("joint table must be a non-empty finite 2-D array")
        if np.any(t < 0):
            raise ValidationError(f"negative joint probability {t.min()!r}")
        if abs(t.sum() - 1.0) > PROB_TOL:
            raise ValidationError(f"joint table sums to {t.sum()!r}")
        object.__setattr__(self, "table", _frozen(t))

    @property
    def px(self) -> ClassicalDistribution:
        return ClassicalDistribution(self.table.sum(axis=1))

    @property
    def py(self) -> ClassicalDistribution:
        return ClassicalDistribution(self.table.sum(axis=0))

    def product_of_marginals(self) -> JointDistribution:
        return JointDistribution(np.outer(self.table.sum(axis=1), self.table.sum(axis=0)))


@dataclass(frozen=True, eq=False)
class CQEnsemble:
    """Alice's source: symbol x is sent as state rho_x with probability p(x)."""

    probs: ClassicalDistribution
    states: tuple[DensityMatrix, ...]

    def __post_init__(self):
        probs = self.probs if isinstance(self.probs, ClassicalDistribution) else ClassicalDistribution(self.probs)
        states = tuple(as_density(s) for s in self.states)
        if len(states) != len(probs):
            raise DimensionError(f"{len(probs)} probabilities but {len(states)} states")
        if len({s.dim for s in states}) != 1:
            raise DimensionError("all signal states must share one dimension")
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "states", states)

    @property
    def n(self) -> int:
        return len(self.states)

    @property
    def q(self) -> int:
        return self.states[0].dim


@dataclass(frozen=True, eq=False)
class ProjectiveMeasurement:
    """Complete family of orthogonal projectors; ``stack`` has shape (m, d, d)."""

    stack: np.ndarray

    def __post_init__(self):
        tol = get_validation_tolerance()
        s = np.asarray(self.stack, dtype=np.complex128)
        if s.ndim == 2:
            s = s[None]
        if s.ndim != 3 or s.shape[0] < 1 or s.shape[1] != s.shape[2]:
            raise DimensionError(f"projector stack must have shape (m, d, d), got {s.shape}")
        for i, p in enumerate(s):
            if hermiticity_defect(p) > tol:
                raise NotHermitianError(f"projector {i} is not Hermitian")
            if np.max(np.abs(p @ p - p)) > tol:
                raise ValidationError(f"projector {i} is not idempotent")
            for j in range(i + 1, len(s)):
                if np.max(np.abs(p @ s[j])) > tol:
                    raise ValidationError(f"projectors {i} and {j} are not orthogonal")
        if np.max(np.abs(s.sum(axis=0) - np.eye(s.shape[1]))) > tol:
            raise ValidationError("projectors do not sum to the identity")
        object.__setattr__(self, "stack", _frozen(np.ascontiguousarray(s)))

    @classmethod
    def from_projectors(cls, projectors: Sequence) -> ProjectiveMeasurement:
        return cls(np.stack([as_complex_matrix(p) for p in projectors]))

    @classmethod
    def computational(cls, dim: int) -> ProjectiveMeasurement:
        s = np.zeros((dim, dim, dim), dtype=np.complex128)
        for y in range(dim):
            s[y, y, y] = 1.0
        return cls(s)

    @property
    def projectors(self) -> tuple[np.ndarray, ...]:
        return tuple(self.stack)

    @property
    def dim(self) -> int:
        return self.stack.shape[1]

    @property
    def m(self) -> int:
        return self.stack.shape[0]


def _block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    q = blocks[0].shape[0]
    out = np.zeros((q * len(blocks),) * 2, dtype=np.complex128)
    for x, b in enumerate(blocks):
        out[x * q : (x + 1) * q, x * q : (x + 1) * q] = b
    return out


def cq_state(ens: CQEnsemble) -> DensityMatrix:
    """Block-diagonal rho^{P,Q} = sum_x p(x) |x><x| ⊗ rho_x."""
    return density_from_matrix(_block_diag([p * s.matrix for p, s in zip(ens.probs.probs, ens.states)]))


def marginal_p(ens: CQEnsemble) -> DensityMatrix:
    return ens.probs.embed()


def marginal_q(ens: CQEnsemble) -> DensityMatrix:
    acc = np.zeros((ens.q, ens.q), dtype=np.complex128)
    for p, s in zip(ens.probs.probs, ens.states):
        acc += p * s.matrix
    return density_from_matrix(acc)


def product_of_marginals(ens: CQEnsemble) -> DensityMatrix:
    return density_from_matrix(kron(marginal_p(ens).matrix, marginal_q(ens).matrix))


def _check_dim(rho: DensityMatrix, meas: ProjectiveMeasurement) -> None:
    if rho.dim != meas.dim:
        raise DimensionError(f"state dimension {rho.dim} != measurement dimension {meas.dim}")


def apply_projective(rho, meas: ProjectiveMeasurement) -> DensityMatrix:
    """The measurement channel rho -> sum_y P_y rho P_y."""
    rho = as_density(rho)
    _check_dim(rho, meas)
    return density_from_matrix(kernels.pinch(rho.matrix, meas.stack))


def outcome_probabilities(rho, meas: ProjectiveMeasurement) -> np.ndarray:
    rho = as_density(rho)
    _check_dim(rho, meas)
    p = np.array([kernels.trace_product(P, rho.matrix).real for P in meas.stack])
    return np.clip(p, 0.0, None)


def measure_with_register(rho, meas: ProjectiveMeasurement) -> DensityMatrix:
    """Post-measurement state on Q⊗M: sum_y P_y rho P_y ⊗ |y><y|."""
    rho = as_density(rho)
    _check_dim(rho, meas)
    d, m = meas.dim, meas.m
    out = np.zeros((d * m, d * m), dtype=np.complex128)
    for y, P in enumerate(meas.stack):
        block = P @ rho.matrix @ P
        # Q index i, M index y -> row i*m + y
        out[y::m, y::m] = block
    return density_from_matrix(out)


def induced_joint(ens: CQEnsemble, meas: ProjectiveMeasurement) -> JointDistribution:
    """p(x, y) = p(x) tr(P_y rho_x)."""
    if meas.dim != ens.q:
        raise DimensionError(f"ensemble dimension {ens.q} != measurement dimension {meas.dim}")
    rows = [p * outcome_probabilities(s, meas) for p, s in zip(ens.probs.probs, ens.states)]
    return JointDistribution(np.array(rows))


def classical_diag_embedding(j: JointDistribution) -> DensityMatrix:
    """Diagonal density on X⊗Y with entry (x*m + y) equal to p(x, y)."""
    return density_from_matrix(np.diag(j.table.ravel()))


def reduced_states(rho, dim_a: int, dim_b: int) -> tuple[DensityMatrix, DensityMatrix]:
    rho = as_density(rho)
    return (
        density_from_matrix(partial_trace(rho.matrix, dim_a, dim_b, "A")),
        density_from_matrix(partial_trace(rho.matrix, dim_a, dim_b, "B")),
    )
