"""Scalar information quantities.

Hilbert-Schmidt divergences carry the factor one half:
``d(rho||sigma) = tr((rho - sigma)^2) / 2``. Shannon and von Neumann
quantities are in bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DimensionError, HSHolevoError, NotHermitianError
from .linalg import as_complex_matrix, is_hermitian, kron, spectral_norm
from .states import (
    ClassicalDistribution,
    CQEnsemble,
    DensityMatrix,
    JointDistribution,
    as_density,
    cq_state,
    marginal_p,
    marginal_q,
    reduced_states,
)

TOL_INEQ = 1e-9
TOL_IMAG = 1e-10
TOL_PSD = 1e-10


@dataclass(frozen=True)
class Margin:
    """Outcome of checking ``lhs <= rhs`` (or ``lhs == rhs`` for identities).

    ``margin`` is always ``rhs - lhs``. An inequality is satisfied when
    ``margin >= -tol``; an identity when ``|margin| <= tol``.
    """

    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    kind: str = "inequality"
    tol: float = TOL_INEQ

    @classmethod
    def inequality(cls, lhs: float, rhs: float, tol: float = TOL_INEQ) -> Margin:
        lhs, rhs = float(lhs), float(rhs)
        margin = rhs - lhs
        return cls(lhs, rhs, margin, margin >= -tol, "inequality", tol)

    @classmethod
    def identity(cls, lhs: float, rhs: float, tol: float = 1e-12) -> Margin:
        lhs, rhs = float(lhs), float(rhs)
        margin = rhs - lhs
        return cls(lhs, rhs, margin, abs(margin) <= tol, "identity", tol)

    @property
    def residual(self) -> float:
        return abs(self.margin)

    def reversed(self) -> Margin:
        """The same pair checked in the opposite direction."""
        if self.kind == "identity":
            return self
        return Margin.inequality(self.rhs, self.lhs, self.tol)


def _real_trace(z: complex, what: str) -> float:
    if abs(z.imag) > TOL_IMAG:
        raise HSHolevoError(f"{what} has imaginary part {z.imag:.3e}; inputs are not Hermitian")
    return z.real


def hs_divergence(rho, sigma) -> float:
    """d(rho||sigma) = tr((rho - sigma)^2) / 2."""
    a = rho.matrix if isinstance(rho, DensityMatrix) else as_complex_matrix(rho)
    b = sigma.matrix if isinstance(sigma, DensityMatrix) else as_complex_matrix(sigma)
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return max(_real_trace(complex(kernels.hs_half_trace_square(a, b)), "HS divergence"), 0.0)


def _probs(p) -> np.ndarray:
    return p.probs if isinstance(p, ClassicalDistribution) else ClassicalDistribution(p).probs


def classical_hs_divergence(p, q) -> float:
    a, b = _probs(p), _probs(q)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch {a.size} vs {b.size}")
    return 0.5 * float(np.sum((a - b) ** 2))


def hs_mutual_classical(j: JointDistribution) -> float:
    """d(X,Y || X⊗Y) for a joint table."""
    t = j.table
    return 0.5 * float(np.sum((t - np.outer(t.sum(axis=1), t.sum(axis=0))) ** 2))


def hs_mutual_quantum(ens: CQEnsemble) -> float:
    """d(rho^{P,Q} || rho^P ⊗ rho^Q)."""
    return hs_divergence(cq_state(ens), kron(marginal_p(ens).matrix, marginal_q(ens).matrix))


def hs_mutual_quantum_expanded(ens: CQEnsemble) -> float:
    """Same quantity from the expansion of the square, as a cross-check."""
    pq = cq_state(ens).matrix
    pp, qq = marginal_p(ens).matrix, marginal_q(ens).matrix
    prod = kron(pp, qq)
    tr = kernels.trace_product
    val = 0.5 * tr(pq, pq) - tr(pq, prod) + 0.5 * tr(pp, pp) * tr(qq, qq)
    return _real_trace(complex(val), "expanded HS divergence")


def hs_mutual_bipartite(rho_ab, dim_a: int, dim_b: int) -> float:
    """d(rho^{A,B} || rho^A ⊗ rho^B) for a general bipartite state."""
    rho_ab = as_density(rho_ab)
    ra, rb = reduced_states(rho_ab, dim_a, dim_b)
    return hs_divergence(rho_ab, kron(ra.matrix, rb.matrix))


def purity(rho) -> float:
    rho = as_density(rho)
    return _real_trace(complex(kernels.trace_product(rho.matrix, rho.matrix)), "purity")


def logical_entropy(rho) -> float:
    """L(rho) = tr(rho (1 - rho)) = 1 - tr(rho^2)."""
    return 1.0 - purity(rho)


def classical_logical_entropy(p) -> float:
    a = _probs(p)
    return 1.0 - float(np.sum(a * a))


def _clean_spectrum(w: np.ndarray) -> np.ndarray:
    w = np.where((w < 0) & (w >= -TOL_PSD), 0.0, w)
    return np.clip(w, 0.0, 1.0)


def _shannon_bits(p: np.ndarray) -> float:
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def von_neumann_entropy(rho) -> float:
    rho = as_density(rho)
    return _shannon_bits(_clean_spectrum(rho.eigenvalues))


def shannon_entropy(p) -> float:
    return _shannon_bits(_probs(p))


def holevo_chi(ens: CQEnsemble) -> float:
    """S(rho^Q) - sum_x p(x) S(rho_x)."""
    avg = sum(p * von_neumann_entropy(s) for p, s in zip(ens.probs.probs, ens.states))
    return von_neumann_entropy(marginal_q(ens)) - avg


def shannon_mutual(j: JointDistribution) -> float:
    """H(X:Y) = sum p(x,y) log2(p(x,y) / (p(x) p(y)))."""
    t = j.table
    prod = np.outer(t.sum(axis=1), t.sum(axis=0))
    mask = t > 0
    return float(np.sum(t[mask] * np.log2(t[mask] / prod[mask])))


def _observable_norm(m, norm: str) -> float:
    if norm == "spectral":
        return spectral_norm(m)
    if norm == "hs":
        return float(np.linalg.norm(m))
    raise ValueError(f"norm must be 'spectral' or 'hs', got {norm!r}")


def correlation_function(rho_ab, m_a, m_b, dim_a: int, dim_b: int) -> float:
    """C = <M_A ⊗ M_B> - <M_A><M_B>."""
    rho_ab = as_density(rho_ab)
    m_a, m_b = as_complex_matrix(m_a), as_complex_matrix(m_b)
    if m_a.shape != (dim_a, dim_a) or m_b.shape != (dim_b, dim_b) or rho_ab.dim != dim_a * dim_b:
        raise DimensionError("observable or state dimensions do not match dim_a, dim_b")
    for name, m in (("M_A", m_a), ("M_B", m_b)):
        if not is_hermitian(m):
            raise NotHermitianError(f"{name} is not Hermitian")
    ra, rb = reduced_states(rho_ab, dim_a, dim_b)
    tr = kernels.trace_product
    joint = tr(rho_ab.matrix, kron(m_a, m_b)).real
    return float(joint - tr(ra.matrix, m_a).real * tr(rb.matrix, m_b).real)


def correlation_bound_margin(rho_ab, m_a, m_b, dim_a: int, dim_b: int, norm: str = "spectral") -> Margin:
    """Margin of d(rho^{A,B} || rho^A ⊗ rho^B) >= C^2 / (2 |M_A|^2 |M_B|^2).

    Reported with lhs = the correlation bound and rhs = the divergence; use
    :meth:`Margin.reversed` for the opposite orientation. With the default
    spectral norm the inequality can fail (Bell state, Z⊗Z); with
    ``norm="hs"`` it follows from Cauchy-Schwarz.
    """
    c = correlation_function(rho_ab, m_a, m_b, dim_a, dim_b)
    na, nb = _observable_norm(m_a, norm), _observable_norm(m_b, norm)
    if na == 0.0 or nb == 0.0:
        raise ValueError("observables must be nonzero")
    bound = c * c / (2.0 * na**2 * nb**2)
    return Margin.inequality(bound, hs_mutual_bipartite(rho_ab, dim_a, dim_b))


__all__ = [
    "Margin",
    "TOL_INEQ",
    "classical_hs_divergence",
    "classical_logical_entropy",
    "correlation_bound_margin",
    "correlation_function",
    "holevo_chi",
    "hs_divergence",
    "hs_mutual_bipartite",
    "hs_mutual_classical",
    "hs_mutual_quantum",
    "hs_mutual_quantum_expanded",
    "logical_entropy",
    "purity",
    "shannon_entropy",
    "shannon_mutual",
    "von_neumann_entropy",
]

