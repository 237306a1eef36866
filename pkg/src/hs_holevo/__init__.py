"""Hilbert-Schmidt divergence toolkit for classical-quantum channels.

Builds cq-states, projective measurement channels and logical entropies,
and checks the HS-divergence Holevo-type inequalities on exact and random
instances.
"""

__version__ = "0.1.0"

from .kernels import BACKEND  # noqa: E402
from .linalg import hermitian_eigenvalues, kron, partial_trace, trace_product  # noqa: E402
from .measures import (  # noqa: E402
    Margin,
    classical_hs_divergence,
    classical_logical_entropy,
    correlation_bound_margin,
    holevo_chi,
    hs_divergence,
    hs_mutual_classical,
    hs_mutual_quantum,
    logical_entropy,
    shannon_mutual,
    von_neumann_entropy,
)
from .states import (  # noqa: E402
    ClassicalDistribution,
    CQEnsemble,
    DensityMatrix,
    JointDistribution,
    ProjectiveMeasurement,
    apply_projective,
    classical_diag_embedding,
    cq_state,
    density_from_matrix,
    induced_joint,
    marginal_p,
    marginal_q,
    measure_with_register,
    pure_state_density,
)
