"""Margin checks for the HS-divergence inequalities and the randomized suite.

Every check returns :class:`~hs_holevo.measures.Margin` values. Margins fall
into two classes:

* ``proven``: consequences of proven theorems (and exact identities). A
  violation means a bug and fails a run.
* ``empirical``: claims whose derivation is in doubt. Violations are counted
  and reported, never treated as failures.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DimensionError, InstanceTooLarge
from .linalg import MAX_DIM, hermitian_eigenvalues, kron, partial_trace
from .measures import (
    TOL_INEQ,
    Margin,
    classical_logical_entropy,
    holevo_chi,
    hs_divergence,
    hs_mutual_classical,
    hs_mutual_quantum,
    logical_entropy,
    shannon_mutual,
)
from .sampling import (
    MODES,
    RngSpec,
    sample_density,
    sample_ensemble,
    sample_orthogonal_ensemble,
    sample_projective_measurement,
)
from .states import (
    CQEnsemble,
    DensityMatrix,
    JointDistribution,
    ProjectiveMeasurement,
    as_density,
    cq_state,
    induced_joint,
    marginal_p,
    marginal_q,
    pure_state_density,
    validation_tolerance,
)

TOL_IDENTITY = 1e-12
PAYLOADS_PER_CHECK = 16

PROVEN = frozenset(
    {
        "contractivity",
        "joint_convexity",
        "monotonicity",
        "reduced_identity",
        "main_bound",
        "holevo_sanity",
        "chain_register_identity",
        "chain_contraction",
        "chain_partial_trace",
        "chain_classical_identity",
        "chain_joint_readout",
        "chain_product_readout",
        "example_eigenvalues",
        "example_logical_entropy",
        "example_bound",
    }
)
EMPIRICAL = frozenset({"corollary_final", "cross_term_identity", "quantum_logical_bound", "binary_mixed_remark"})


def margin_class(name: str) -> str:
    if name in PROVEN:
        return "proven"
    if name in EMPIRICAL:
        return "empirical"
    raise KeyError(name)


# --------------------------------------------------------------------------- checks


def check_contractivity(rho, sigma, meas: ProjectiveMeasurement, tol: float = TOL_INEQ) -> Margin:
    """d(E(rho)||E(sigma)) <= d(rho||sigma) for the measurement channel E."""
    rho, sigma = as_density(rho), as_density(sigma)
    if not rho.dim == sigma.dim == meas.dim:
        raise DimensionError("states and measurement must share one dimension")
    lhs = hs_divergence(kernels.pinch(rho.matrix, meas.stack), kernels.pinch(sigma.matrix, meas.stack))
    return Margin.inequality(lhs, hs_divergence(rho, sigma), tol)


def check_joint_convexity(rho1, rho2, sigma1, sigma2, lam: float, tol: float = TOL_INEQ) -> Margin:
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam!r}")
    r1, r2, s1, s2 = (as_density(x).matrix for x in (rho1, rho2, sigma1, sigma2))
    if not r1.shape == r2.shape == s1.shape == s2.shape:
        raise DimensionError("all four states must share one dimension")
    lhs = hs_divergence(lam * r1 + (1 - lam) * r2, lam * s1 + (1 - lam) * s2)
    rhs = lam * hs_divergence(r1, s1) + (1 - lam) * hs_divergence(r2, s2)
    return Margin.inequality(lhs, rhs, tol)


def _reduced_pair(rho_ab, sigma_ab, dim_a, dim_b):
    rho_ab, sigma_ab = as_density(rho_ab), as_density(sigma_ab)
    if not rho_ab.dim == sigma_ab.dim == dim_a * dim_b:
        raise DimensionError(f"states must have dimension {dim_a}*{dim_b}")
    ra = partial_trace(rho_ab.matrix, dim_a, dim_b, "A")
    sa = partial_trace(sigma_ab.matrix, dim_a, dim_b, "A")
    return rho_ab, sigma_ab, ra, sa


def check_partial_trace_monotonicity(rho_ab, sigma_ab, dim_a: int, dim_b: int, tol: float = TOL_INEQ) -> Margin:
    """d(rho^A ⊗ I/b || sigma^A ⊗ I/b) <= d(rho^{AB} || sigma^{AB})."""
    rho_ab, sigma_ab, ra, sa = _reduced_pair(rho_ab, sigma_ab, dim_a, dim_b)
    mixed = np.eye(dim_b) / dim_b
    lhs = hs_divergence(kron(ra, mixed), kron(sa, mixed))
    return Margin.inequality(lhs, hs_divergence(rho_ab, sigma_ab), tol)


def reduced_identity_margin(rho_ab, sigma_ab, dim_a: int, dim_b: int) -> Margin:
    """Direct d(rho^A ⊗ I/b || sigma^A ⊗ I/b) against d(rho^A||sigma^A) / b."""
    _, _, ra, sa = _reduced_pair(rho_ab, sigma_ab, dim_a, dim_b)
    mixed = np.eye(dim_b) / dim_b
    direct = hs_divergence(kron(ra, mixed), kron(sa, mixed))
    return Margin.identity(direct, hs_divergence(ra, sa) / dim_b, TOL_IDENTITY)


def _require_match(ens: CQEnsemble, meas: ProjectiveMeasurement) -> None:
    if meas.dim != ens.q:
        raise DimensionError(f"measurement dimension {meas.dim} != signal dimension {ens.q}")


def check_main_bound(ens: CQEnsemble, meas: ProjectiveMeasurement, tol: float = TOL_INEQ) -> Margin:
    """(1/q) d(X,Y || X⊗Y) <= d(rho^{P,Q} || rho^P ⊗ rho^Q)."""
    _require_match(ens, meas)
    lhs = hs_mutual_classical(induced_joint(ens, meas)) / ens.q
    return Margin.inequality(lhs, hs_mutual_quantum(ens), tol)


def check_holevo(ens: CQEnsemble, meas: ProjectiveMeasurement, tol: float = TOL_INEQ) -> Margin:
    """Standard Holevo bound H(X:Y) <= chi, as a pipeline sanity check."""
    _require_match(ens, meas)
    return Margin.inequality(shannon_mutual(induced_joint(ens, meas)), holevo_chi(ens), tol)


def is_balanced_binary(ens: CQEnsemble) -> bool:
    return ens.n == 2 and abs(ens.probs.probs[0] - 0.5) <= 1e-12


def check_corollary(ens: CQEnsemble, meas: ProjectiveMeasurement, tol: float = TOL_INEQ) -> dict[str, Margin]:
    """The corollary chain, reported as margins.

    ``corollary_final``: (1/q) d(X,Y||X⊗Y) <= L(rho^P) L(rho^Q) / 2.
    ``cross_term_identity``: tr(rho^{PQ}(1 - rho^P⊗rho^Q)) against L(rho^{PQ}).
    ``quantum_logical_bound``: d(rho^{PQ}||rho^P⊗rho^Q) <= L(rho^P) L(rho^Q) / 2.
    ``binary_mixed_remark``: d(X,Y||X⊗Y) <= L(rho^Q) / 2, only for balanced
    two-symbol ensembles.
    """
    _require_match(ens, meas)
    joint = induced_joint(ens, meas)
    d_cl = hs_mutual_classical(joint)
    lp = classical_logical_entropy(ens.probs)
    rq = marginal_q(ens)
    lq = logical_entropy(rq)
    pq = cq_state(ens).matrix
    prod = kron(marginal_p(ens).matrix, rq.matrix)
    cross = 1.0 - kernels.trace_product(pq, prod).real
    out = {
        "corollary_final": Margin.inequality(d_cl / ens.q, 0.5 * lp * lq, tol),
        "cross_term_identity": Margin.identity(cross, logical_entropy(pq), TOL_IDENTITY),
        "quantum_logical_bound": Margin.inequality(hs_mutual_quantum(ens), 0.5 * lp * lq, tol),
    }
    if is_balanced_binary(ens):
        out["binary_mixed_remark"] = Margin.inequality(d_cl, 0.5 * lq, tol)
    return out


def cross_term_residual(ens: CQEnsemble) -> float:
    """|tr(rho^{PQ}(1 - rho^P⊗rho^Q)) - L(rho^{PQ})|."""
    pq = cq_state(ens).matrix
    prod = kron(marginal_p(ens).matrix, marginal_q(ens).matrix)
    return abs(1.0 - kernels.trace_product(pq, prod).real - logical_entropy(pq))


def _extend_to_register(state: np.ndarray, n: int, meas: ProjectiveMeasurement) -> np.ndarray:
    """Apply the register-writing extension of the measurement to state ⊗ |0><0|_M.

    Ordering of the output is P, Q, M.
    """
    q, m = meas.dim, meas.m
    out = np.zeros((n * q * m,) * 2, dtype=np.complex128)
    eye_n = np.eye(n)
    for y, proj in enumerate(meas.stack):
        k = np.kron(eye_n, proj)
        block = k @ state @ k
        # |y><0| (.) |0><y| on M places the block at register index y
        out[y::m, y::m] = block
    return out


def _pqm_to_pmq(mat: np.ndarray, n: int, q: int, m: int) -> np.ndarray:
    t = mat.reshape(n, q, m, n, q, m).transpose(0, 2, 1, 3, 5, 4)
    return np.ascontiguousarray(t.reshape(n * m * q, n * m * q))


def main_bound_chain(ens: CQEnsemble, meas: ProjectiveMeasurement, max_dim: int = MAX_DIM) -> dict[str, Margin]:
    """Step-by-step reproduction of the main-bound argument with the register M."""
    _require_match(ens, meas)
    n, q, m = ens.n, ens.q, meas.m
    if n * q * m > max_dim:
        raise InstanceTooLarge(f"P⊗Q⊗M has dimension {n * q * m} > {max_dim}")
    pq = cq_state(ens).matrix
    prod = kron(marginal_p(ens).matrix, marginal_q(ens).matrix)
    m0 = np.zeros((m, m))
    m0[0, 0] = 1.0
    a, b = kron(pq, m0, max_dim), kron(prod, m0, max_dim)
    ea = _extend_to_register(pq, n, meas)
    eb = _extend_to_register(prod, n, meas)
    ea_pmq, eb_pmq = _pqm_to_pmq(ea, n, q, m), _pqm_to_pmq(eb, n, q, m)
    ta = partial_trace(ea_pmq, n * m, q, "A")
    tb = partial_trace(eb_pmq, n * m, q, "A")
    joint = induced_joint(ens, meas)
    mixed = np.eye(q) / q
    s0 = hs_divergence(pq, prod)
    s1 = hs_divergence(a, b)
    s2 = hs_divergence(ea, eb)
    s3 = hs_divergence(kron(ta, mixed, max_dim), kron(tb, mixed, max_dim))
    s4 = hs_mutual_classical(joint) / q
    joint_err = float(np.max(np.abs(ta - np.diag(joint.table.ravel()))))
    prod_err = float(np.max(np.abs(tb - np.diag(joint.product_of_marginals().table.ravel()))))
    return {
        "chain_register_identity": Margin.identity(s1, s0, TOL_IDENTITY),
        "chain_contraction": Margin.inequality(s2, s1),
        "chain_partial_trace": Margin.inequality(s3, s2),
        "chain_classical_identity": Margin.identity(s3, s4, TOL_IDENTITY),
        "chain_joint_readout": Margin.identity(joint_err, 0.0, TOL_IDENTITY),
        "chain_product_readout": Margin.identity(prod_err, 0.0, TOL_IDENTITY),
    }


# --------------------------------------------------------------------------- worked example


def example_ensemble(theta: float) -> CQEnsemble:
    """p = (1/2, 1/2), rho_0 = |0><0|, rho_1 = |psi><psi| with psi = (cos t, sin t)."""
    return CQEnsemble(
        np.array([0.5, 0.5]),
        (pure_state_density([1.0, 0.0]), pure_state_density([math.cos(theta), math.sin(theta)])),
    )


# --------------------------------------------------------------------------- records


@dataclass
class TrialRecord:
    trial_index: int
    check_name: str
    dims: dict
    margins: dict[str, Margin]
    payload: dict | None = None
    values: dict = field(default_factory=dict)
    mode: str = ""

    @property
    def violated(self) -> list[str]:
        return [k for k, m in self.margins.items() if not m.satisfied]


def _cmat(m) -> list:
    a = np.asarray(m.matrix if isinstance(m, DensityMatrix) else m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def serialize(obj):
    """Lossless JSON-ready form: matrices become nested [re, im] pairs."""
    if isinstance(obj, CQEnsemble):
        return {"probs": [float(p) for p in obj.probs.probs], "states": [_cmat(s) for s in obj.states]}
    if isinstance(obj, ProjectiveMeasurement):
        return {"projectors": [_cmat(p) for p in obj.stack]}
    if isinstance(obj, JointDistribution):
        return [[float(v) for v in row] for row in obj.table]
    if isinstance(obj, DensityMatrix):
        return _cmat(obj)
    if isinstance(obj, np.ndarray) and obj.ndim == 2:
        return _cmat(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (list, tuple)):
        return [serialize(o) for o in obj]
    if isinstance(obj, dict):
        return {k: serialize(v) for k, v in obj.items()}
    return obj


def deserialize_matrix(nested) -> np.ndarray:
    a = np.asarray(nested, dtype=np.float64)
    return a[..., 0] + 1j * a[..., 1]


def _finish(record: TrialRecord, inputs: dict, negate: frozenset) -> TrialRecord:
    for name in negate & record.margins.keys():
        record.margins[name] = record.margins[name].reversed()
    if record.violated:
        record.payload = serialize(inputs)
    return record


def example_sweep(thetas: Sequence[float], tol: float = 1e-12) -> list[TrialRecord]:
    """Analytic checks of the two-signal qubit example over a grid of angles."""
    meas = ProjectiveMeasurement.computational(2)
    records = []
    for i, theta in enumerate(thetas):
        if not 0.0 <= theta <= math.pi + 1e-15:
            raise ValueError(f"theta must lie in [0, pi], got {theta!r}")
        ens = example_ensemble(theta)
        rq = marginal_q(ens)
        eig = hermitian_eigenvalues(rq.matrix)
        c, s2 = math.cos(theta), math.sin(theta) ** 2
        expected = np.sort([(1 + c) / 2, (1 - c) / 2])[::-1]
        l_rq = logical_entropy(rq)
        joint = induced_joint(ens, meas)
        d_cl = hs_mutual_classical(joint)
        margins = {
            "example_eigenvalues": Margin.identity(float(np.max(np.abs(eig - expected))), 0.0, tol),
            "example_logical_entropy": Margin.identity(l_rq, 0.5 * s2, tol),
            "example_bound": Margin.inequality(d_cl, 0.25 * s2, tol),
            **check_corollary(ens, meas),
        }
        values = {
            "theta": float(theta),
            "eig_hi": float(eig[0]),
            "eig_lo": float(eig[1]),
            "L_rhoQ": l_rq,
            "d_classical": d_cl,
            "d_quantum": hs_mutual_quantum(ens),
            "bound_quarter_sin2": 0.25 * s2,
            "holevo_chi": holevo_chi(ens),
            "shannon_mutual": shannon_mutual(joint),
        }
        rec = TrialRecord(i, "example", {"n": 2, "q": 2, "blocks": 2}, margins, values=values, mode="pure")
        records.append(_finish(rec, {"theta": theta, "ensemble": ens, "measurement": meas}, frozenset()))
    return records


def theta_grid(points: int) -> np.ndarray:
    if points < 2:
        raise ValueError("need at least two theta points")
    return np.linspace(0.0, math.pi, points)


# --------------------------------------------------------------------------- suite


@dataclass(frozen=True)
class RunConfig:
    seed: int = 42
    trials: int = 10_000
    dims_p: tuple[int, ...] = (2, 3, 4, 5)
    dims_q: tuple[int, ...] = (2, 3, 4, 5, 6)
    ensemble_mode: str = "mixed-ranks"
    tol_ineq: float = TOL_INEQ
    tol_validate: float = 1e-10
    audit_trials: int = 999
    output_format: str = "csv"
    output_path: str = "-"

    def __post_init__(self):
        object.__setattr__(self, "dims_p", tuple(int(d) for d in self.dims_p))
        object.__setattr__(self, "dims_q", tuple(int(d) for d in self.dims_q))
        self.validate()

    def validate(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.audit_trials < 0:
            raise ValueError("audit_trials must be >= 0")
        if not self.dims_p or not self.dims_q:
            raise ValueError("dimension lists must be non-empty")
        if min(self.dims_p + self.dims_q) < 1:
            raise ValueError("dimensions must be positive")
        if max(self.dims_p) * max(self.dims_q) > MAX_DIM:
            raise ValueError(f"n*q must not exceed {MAX_DIM}")
        if self.ensemble_mode not in (*MODES, "all"):
            raise ValueError(f"ensemble_mode must be one of {(*MODES, 'all')}")
        if not (self.tol_ineq > 0 and self.tol_validate > 0):
            raise ValueError("tolerances must be positive")
        if self.output_format not in ("csv", "json"):
            raise ValueError("output_format must be 'csv' or 'json'")

    def mode_for(self, trial_index: int) -> str:
        if self.ensemble_mode == "all":
            return MODES[trial_index % len(MODES)]
        return self.ensemble_mode

    def to_dict(self) -> dict:
        d = asdict(self)
        d["dims_p"], d["dims_q"] = list(self.dims_p), list(self.dims_q)
        return d


STREAMS = {
    "contractivity": 1,
    "joint_convexity": 2,
    "partial_trace_monotonicity": 3,
    "main_bound": 4,
    "mixed_remark": 5,
    "cross_term_audit": 6,
}
AUDIT_VARIANTS = ("orthogonal", "identical", "overlapping")


def _dims(cfg: RunConfig, gen: np.random.Generator) -> tuple[int, int, int]:
    n = int(gen.choice(cfg.dims_p))
    q = int(gen.choice(cfg.dims_q))
    return n, q, int(gen.integers(1, q + 1))


def _trial_contractivity(cfg, idx, negate):
    gen = RngSpec(cfg.seed, idx, STREAMS["contractivity"]).generator()
    mode = cfg.mode_for(idx)
    n, q, blocks = _dims(cfg, gen)
    rho, sigma = sample_density(q, mode, gen), sample_density(q, mode, gen)
    meas = sample_projective_measurement(q, blocks, gen)
    margins = {"contractivity": check_contractivity(rho, sigma, meas, cfg.tol_ineq)}
    rec = TrialRecord(idx, "contractivity", {"n": n, "q": q, "blocks": blocks}, margins, mode=mode)
    return _finish(rec, {"rho": rho, "sigma": sigma, "measurement": meas}, negate)


def _trial_joint_convexity(cfg, idx, negate):
    gen = RngSpec(cfg.seed, idx, STREAMS["joint_convexity"]).generator()
    mode = cfg.mode_for(idx)
    n, q, blocks = _dims(cfg, gen)
    states = [sample_density(q, mode, gen) for _ in range(4)]
    lam = float(gen.random())
    margins = {"joint_convexity": check_joint_convexity(*states, lam, tol=cfg.tol_ineq)}
    rec = TrialRecord(idx, "joint_convexity", {"n": n, "q": q, "blocks": blocks}, margins, mode=mode)
    return _finish(rec, {"rho1": states[0], "rho2": states[1], "sigma1": states[2], "sigma2": states[3], "lambda": lam}, negate)


def _trial_monotonicity(cfg, idx, negate):
    gen = RngSpec(cfg.seed, idx, STREAMS["partial_trace_monotonicity"]).generator()
    mode = cfg.mode_for(idx)
    n, q, blocks = _dims(cfg, gen)
    rho, sigma = sample_density(n * q, mode, gen), sample_density(n * q, mode, gen)
    margins = {
        "monotonicity": check_partial_trace_monotonicity(rho, sigma, n, q, cfg.tol_ineq),
        "reduced_identity": reduced_identity_margin(rho, sigma, n, q),
    }
    rec = TrialRecord(idx, "partial_trace_monotonicity", {"n": n, "q": q, "blocks": blocks}, margins, mode=mode)
    return _finish(rec, {"rho_ab": rho, "sigma_ab": sigma, "dim_a": n, "dim_b": q}, negate)


def _trial_main_bound(cfg, idx, negate):
    gen = RngSpec(cfg.seed, idx, STREAMS["main_bound"]).generator()
    mode = cfg.mode_for(idx)
    n, q, blocks = _dims(cfg, gen)
    ens = sample_ensemble(n, q, mode, gen)
    meas = sample_projective_measurement(q, blocks, gen)
    margins = {
        "main_bound": check_main_bound(ens, meas, cfg.tol_ineq),
        "holevo_sanity": check_holevo(ens, meas, cfg.tol_ineq),
        **check_corollary(ens, meas, cfg.tol_ineq),
    }
    if n * q * blocks <= MAX_DIM:
        margins.update(main_bound_chain(ens, meas))
    rec = TrialRecord(idx, "main_bound", {"n": n, "q": q, "blocks": blocks}, margins, mode=mode)
    return _finish(rec, {"ensemble": ens, "measurement": meas}, negate)


def _trial_mixed_remark(cfg, idx, negate):
    gen = RngSpec(cfg.seed, idx, STREAMS["mixed_remark"]).generator()
    mode = cfg.mode_for(idx)
    _, q, blocks = _dims(cfg, gen)
    ens = CQEnsemble(np.array([0.5, 0.5]), (sample_density(q, mode, gen), sample_density(q, mode, gen)))
    meas = sample_projective_measurement(q, blocks, gen)
    margins = {"binary_mixed_remark": check_corollary(ens, meas, cfg.tol_ineq)["binary_mixed_remark"]}
    rec = TrialRecord(idx, "mixed_remark", {"n": 2, "q": q, "blocks": blocks}, margins, mode=mode)
    return _finish(rec, {"ensemble": ens, "measurement": meas}, negate)


def _trial_cross_term(cfg, idx, negate):
    gen = RngSpec(cfg.seed, idx, STREAMS["cross_term_audit"]).generator()
    variant = AUDIT_VARIANTS[idx % len(AUDIT_VARIANTS)]
    mode = cfg.mode_for(idx // len(AUDIT_VARIANTS))
    n, q, _ = _dims(cfg, gen)
    if variant == "orthogonal":
        n = min(n, q)
        ens = sample_orthogonal_ensemble(n, q, mode, gen)
    elif variant == "identical":
        rho = sample_density(q, mode, gen)
        ens = sample_ensemble(n, q, mode, gen)
        ens = CQEnsemble(ens.probs, (rho,) * n)
    else:
        ens = sample_ensemble(n, q, "pure", gen)
    meas = sample_projective_measurement(q, q, gen)
    margins = {"cross_term_identity": check_corollary(ens, meas, cfg.tol_ineq)["cross_term_identity"]}
    rec = TrialRecord(idx, "cross_term_audit", {"n": n, "q": q, "blocks": q}, margins, mode=mode, values={"variant": variant})
    return _finish(rec, {"variant": variant, "ensemble": ens}, negate)


def _example_instances(negate) -> list[TrialRecord]:
    """The worked example at theta = pi/4 (overlapping) and pi/2 (orthogonal)."""
    meas = ProjectiveMeasurement.computational(2)
    out = []
    for i, (label, theta) in enumerate((("overlapping", math.pi / 4), ("orthogonal", math.pi / 2))):
        ens = example_ensemble(theta)
        margins = {"main_bound": check_main_bound(ens, meas), **check_corollary(ens, meas)}
        margins.update(main_bound_chain(ens, meas))
        values = {"variant": label, "theta": theta}
        rec = TrialRecord(i, "example_instances", {"n": 2, "q": 2, "blocks": 2}, margins, values=values, mode="pure")
        out.append(_finish(rec, {"variant": label, "theta": theta, "ensemble": ens, "measurement": meas}, negate))
    return out


TRIALS = {
    "contractivity": _trial_contractivity,
    "joint_convexity": _trial_joint_convexity,
    "partial_trace_monotonicity": _trial_monotonicity,
    "main_bound": _trial_main_bound,
    "mixed_remark": _trial_mixed_remark,
    "cross_term_audit": _trial_cross_term,
}
CHECK_ORDER = (*TRIALS, "example_instances")


def _run_chunk(args) -> list[TrialRecord]:
    cfg, check, start, stop, negate = args
    fn = TRIALS[check]
    with validation_tolerance(cfg.tol_validate):
        return [fn(cfg, i, negate) for i in range(start, stop)]


def _chunks(cfg: RunConfig, negate: frozenset, size: int) -> Iterable[tuple]:
    for check in TRIALS:
        total = cfg.audit_trials if check == "cross_term_audit" else cfg.trials
        for start in range(0, total, size):
            yield (cfg, check, start, min(start + size, total), negate)


@dataclass
class VerificationReport:
    config: dict
    records: list[TrialRecord]
    duration_seconds: float = 0.0

    def summaries(self) -> dict[str, dict]:
        """Per-margin statistics, in a fixed order independent of execution order."""
        acc: dict[str, dict] = {}
        for rec in self.records:
            for name, m in rec.margins.items():
                s = acc.setdefault(
                    name,
                    {"class": margin_class(name), "kind": m.kind, "checks": [], "margins": [], "violations": 0},
                )
                if rec.check_name not in s["checks"]:
                    s["checks"].append(rec.check_name)
                s["margins"].append(m.margin)
                s["violations"] += not m.satisfied
        out = {}
        for name in sorted(acc):
            s = acc[name]
            ms = s.pop("margins")
            s.update(
                trials=len(ms),
                min_margin=min(ms),
                mean_margin=math.fsum(ms) / len(ms),
                max_residual=max(abs(x) for x in ms),
            )
            out[name] = s
        return out

    @property
    def proven_violations(self) -> int:
        return sum(1 for r in self.records for k in r.violated if margin_class(k) == "proven")

    @property
    def empirical_violations(self) -> int:
        return sum(1 for r in self.records for k in r.violated if margin_class(k) == "empirical")

    def counterexamples(self, limit: int = PAYLOADS_PER_CHECK) -> dict[str, list[dict]]:
        out: dict[str, list[dict]] = {}
        for rec in self.records:
            if rec.payload is None:
                continue
            bucket = out.setdefault(rec.check_name, [])
            if len(bucket) < limit:
                bucket.append(
                    {
                        "trial_index": rec.trial_index,
                        "dims": rec.dims,
                        "violated": rec.violated,
                        "margins": {k: asdict(rec.margins[k]) for k in rec.violated},
                        "inputs": rec.payload,
                    }
                )
        return out


def run_suite(config: RunConfig, workers: int = 1, chunk_size: int = 500, _negate: Iterable[str] = ()) -> VerificationReport:
    """Run every randomized check; identical output for any ``workers`` value.

    ``_negate`` flips the named margins and exists only to exercise failure
    paths in tests.
    """
    config.validate()
    negate = frozenset(_negate)
    t0 = time.perf_counter()
    chunks = list(_chunks(config, negate, chunk_size))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, chunks))
    else:
        parts = [_run_chunk(c) for c in chunks]
    records = [r for part in parts for r in part]
    records.extend(_example_instances(negate))
    order = {c: i for i, c in enumerate(CHECK_ORDER)}
    records.sort(key=lambda r: (order[r.check_name], r.trial_index))
    return VerificationReport(config.to_dict(), records, time.perf_counter() - t0)


def compare_trial(cfg: RunConfig, idx: int) -> dict:
    """HS bound and Holevo bound on the same instance as main-bound trial ``idx``."""
    gen = RngSpec(cfg.seed, idx, STREAMS["main_bound"]).generator()
    mode = cfg.mode_for(idx)
    n, q, blocks = _dims(cfg, gen)
    ens = sample_ensemble(n, q, mode, gen)
    meas = sample_projective_measurement(q, blocks, gen)
    hs = check_main_bound(ens, meas, cfg.tol_ineq)
    hol = check_holevo(ens, meas, cfg.tol_ineq)
    return {
        "trial_index": idx,
        "n": n,
        "q": q,
        "blocks": blocks,
        "mode": mode,
        "hs_lhs": hs.lhs,
        "hs_rhs": hs.rhs,
        "hs_margin": hs.margin,
        "shannon_mutual": hol.lhs,
        "holevo_chi": hol.rhs,
        "holevo_margin": hol.margin,
        "satisfied": hs.satisfied and hol.satisfied,
    }


def _compare_chunk(args) -> list[dict]:
    cfg, start, stop = args
    with validation_tolerance(cfg.tol_validate):
        return [compare_trial(cfg, i) for i in range(start, stop)]


def compare_rows(cfg: RunConfig, workers: int = 1, chunk_size: int = 500) -> list[dict]:
    cfg.validate()
    chunks = [(cfg, s, min(s + chunk_size, cfg.trials)) for s in range(0, cfg.trials, chunk_size)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_compare_chunk, chunks))
    else:
        parts = [_compare_chunk(c) for c in chunks]
    return [r for part in parts for r in part]
