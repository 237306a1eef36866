import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import np_hs, np_random_density
from hs_holevo.errors import DimensionError, InstanceTooLarge
from hs_holevo.measures import hs_divergence
from hs_holevo.sampling import (
    sample_density,
    sample_ensemble,
    sample_orthogonal_ensemble,
    sample_projective_measurement,
)
from hs_holevo.states import CQEnsemble, ProjectiveMeasurement
from hs_holevo.verify import (
    RunConfig,
    check_contractivity,
    check_corollary,
    check_holevo,
    check_joint_convexity,
    check_main_bound,
    check_partial_trace_monotonicity,
    cross_term_residual,
    deserialize_matrix,
    example_ensemble,
    example_sweep,
    main_bound_chain,
    margin_class,
    reduced_identity_margin,
    run_suite,
    serialize,
    theta_grid,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
modes = st.sampled_from(["pure", "mixed", "mixed-ranks"])
Z2 = ProjectiveMeasurement.computational(2)
SMALL = dict(seed=7, trials=40, audit_trials=30, ensemble_mode="all")


@pytest.fixture(scope="module")
def small_report():
    return run_suite(RunConfig(**SMALL))


# -- individual checks ---------------------------------------------------------


def test_contractivity_examples(plus):
    zero = np.diag([1.0, 0])
    one = np.diag([0, 1.0])
    m = check_contractivity(zero, one, Z2)
    assert m.lhs == 1 and m.rhs == 1 and m.satisfied
    m = check_contractivity(plus, np.eye(2) / 2, Z2)
    assert m.lhs == pytest.approx(0, abs=1e-16) and m.rhs == pytest.approx(0.25, abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 8), modes)
def test_contractivity_property(seed, dim, mode):
    gen = np.random.default_rng(seed)
    rho, sigma = sample_density(dim, mode, gen), sample_density(dim, mode, gen)
    meas = sample_projective_measurement(dim, int(gen.integers(1, dim + 1)), gen)
    assert check_contractivity(rho, sigma, meas).margin >= -1e-12


def test_joint_convexity_examples(rng):
    r, s = np_random_density(rng, 3), np_random_density(rng, 3)
    m = check_joint_convexity(r, np.eye(3) / 3, s, np.eye(3) / 3, 1.0)
    assert abs(m.margin) <= 1e-15
    m = check_joint_convexity(np.diag([1.0, 0]), np.diag([0, 1.0]), np.diag([0, 1.0]), np.diag([1.0, 0]), 0.5)
    assert m.lhs == 0 and m.rhs == 1
    with pytest.raises(ValueError):
        check_joint_convexity(r, r, s, s, 1.5)


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 6), st.floats(0, 1))
def test_joint_convexity_property(seed, dim, lam):
    gen = np.random.default_rng(seed)
    mats = [np_random_density(gen, dim) for _ in range(4)]
    assert check_joint_convexity(*mats, lam).margin >= -1e-12


def test_partial_trace_monotonicity_product(rng):
    r, s, t = (np_random_density(rng, d) for d in (2, 2, 3))
    # A carries r or s, B carries the shared t
    m = check_partial_trace_monotonicity(np.kron(r, t), np.kron(s, t), 2, 3)
    assert abs(m.lhs - np_hs(np.kron(r, np.eye(3) / 3), np.kron(s, np.eye(3) / 3))) <= 1e-14
    assert abs(m.lhs - np_hs(r, s) / 3) <= 1e-14
    assert m.satisfied
    assert reduced_identity_margin(np.kron(r, t), np.kron(s, t), 2, 3).satisfied


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_partial_trace_monotonicity_property(seed, da, db):
    gen = np.random.default_rng(seed)
    a, b = np_random_density(gen, da * db), np_random_density(gen, da * db)
    assert check_partial_trace_monotonicity(a, b, da, db).margin >= -1e-12
    assert reduced_identity_margin(a, b, da, db).satisfied


@pytest.mark.parametrize("theta", np.linspace(0, math.pi, 7))
def test_main_bound_example(theta):
    m = check_main_bound(example_ensemble(theta), Z2)
    s2 = math.sin(theta) ** 2
    assert abs(m.lhs - s2 * s2 / 16) <= 1e-12 and abs(m.rhs - s2 / 8) <= 1e-12
    assert m.satisfied


def test_main_bound_dimension_mismatch():
    with pytest.raises(DimensionError):
        check_main_bound(example_ensemble(0.3), ProjectiveMeasurement.computational(3))


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 5), st.integers(1, 6), modes)
def test_main_bound_and_holevo_property(seed, n, q, mode):
    gen = np.random.default_rng(seed)
    ens = sample_ensemble(n, q, mode, gen)
    meas = sample_projective_measurement(q, int(gen.integers(1, q + 1)), gen)
    assert check_main_bound(ens, meas).margin >= -1e-12
    assert check_holevo(ens, meas).margin >= -1e-9


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 4), st.integers(1, 4), modes)
def test_main_bound_chain_property(seed, n, q, mode):
    gen = np.random.default_rng(seed)
    ens = sample_ensemble(n, q, mode, gen)
    meas = sample_projective_measurement(q, int(gen.integers(1, q + 1)), gen)
    chain = main_bound_chain(ens, meas)
    assert all(m.satisfied for m in chain.values()), {k: m.margin for k, m in chain.items()}


def test_main_bound_chain_cap():
    ens = sample_ensemble(5, 4, "pure", np.random.default_rng(0))
    with pytest.raises(InstanceTooLarge):
        main_bound_chain(ens, ProjectiveMeasurement.computational(4))
    ens = sample_ensemble(4, 4, "pure", np.random.default_rng(0))
    assert len(main_bound_chain(ens, ProjectiveMeasurement.computational(4))) == 6


def test_chain_consistent_with_direct_values():
    ens = example_ensemble(math.pi / 4)
    chain = main_bound_chain(ens, Z2)
    assert chain["chain_register_identity"].rhs == pytest.approx(1 / 16, abs=1e-15)
    assert chain["chain_classical_identity"].rhs == pytest.approx(1 / 64, abs=1e-15)


# -- corollary and cross-term identity -----------------------------------------


def test_corollary_example_plus_state():
    c = check_corollary(example_ensemble(math.pi / 4), Z2)
    assert set(c) == {"corollary_final", "cross_term_identity", "quantum_logical_bound", "binary_mixed_remark"}
    assert c["corollary_final"].lhs == pytest.approx(1 / 64, abs=1e-15)
    assert c["corollary_final"].rhs == pytest.approx(1 / 16, abs=1e-15)
    assert c["binary_mixed_remark"].lhs == pytest.approx(1 / 32, abs=1e-15)
    assert c["binary_mixed_remark"].rhs == pytest.approx(1 / 8, abs=1e-15)
    assert c["cross_term_identity"].residual == pytest.approx(0.125, abs=1e-12)


def test_corollary_unbalanced_has_no_binary_remark(rng):
    ens = CQEnsemble([0.3, 0.7], (np_random_density(rng, 2), np_random_density(rng, 2)))
    assert "binary_mixed_remark" not in check_corollary(ens, Z2)


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 5), st.integers(1, 6), modes)
def test_quantum_and_final_corollary_hold(seed, n, q, mode):
    gen = np.random.default_rng(seed)
    ens = sample_ensemble(n, q, mode, gen)
    meas = sample_projective_measurement(q, int(gen.integers(1, q + 1)), gen)
    c = check_corollary(ens, meas)
    assert c["quantum_logical_bound"].margin >= -1e-12
    assert c["corollary_final"].margin >= -1e-12


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5), st.integers(1, 6), modes)
def test_cross_term_exact_for_identical_signals(seed, n, q, mode):
    gen = np.random.default_rng(seed)
    rho = sample_density(q, mode, gen)
    ens = CQEnsemble(sample_ensemble(n, q, mode, gen).probs, (rho,) * n)
    assert cross_term_residual(ens) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 6), st.data())
def test_cross_term_residual_orthogonal_formula(seed, q, data):
    n = data.draw(st.integers(1, q))
    ens = sample_orthogonal_ensemble(n, q, "mixed-ranks", np.random.default_rng(seed))
    p = ens.probs.probs
    pur = np.array([np.trace(s.matrix @ s.matrix).real for s in ens.states])
    assert abs(cross_term_residual(ens) - float(np.sum(p**2 * (1 - p) * pur))) <= 1e-12


def test_cross_term_residual_orthogonal_example():
    ens = CQEnsemble([0.3, 0.7], (np.diag([1.0, 0]), np.diag([0, 1.0])))
    assert cross_term_residual(ens) == pytest.approx(0.09 * 0.7 + 0.49 * 0.3, abs=1e-15)


# -- worked example sweep -----------------------------------------------------


def test_example_sweep_grid():
    recs = example_sweep(theta_grid(181))
    assert len(recs) == 181
    for r in recs:
        assert not [k for k in r.violated if margin_class(k) == "proven"], r.values
    by_theta = {round(r.values["theta"], 12): r.values for r in recs}
    v = by_theta[round(math.pi / 2, 12)]
    assert v["d_classical"] == pytest.approx(1 / 8, abs=1e-12)
    assert v["d_quantum"] == pytest.approx(1 / 8, abs=1e-12)
    assert v["holevo_chi"] == pytest.approx(1, abs=1e-12)
    assert v["shannon_mutual"] == pytest.approx(1, abs=1e-12)
    v = by_theta[round(math.pi / 4, 12)]
    assert v["d_classical"] == pytest.approx(1 / 32, abs=1e-12)
    assert v["d_quantum"] == pytest.approx(1 / 16, abs=1e-12)
    end = recs[-1].values
    assert end["d_classical"] == pytest.approx(0, abs=1e-12)
    assert end["d_classical"] <= end["bound_quarter_sin2"] + 1e-12


def test_example_sweep_rejects_bad_theta():
    with pytest.raises(ValueError):
        example_sweep([4.0])
    with pytest.raises(ValueError):
        theta_grid(1)


# -- suite ------------------------------------------------------------------------


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(trials=0)
    with pytest.raises(ValueError):
        RunConfig(dims_p=(8,), dims_q=(9,))
    with pytest.raises(ValueError):
        RunConfig(ensemble_mode="thermal")
    assert RunConfig(ensemble_mode="all").mode_for(4) == "mixed"


def test_suite_has_no_proven_violations(small_report):
    assert small_report.proven_violations == 0
    s = small_report.summaries()
    assert s["main_bound"]["class"] == "proven"
    assert s["cross_term_identity"]["class"] == "empirical"
    assert s["contractivity"]["trials"] == SMALL["trials"]


def test_suite_flags_cross_term_counterexamples(small_report):
    ce = small_report.counterexamples()
    assert "cross_term_audit" in ce and len(ce["cross_term_audit"]) <= 16
    assert max(c["margins"]["cross_term_identity"]["margin"] for c in ce["cross_term_audit"]) != 0


def test_payload_iff_violated(small_report):
    for rec in small_report.records:
        assert (rec.payload is not None) == bool(rec.violated)


def test_suite_is_deterministic(small_report):
    again = run_suite(RunConfig(**SMALL))
    assert again.summaries() == small_report.summaries()


def test_suite_parallel_matches_serial(small_report):
    par = run_suite(RunConfig(**SMALL), workers=2, chunk_size=7)
    assert par.summaries() == small_report.summaries()
    assert [(r.check_name, r.trial_index) for r in par.records] == [(r.check_name, r.trial_index) for r in small_report.records]


def test_negate_hook_creates_proven_violations():
    rep = run_suite(RunConfig(seed=1, trials=5, audit_trials=0), _negate=["contractivity"])
    assert rep.proven_violations == 5
    ce = rep.counterexamples()["contractivity"]
    assert len(ce) == 5 and "rho" in ce[0]["inputs"]


def test_counterexample_payload_reproduces_margin():
    rep = run_suite(RunConfig(seed=3, trials=3, audit_trials=0), _negate=["contractivity"])
    c = rep.counterexamples()["contractivity"][0]
    rho = deserialize_matrix(c["inputs"]["rho"])
    sigma = deserialize_matrix(c["inputs"]["sigma"])
    # the negated margin swaps sides, so the unmeasured divergence sits on the left
    assert hs_divergence(rho, sigma) == pytest.approx(c["margins"]["contractivity"]["lhs"], abs=1e-15)


def test_serialize_round_trip(rng):
    rho = np_random_density(rng, 3)
    back = deserialize_matrix(json.loads(json.dumps(serialize(rho))))
    np.testing.assert_array_equal(back, rho)
    ens = sample_ensemble(2, 3, "mixed", rng)
    data = json.loads(json.dumps(serialize(ens)))
    assert data["probs"] == list(ens.probs.probs)
    np.testing.assert_array_equal(deserialize_matrix(data["states"][1]), ens.states[1].matrix)
