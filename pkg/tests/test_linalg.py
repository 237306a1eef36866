import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import np_example, np_random_density, np_random_hermitian
from hs_holevo.errors import DimensionError, InstanceTooLarge, NotHermitianError
from hs_holevo.linalg import (
    MAX_DIM,
    as_complex_matrix,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    trace_product,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_kron_identity():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_projectors():
    p = np.diag([1.0, 0.0])
    np.testing.assert_array_equal(kron(p, p), np.diag([1.0, 0, 0, 0]))


def test_kron_block_structure(rng):
    rho = np_random_density(rng, 2)
    out = kron(np.diag([1.0, 0.0]), rho)
    np.testing.assert_array_equal(out[:2, :2], rho)
    assert not np.any(out[2:, :]) and not np.any(out[:, 2:])


def test_kron_entry_layout(rng):
    a = rng.normal(size=(2, 3)) + 0j
    b = rng.normal(size=(3, 2)) + 0j
    out = kron(a, b)
    assert out.shape == (6, 6)
    for i, j, k, l in [(1, 2, 0, 1), (0, 0, 2, 1), (1, 1, 1, 0)]:
        assert out[i * 3 + k, j * 2 + l] == a[i, j] * b[k, l]


def test_kron_cap():
    with pytest.raises(InstanceTooLarge):
        kron(np.eye(8), np.eye(9))
    assert kron(np.eye(8), np.eye(8)).shape == (MAX_DIM, MAX_DIM)


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        as_complex_matrix([[np.nan, 0], [0, 1]])


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_kron_associative_and_trace_multiplicative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (np_random_hermitian(rng, d) for d in (2, 3, 2))
    np.testing.assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-14, rtol=0)
    assert abs(np.trace(kron(a, b)) - np.trace(a) * np.trace(b)) <= 1e-12 * max(1, abs(np.trace(a) * np.trace(b)))


def test_partial_trace_product_state(rng):
    rho, sigma = np_random_density(rng, 3), np_random_density(rng, 2)
    np.testing.assert_allclose(partial_trace(np.kron(rho, sigma), 3, 2, "A"), rho, atol=1e-12)
    np.testing.assert_allclose(partial_trace(np.kron(rho, sigma), 3, 2, "B"), sigma, atol=1e-12)


def test_partial_trace_maximally_mixed():
    np.testing.assert_allclose(partial_trace(np.eye(4) / 4, 2, 2, "B"), np.eye(2) / 2, atol=1e-15)


def test_partial_trace_example_plus_state():
    # psi = |+> is reached at theta = pi/4
    *_, pq, _, _ = np_example(math.pi / 4)
    np.testing.assert_allclose(partial_trace(pq, 2, 2, "B"), [[0.75, 0.25], [0.25, 0.25]], atol=1e-15)


def test_partial_trace_errors():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(6), 2, 2, "A")
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), 2, 2, "C")


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_partial_trace_preserves_trace(seed, da, db):
    rng = np.random.default_rng(seed)
    m = np_random_hermitian(rng, da * db)
    for keep in "AB":
        assert abs(np.trace(partial_trace(m, da, db, keep)) - np.trace(m)) <= 1e-12


def test_eigenvalues_simple():
    np.testing.assert_allclose(hermitian_eigenvalues(np.eye(2) / 2), [0.5, 0.5], atol=1e-15)
    np.testing.assert_allclose(hermitian_eigenvalues(np.diag([1.0, 0.0])), [1.0, 0.0], atol=1e-15)


@pytest.mark.parametrize("theta", np.linspace(0, math.pi, 13))
def test_eigenvalues_example_formula(theta):
    *_, rq = np_example(theta)
    c = math.cos(theta)
    expected = sorted([(1 + c) / 2, (1 - c) / 2], reverse=True)
    np.testing.assert_allclose(hermitian_eigenvalues(rq), expected, atol=1e-12)


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues([[1.0, 1.0], [0.0, 1.0]])


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 40))
def test_eigenvalues_match_lapack(seed, dim):
    rng = np.random.default_rng(seed)
    h = np_random_hermitian(rng, dim)
    w = hermitian_eigenvalues(h)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(h)[::-1], atol=1e-10 * max(1.0, np.abs(w).max()))
    assert np.all(np.diff(w) <= 0)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 8))
def test_density_eigenvalues_nonnegative_sum_one(seed, dim):
    rng = np.random.default_rng(seed)
    w = hermitian_eigenvalues(np_random_density(rng, dim, rank=int(rng.integers(1, dim + 1))))
    assert w.min() >= -1e-10
    assert abs(w.sum() - 1) <= 1e-10


def test_eigenvalues_cap_size(rng):
    h = np_random_hermitian(rng, MAX_DIM)
    np.testing.assert_allclose(hermitian_eigenvalues(h), np.linalg.eigvalsh(h)[::-1], atol=1e-9)


def test_trace_product_examples(rng):
    b = np_random_hermitian(rng, 3)
    assert abs(trace_product(np.eye(3), b) - np.trace(b)) <= 1e-14
    assert trace_product(np.diag([1.0, 0]), np.diag([0, 1.0])) == 0


@pytest.mark.parametrize("theta", [0.0, 0.3, math.pi / 4, 1.2, math.pi / 2])
def test_trace_product_overlap(theta):
    r0, r1, *_ = np_example(theta)
    assert abs(trace_product(r0, r1) - math.cos(theta) ** 2) <= 1e-15


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_trace_product_matches_explicit_product(seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    b = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    assert abs(trace_product(a, b) - np.trace(a @ b)) <= 1e-12


def test_trace_product_dimension_mismatch():
    with pytest.raises(DimensionError):
        trace_product(np.eye(2), np.eye(3))
