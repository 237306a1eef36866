"""Seeded random instances: densities, unitaries, measurements, ensembles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .states import CQEnsemble, DensityMatrix, ProjectiveMeasurement, density_from_matrix

MODES = ("pure", "mixed", "mixed-ranks")


@dataclass(frozen=True)
class RngSpec:
    """Deterministic per-trial random stream.

    ``stream`` separates independent families of trials (one per check) that
    share a master seed. Streams are spawned through ``numpy.random.SeedSequence``
    so distinct (stream, trial_index) pairs give independent generators.
    """

    master_seed: int
    trial_index: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.master_seed, spawn_key=(self.stream, self.trial_index))
        return np.random.default_rng(ss)


RngLike = Union[RngSpec, np.random.Generator]


def as_generator(rng: RngLike) -> np.random.Generator:
    return rng.generator() if isinstance(rng, RngSpec) else rng


def _ginibre(gen: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (gen.standard_normal((rows, cols)) + 1j * gen.standard_normal((rows, cols))) / np.sqrt(2.0)


def sample_ginibre_density(dim: int, rank: int, rng: RngLike) -> DensityMatrix:
    """rho = G G^H / tr(G G^H) with G a dim x rank complex Gaussian matrix."""
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must lie in [1, {dim}], got {rank}")
    gen = as_generator(rng)
    while True:
        g = _ginibre(gen, dim, rank)
        w = g @ g.conj().T
        tr = np.trace(w).real
        if tr > 0:
            break
    w = w / tr
    # exact Hermitian symmetrization; the product is Hermitian only to round-off
    return density_from_matrix(0.5 * (w + w.conj().T))


def sample_haar_unitary(dim: int, rng: RngLike) -> np.ndarray:
    gen = as_generator(rng)
    q, r = np.linalg.qr(_ginibre(gen, dim, dim))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_composition(total: int, parts: int, gen: np.random.Generator) -> list[int]:
    """Uniformly random ordered split of ``total`` into ``parts`` sizes >= 1."""
    if not 1 <= parts <= total:
        raise ValueError(f"parts must lie in [1, {total}], got {parts}")
    cuts = np.sort(gen.choice(np.arange(1, total), size=parts - 1, replace=False)) if parts > 1 else []
    edges = [0, *map(int, cuts), total]
    return [b - a for a, b in zip(edges, edges[1:])]


def sample_projective_measurement(dim: int, blocks: int, rng: RngLike) -> ProjectiveMeasurement:
    """Contiguous groups of basis projectors rotated by one Haar unitary."""
    if not 1 <= blocks <= dim:
        raise ValueError(f"blocks must lie in [1, {dim}], got {blocks}")
    gen = as_generator(rng)
    sizes = random_composition(dim, blocks, gen)
    u = sample_haar_unitary(dim, gen)
    stack = np.empty((blocks, dim, dim), dtype=np.complex128)
    start = 0
    for y, size in enumerate(sizes):
        cols = u[:, start : start + size]
        p = cols @ cols.conj().T
        stack[y] = 0.5 * (p + p.conj().T)
        start += size
    return ProjectiveMeasurement(stack)


def sample_simplex(n: int, rng: RngLike) -> np.ndarray:
    """Uniform point on the probability simplex via normalized exponentials."""
    gen = as_generator(rng)
    e = -np.log1p(-gen.random(n))  # exponential variates from uniforms on [0, 1)
    while not e.sum() > 0:
        e = -np.log1p(-gen.random(n))
    return e / e.sum()


def sample_rank(dim: int, mode: str, gen: np.random.Generator) -> int:
    if mode == "pure":
        return 1
    if mode == "mixed":
        return dim
    if mode == "mixed-ranks":
        return int(gen.integers(1, dim + 1))
    raise ValueError(f"unknown ensemble mode {mode!r}; expected one of {MODES}")


def sample_density(dim: int, mode: str, rng: RngLike) -> DensityMatrix:
    gen = as_generator(rng)
    return sample_ginibre_density(dim, sample_rank(dim, mode, gen), gen)


def sample_ensemble(n: int, q: int, mode: str, rng: RngLike) -> CQEnsemble:
    if n < 1 or q < 1:
        raise ValueError("n and q must be positive")
    gen = as_generator(rng)
    probs = sample_simplex(n, gen)
    states = tuple(sample_density(q, mode, gen) for _ in range(n))
    return CQEnsemble(probs, states)


def sample_orthogonal_ensemble(n: int, q: int, mode: str, rng: RngLike) -> CQEnsemble:
    """Ensemble whose signal states have pairwise-orthogonal supports (n <= q)."""
    if not 1 <= n <= q:
        raise ValueError(f"need 1 <= n <= q, got n={n}, q={q}")
    gen = as_generator(rng)
    probs = sample_simplex(n, gen)
    sizes = random_composition(q, n, gen)
    u = sample_haar_unitary(q, gen)
    states = []
    start = 0
    for size in sizes:
        local = sample_density(size, mode, gen).matrix
        cols = u[:, start : start + size]
        m = cols @ local @ cols.conj().T
        states.append(density_from_matrix(0.5 * (m + m.conj().T)))
        start += size
    return CQEnsemble(probs, tuple(states))
