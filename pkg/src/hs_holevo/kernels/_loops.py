"""Loop-form kernels.

Written in the numba-compatible subset so the same source is compiled by
``numba.njit`` on the accelerated path. Callers never use these directly;
see :mod:`hs_holevo.kernels`.
"""

import math

import numpy as np

MAX_SWEEPS = 100


def kron(a, b):
    ra, ca = a.shape
    rb, cb = b.shape
    out = np.empty((ra * rb, ca * cb), dtype=np.complex128)
    for i in range(ra):
        for j in range(ca):
            aij = a[i, j]
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = aij * b[k, l]
    return out


def partial_trace(m, dim_a, dim_b, keep_a):
    if keep_a:
        out = np.zeros((dim_a, dim_a), dtype=np.complex128)
        for i in range(dim_a):
            for j in range(dim_a):
                acc = 0j
                for k in range(dim_b):
                    acc += m[i * dim_b + k, j * dim_b + k]
                out[i, j] = acc
    else:
        out = np.zeros((dim_b, dim_b), dtype=np.complex128)
        for k in range(dim_b):
            for l in range(dim_b):
                acc = 0j
                for i in range(dim_a):
                    acc += m[i * dim_b + k, i * dim_b + l]
                out[k, l] = acc
    return out


def trace_product(a, b):
    n = a.shape[0]
    acc = 0j
    for i in range(n):
        for j in range(n):
            acc += a[i, j] * b[j, i]
    return acc


def hs_half_trace_square(a, b):
    """Return tr((a - b)^2) / 2 as a complex number."""
    n = a.shape[0]
    acc = 0j
    for i in range(n):
        for j in range(n):
            acc += (a[i, j] - b[i, j]) * (a[j, i] - b[j, i])
    return 0.5 * acc


def pinch(rho, projectors):
    """Sum_i P_i rho P_i for a stack of projectors with shape (m, d, d)."""
    m = projectors.shape[0]
    d = rho.shape[0]
    out = np.zeros((d, d), dtype=np.complex128)
    tmp = np.empty((d, d), dtype=np.complex128)
    for y in range(m):
        p = projectors[y]
        for i in range(d):
            for j in range(d):
                acc = 0j
                for k in range(d):
                    acc += p[i, k] * rho[k, j]
                tmp[i, j] = acc
        for i in range(d):
            for j in range(d):
                acc = 0j
                for k in range(d):
                    acc += tmp[i, k] * p[k, j]
                out[i, j] += acc
    return out


def _off_norm(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += a[i, j].real ** 2 + a[i, j].imag ** 2
    return math.sqrt(acc)


def jacobi_eigvalsh(m, tol):
    """Cyclic complex Jacobi; returns (eigenvalues descending, sweeps used).

    sweeps == -1 signals non-convergence within MAX_SWEEPS.
    """
    n = m.shape[0]
    a = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            a[i, j] = 0.5 * (m[i, j] + np.conj(m[j, i]))
    scale = 0.0
    for i in range(n):
        for j in range(n):
            scale += a[i, j].real ** 2 + a[i, j].imag ** 2
    scale = max(math.sqrt(scale), 1.0)
    sweeps = 0
    while _off_norm(a) > tol * scale:
        if sweeps >= MAX_SWEEPS:
            sweeps = -1
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                b = abs(apq)
                if b < 1e-300:
                    continue
                phase = np.conj(apq) / b
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * b)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # rotation U on (p, q): [[c, s], [-s*phase, c*phase]]
                upp = c + 0j
                upq = s + 0j
                uqp = -s * phase
                uqq = c * phase
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = akp * upp + akq * uqp
                    a[k, q] = akp * upq + akq * uqq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = np.conj(upp) * apk + np.conj(uqp) * aqk
                    a[q, k] = np.conj(upq) * apk + np.conj(uqq) * aqk
                a[p, q] = 0j
                a[q, p] = 0j
                a[p, p] = a[p, p].real + 0j
                a[q, q] = a[q, q].real + 0j
    w = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = a[i, i].real
    w = np.sort(w)[::-1].copy()
    return w, sweeps
