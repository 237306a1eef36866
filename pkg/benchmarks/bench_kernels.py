"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 200] [--dims 2,6,16,36,64]
"""

import argparse
import timeit

import numpy as np

from hs_holevo import kernels


def _herm(rng, d):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return g + g.conj().T


def _cases(d, rng):
    a, b = _herm(rng, d), _herm(rng, d)
    half = max(1, d // 2)
    q, _ = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    stack = np.stack([q[:, :half] @ q[:, :half].conj().T, q[:, half:] @ q[:, half:].conj().T])
    small = _herm(rng, 2)
    return {
        "eigvalsh": lambda k: k.jacobi_eigvalsh(a, 1e-12),
        "hs_half_trace_square": lambda k: k.hs_half_trace_square(a, b),
        "trace_product": lambda k: k.trace_product(a, b),
        "pinch": lambda k: k.pinch(a, stack),
        "kron(d, 2)": lambda k: k.kron(a, small),
        "partial_trace": (lambda k: k.partial_trace(a, 2, d // 2, True)) if d % 2 == 0 else None,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--dims", default="2,6,16,36,64")
    args = ap.parse_args()
    if kernels.numba_backend is None:
        raise SystemExit("numba is not installed; nothing to compare")
    rng = np.random.default_rng(0)
    backends = {"numba": kernels.numba_backend, "numpy": kernels.numpy_backend}
    print(f"{'kernel':<22}{'dim':>5}{'numba us':>12}{'numpy us':>12}{'ratio':>8}")
    for d in (int(x) for x in args.dims.split(",")):
        for name, fn in _cases(d, rng).items():
            if fn is None:
                continue
            us = {}
            for label, k in backends.items():
                fn(k)  # compile / warm up
                us[label] = min(timeit.repeat(lambda: fn(k), number=args.repeat, repeat=3)) / args.repeat * 1e6
            print(f"{name:<22}{d:>5}{us['numba']:>12.2f}{us['numpy']:>12.2f}{us['numpy'] / us['numba']:>8.2f}")


if __name__ == "__main__":
    main()
