"""Compiled vs pure-Python kernels, and an end-to-end count under each backend.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from qmzeros import _kernels_py

try:
    from qmzeros import _kernels as _compiled
except ImportError:
    _compiled = None

END_TO_END = """
import math, time
from qmzeros import BACKEND
from qmzeros.counting import count_zeros
from qmzeros.rings import gap_form
f = gap_form(36)
t = time.perf_counter()
for lam in (math.inf, 0.75, 0.2):
    count_zeros(f, lam)
print(BACKEND, time.perf_counter() - t)
"""


def kernel_inputs(rng, rows=3, order=100, points=4000):
    coeffs = rng.standard_normal((rows, order)) + 1j * rng.standard_normal((rows, order))
    tau = rng.uniform(-0.5, 0.5, points) + 1j * rng.uniform(0.5, 1.2, points)
    q = np.exp(2j * np.pi * tau)
    values = np.exp(1j * np.cumsum(rng.uniform(-1, 1, points)))
    return coeffs.astype(np.complex128), q.astype(np.complex128), values.astype(np.complex128)


def bench(impl, coeffs, q, values, repeat):
    series = min(timeit.repeat(lambda: impl.eval_series(coeffs, q, coeffs.shape[1]), number=5, repeat=repeat)) / 5
    phase = min(timeit.repeat(lambda: impl.phase_increments(values), number=20, repeat=repeat)) / 20
    return series, phase


def end_to_end(pure):
    env = dict(os.environ, QMZ_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    backend, seconds = out.stdout.split()
    return backend, float(seconds)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    coeffs, q, values = kernel_inputs(np.random.default_rng(0))

    py = bench(_kernels_py, coeffs, q, values, args.repeat)
    print(f"{'kernel':<18}{'python':>12}{'compiled':>12}{'speedup':>10}")
    if _compiled is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` with Cython available")
        cy = (float("nan"), float("nan"))
    else:
        cy = bench(_compiled, coeffs, q, values, args.repeat)
        assert np.allclose(_compiled.eval_series(coeffs, q, coeffs.shape[1]),
                           _kernels_py.eval_series(coeffs, q, coeffs.shape[1]))
        assert np.allclose(_compiled.phase_increments(values), _kernels_py.phase_increments(values))
    for name, a, b in (("eval_series", py[0], cy[0]), ("phase_increments", py[1], cy[1])):
        print(f"{name:<18}{a * 1e3:>10.3f}ms{b * 1e3:>10.3f}ms{a / b:>9.1f}x")

    print()
    for pure in (True, False):
        backend, seconds = end_to_end(pure)
        print(f"count_zeros(gap:36) x3 with {backend:<8} backend: {seconds:.2f}s")


if __name__ == "__main__":
    main()
