"""Benchmark: compiled coproduct kernel vs numpy fallback vs sparse CSR.

Run:  python benchmarks/bench_kernels.py [max_cells]

The coproduct matvec is the hot loop of every large-N experiment; at small N
the materialized CSR wins, at large N (where materialization is impossible)
the matrix-free kernels take over.
"""

import sys
import time

import numpy as np

from spintime import kernels
from spintime.quantify import MATERIALIZE_MAX_DIM, cell_bivector, quantify_operator


def time_call(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    max_cells = int(sys.argv[1]) if len(sys.argv) > 1 else 7
    cell = cell_bivector(1, 5, half=False)
    print(f"compiled kernel available: {kernels.HAVE_COMPILED}")
    print(f"{'N':>3} {'dim':>10} {'python_ms':>10} {'compiled_ms':>12} "
          f"{'csr_ms':>10} {'speedup':>8}")
    rng = np.random.default_rng(0)
    for n in range(3, max_cells + 1):
        dim = 8**n
        x = rng.standard_normal(dim)
        t_py = time_call(lambda: kernels.coproduct_matvec(cell, x, n, impl="python"))
        if kernels.HAVE_COMPILED:
            t_cy = time_call(lambda: kernels.coproduct_matvec(cell, x, n, impl="compiled"))
        else:
            t_cy = float("nan")
        if dim <= MATERIALIZE_MAX_DIM:
            qop = quantify_operator(cell, n)
            csr = qop.to_sparse()
            t_csr = time_call(lambda: csr @ x)
            csr_txt = f"{t_csr * 1e3:10.3f}"
        else:
            csr_txt = f"{'n/a':>10}"
        speedup = t_py / t_cy if t_cy == t_cy else float("nan")
        print(f"{n:>3} {dim:>10} {t_py * 1e3:10.3f} {t_cy * 1e3:12.3f} "
              f"{csr_txt} {speedup:8.2f}")


if __name__ == "__main__":
    main()
