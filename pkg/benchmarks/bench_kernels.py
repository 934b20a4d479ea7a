"""Benchmark the numba kernels against their pure-numpy twins.

Usage:
    python3 benchmarks/bench_kernels.py

The same workloads run through both paths (results are bit-identical, the
test suite checks that); this script only reports wall time.  Note that
running the package itself with SYMPLAT_DISABLE_JIT=1 selects the pure
path everywhere.
"""

import time

import numpy as np

from symplat import _kernels, bw_lattice, estimate_I, from_basis
from symplat.lattice import lll_reduce


def bench(fn, *args, repeat=3, warmup=True):
    if warmup:
        fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def chol_upper(gram):
    return np.ascontiguousarray(np.linalg.cholesky(gram).T)


def enum_case(name, basis, r2):
    lat = from_basis(basis)
    reduced, _ = lll_reduce(lat)
    r = chol_upper(np.ascontiguousarray(reduced.gram))
    cap = r2 * (1 + 1e-9)
    budget = np.int64(10 ** 9)

    def run_jit():
        _kernels.enumerate_jit(r, cap, budget)

    def run_py():
        _kernels.enumerate_py(r, cap, budget)

    t_jit = bench(run_jit)
    t_py = bench(run_py, repeat=1)
    count = _kernels.enumerate_py(r, cap, budget)[0].shape[0]
    print(f"enumerate  {name:<22} {count:>7} vecs   numba {t_jit*1e3:8.2f} ms"
          f"   numpy {t_py*1e3:8.2f} ms   ({t_py/t_jit:6.1f}x)")


def lll_case(name, basis):
    w0 = np.ascontiguousarray(basis.T)

    def run(core):
        w = w0.copy()
        v = np.eye(w.shape[0], dtype=np.int64)
        core(w, v, 0.99)

    t_jit = bench(lambda: run(_kernels.lll_jit))
    t_py = bench(lambda: run(_kernels.lll_py), repeat=1)
    print(f"lll        {name:<22} {'':>12}   numba {t_jit*1e3:8.2f} ms"
          f"   numpy {t_py*1e3:8.2f} ms   ({t_py/t_jit:6.1f}x)")


def jacobi_case(name, dim, rng):
    m = rng.normal(size=(dim, dim))
    s = 0.5 * (m + m.T)

    def run(core):
        a = s.copy()
        q = np.eye(dim)
        core(a, q, 1e-12, 100)

    t_jit = bench(lambda: run(_kernels.jacobi_jit))
    t_py = bench(lambda: run(_kernels.jacobi_py), repeat=1)
    print(f"jacobi     {name:<22} {'':>12}   numba {t_jit*1e3:8.2f} ms"
          f"   numpy {t_py*1e3:8.2f} ms   ({t_py/t_jit:6.1f}x)")


def main():
    if not _kernels.JIT_ENABLED:
        raise SystemExit(
            "numba path unavailable (SYMPLAT_DISABLE_JIT set or numba missing); "
            "nothing to compare"
        )
    rng = np.random.default_rng(1)

    print("== kernel microbenchmarks (best of 3, numba warmed) ==")
    bw8 = bw_lattice(2)
    enum_case("bw g=8, r2=2", np.asarray(bw8.basis), 2.0)
    bw16 = bw_lattice(3)
    enum_case("bw g=16, r2=2.83", np.asarray(bw16.basis), float(np.sqrt(8.0)))
    enum_case("Z^10, r2=4", np.eye(10), 4.0)

    lll_case("random dim 16", rng.uniform(-1, 1, size=(16, 16)) + 4 * np.eye(16))
    lll_case("random dim 32", rng.uniform(-1, 1, size=(32, 32)) + 6 * np.eye(32))

    jacobi_case("dim 16", 16, rng)
    jacobi_case("dim 32", 32, rng)

    print("\n== end-to-end: mean-value estimator, g=2, 2000 samples ==")
    t0 = time.perf_counter()
    estimate_I(2, 8.0, 0.25, 2000, seed=1)
    print(f"numba path: {time.perf_counter() - t0:6.2f} s "
          f"(pure path: rerun under SYMPLAT_DISABLE_JIT=1)")


if __name__ == "__main__":
    main()
