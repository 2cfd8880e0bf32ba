"""Time the hot kernels on both backends: numba loops vs pure numpy.

Run:  python benchmarks/bench_kernels.py
The package-level backend is chosen at import (GBENT_PURE_NUMPY=1 forces
numpy); this script imports both implementations directly so one run
covers the comparison.
"""

import time

import numpy as np

from gbent import _kernels


def bench(label, fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    print(f"  {label:<22} {best * 1e3:10.2f} ms")
    return best


def impl_pairs(name):
    numpy_fn = getattr(_kernels, f"{name}_numpy")
    numba_fn = getattr(_kernels, f"{name}_numba", None)
    return numpy_fn, numba_fn


def main():
    print(f"active backend: {_kernels.BACKEND}")
    rng = np.random.Generator(np.random.PCG64(1))

    print("\nfwht_rows, (2, 2**20) int64  (one n=20, k=2 transform)")
    base = rng.integers(-1, 2, size=(2, 1 << 20)).astype(np.int64)
    np_fn, nb_fn = impl_pairs("fwht_rows")
    bench("numpy", lambda: np_fn(base.copy()))
    if nb_fn is not None:
        nb_fn(base[:, :8].copy())  # compile
        bench("numba", lambda: nb_fn(base.copy()))

    print("\nfwht_rows, (100000, 16) int64  (audit-sized batch)")
    batch = rng.integers(-1, 2, size=(100_000, 16)).astype(np.int64)
    bench("numpy", lambda: np_fn(batch.copy()))
    if nb_fn is not None:
        bench("numba", lambda: nb_fn(batch.copy()))

    print("\nroot_coeffs, 2**20 table, k=3")
    table = rng.integers(0, 8, size=1 << 20).astype(np.int64)
    np_fn, nb_fn = impl_pairs("root_coeffs")
    bench("numpy", lambda: np_fn(table, 3))
    if nb_fn is not None:
        nb_fn(table[:8], 3)
        bench("numba", lambda: nb_fn(table, 3))

    print("\nvalue_diff_counts, n=10, q=4  (offset-sum Butson route)")
    table = rng.integers(0, 4, size=1 << 10).astype(np.int64)
    np_fn, nb_fn = impl_pairs("value_diff_counts")
    bench("numpy", lambda: np_fn(table, 4))
    if nb_fn is not None:
        nb_fn(table[:16], 4)
        bench("numba", lambda: nb_fn(table, 4))

    print("\nagreement spot check")
    a = rng.integers(-3, 4, size=(64, 256)).astype(np.int64)
    np_fw, nb_fw = impl_pairs("fwht_rows")
    if nb_fw is not None:
        same = np.array_equal(np_fw(a.copy()), nb_fw(a.copy()))
        print(f"  fwht_rows numpy == numba: {same}")


if __name__ == "__main__":
    main()
