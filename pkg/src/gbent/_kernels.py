"""Hot integer kernels: numba-jitted loops with a pure-numpy fallback.

Backend selection happens once at import time.  Numba is used when it
imports cleanly, unless the environment variable ``GBENT_PURE_NUMPY`` is
set to ``1``/``true``/``yes``, in which case the vectorized numpy
implementations run instead.  Both backends compute identical int64
results; ``BACKEND`` records which one is live.

All kernels are exact integer computations.  Callers keep magnitudes
safe for int64: butterfly outputs are bounded by 2**n * max|input| and
the size caps upstream keep n <= 24.

Both implementations of every kernel stay importable (the numpy ones
always, the numba ones whenever numba is present) so the benchmark can
time them side by side.
"""

from __future__ import annotations

import os

import numpy as np

_env = os.environ.get("GBENT_PURE_NUMPY", "").strip().lower()
_force_numpy = _env in ("1", "true", "yes")

_HAVE_NUMBA = False
if not _force_numpy:
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        _HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------

def fwht_rows_numpy(a: np.ndarray) -> np.ndarray:
    """In-place Walsh-Hadamard butterflies along the last axis of (rows, size)."""
    rows, size = a.shape
    h = 1
    while h < size:
        view = a.reshape(rows, size // (2 * h), 2, h)
        x = view[:, :, 0, :].copy()
        view[:, :, 0, :] = x + view[:, :, 1, :]
        view[:, :, 1, :] = x - view[:, :, 1, :]
        h *= 2
    return a


def root_coeffs_numpy(table: np.ndarray, k: int) -> np.ndarray:
    """Coefficient rows of zeta**f(x): shape (m, 2**n), m = max(1, 2**(k-1)).

    Row j holds the coefficient of zeta**j; zeta**a for a >= m is stored
    as -1 at row a-m (reduction zeta**m = -1).  For k=1 the single row is
    (-1)**f(x).
    """
    size = table.shape[0]
    t = table.astype(np.int64)
    if k == 1:
        return (1 - 2 * t).reshape(1, size)
    m = 1 << (k - 1)
    out = np.zeros((m, size), dtype=np.int64)
    sign = np.where(t < m, 1, -1).astype(np.int64)
    out[t % m, np.arange(size)] = sign
    return out


def root_coeffs_batch_numpy(tables: np.ndarray, k: int) -> np.ndarray:
    """Batched root_coeffs: (B, 2**n) tables -> (B, m, 2**n) coefficients."""
    b, size = tables.shape
    t = tables.astype(np.int64)
    if k == 1:
        return (1 - 2 * t).reshape(b, 1, size)
    m = 1 << (k - 1)
    out = np.zeros((b, m, size), dtype=np.int64)
    sign = np.where(t < m, 1, -1).astype(np.int64)
    out[np.arange(b)[:, None], t % m, np.arange(size)[None, :]] = sign
    return out


def value_diff_counts_numpy(table: np.ndarray, q: int) -> np.ndarray:
    """counts[z, w] = #{t : (f(t) - f(t XOR z)) mod q == w}, all z at once."""
    size = table.shape[0]
    t = table.astype(np.int64)
    idx = np.arange(size)
    out = np.empty((size, q), dtype=np.int64)
    for z in range(size):
        d = (t - t[idx ^ z]) % q
        out[z] = np.bincount(d, minlength=q)
    return out


# ---------------------------------------------------------------------------
# numba implementations (same contracts, explicit loops)
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True)
    def fwht_rows_numba(a):  # pragma: no cover - exercised via dispatch
        rows, size = a.shape
        for r in range(rows):
            h = 1
            while h < size:
                i = 0
                while i < size:
                    for j in range(i, i + h):
                        x = a[r, j]
                        y = a[r, j + h]
                        a[r, j] = x + y
                        a[r, j + h] = x - y
                    i += 2 * h
                h *= 2
        return a

    @njit(cache=True)
    def root_coeffs_numba(table, k):  # pragma: no cover
        size = table.shape[0]
        if k == 1:
            out = np.empty((1, size), dtype=np.int64)
            for x in range(size):
                out[0, x] = 1 - 2 * table[x]
            return out
        m = 1 << (k - 1)
        out = np.zeros((m, size), dtype=np.int64)
        for x in range(size):
            a = table[x]
            if a < m:
                out[a, x] = 1
            else:
                out[a - m, x] = -1
        return out

    @njit(cache=True)
    def root_coeffs_batch_numba(tables, k):  # pragma: no cover
        b, size = tables.shape
        if k == 1:
            out = np.empty((b, 1, size), dtype=np.int64)
            for i in range(b):
                for x in range(size):
                    out[i, 0, x] = 1 - 2 * tables[i, x]
            return out
        m = 1 << (k - 1)
        out = np.zeros((b, m, size), dtype=np.int64)
        for i in range(b):
            for x in range(size):
                a = tables[i, x]
                if a < m:
                    out[i, a, x] = 1
                else:
                    out[i, a - m, x] = -1
        return out

    @njit(cache=True)
    def value_diff_counts_numba(table, q):  # pragma: no cover
        size = table.shape[0]
        out = np.zeros((size, q), dtype=np.int64)
        for z in range(size):
            for t in range(size):
                d = (table[t] - table[t ^ z]) % q
                out[z, d] += 1
        return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:
    BACKEND = "numba"

    def fwht_rows(a: np.ndarray) -> np.ndarray:
        return fwht_rows_numba(np.ascontiguousarray(a))

    def root_coeffs(table: np.ndarray, k: int) -> np.ndarray:
        return root_coeffs_numba(np.ascontiguousarray(table, dtype=np.int64), k)

    def root_coeffs_batch(tables: np.ndarray, k: int) -> np.ndarray:
        return root_coeffs_batch_numba(np.ascontiguousarray(tables, dtype=np.int64), k)

    def value_diff_counts(table: np.ndarray, q: int) -> np.ndarray:
        return value_diff_counts_numba(np.ascontiguousarray(table, dtype=np.int64), q)

else:
    BACKEND = "numpy"
    fwht_rows = fwht_rows_numpy
    root_coeffs = root_coeffs_numpy
    root_coeffs_batch = root_coeffs_batch_numpy
    value_diff_counts = value_diff_counts_numpy


def fwht_vector(v: np.ndarray) -> np.ndarray:
    """Walsh-Hadamard transform of a single int64 vector (copies input)."""
    a = np.array(v, dtype=np.int64).reshape(1, -1)
    return fwht_rows(a)[0]


def warmup() -> None:
    """Trigger jit compilation so timed paths run at full speed."""
    a = np.arange(8, dtype=np.int64).reshape(2, 4)
    fwht_rows(a.copy())
    t = np.array([0, 1, 2, 3], dtype=np.int64)
    root_coeffs(t, 2)
    root_coeffs_batch(t.reshape(1, 4), 2)
    value_diff_counts(t, 4)
