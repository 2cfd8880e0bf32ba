"""Walsh-Hadamard transforms over Z_{2^k}-valued functions, exactly.

The transform of f: V_n -> Z_q is H(u) = sum_x zeta^f(x) * (-1)^(u.x)
with zeta = exp(2*pi*i/q).  Values live in Z[zeta] and are computed in
the exact power basis (see cyclotomic), so flatness predicates are
integer statements with no tolerances.  Spectra are indexed by enc on
both x and u; since u.x is symmetric in the two bit orders, the usual
in-place butterfly network computes exactly this indexing.

Two independent routes exist: gwht_naive evaluates the defining sum via
a dense character-sign matrix, gwht_fast runs size-2 butterflies on the
root-coefficient rows.  They share only the scalar root-of-unity
definition and must agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np

from . import _kernels
from .core import (
    BooleanFunction,
    CapExceeded,
    DimensionMismatch,
    GeneralizedBooleanFunction,
    SpectrumDecodingError,
)
from .cyclotomic import CyclotomicInteger, basis_len

NAIVE_CAP = 12

Vertex = Union[int, Sequence[int]]


def as_index(x: Vertex, n: int) -> int:
    """Accept a vertex as an enc index or a bit vector of length n."""
    if isinstance(x, (int, np.integer)):
        v = int(x)
        if not 0 <= v < (1 << n):
            raise DimensionMismatch(f"vertex {v} out of range for n={n}")
        return v
    if len(x) != n:
        raise DimensionMismatch(f"expected {n} bits, got {len(x)}")
    v = 0
    for b in x:
        v = (v << 1) | (int(b) & 1)
    return v


def _conj_columns(coeffs: np.ndarray) -> np.ndarray:
    """Columnwise conjugate of coefficient rows (zeta -> zeta**-1)."""
    m = coeffs.shape[1]
    if m == 1:
        return coeffs
    out = np.empty_like(coeffs)
    out[:, 0] = coeffs[:, 0]
    out[:, 1:] = -coeffs[:, :0:-1]
    return out


def _norm_sq_rows(coeffs: np.ndarray) -> np.ndarray:
    """Per-row coefficients of x * conj(x); shape preserved."""
    m = coeffs.shape[1]
    conj = _conj_columns(coeffs)
    acc = np.zeros_like(coeffs)
    for i in range(m):
        a = coeffs[:, i]
        for j in range(m):
            d = i + j
            if d < m:
                acc[:, d] += a * conj[:, j]
            else:
                acc[:, d - m] -= a * conj[:, j]
    return acc


def _exact_column_dot(a: np.ndarray, b: np.ndarray, chunk: int = 1 << 16) -> int:
    """Exact sum(a*b) as a Python int, chunked to stay inside int64."""
    total = 0
    for lo in range(0, a.shape[0], chunk):
        total += int(np.dot(a[lo : lo + chunk], b[lo : lo + chunk]))
    return total


class Spectrum:
    """The 2**n transform values of one function, as exact coefficients.

    ``coeffs[u]`` holds the power-basis coefficients of H(u).  The
    Parseval identity sum_u |H(u)|^2 = 2**(2n) is verified exactly on
    construction; failure means the coefficients do not come from a
    transform and is reported as an error.
    """

    __slots__ = ("n", "k", "coeffs")

    def __init__(self, n: int, k: int, coeffs: np.ndarray, check: bool = True):
        m = basis_len(k)
        arr = np.asarray(coeffs, dtype=np.int64)
        if arr.shape != (1 << n, m):
            raise DimensionMismatch(
                f"coefficient matrix must be ({1 << n}, {m}), got {arr.shape}"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coeffs", arr)
        if check:
            self._check_parseval()

    def __setattr__(self, name, value):
        raise AttributeError("Spectrum is immutable")

    def _check_parseval(self) -> None:
        m = self.coeffs.shape[1]
        conj = _conj_columns(self.coeffs)
        total = [0] * m
        for i in range(m):
            for j in range(m):
                s = _exact_column_dot(self.coeffs[:, i], conj[:, j])
                d = i + j
                if d < m:
                    total[d] += s
                else:
                    total[d - m] -= s
        expected = 1 << (2 * self.n)
        if total[0] != expected or any(total[1:]):
            raise SpectrumDecodingError(
                f"Parseval violated: sum of norm squares is {total}, "
                f"expected {expected}"
            )

    def value(self, u: Vertex) -> CyclotomicInteger:
        return CyclotomicInteger(self.k, self.coeffs[as_index(u, self.n)])

    @property
    def values(self) -> tuple:
        return tuple(CyclotomicInteger(self.k, row) for row in self.coeffs)

    def norm_squared_rows(self) -> np.ndarray:
        return _norm_sq_rows(self.coeffs)

    def norms_squared(self) -> List[Optional[int]]:
        """Per-u |H(u)|^2 as rational integers, None where not rational."""
        rows = self.norm_squared_rows()
        out: List[Optional[int]] = []
        for row in rows:
            out.append(int(row[0]) if not row[1:].any() else None)
        return out

    def __eq__(self, other):
        if not isinstance(other, Spectrum):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.n, self.k, self.coeffs.tobytes()))

    def to_complex(self) -> np.ndarray:
        q = 1 << self.k
        m = self.coeffs.shape[1]
        basis = np.exp(2j * np.pi * np.arange(m) / q)
        return self.coeffs @ basis


def _popcount_matrix_signs(n: int) -> np.ndarray:
    """(-1)**popcount(u & x) as an int8 matrix, u rows, x columns."""
    idx = np.arange(1 << n, dtype=np.uint32)
    pc = np.bitwise_count(idx[:, None] & idx[None, :])
    return np.where(pc & 1, -1, 1).astype(np.int8)


def gwht_naive(f: GeneralizedBooleanFunction, cap: int = NAIVE_CAP) -> Spectrum:
    """Transform by the defining double sum; O(4^n) work.

    Builds the root encoding from scalar cyclotomic roots and multiplies
    by the dense character-sign matrix, sharing nothing with the
    butterfly route.
    """
    if f.n > cap:
        raise CapExceeded(f"naive transform capped at n <= {cap}")
    m = basis_len(f.k)
    root_rows = np.array(
        [CyclotomicInteger.root(a, f.k).coeffs for a in range(f.q)], dtype=np.int64
    )
    encoded = root_rows[f.table]  # (2**n, m)
    signs = _popcount_matrix_signs(f.n).astype(np.int64)
    coeffs = signs @ encoded
    return Spectrum(f.n, f.k, coeffs)


def gwht_fast(f: GeneralizedBooleanFunction) -> Spectrum:
    """Transform by in-place butterflies on the root rows; O(n 2^n) work."""
    rows = _kernels.root_coeffs(f.table, f.k)  # (m, 2**n)
    _kernels.fwht_rows(rows)
    return Spectrum(f.n, f.k, rows.T)


def _inverse_root_rows(s: Spectrum) -> np.ndarray:
    """Inverse transform as coefficient rows (2**n, m), exactly."""
    rows = np.array(s.coeffs.T, dtype=np.int64, order="C")
    _kernels.fwht_rows(rows)
    size = 1 << s.n
    if np.any(rows % size):
        raise SpectrumDecodingError("inverse transform not divisible by 2**n")
    rows //= size
    return rows.T


def gwht_inverse(s: Spectrum) -> List[CyclotomicInteger]:
    """Recover the root vector zeta^f(x) from a spectrum.

    Errors if the inverse transform is not divisible by 2**n or if any
    recovered entry is not a q-th root of unity: both signal that the
    coefficients do not describe a function's spectrum.
    """
    return [CyclotomicInteger(s.k, row) for row in _inverse_root_rows(s)]


def decode_root(x: CyclotomicInteger) -> int:
    """The exponent a with zeta**a == x; error if x is not a root of unity."""
    nz = [(j, c) for j, c in enumerate(x.coeffs) if c]
    if len(nz) != 1 or nz[0][1] not in (1, -1):
        raise SpectrumDecodingError(f"{x!r} is not a power of zeta")
    j, c = nz[0]
    m = len(x.coeffs)
    if x.k == 1:
        return 0 if c == 1 else 1
    return j if c == 1 else j + m


def spectrum_to_function(s: Spectrum) -> GeneralizedBooleanFunction:
    """Full inverse: spectrum -> truth table, via the root decoder."""
    rows = _inverse_root_rows(s)
    m = rows.shape[1]
    nonzero = rows != 0
    single = nonzero.sum(axis=1) == 1
    pos = np.argmax(nonzero, axis=1)
    vals = rows[np.arange(rows.shape[0]), pos]
    if not bool((single & np.isin(vals, (1, -1))).all()):
        bad = int(np.nonzero(~(single & np.isin(vals, (1, -1))))[0][0])
        raise SpectrumDecodingError(
            f"inverse entry at x={bad} is not a power of zeta"
        )
    table = pos + np.where(vals < 0, m, 0)
    if s.k == 1:
        table = (vals < 0).astype(np.int64)
    return GeneralizedBooleanFunction(s.n, s.k, table)


def wht(g: BooleanFunction) -> np.ndarray:
    """Classical transform W(u) = sum_x (-1)^(g(x) + u.x), as int64."""
    return _kernels.fwht_vector(1 - 2 * g.table.astype(np.int64))


def is_bent(g: BooleanFunction) -> bool:
    """True iff W(u)**2 == 2**n for every u (possible only for even n)."""
    if g.n % 2:
        return False
    w = wht(g)
    return bool(np.all(w * w == 1 << g.n))


@dataclass(frozen=True)
class GbentVerdict:
    ok: bool
    witness_u: Optional[int] = None
    witness_norm_squared: Optional[CyclotomicInteger] = None

    def __bool__(self) -> bool:
        return self.ok


def is_gbent(f: GeneralizedBooleanFunction) -> GbentVerdict:
    """Flat-spectrum test: |H(u)|^2 == 2**n exactly for all u.

    On failure carries the first violating u (enc order) and its exact
    norm square.
    """
    s = gwht_fast(f)
    return gbent_verdict_of_spectrum(s)


def gbent_verdict_of_spectrum(s: Spectrum) -> GbentVerdict:
    rows = s.norm_squared_rows()
    target = 1 << s.n
    ok = (rows[:, 0] == target) & ~rows[:, 1:].any(axis=1)
    if bool(ok.all()):
        return GbentVerdict(True)
    u = int(np.nonzero(~ok)[0][0])
    return GbentVerdict(False, u, CyclotomicInteger(s.k, rows[u]))


# ---------------------------------------------------------------------------
# correlations
# ---------------------------------------------------------------------------

def _counts_to_cyclotomic(counts: np.ndarray, k: int) -> CyclotomicInteger:
    """sum_w counts[w] * zeta**w reduced to the power basis."""
    m = basis_len(k)
    if k == 1:
        return CyclotomicInteger(1, (int(counts[0]) - int(counts[1]),))
    return CyclotomicInteger(k, counts[:m].astype(object) - counts[m:].astype(object))


def crosscorrelation(
    f: GeneralizedBooleanFunction, g: GeneralizedBooleanFunction, z: Vertex
) -> CyclotomicInteger:
    """C(z) = sum_x zeta^(f(x) - g(x XOR z)), by direct summation."""
    if (f.n, f.k) != (g.n, g.k):
        raise DimensionMismatch("crosscorrelation needs matching n and k")
    zi = as_index(z, f.n)
    idx = np.arange(1 << f.n)
    d = (f.table.astype(np.int64) - g.table.astype(np.int64)[idx ^ zi]) % f.q
    counts = np.bincount(d, minlength=f.q)
    return _counts_to_cyclotomic(counts, f.k)


def autocorrelation(f: GeneralizedBooleanFunction, z: Vertex) -> CyclotomicInteger:
    return crosscorrelation(f, f, z)


def crosscorrelation_via_spectrum(
    f: GeneralizedBooleanFunction, g: GeneralizedBooleanFunction, z: Vertex
) -> CyclotomicInteger:
    """C(z) = 2**-n sum_x H_f(x) * conj(H_g(x)) * (-1)^(z.x), exactly.

    The division by 2**n must be exact in every coefficient; a remainder
    signals an arithmetic bug and aborts.
    """
    if (f.n, f.k) != (g.n, g.k):
        raise DimensionMismatch("crosscorrelation needs matching n and k")
    zi = as_index(z, f.n)
    hf = gwht_fast(f)
    hg = gwht_fast(g)
    total = CyclotomicInteger.zero(f.k)
    for x in range(1 << f.n):
        term = hf.value(x) * hg.value(x).conjugate()
        if (zi & x).bit_count() & 1:
            total = total - term
        else:
            total = total + term
    size = 1 << f.n
    if any(c % size for c in total.coeffs):
        raise SpectrumDecodingError(
            "spectral crosscorrelation not divisible by 2**n"
        )
    return CyclotomicInteger(f.k, (c // size for c in total.coeffs))


@dataclass(frozen=True)
class CrosscorrelationIdentityReport:
    inverse_ok: bool
    forward_ok: bool

    def __bool__(self) -> bool:
        return self.inverse_ok and self.forward_ok


def verify_crosscorrelation_identities(
    f: GeneralizedBooleanFunction, g: GeneralizedBooleanFunction
) -> CrosscorrelationIdentityReport:
    """Check both spectral crosscorrelation identities at every point.

    inverse: C(z) == 2**-n sum_x H_f(x) conj(H_g(x)) (-1)^(z.x)
    forward: sum_u C(u) (-1)^(u.x) == H_f(x) conj(H_g(x))

    The forward identity carries no 2**-n factor; with one, it is
    inconsistent with the inverse identity (substituting one into the
    other must give the identity map).
    """
    if (f.n, f.k) != (g.n, g.k):
        raise DimensionMismatch("identity check needs matching n and k")
    size = 1 << f.n
    direct = [crosscorrelation(f, g, z) for z in range(size)]
    hf = gwht_fast(f)
    hg = gwht_fast(g)
    products = [hf.value(x) * hg.value(x).conjugate() for x in range(size)]

    inverse_ok = all(
        crosscorrelation_via_spectrum(f, g, z) == direct[z] for z in range(size)
    )

    forward_ok = True
    for x in range(size):
        acc = CyclotomicInteger.zero(f.k)
        for u in range(size):
            if (u & x).bit_count() & 1:
                acc = acc - direct[u]
            else:
                acc = acc + direct[u]
        if acc != products[x]:
            forward_ok = False
            break
    return CrosscorrelationIdentityReport(inverse_ok, forward_ok)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def spectrum_to_json(s: Spectrum) -> dict:
    verdict = gbent_verdict_of_spectrum(s)
    return {
        "schema_version": 1,
        "n": s.n,
        "k": s.k,
        "values": [{"coeffs": row.tolist()} for row in s.coeffs],
        "norms": s.norms_squared(),
        "gbent": verdict.ok,
    }
