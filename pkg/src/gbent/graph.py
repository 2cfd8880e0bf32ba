"""Edge-weighted Cayley graphs and their regularity checkers.

The Cayley graph of f: V_n -> Z_q has vertex set V_n; the edge {a, b}
carries additive weight f(a XOR b) (multiplicatively zeta^f(a XOR b)),
and the loop at each vertex carries f(0).  Every checker here works on
the 2**n truth table directly: by translation invariance any pair
statistic depends only on z = a XOR b, so scans run over z != 0 rather
than over pairs, and witnesses are reported with the smallest such z in
enc order regardless of how the scan is executed.

Neighbor counting supports two conventions:

* ``all-vertices``: the common-neighbor count ranges over every c in
  V_n (endpoints included; their edges to themselves are the loops).
* ``exclude-endpoints``: c is restricted to proper neighbors,
  c not in {a, b}.

The two agree whenever f(0) does not lie in the weight set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from . import _kernels
from .core import (
    BooleanFunction,
    CapExceeded,
    GbentError,
    GeneralizedBooleanFunction,
    complement_function,
    dec,
)
from .cyclotomic import CyclotomicInteger, basis_len
from .transform import Spectrum, Vertex, as_index, gwht_fast

ALL_VERTICES = "all-vertices"
EXCLUDE_ENDPOINTS = "exclude-endpoints"
CONVENTIONS = (ALL_VERTICES, EXCLUDE_ENDPOINTS)

MATRIX_CAP = 12
EXPORT_CAP = 8
SCAN_CAP = 20  # keeps the squared-transform counting trick inside int64


def _check_convention(convention: str) -> str:
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    return convention


def _weight_set(values: Iterable[int], q: int) -> FrozenSet[int]:
    s = frozenset(int(v) for v in values)
    if any(v < 0 or v >= q for v in s):
        raise ValueError(f"weight set {sorted(s)} not contained in 0..{q - 1}")
    return s


def _indicator(f: GeneralizedBooleanFunction, ws: FrozenSet[int]) -> np.ndarray:
    lut = np.zeros(f.q, dtype=np.int64)
    lut[list(ws)] = 1
    return lut[f.table]


# ---------------------------------------------------------------------------
# weighted regularity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightedRegularity:
    """Parameters (v; r_0, ..., r_{q-1}) plus the loop weight f(0).

    r_j counts t != 0 with f(t) = j, so sum r_j = v - 1; the loop weight
    is bookkept separately.
    """

    v: int
    r: Tuple[int, ...]
    loop_weight: int

    def r_of(self, ws: Iterable[int]) -> int:
        return sum(self.r[j] for j in set(ws))


def weighted_regularity(f: GeneralizedBooleanFunction) -> WeightedRegularity:
    """Counts r_j over t != 0, verified identical from every vertex."""
    counts = np.bincount(f.table[1:], minlength=f.q)
    size = 1 << f.n
    idx = np.arange(size)
    # translation check: every vertex must see the same weight histogram
    sample = range(size) if f.n <= 10 else range(min(size, 64))
    for a in sample:
        seen = np.bincount(np.delete(f.table[idx ^ a], a), minlength=f.q)
        if not np.array_equal(seen, counts):
            raise GbentError("translation invariance violated (internal error)")
    return WeightedRegularity(size, tuple(int(c) for c in counts), int(f.table[0]))


def weighted_regularity_of_matrix(w: np.ndarray):
    """Check an explicit symmetric weight matrix for weighted regularity.

    Returns (True, counts) when every vertex has the same off-diagonal
    weight histogram, else (False, (a, b)) with the first differing pair
    of vertices.  This is the general-graph check; Cayley matrices always
    pass, and a mutated one must fail.
    """
    w = np.asarray(w)
    v = w.shape[0]
    ref = None
    for a in range(v):
        row = np.delete(w[a], a)
        counts = np.bincount(row, minlength=int(w.max()) + 1)
        if ref is None:
            ref = counts
            first = a
        elif not np.array_equal(counts, ref):
            return False, (first, a)
    return True, tuple(int(c) for c in ref)


# ---------------------------------------------------------------------------
# adjacency matrices
# ---------------------------------------------------------------------------

def _xor_table_matrix(f: GeneralizedBooleanFunction, cap: int) -> np.ndarray:
    if f.n > cap:
        raise CapExceeded(f"matrix materialization capped at n <= {cap}")
    idx = np.arange(1 << f.n)
    return f.table[idx[:, None] ^ idx[None, :]]


def adjacency_matrix(
    f: GeneralizedBooleanFunction, mode: str = "additive", cap: int = MATRIX_CAP
):
    """A[i][j] = f(i XOR j) (additive) or zeta^f(i XOR j) (multiplicative)."""
    values = _xor_table_matrix(f, cap)
    if mode == "additive":
        return values.astype(np.int64)
    if mode == "multiplicative":
        roots = [CyclotomicInteger.root(a, f.k) for a in range(f.q)]
        return [[roots[v] for v in row] for row in values]
    raise ValueError(f"unknown mode {mode!r}")


def dyadic_check_matrix(a: np.ndarray) -> bool:
    """Block-recursive symmetry: A[i][j] == A[i XOR 2**m][j XOR 2**m] for all m."""
    a = np.asarray(a)
    size = a.shape[0]
    n = size.bit_length() - 1
    idx = np.arange(size)
    for m in range(n):
        step = 1 << m
        if not np.array_equal(a, a[np.ix_(idx ^ step, idx ^ step)]):
            return False
    return True


def dyadic_check(f: GeneralizedBooleanFunction, cap: int = MATRIX_CAP) -> bool:
    return dyadic_check_matrix(_xor_table_matrix(f, cap))


# ---------------------------------------------------------------------------
# neighbor counts and strong regularity
# ---------------------------------------------------------------------------

def neighbor_count(
    f: GeneralizedBooleanFunction,
    a: Vertex,
    b: Vertex,
    y: Iterable[int],
    convention: str = ALL_VERTICES,
) -> int:
    """|N_Y(a, b)|: vertices c with both f(a XOR c) and f(b XOR c) in Y."""
    _check_convention(convention)
    ai, bi = as_index(a, f.n), as_index(b, f.n)
    if ai == bi:
        raise ValueError("neighbor_count needs two distinct vertices")
    ys = _weight_set(y, f.q)
    ind = _indicator(f, ys)
    z = ai ^ bi
    idx = np.arange(1 << f.n)
    count = int(np.dot(ind, ind[idx ^ z]))
    if convention == EXCLUDE_ENDPOINTS:
        count -= 2 * int(ind[0]) * int(ind[z])
    return count


def pair_counts_all_shifts(
    f: GeneralizedBooleanFunction, y: Iterable[int], convention: str = ALL_VERTICES
) -> np.ndarray:
    """|N_Y(a, b)| for every z = a XOR b at once, via the transform trick.

    count(z) = sum_t 1[f(t) in Y] * 1[f(t XOR z) in Y] is the dyadic
    autocorrelation of the indicator, i.e. FWHT(FWHT(y)^2) / 2**n.
    """
    _check_convention(convention)
    if f.n > SCAN_CAP:
        raise CapExceeded(f"pair scans capped at n <= {SCAN_CAP}")
    ys = _weight_set(y, f.q)
    ind = _indicator(f, ys)
    hat = _kernels.fwht_vector(ind)
    counts = _kernels.fwht_vector(hat * hat)
    size = 1 << f.n
    if np.any(counts % size):
        raise GbentError("count transform not divisible by 2**n (internal error)")
    counts //= size
    if convention == EXCLUDE_ENDPOINTS:
        counts = counts - 2 * int(ind[0]) * ind
    return counts


@dataclass(frozen=True)
class SrgWitness:
    """Two pairs in the same weight class with different neighbor counts."""

    pair_a: Tuple[int, int]
    pair_b: Tuple[int, int]
    count_a: int
    count_b: int
    weight_class: str  # "X", "X2", or "Xbar"

    def to_json_dict(self) -> dict:
        return {
            "pair_a": list(self.pair_a),
            "pair_b": list(self.pair_b),
            "count_a": self.count_a,
            "count_b": self.count_b,
            "weight_class": self.weight_class,
        }


@dataclass(frozen=True)
class SrgReport:
    """Outcome of an (X;Y) or (X1,X2;Y) strong-regularity check.

    ``e`` is the constant count over pairs whose own weight lies in X
    (or X1), ``d`` over the complementary class X-bar (or X2); a None
    constant means the class contains no pair.  ``degenerate`` flags an
    empty or complete Y-weighted edge relation.  ``bisection`` records
    whether |X| = q/2 as the plain (X;Y) definition assumes.
    """

    x: FrozenSet[int]
    y: FrozenSet[int]
    x2: Optional[FrozenSet[int]]
    convention: str
    v: int
    r: Tuple[int, ...]
    certified: bool
    e: Optional[int] = None
    d: Optional[int] = None
    degenerate: bool = False
    bisection: bool = False
    witness: Optional[SrgWitness] = None

    def __bool__(self) -> bool:
        return self.certified

    def to_json_dict(self) -> dict:
        return {
            "x": sorted(self.x),
            "y": sorted(self.y),
            "x2": sorted(self.x2) if self.x2 is not None else None,
            "convention": self.convention,
            "v": self.v,
            "r": list(self.r),
            "certified": self.certified,
            "e": self.e,
            "d": self.d,
            "degenerate": self.degenerate,
            "bisection": self.bisection,
            "witness": self.witness.to_json_dict() if self.witness else None,
        }


def _class_constancy(counts: np.ndarray, members: np.ndarray, label: str):
    """Constant count over the given z-members, or a witness."""
    zs = np.nonzero(members)[0]
    if zs.size == 0:
        return None, None
    vals = counts[zs]
    first = int(vals[0])
    bad = np.nonzero(vals != first)[0]
    if bad.size == 0:
        return first, None
    zb = int(zs[bad[0]])
    return None, SrgWitness((0, int(zs[0])), (0, zb), first, int(counts[zb]), label)


def _srg_scan(
    f: GeneralizedBooleanFunction,
    x1: FrozenSet[int],
    x2: FrozenSet[int],
    y: FrozenSet[int],
    convention: str,
    bisection: bool,
) -> SrgReport:
    counts = pair_counts_all_shifts(f, y, convention)
    wr = weighted_regularity(f)
    size = 1 << f.n
    weights = f.table.astype(np.int64)
    in_x1 = np.isin(weights, list(x1)) if x1 else np.zeros(size, bool)
    in_x2 = np.isin(weights, list(x2)) if x2 else np.zeros(size, bool)
    in_x1[0] = in_x2[0] = False  # z = 0 is not a pair

    e, wit_e = _class_constancy(counts, in_x1, "X")
    d, wit_d = _class_constancy(counts, in_x2, "X2" if bisection is False else "Xbar")
    witness = wit_e or wit_d
    r_y = wr.r_of(y)
    degenerate = r_y == 0 or r_y == size - 1
    return SrgReport(
        x=x1,
        y=y,
        x2=None if bisection else x2,
        convention=convention,
        v=size,
        r=wr.r,
        certified=witness is None,
        e=e,
        d=d,
        degenerate=degenerate,
        bisection=bisection and len(x1) == f.q // 2,
        witness=witness,
    )


def srg_check(
    f: GeneralizedBooleanFunction,
    x: Iterable[int],
    y: Iterable[int],
    convention: str = ALL_VERTICES,
) -> SrgReport:
    """(X;Y) strong regularity: N_Y counts constant on X-pairs and Xbar-pairs."""
    xs = _weight_set(x, f.q)
    ys = _weight_set(y, f.q)
    xbar = frozenset(range(f.q)) - xs
    return _srg_scan(f, xs, xbar, ys, _check_convention(convention), bisection=True)


def srg_check_generalized(
    f: GeneralizedBooleanFunction,
    x1: Iterable[int],
    x2: Iterable[int],
    y: Iterable[int],
    convention: str = ALL_VERTICES,
) -> SrgReport:
    """(X1,X2;Y) variant: pairs with weight in neither class are unconstrained."""
    s1 = _weight_set(x1, f.q)
    s2 = _weight_set(x2, f.q)
    if s1 & s2:
        raise ValueError(f"X1 and X2 overlap: {sorted(s1 & s2)}")
    ys = _weight_set(y, f.q)
    return _srg_scan(f, s1, s2, ys, _check_convention(convention), bisection=False)


# ---------------------------------------------------------------------------
# classical (q = 2) strong regularity
# ---------------------------------------------------------------------------

def _f2_span_basis(vectors: List[int]) -> List[int]:
    basis: List[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


@dataclass(frozen=True)
class ClassicalSrgReport:
    """Common-neighbor constancy of the q=2 Cayley graph, per component.

    When the support of g does not span V_n the graph splits into
    2**(n - s) isomorphic components; the check runs on the component of
    the origin.  A complete component has no nonadjacent pairs: d is then
    vacuous, reported equal to e with the degenerate flag set.
    """

    certified: bool
    v: int
    r: int
    e: Optional[int]
    d: Optional[int]
    degenerate: bool
    connected: bool
    n_components: int
    loops_dropped: bool
    distinct_eigenvalues: Optional[int] = None
    eigen_consistent: Optional[bool] = None
    identity_ok: Optional[bool] = None
    reason: Optional[str] = None
    witness: Optional[SrgWitness] = None

    def __bool__(self) -> bool:
        return self.certified

    def params(self) -> Tuple[int, int, Optional[int], Optional[int]]:
        return (self.v, self.r, self.e, self.d)


def classical_srg_check(g: BooleanFunction) -> ClassicalSrgReport:
    loops_dropped = bool(g.table[0])
    support = [z for z in range(1, 1 << g.n) if g.table[z]]
    basis = _f2_span_basis(support)
    s = len(basis)
    n_components = 1 << (g.n - s)
    connected = s == g.n

    if not support:
        return ClassicalSrgReport(
            certified=False, v=1 << g.n, r=0, e=None, d=None, degenerate=True,
            connected=False, n_components=1 << g.n, loops_dropped=loops_dropped,
            reason="empty graph",
        )

    # restrict to the component of the origin (all components are isomorphic)
    if connected:
        comp = g
    else:
        pts = np.zeros(1 << s, dtype=np.int64)
        for j, b in enumerate(basis):
            bit = ((np.arange(1 << s) >> j) & 1).astype(np.int64)
            pts ^= bit * b
        comp = BooleanFunction(s, g.table[pts])

    size = 1 << comp.n
    y = comp.table.astype(np.int64)
    y[0] = 0  # loopless convention
    hat = _kernels.fwht_vector(y)
    counts = _kernels.fwht_vector(hat * hat)
    counts //= size
    r = int(y.sum())

    adj = y.astype(bool).copy()
    nonadj = ~adj
    adj[0] = nonadj[0] = False
    e, wit_e = _class_constancy(counts, adj, "adjacent")
    d, wit_d = _class_constancy(counts, nonadj, "nonadjacent")
    witness = wit_e or wit_d
    degenerate = d is None or e is None
    certified = witness is None
    if certified and d is None:
        d = e
    if certified and e is None:
        e = d

    distinct = None
    eigen_consistent = None
    identity_ok = None
    if certified:
        eigs = sorted(set(int(v) for v in hat))  # graph eigenvalues
        distinct = len(eigs)
        if distinct == 3:
            others = [v for v in eigs if v != r]
            l1, l2 = others
            eigen_consistent = (
                e == r + l1 * l2 + l1 + l2 and d == r + l1 * l2
            )
        identity_ok = r * (r - d - 1) == e * (size - r - 1)
    return ClassicalSrgReport(
        certified=certified, v=size, r=r, e=e, d=d, degenerate=degenerate,
        connected=connected, n_components=n_components,
        loops_dropped=loops_dropped, distinct_eigenvalues=distinct,
        eigen_consistent=eigen_consistent, identity_ok=identity_ok,
        witness=witness,
    )


def counting_identity_check(report: SrgReport, wr: WeightedRegularity) -> bool:
    """r_X (r_X - e_X - 1) == d_X (v - r_X - 1) for certified (X;X) reports.

    Applies to exclude-endpoints certificates with Y = X (the count used
    in the double-counting argument is over proper neighbors).  A vacuous
    class constant always multiplies by zero, so None reads as 0.
    """
    if report.x2 is not None or report.y != report.x:
        raise ValueError("counting identity applies to (X;X) reports only")
    if report.convention != EXCLUDE_ENDPOINTS:
        raise ValueError("counting identity needs the exclude-endpoints convention")
    if not report.certified:
        raise ValueError("counting identity needs a certified report")
    r_x = wr.r_of(report.x)
    e = report.e or 0
    d = report.d or 0
    return r_x * (r_x - e - 1) == d * (wr.v - r_x - 1)


# ---------------------------------------------------------------------------
# complement
# ---------------------------------------------------------------------------

def complement_parameter_reversal(f: GeneralizedBooleanFunction):
    """(r, r_bar, ok): weight counts of f and its complement, and whether
    r_bar[q-1-j] == r[j] holds (it must)."""
    wr = weighted_regularity(f)
    wrc = weighted_regularity(complement_function(f))
    ok = all(wrc.r[f.q - 1 - j] == wr.r[j] for j in range(f.q))
    return wr, wrc, ok


@dataclass(frozen=True)
class ComplementTheoremReport:
    """Parameter transport to the complement graph.

    Applies when q-1-X is X or Xbar and q-1-Y = Y.  The complement is
    checked against the same bisection X: a certified (X;Y) report
    transports with (e, d) preserved when q-1-X = X and swapped when
    q-1-X = Xbar, and the weight counts reverse as r_bar[q-1-j] = r[j].
    Since an (X;Y) certificate and an (Xbar;Y) certificate are the same
    fact with the two constants relabeled, this is the (q-1-X;Y)
    statement read back through the original labels.
    """

    applicable: bool
    case: Optional[str]  # "fixed" | "swapped"
    base: Optional[SrgReport]
    comp: Optional[SrgReport]
    ok: Optional[bool]

    def __bool__(self) -> bool:
        return self.ok is not False


def complement_theorem_check(
    f: GeneralizedBooleanFunction,
    x: Iterable[int],
    y: Iterable[int],
    convention: str = ALL_VERTICES,
) -> ComplementTheoremReport:
    q = f.q
    xs = _weight_set(x, q)
    ys = _weight_set(y, q)
    x_ref = frozenset(q - 1 - v for v in xs)
    y_ref = frozenset(q - 1 - v for v in ys)
    xbar = frozenset(range(q)) - xs
    if y_ref != ys or x_ref not in (xs, xbar):
        return ComplementTheoremReport(False, None, None, None, None)
    case = "fixed" if x_ref == xs else "swapped"
    base = srg_check(f, xs, ys, convention)
    if not base.certified:
        return ComplementTheoremReport(True, case, base, None, None)
    comp = srg_check(complement_function(f), xs, ys, convention)
    ok = comp.certified
    if ok:
        ok = all(comp.r[q - 1 - j] == base.r[j] for j in range(q))
    if ok:
        if case == "fixed":
            ok = comp.e == base.e and comp.d == base.d
        else:
            ok = comp.e == base.d and comp.d == base.e
    return ComplementTheoremReport(True, case, base, comp, ok)


# ---------------------------------------------------------------------------
# spectra, Butson, strength
# ---------------------------------------------------------------------------

def spectrum_via_wht(f: GeneralizedBooleanFunction) -> Spectrum:
    """Graph eigenvalues: the multiset {H(u)} is Spec of the multiplicative
    adjacency matrix, with eigenvector the character (-1)^(u.j)."""
    return gwht_fast(f)


def eigen_verify(
    f: GeneralizedBooleanFunction,
    exact: bool = True,
    numeric: bool = True,
    exact_cap: int = 8,
    numeric_cap: int = 8,
    tol: float = 1e-9,
) -> bool:
    """Verify eigenvalues of the multiplicative adjacency matrix.

    exact: for every u, multiply the materialized matrix by the character
    vector in cyclotomic arithmetic and compare with H(u) times the
    character, entry for entry.  numeric: compare the multiset from a
    complex eigendecomposition with the transform values within tol.
    """
    spec = gwht_fast(f)
    values = _xor_table_matrix(f, max(exact_cap, numeric_cap))
    size = 1 << f.n
    ok = True
    if exact:
        if f.n > exact_cap:
            raise CapExceeded(f"exact eigenvector check capped at n <= {exact_cap}")
        m = basis_len(f.k)
        root_rows = np.array(
            [CyclotomicInteger.root(a, f.k).coeffs for a in range(f.q)],
            dtype=np.int64,
        )
        tensor = root_rows[values]  # (size, size, m)
        idx = np.arange(size, dtype=np.uint32)
        for u in range(size):
            chi = np.where(
                np.bitwise_count(np.uint32(u) & idx) & 1, -1, 1
            ).astype(np.int64)
            product = np.einsum("ijm,j->im", tensor, chi)
            expected = chi[:, None] * spec.coeffs[u][None, :]
            if not np.array_equal(product, expected):
                return False
    if numeric and f.n <= numeric_cap:
        q = f.q
        a = np.exp(2j * np.pi * values.astype(np.float64) / q)
        eigs = np.linalg.eigvals(a)
        ok = ok and _multisets_close(eigs, spec.to_complex(), tol)
    return ok


def _multisets_close(got: np.ndarray, want: np.ndarray, tol: float) -> bool:
    """Greedy nearest-neighbor multiset comparison (ties in a sort key
    would misalign nearly-equal values)."""
    if got.shape != want.shape:
        return False
    remaining = got.copy()
    alive = np.ones(remaining.shape[0], dtype=bool)
    for w in want:
        idx = np.where(alive, np.abs(remaining - w), np.inf).argmin()
        if abs(remaining[idx] - w) > tol:
            return False
        alive[idx] = False
    return True


@dataclass(frozen=True)
class ButsonVerdict:
    """Is the multiplicative adjacency matrix a q-Butson-Hadamard matrix?

    A . conj(A) must be 2**n times the identity; a failing off-diagonal
    entry (a, b) is returned with its exact value.
    """

    ok: bool
    method: str
    witness_entry: Optional[Tuple[int, int]] = None
    witness_value: Optional[CyclotomicInteger] = None

    def __bool__(self) -> bool:
        return self.ok


def butson_check(
    f: GeneralizedBooleanFunction, direct_cap: int = 6, autocorr_cap: int = 14
) -> ButsonVerdict:
    """Butson-Hadamard test of the multiplicative adjacency matrix.

    Under direct_cap the full matrix product is evaluated entry by entry
    in exact arithmetic; above it, the equivalent per-offset sums
    sum_c zeta^(f(a+c) - f(b+c)) are checked for each z = a XOR b (the
    entry depends only on z).  Must agree with the flat-spectrum test on
    every input.
    """
    size = 1 << f.n
    q = f.q
    m = basis_len(f.k)
    target0 = size  # diagonal value

    def entry_from_counts(counts_row: np.ndarray) -> CyclotomicInteger:
        if f.k == 1:
            return CyclotomicInteger(1, (int(counts_row[0]) - int(counts_row[1]),))
        return CyclotomicInteger(
            f.k, [int(counts_row[j]) - int(counts_row[j + m]) for j in range(m)]
        )

    if f.n <= direct_cap:
        values = _xor_table_matrix(f, direct_cap).astype(np.int64)
        offsets = (np.arange(size) * q)[:, None]
        for a in range(size):
            diffs = (values[a][None, :] - values) % q
            counts = np.bincount(
                (diffs + offsets).ravel(), minlength=size * q
            ).reshape(size, q)
            deltas = counts[:, :m] - counts[:, m:] if f.k > 1 else None
            for b in range(size):
                if f.k == 1:
                    val = int(counts[b, 0]) - int(counts[b, 1])
                    good = val == (target0 if a == b else 0)
                else:
                    row = deltas[b]
                    if a == b:
                        good = row[0] == target0 and not row[1:].any()
                    else:
                        good = not row.any()
                if not good:
                    return ButsonVerdict(
                        False, "matrix-product", (a, b),
                        entry_from_counts(counts[b]),
                    )
        return ButsonVerdict(True, "matrix-product")

    if f.n > autocorr_cap:
        raise CapExceeded(
            f"butson check capped at n <= {autocorr_cap} (offset route)"
        )
    counts = _kernels.value_diff_counts(f.table, q)
    if f.k == 1:
        deltas = (counts[:, 0] - counts[:, 1]).reshape(size, 1)
    else:
        deltas = counts[:, :m] - counts[:, m:]
    bad = np.nonzero(np.any(deltas != 0, axis=1) & (np.arange(size) != 0))[0]
    if bad.size:
        z = int(bad[0])
        return ButsonVerdict(
            False, "autocorrelation", (0, z), entry_from_counts(counts[z])
        )
    return ButsonVerdict(True, "autocorrelation")


def strength(f: GeneralizedBooleanFunction, a: Vertex = 0) -> int:
    """Sum of additive weights of edges at a vertex: always sum_t f(t)."""
    ai = as_index(a, f.n)
    idx = np.arange(1 << f.n)
    total = int(f.table[idx ^ ai].astype(np.int64).sum())
    if total != int(f.table.astype(np.int64).sum()):
        raise GbentError("vertex strength depends on the vertex (internal error)")
    return total


# ---------------------------------------------------------------------------
# local strong regularity on the modified graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalSrgReport:
    """Per-weight local regularity of the loopless modified graph.

    Adjacency means f(a XOR b) != 0; the weight set W holds the nonzero
    weights that occur.  k[a] is the degree in weight a;
    lam[(a1, a2, a3)] the common-count for pairs adjacent via weight a3;
    mu[(a1, a2)] for nonadjacent pairs.  mu is vacuous when the graph is
    complete in its weight classes.
    """

    certified: bool
    v: int
    weight_set: Tuple[int, ...]
    k: Dict[int, int]
    lam: Dict[Tuple[int, int, int], int]
    mu: Dict[Tuple[int, int], int]
    mu_vacuous: bool
    empty: bool = False
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.certified


def local_srg_check(f: GeneralizedBooleanFunction) -> LocalSrgReport:
    if f.n > MATRIX_CAP:
        raise CapExceeded(f"local srg check capped at n <= {MATRIX_CAP}")
    size = 1 << f.n
    wr = weighted_regularity(f)
    w_set = tuple(sorted({int(v) for v in f.table[1:] if v != 0}))
    if not w_set:
        return LocalSrgReport(
            certified=True, v=size, weight_set=(), k={}, lam={}, mu={},
            mu_vacuous=True, empty=True,
        )

    # degrees: |N_a(u)| = r_a for every u, verified literally
    idx = np.arange(size)
    k_params = {a: wr.r[a] for a in w_set}
    for u in range(size):
        row = f.table[idx ^ u]
        counts = np.bincount(np.delete(row, u), minlength=f.q)
        for a in w_set:
            if int(counts[a]) != k_params[a]:
                return LocalSrgReport(
                    certified=False, v=size, weight_set=w_set, k={}, lam={},
                    mu={}, mu_vacuous=False,
                    witness={"kind": "degree", "vertex": u, "weight": a},
                )

    weights = f.table.astype(np.int64)
    nonadj = (weights == 0) & (idx != 0)
    mu_vacuous = not bool(nonadj.any())
    lam: Dict[Tuple[int, int, int], int] = {}
    mu: Dict[Tuple[int, int], int] = {}
    f0 = int(f.table[0])

    for a1 in w_set:
        y1 = (weights == a1).astype(np.int64)
        hat1 = _kernels.fwht_vector(y1)
        for a2 in w_set:
            y2 = (weights == a2).astype(np.int64)
            hat2 = _kernels.fwht_vector(y2)
            cross = _kernels.fwht_vector(hat1 * hat2)
            cross //= size
            # drop c = u1 (t = 0) and c = u2 (t = z) contributions
            adj_counts = (
                cross
                - int(f0 == a1) * y2
                - int(f0 == a2) * y1
            )
            for a3 in w_set:
                members = (weights == a3) & (idx != 0)
                const, wit = _class_constancy(adj_counts, members, "adjacent")
                if wit is not None:
                    return LocalSrgReport(
                        certified=False, v=size, weight_set=w_set, k=k_params,
                        lam=lam, mu=mu, mu_vacuous=mu_vacuous,
                        witness={
                            "kind": "lambda", "a1": a1, "a2": a2, "a3": a3,
                            "z_ref": wit.pair_a[1], "z_bad": wit.pair_b[1],
                            "count_ref": wit.count_a, "count_bad": wit.count_b,
                        },
                    )
                if const is not None:
                    lam[(a1, a2, a3)] = const
            if not mu_vacuous:
                const, wit = _class_constancy(adj_counts, nonadj, "nonadjacent")
                if wit is not None:
                    return LocalSrgReport(
                        certified=False, v=size, weight_set=w_set, k=k_params,
                        lam=lam, mu=mu, mu_vacuous=False,
                        witness={
                            "kind": "mu", "a1": a1, "a2": a2,
                            "z_ref": wit.pair_a[1], "z_bad": wit.pair_b[1],
                            "count_ref": wit.count_a, "count_bad": wit.count_b,
                        },
                    )
                mu[(a1, a2)] = const
    return LocalSrgReport(
        certified=True, v=size, weight_set=w_set, k=k_params, lam=lam, mu=mu,
        mu_vacuous=mu_vacuous,
    )


# ---------------------------------------------------------------------------
# exports
# ---------------------------------------------------------------------------

EXPORT_FORMATS = ("dot", "graphml", "json")
EXPORT_VARIANTS = ("full", "modified")


def _edges(f: GeneralizedBooleanFunction, variant: str):
    size = 1 << f.n
    for a in range(size):
        for b in range(a + 1, size):
            w = int(f.table[a ^ b])
            if variant == "modified" and w == 0:
                continue
            yield a, b, w


def export_graph(
    f: GeneralizedBooleanFunction,
    fmt: str = "dot",
    variant: str = "full",
    cap: int = EXPORT_CAP,
) -> str:
    """Deterministic DOT/GraphML/JSON rendering of the Cayley graph.

    Vertices appear in enc order; edges as (a, b), a < b, lexicographic.
    Edge attributes: weight (additive, an integer) and zeta_power (the
    exponent of the multiplicative weight zeta**w).  Loops appear only in
    the full variant and only when f(0) != 0; the modified variant drops
    all weight-0 edges.
    """
    if variant not in EXPORT_VARIANTS:
        raise ValueError(f"variant must be one of {EXPORT_VARIANTS}")
    if f.n > cap:
        raise CapExceeded(f"export capped at n <= {cap}")
    size = 1 << f.n
    f0 = int(f.table[0])
    loops = variant == "full" and f0 != 0

    if fmt == "dot":
        lines = [f"graph cayley_n{f.n}_k{f.k} {{"]
        for vtx in range(size):
            bits = "".join(str(b) for b in dec(vtx, f.n))
            lines.append(f'  v{vtx} [label="{bits}"];')
        for a, b, w in _edges(f, variant):
            lines.append(f"  v{a} -- v{b} [weight={w}, zeta_power={w}];")
        if loops:
            for vtx in range(size):
                lines.append(f"  v{vtx} -- v{vtx} [weight={f0}, zeta_power={f0}];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    if fmt == "graphml":
        lines = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
            '  <key id="label" for="node" attr.name="label" attr.type="string"/>',
            '  <key id="weight" for="edge" attr.name="weight" attr.type="int"/>',
            '  <key id="zeta_power" for="edge" attr.name="zeta_power" attr.type="int"/>',
            f'  <graph id="cayley_n{f.n}_k{f.k}" edgedefault="undirected">',
        ]
        for vtx in range(size):
            bits = "".join(str(b) for b in dec(vtx, f.n))
            lines.append(
                f'    <node id="v{vtx}"><data key="label">{bits}</data></node>'
            )
        all_edges = list(_edges(f, variant))
        if loops:
            all_edges += [(v, v, f0) for v in range(size)]
        for a, b, w in all_edges:
            lines.append(
                f'    <edge source="v{a}" target="v{b}">'
                f'<data key="weight">{w}</data>'
                f'<data key="zeta_power">{w}</data></edge>'
            )
        lines += ["  </graph>", "</graphml>"]
        return "\n".join(lines) + "\n"

    if fmt == "json":
        import json as _json

        doc = {
            "schema_version": 1,
            "kind": "cayley-graph",
            "n": f.n,
            "k": f.k,
            "variant": variant,
            "loop_weight": f0,
            "edges": [
                {"a": a, "b": b, "weight": w, "zeta_power": w}
                for a, b, w in _edges(f, variant)
            ],
        }
        return _json.dumps(doc, indent=2) + "\n"

    raise ValueError(f"unknown format {fmt!r}")


def graph_from_json(text: str) -> GeneralizedBooleanFunction:
    """Rebuild the function from an exported JSON graph (both variants)."""
    import json as _json

    doc = _json.loads(text)
    if doc.get("kind") != "cayley-graph":
        raise ValueError("not a cayley-graph JSON document")
    n, k = doc["n"], doc["k"]
    table = np.zeros(1 << n, dtype=np.int64)
    table[0] = doc["loop_weight"]
    for edge in doc["edges"]:
        z = edge["a"] ^ edge["b"]
        table[z] = edge["weight"]
    f = GeneralizedBooleanFunction(n, k, table)
    for edge in doc["edges"]:
        if int(f.table[edge["a"] ^ edge["b"]]) != edge["weight"]:
            raise ValueError("inconsistent edge weights in JSON graph")
    return f


# ---------------------------------------------------------------------------
# thin object view
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CayleyGraph:
    """View of the complete weighted graph determined by f."""

    f: GeneralizedBooleanFunction

    def weighted_regularity(self) -> WeightedRegularity:
        return weighted_regularity(self.f)

    def adjacency(self, mode: str = "additive", cap: int = MATRIX_CAP):
        return adjacency_matrix(self.f, mode, cap)

    def spectrum(self) -> Spectrum:
        return spectrum_via_wht(self.f)

    def strength(self, a: Vertex = 0) -> int:
        return strength(self.f, a)

    def complement(self) -> "CayleyGraph":
        return complement_graph(self.f)

    def export(self, fmt: str = "dot", variant: str = "full") -> str:
        return export_graph(self.f, fmt, variant)


def complement_graph(f: GeneralizedBooleanFunction) -> CayleyGraph:
    """Cayley graph of q-1-f; the weight-count reversal is verified."""
    _, _, ok = complement_parameter_reversal(f)
    if not ok:
        raise GbentError("complement parameter reversal failed (internal error)")
    return CayleyGraph(complement_function(f))
