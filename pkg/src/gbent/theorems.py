"""Executable characterizations tying flat spectra to strong regularity.

Everything here is a checker or an audit harness: the quartic (q = 4)
two-condition criterion, the digit-combination weight classes X_c and
their neighbor-count necessary condition for general q = 2**k, the
bent-set uniform regularity corollary, fixture constructions, and the
exhaustive/sampled audit that tallies every claimed equivalence and
logs exceptions with full witnesses.

The neighbor counts in these statements range over all vertices c
(endpoints included), so the audit's theorem accounting runs under the
all-vertices convention; other conventions can be tallied alongside but
carry no pass/fail semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .core import (
    BooleanFunction,
    BudgetExceeded,
    GbentError,
    GeneralizedBooleanFunction,
    components,
    from_components,
    iota,
)
from .graph import (
    ALL_VERTICES,
    CONVENTIONS,
    EXCLUDE_ENDPOINTS,
    SrgWitness,
    _class_constancy,
    pair_counts_all_shifts,
    srg_check,
)
from .transform import is_bent, is_gbent, wht

EXHAUSTIVE_BUDGET = 10**6


# ---------------------------------------------------------------------------
# digit combinations and weight classes
# ---------------------------------------------------------------------------

def f_c(f: GeneralizedBooleanFunction, c: Sequence[int]) -> BooleanFunction:
    """The Boolean combination c0*a0 XOR ... XOR c_{k-2}*a_{k-2} XOR a_{k-1}.

    Equivalently the indicator of f(x) lying in the weight class X_c^1.
    """
    if f.k < 2:
        raise ValueError("digit combinations need k >= 2")
    if len(c) != f.k - 1:
        raise ValueError(f"c must have length k-1 = {f.k - 1}, got {len(c)}")
    mask = iota(c) | (1 << (f.k - 1))
    lut = (np.bitwise_count(np.arange(f.q, dtype=np.uint32) & mask) & 1).astype(
        np.uint8
    )
    return BooleanFunction(f.n, lut[f.table])


@dataclass(frozen=True)
class WeightClassPair:
    """The bisection X_c^0, X_c^1 of Z_q selected by a digit mask (c, 1).

    v lies in X_c^1 iff c0*v0 XOR ... XOR c_{k-2}*v_{k-2} XOR v_{k-1} = 1
    on the binary digits v_j of v.  Built both by that parity rule and by
    the subset construction {iota(t) + iota(d) : t below (c,1) with odd
    weight, d below complement(c)}; the two must coincide.
    """

    c: Tuple[int, ...]
    x0: FrozenSet[int]
    x1: FrozenSet[int]


def weight_classes(c: Sequence[int], k: int) -> WeightClassPair:
    if k < 2:
        raise ValueError("weight classes need k >= 2")
    if len(c) != k - 1:
        raise ValueError(f"c must have length k-1 = {k - 1}, got {len(c)}")
    q = 1 << k
    ck_mask = iota(c) | (1 << (k - 1))

    # parity rule
    by_parity = ({v for v in range(q) if bin(v & ck_mask).count("1") % 2 == 0},
                 {v for v in range(q) if bin(v & ck_mask).count("1") % 2 == 1})

    # subset construction: disjoint digit supports make + a plain union
    cbar_mask = (~iota(c)) & ((1 << (k - 1)) - 1)
    by_subset = (set(), set())
    t = 0
    while True:  # enumerate submasks of ck_mask, 0 included
        parity = bin(t).count("1") % 2
        d = 0
        while True:
            by_subset[parity].add(t + d)
            if d == cbar_mask:
                break
            d = (d - cbar_mask) & cbar_mask
        if t == ck_mask:
            break
        t = (t - ck_mask) & ck_mask

    if by_subset[0] != by_parity[0] or by_subset[1] != by_parity[1]:
        raise GbentError("weight class constructions disagree (internal error)")
    return WeightClassPair(tuple(int(b) & 1 for b in c),
                           frozenset(by_parity[0]), frozenset(by_parity[1]))


# ---------------------------------------------------------------------------
# q = 4 characterization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gb4Condition:
    y: FrozenSet[int]
    ok: bool
    constant: Optional[int]
    witness: Optional[SrgWitness]


@dataclass(frozen=True)
class Gb4Report:
    """Both uniform neighbor-count conditions of the quartic criterion.

    cond_i: |N_{2,3}(a, b)| equal for all pairs; cond_ii: same for
    N_{1,2}.  Together they say the Cayley graph is (X; Xbar)-strongly
    regular with e = d for both X = {0,1} and X = {0,3}.
    """

    convention: str
    cond_i: Gb4Condition
    cond_ii: Gb4Condition

    @property
    def passed(self) -> bool:
        return self.cond_i.ok and self.cond_ii.ok

    def __bool__(self) -> bool:
        return self.passed


def _uniform_condition(
    f: GeneralizedBooleanFunction, y: FrozenSet[int], convention: str
) -> Gb4Condition:
    counts = pair_counts_all_shifts(f, y, convention)
    members = np.ones(1 << f.n, dtype=bool)
    members[0] = False
    const, witness = _class_constancy(counts, members, "all-pairs")
    return Gb4Condition(y, witness is None, const, witness)


def gb4_check(
    f: GeneralizedBooleanFunction, convention: str = ALL_VERTICES
) -> Gb4Report:
    if f.k != 2:
        raise ValueError("the quartic criterion needs k = 2")
    if f.n % 2:
        raise ValueError("the quartic criterion is stated for even n; n is odd")
    return Gb4Report(
        convention,
        _uniform_condition(f, frozenset({2, 3}), convention),
        _uniform_condition(f, frozenset({1, 2}), convention),
    )


def decomposition_criterion_q4(f: GeneralizedBooleanFunction) -> bool:
    """For q = 4: both a1 and a0 XOR a1 bent.  Must agree with is_gbent."""
    if f.k != 2:
        raise ValueError("the decomposition criterion needs k = 2")
    a0, a1 = components(f)
    return is_bent(a1) and is_bent(a0 ^ a1)


def constant_autocorrelation_nonbent(g: BooleanFunction) -> bool:
    """W(u)^2 constant over u != 0 without g being bent.

    Equivalently the autocorrelation of g is constant off zero.  This is
    the degenerate class that can satisfy the quartic uniform-count
    conditions without the function being gbent (constants are the
    simplest members).
    """
    w = wht(g)
    sq = w * w
    return bool(np.all(sq[1:] == sq[1])) and not is_bent(g)


# ---------------------------------------------------------------------------
# general-q necessary condition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NecessaryConditionEntry:
    c: Tuple[int, ...]
    x1: FrozenSet[int]
    uniform_ok: bool
    constant: Optional[int]
    srg_e_eq_d_ok: bool
    fc_bent: bool
    witness: Optional[SrgWitness]


@dataclass(frozen=True)
class NecessaryConditionReport:
    """Per-c uniform neighbor-count condition on the classes X_c^1.

    ``uniform_ok`` is the displayed condition (|N_{X_c^1}| equal over all
    pairs); ``srg_e_eq_d_ok`` is the (X_c^0; X_c^1)-srg-with-e=d reading,
    checked independently through the srg scanner.  ``fc_bent`` checks
    the engine behind the statement: every digit combination f_c is bent
    when f is gbent.
    """

    convention: str
    entries: Tuple[NecessaryConditionEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.uniform_ok for e in self.entries)

    @property
    def fc_all_bent(self) -> bool:
        return all(e.fc_bent for e in self.entries)

    def __bool__(self) -> bool:
        return self.passed


def necessary_condition_check(
    f: GeneralizedBooleanFunction, convention: str = ALL_VERTICES
) -> NecessaryConditionReport:
    if f.k < 2:
        raise ValueError("the necessary condition needs k >= 2")
    if f.n % 2:
        raise ValueError("the necessary condition is stated for even n; n is odd")
    entries = []
    for cm in range(1 << (f.k - 1)):
        c = tuple((cm >> j) & 1 for j in range(f.k - 1))
        pair = weight_classes(c, f.k)
        cond = _uniform_condition(f, pair.x1, convention)
        report = srg_check(f, pair.x0, pair.x1, convention)
        e_eq_d = report.certified and (
            report.e == report.d or report.e is None or report.d is None
        )
        entries.append(
            NecessaryConditionEntry(
                c=c,
                x1=pair.x1,
                uniform_ok=cond.ok,
                constant=cond.constant,
                srg_e_eq_d_ok=e_eq_d,
                fc_bent=is_bent(f_c(f, c)),
                witness=cond.witness,
            )
        )
    return NecessaryConditionReport(convention, tuple(entries))


# ---------------------------------------------------------------------------
# bent sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BentSetReport:
    """Bent-set precondition plus the six (X; Xbar) checks per pair.

    A bent set has every member bent and every pairwise XOR bent.  For
    each ordered pair (a0, a1) of members, the graph of a0 + 2*a1 must be
    (X; Xbar)-strongly regular for all six X of size 2.
    """

    bent_set_ok: bool
    non_bent_members: Tuple[int, ...]
    non_bent_pairs: Tuple[Tuple[int, int], ...]
    checks: Tuple[dict, ...]
    all_certified: Optional[bool]

    def __bool__(self) -> bool:
        return self.bent_set_ok and bool(self.all_certified)


_SIZE2_SUBSETS = tuple(
    frozenset(s) for s in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
)


def bent_set_corollary_check(
    parts: Sequence[BooleanFunction], convention: str = ALL_VERTICES
) -> BentSetReport:
    non_bent = tuple(i for i, g in enumerate(parts) if not is_bent(g))
    non_bent_pairs = tuple(
        (i, j)
        for i in range(len(parts))
        for j in range(i + 1, len(parts))
        if not is_bent(parts[i] ^ parts[j])
    )
    if non_bent or non_bent_pairs:
        return BentSetReport(False, non_bent, non_bent_pairs, (), None)

    checks = []
    all_ok = True
    for i, a0 in enumerate(parts):
        for j, a1 in enumerate(parts):
            f = from_components([a0, a1])
            for x in _SIZE2_SUBSETS:
                rep = srg_check(f, x, frozenset(range(4)) - x, convention)
                checks.append(
                    {
                        "a0": i,
                        "a1": j,
                        "x": sorted(x),
                        "certified": rep.certified,
                        "e": rep.e,
                        "d": rep.d,
                    }
                )
                all_ok = all_ok and rep.certified
    return BentSetReport(True, (), (), tuple(checks), all_ok)


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

def maiorana_mcfarland(
    n: int, perm: Optional[Sequence[int]] = None, g: Optional[Sequence[int]] = None
) -> BooleanFunction:
    """Bent function x . perm(y) XOR g(y) on n = 2m variables.

    x is the first m variables (the enc-high block), y the last m;
    perm is a permutation of 0..2**m-1 and g any function of y.
    """
    if n % 2 or n < 2:
        raise ValueError("this construction needs even n >= 2")
    m = n // 2
    size_m = 1 << m
    perm_arr = np.arange(size_m) if perm is None else np.asarray(perm, dtype=np.int64)
    if sorted(perm_arr.tolist()) != list(range(size_m)):
        raise ValueError("perm must be a permutation of 0..2**(n/2)-1")
    g_arr = np.zeros(size_m, dtype=np.int64) if g is None else np.asarray(g) & 1
    xv = np.arange(1 << n) >> m
    yv = np.arange(1 << n) & (size_m - 1)
    dots = np.bitwise_count((xv & perm_arr[yv]).astype(np.uint32)) & 1
    return BooleanFunction(n, dots ^ g_arr[yv])


def construct_gbent_q4(a1: BooleanFunction, h: BooleanFunction) -> GeneralizedBooleanFunction:
    """Assemble a flat-spectrum q=4 function from two bent ingredients.

    Takes a1 and h bent and sets a0 = h XOR a1, so that a1 and a0 XOR a1
    are both bent; the result f = a0 + 2*a1 is checked flat on
    construction.
    """
    if not is_bent(a1):
        raise ValueError("a1 is not bent")
    if not is_bent(h):
        raise ValueError("h is not bent")
    f = from_components([h ^ a1, a1])
    if not is_gbent(f):
        raise GbentError("constructed function is not gbent (internal error)")
    return f


def _fixture_bents(n: int) -> List[BooleanFunction]:
    m = n // 2
    size_m = 1 << m
    identity = list(range(size_m))
    perms = [
        identity,
        [v ^ 1 for v in identity],
        [size_m - 1 - v for v in identity],
        [(v + 1) % size_m for v in identity],
    ]
    gs = [None, [v & 1 for v in range(size_m)]]
    out = []
    for p in perms:
        for g in gs:
            out.append(maiorana_mcfarland(n, p, g))
    return out


def gbent_fixtures(n: int, k: int, count: int = 8) -> List[GeneralizedBooleanFunction]:
    """Deterministic verified-gbent functions for audits and search.

    Even n only (the ingredients are bent functions).  k = 1 yields bent
    functions; k = 2 assembles digit pairs with a1 and a0 XOR a1 bent;
    k >= 3 embeds bent functions in the top digit, optionally with a
    constant offset, which leaves the spectrum magnitudes untouched.
    """
    if n % 2 or n < 2:
        return []
    bents = _fixture_bents(n)
    out: List[GeneralizedBooleanFunction] = []
    if k == 1:
        for g in bents:
            out.append(GeneralizedBooleanFunction(n, 1, g.table))
            if len(out) >= count:
                break
    elif k == 2:
        for a1 in bents:
            for h in bents:
                out.append(construct_gbent_q4(a1, h))
                if len(out) >= count:
                    return out
    else:
        for g in bents:
            for c in (0, 1):
                table = c + (g.table.astype(np.int64) << (k - 1))
                f = GeneralizedBooleanFunction(n, k, table)
                if not is_gbent(f):
                    raise GbentError("fixture is not gbent (internal error)")
                out.append(f)
                if len(out) >= count:
                    return out
    return out[:count]


# ---------------------------------------------------------------------------
# batch primitives for the audit
# ---------------------------------------------------------------------------

def _fwht_batch(a: np.ndarray) -> np.ndarray:
    # always copies: fwht_rows transforms in place and callers keep inputs
    return _kernels.fwht_rows(np.array(a, dtype=np.int64, order="C"))


def _batch_bent(tables01: np.ndarray):
    """(bent?, W) for a batch of 0/1 tables (B, N)."""
    w = _fwht_batch(1 - 2 * tables01.astype(np.int64))
    size = tables01.shape[1]
    return (w * w == size).all(axis=1), w


def _batch_gbent(tables: np.ndarray, n: int, k: int) -> np.ndarray:
    from .transform import _norm_sq_rows

    b, size = tables.shape
    coeffs = _kernels.root_coeffs_batch(tables, k)  # (B, m, N)
    m = coeffs.shape[1]
    flat = coeffs.reshape(b * m, size)
    _kernels.fwht_rows(flat)
    rows = flat.reshape(b, m, size).transpose(0, 2, 1).reshape(b * size, m)
    nrm = _norm_sq_rows(rows)
    ok = (nrm[:, 0] == size) & ~nrm[:, 1:].any(axis=1)
    return ok.reshape(b, size).all(axis=1)


def _batch_butson(tables: np.ndarray, n: int, k: int) -> np.ndarray:
    """Offset-sum route: every off-zero correlation sum must vanish."""
    b, size = tables.shape
    q = 1 << k
    m = max(1, q // 2)
    t = tables.astype(np.int64)
    idx = np.arange(size)
    ok = np.ones(b, dtype=bool)
    for z in range(1, size):
        d = (t - t[:, idx ^ z]) % q
        if k == 1:
            delta = (d == 0).sum(axis=1) - (d == 1).sum(axis=1)
            ok &= delta == 0
        else:
            for j in range(m):
                delta = (d == j).sum(axis=1) - (d == j + m).sum(axis=1)
                ok &= delta == 0
    return ok


def _batch_count_vectors(ind: np.ndarray, convention: str) -> np.ndarray:
    """Common-neighbor count vectors for indicator rows, all shifts."""
    b, size = ind.shape
    hat = _fwht_batch(ind)
    counts = _fwht_batch(hat * hat)
    counts //= size
    if convention == EXCLUDE_ENDPOINTS:
        counts = counts - 2 * ind[:, :1] * ind
    return counts


def _const_off0(a: np.ndarray) -> np.ndarray:
    body = a[:, 1:]
    return (body == body[:, :1]).all(axis=1)


def _class_stats(counts: np.ndarray, mask: np.ndarray):
    """(constant?, value) per row over masked columns; value -1 if empty."""
    nonempty = mask.any(axis=1)
    big = np.iinfo(np.int64).max
    mn = np.where(mask, counts, big).min(axis=1)
    mx = np.where(mask, counts, -1).max(axis=1)
    const = ~nonempty | (mn == mx)
    value = np.where(nonempty, mx, -1)
    return const, value


def _symmetric_ys(q: int) -> List[FrozenSet[int]]:
    pairs = [(j, q - 1 - j) for j in range(q // 2)]
    out = []
    for mask in range(1 << len(pairs)):
        y = set()
        for i, (a, b) in enumerate(pairs):
            if (mask >> i) & 1:
                y.update((a, b))
        out.append(frozenset(y))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def _transport_bisections(q: int) -> List[Tuple[FrozenSet[int], str]]:
    """Bisections X (containing 0, one per {X, Xbar} pair) with
    q-1-X equal to X ("fixed") or Xbar ("swapped")."""
    from itertools import combinations

    out = []
    full = frozenset(range(q))
    for rest in combinations(range(1, q), q // 2 - 1):
        x = frozenset((0,) + rest)
        x_ref = frozenset(q - 1 - v for v in x)
        if x_ref == x:
            out.append((x, "fixed"))
        elif x_ref == full - x:
            out.append((x, "swapped"))
    return out


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------

@dataclass
class AuditReport:
    """Tallies and exceptions for every checked equivalence.

    ``exceptions`` carries one dict per offending function with its full
    table, sorted by (table, kind); ``invariant_violations`` counts the
    exceptions that no theorem permits (the quartic converse may fail
    only on the degenerate constant-autocorrelation class, which is
    logged but allowed).  Theorem accounting applies under the
    all-vertices convention; reports for other conventions are
    informational.
    """

    n: int
    k: int
    scope: dict
    convention: str
    total: int
    checks_run: List[str]
    tallies: Dict[str, int]
    equivalences: Dict[str, Dict[str, int]]
    exceptions: List[dict]
    invariant_violations: int
    enforcing: bool
    per_function: Optional[List[dict]] = None
    extra_conventions: Optional[Dict[str, dict]] = None

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "kind": "audit-report",
            "n": self.n,
            "k": self.k,
            "scope": self.scope,
            "convention": self.convention,
            "total": self.total,
            "checks_run": self.checks_run,
            "tallies": self.tallies,
            "equivalences": self.equivalences,
            "exceptions": self.exceptions,
            "invariant_violations": self.invariant_violations,
            "enforcing": self.enforcing,
            "per_function": self.per_function,
            "extra_conventions": self.extra_conventions,
        }

    def summary_text(self) -> str:
        lines = [
            f"audit n={self.n} k={self.k} scope={self.scope['mode']} "
            f"total={self.total} convention={self.convention}",
        ]
        for name, value in self.tallies.items():
            lines.append(f"  {name:<28} {value}")
        for name, eq in self.equivalences.items():
            parts = " ".join(f"{kk}={vv}" for kk, vv in eq.items())
            lines.append(f"  {name:<28} {parts}")
        lines.append(
            f"  exceptions: {len(self.exceptions)} "
            f"(invariant violations: {self.invariant_violations})"
        )
        return "\n".join(lines) + "\n"


def _exhaustive_tables(n: int, k: int, budget: int) -> np.ndarray:
    q = 1 << k
    size = 1 << n
    total = q**size
    if total > budget:
        raise BudgetExceeded(
            f"exhaustive scope needs q**(2**n) = {total} functions, "
            f"budget is {budget}"
        )
    idx = np.arange(total, dtype=np.int64)
    powers = q ** np.arange(size - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] // powers[None, :]) % q).astype(np.uint8)


def audit(
    n: int,
    k: int,
    scope: str = "exhaustive",
    count: Optional[int] = None,
    seed: int = 0,
    conventions: Sequence[str] = (ALL_VERTICES,),
    budget: int = EXHAUSTIVE_BUDGET,
    include_fixtures: bool = True,
    detail_limit: int = 1024,
    transport_sample: int = 100,
) -> AuditReport:
    """Check every in-scope equivalence on a population of functions.

    scope: "exhaustive" walks all q**(2**n) tables (budget permitting),
    "random" samples ``count`` tables from the given seed (plus verified
    gbent fixtures unless disabled), "fixtures" uses fixtures alone.
    Deterministic for a given configuration.
    """
    for conv in conventions:
        if conv not in CONVENTIONS:
            raise ValueError(f"unknown convention {conv!r}")
    q = 1 << k
    size = 1 << n

    fixture_count = 0
    if scope == "exhaustive":
        tables = _exhaustive_tables(n, k, budget)
        scope_info = {"mode": "exhaustive"}
    elif scope == "random":
        if not count or count < 1:
            raise ValueError("random scope needs a positive count")
        rng = np.random.Generator(np.random.PCG64(seed))
        tables = rng.integers(0, q, size=(count, size), dtype=np.uint8)
        if include_fixtures:
            fixtures = gbent_fixtures(n, k)
            if fixtures:
                fixture_count = len(fixtures)
                tables = np.vstack([tables] + [g.table[None, :] for g in fixtures])
        scope_info = {
            "mode": "random",
            "count": int(count),
            "seed": int(seed),
            "fixtures": fixture_count,
        }
    elif scope == "fixtures":
        fixtures = gbent_fixtures(n, k)
        fixture_count = len(fixtures)
        tables = (
            np.array([g.table for g in fixtures], dtype=np.uint8)
            if fixtures
            else np.zeros((0, size), dtype=np.uint8)
        )
        scope_info = {"mode": "fixtures", "fixtures": fixture_count}
    else:
        raise ValueError(f"unknown scope {scope!r}")

    primary = conventions[0]
    enforcing = primary == ALL_VERTICES
    want_detail = tables.shape[0] <= detail_limit
    result = _audit_convention(
        tables, n, k, primary, enforcing, scope == "exhaustive",
        transport_sample, want_detail,
    )
    extra = None
    if len(conventions) > 1:
        extra = {}
        for conv in conventions[1:]:
            sub = _audit_convention(
                tables, n, k, conv, False, scope == "exhaustive",
                transport_sample, False,
            )
            extra[conv] = {
                "tallies": sub["tallies"],
                "equivalences": sub["equivalences"],
            }

    per_function = result["per_function"] if want_detail else None

    return AuditReport(
        n=n,
        k=k,
        scope=scope_info,
        convention=primary,
        total=int(tables.shape[0]),
        checks_run=result["checks_run"],
        tallies=result["tallies"],
        equivalences=result["equivalences"],
        exceptions=result["exceptions"],
        invariant_violations=result["invariant_violations"],
        enforcing=enforcing,
        per_function=per_function,
        extra_conventions=extra,
    )


def _audit_convention(
    tables: np.ndarray,
    n: int,
    k: int,
    convention: str,
    enforcing: bool,
    exhaustive: bool,
    transport_sample: int,
    want_detail: bool,
) -> dict:
    q = 1 << k
    size = 1 << n
    b = tables.shape[0]
    even = n % 2 == 0
    checks_run = ["gbent", "butson", "lemma9"]

    gbent = (
        _batch_gbent(tables, n, k) if b else np.zeros(0, dtype=bool)
    )
    butson = (
        _batch_butson(tables, n, k) if b else np.zeros(0, dtype=bool)
    )

    exceptions: List[dict] = []
    forbidden = 0

    def log(kind: str, index: int, bad: bool, **details):
        nonlocal forbidden
        entry = {
            "kind": kind,
            "index": int(index),
            "table": [int(v) for v in tables[index]],
            "forbidden": bool(bad and enforcing),
        }
        entry.update(details)
        exceptions.append(entry)
        if bad and enforcing:
            forbidden += 1

    for i in np.nonzero(gbent != butson)[0]:
        log("gbent_butson_mismatch", i, True)

    tallies = {
        "gbent": int(gbent.sum()),
        "butson": int(butson.sum()),
    }
    equivalences = {
        "gbent_iff_butson": {
            "agree": int((gbent == butson).sum()),
            "disagree": int((gbent != butson).sum()),
        }
    }

    # digit-combination conditions (even n, k >= 2)
    gb4 = decomposition = None
    nec_uniform = fc_all_bent = None
    degenerate_flags = None
    if k >= 2 and even and b:
        checks_run.append("necessary_condition")
        nec_uniform = np.ones(b, dtype=bool)
        fc_all_bent = np.ones(b, dtype=bool)
        cond_by_mask = {}
        bent_by_mask = {}
        w2_by_mask = {}
        for cm in range(1 << (k - 1)):
            ck_mask = cm | (1 << (k - 1))
            lut = (
                np.bitwise_count(np.arange(q, dtype=np.uint32) & np.uint32(ck_mask))
                & 1
            ).astype(np.int64)
            y = lut[tables]
            counts = _batch_count_vectors(y, convention)
            const = _const_off0(counts)
            bent_c, w = _batch_bent(y)
            cond_by_mask[cm] = const
            bent_by_mask[cm] = bent_c
            w2_by_mask[cm] = w * w
            nec_uniform &= const
            fc_all_bent &= bent_c
        tallies["necessary_pass"] = int(nec_uniform.sum())
        tallies["fc_all_bent"] = int(fc_all_bent.sum())
        equivalences["gbent_implies_necessary"] = {
            "holds": int((~gbent | nec_uniform).sum()),
            "violations": int((gbent & ~nec_uniform).sum()),
        }
        equivalences["gbent_implies_fc_bent"] = {
            "holds": int((~gbent | fc_all_bent).sum()),
            "violations": int((gbent & ~fc_all_bent).sum()),
        }
        for i in np.nonzero(gbent & ~nec_uniform)[0]:
            log("gbent_without_necessary", i, True)
        for i in np.nonzero(gbent & ~fc_all_bent)[0]:
            log("gbent_fc_nonbent", i, True)

        if k == 2:
            checks_run += ["gb4", "decomposition"]
            gb4 = cond_by_mask[0] & cond_by_mask[1]
            decomposition = bent_by_mask[0] & bent_by_mask[1]
            # degenerate converse class: a part with flat-off-zero squared
            # spectrum that is not bent
            deg0 = _const_off0(w2_by_mask[0]) & ~bent_by_mask[0]
            deg1 = _const_off0(w2_by_mask[1]) & ~bent_by_mask[1]
            degenerate_flags = deg0 | deg1
            tallies["gb4_pass"] = int(gb4.sum())
            tallies["decomposition"] = int(decomposition.sum())
            equivalences["gbent_iff_decomposition"] = {
                "agree": int((gbent == decomposition).sum()),
                "disagree": int((gbent != decomposition).sum()),
            }
            equivalences["gbent_implies_gb4"] = {
                "holds": int((~gbent | gb4).sum()),
                "violations": int((gbent & ~gb4).sum()),
            }
            conv_exceptions = gb4 & ~gbent
            equivalences["gb4_implies_gbent"] = {
                "holds": int((~conv_exceptions).sum()),
                "exceptions": int(conv_exceptions.sum()),
                "degenerate_exceptions": int(
                    (conv_exceptions & degenerate_flags).sum()
                ),
            }
            for i in np.nonzero(gbent != decomposition)[0]:
                log("gbent_decomposition_mismatch", i, True)
            for i in np.nonzero(gbent & ~gb4)[0]:
                log("gbent_without_gb4", i, True)
            for i in np.nonzero(conv_exceptions)[0]:
                matches = bool(degenerate_flags[i])
                log(
                    "gb4_without_gbent",
                    i,
                    not matches,
                    degenerate_match=matches,
                )

    # complement weight-count reversal
    if b:
        tc = (q - 1) - tables.astype(np.int64)
        lemma9_ok = np.ones(b, dtype=bool)
        for w in range(q):
            base = (tables[:, 1:] == w).sum(axis=1)
            comp = (tc[:, 1:] == (q - 1 - w)).sum(axis=1)
            lemma9_ok &= base == comp
        equivalences["lemma9_reversal"] = {
            "holds": int(lemma9_ok.sum()),
            "violations": int((~lemma9_ok).sum()),
        }
        for i in np.nonzero(~lemma9_ok)[0]:
            log("lemma9_violation", i, True)

    # complement transport and counting identity
    if b:
        if exhaustive and q <= 8:
            checks_run.append("complement_transport")
            trans_ok, trans_n = _batch_transport(tables, n, k, convention)
            equivalences["complement_transport"] = {
                "instances": trans_n,
                "violations": int((~trans_ok).sum()),
            }
            for i in np.nonzero(~trans_ok)[0]:
                log("complement_transport_violation", i, True)

            checks_run.append("counting_identity")
            ident_ok, ident_n = _batch_counting_identity(tables, n, k)
            equivalences["counting_identity"] = {
                "instances": ident_n,
                "violations": int((~ident_ok).sum()),
            }
            for i in np.nonzero(~ident_ok)[0]:
                log("counting_identity_violation", i, True)
        else:
            checks_run.append("complement_transport_sample")
            sample = min(b, transport_sample)
            bad = _sampled_transport(tables[:sample], n, k, convention)
            equivalences["complement_transport"] = {
                "instances": sample,
                "violations": len(bad),
            }
            for i in bad:
                log("complement_transport_violation", i, True)

    # assemble
    per_function = None
    if want_detail:
        per_function = [
            {
                "table": [int(v) for v in tables[i]],
                "gbent": bool(gbent[i]),
                "butson": bool(butson[i]),
                "gb4": None if gb4 is None else bool(gb4[i]),
                "decomposition": None
                if decomposition is None
                else bool(decomposition[i]),
                "necessary": None if nec_uniform is None else bool(nec_uniform[i]),
                "fc_all_bent": None if fc_all_bent is None else bool(fc_all_bent[i]),
            }
            for i in range(b)
        ]
    exceptions.sort(key=lambda e: (e["table"], e["kind"]))
    return {
        "checks_run": checks_run,
        "tallies": tallies,
        "equivalences": equivalences,
        "exceptions": exceptions,
        "invariant_violations": forbidden,
        "per_function": per_function,
    }


def _batch_transport(tables, n, k, convention):
    """Vectorized complement parameter transport over all qualifying
    (X, Y): certified base reports must transport with (e, d) preserved
    or swapped according to whether q-1-X is X or Xbar."""
    q = 1 << k
    b, size = tables.shape
    t = tables.astype(np.int64)
    tc = (q - 1) - t
    instances = 0
    ok_all = np.ones(b, dtype=bool)
    nonzero = np.arange(size) != 0
    for x, case in _transport_bisections(q):
        in_x = np.isin(np.arange(q), sorted(x))
        for y in _symmetric_ys(q):
            instances += 1
            lut = np.isin(np.arange(q), sorted(y)).astype(np.int64)
            counts_b = _batch_count_vectors(lut[t], convention)
            counts_c = _batch_count_vectors(lut[tc], convention)
            mx_b = in_x[t] & nonzero
            mo_b = ~in_x[t] & nonzero
            mx_c = in_x[tc] & nonzero
            mo_c = ~in_x[tc] & nonzero
            c1, e_b = _class_stats(counts_b, mx_b)
            c2, d_b = _class_stats(counts_b, mo_b)
            cert_b = c1 & c2
            c3, e_c = _class_stats(counts_c, mx_c)
            c4, d_c = _class_stats(counts_c, mo_c)
            cert_c = c3 & c4
            if case == "fixed":
                match = (e_c == e_b) & (d_c == d_b)
            else:
                match = (e_c == d_b) & (d_c == e_b)
            ok_all &= ~cert_b | (cert_c & match)
    return ok_all, instances


def _batch_counting_identity(tables, n, k):
    """Vectorized r_X(r_X - e - 1) == d(v - r_X - 1) over all X with
    Y = X, exclude-endpoints, on every certified instance."""
    q = 1 << k
    b, size = tables.shape
    t = tables.astype(np.int64)
    instances = 0
    ok_all = np.ones(b, dtype=bool)
    nonzero = np.arange(size) != 0
    for xm in range(1 << q):
        x = [j for j in range(q) if (xm >> j) & 1]
        instances += 1
        lut = np.zeros(q, dtype=np.int64)
        lut[x] = 1
        y = lut[t]
        counts = _batch_count_vectors(y, EXCLUDE_ENDPOINTS)
        m1 = y.astype(bool) & nonzero
        m0 = ~y.astype(bool) & nonzero
        c1, e = _class_stats(counts, m1)
        c0, d = _class_stats(counts, m0)
        cert = c1 & c0
        r_x = y[:, 1:].sum(axis=1)
        e0 = np.where(e < 0, 0, e)
        d0 = np.where(d < 0, 0, d)
        ident = r_x * (r_x - e0 - 1) == d0 * (size - r_x - 1)
        ok_all &= ~cert | ident
    return ok_all, instances


def _sampled_transport(tables, n, k, convention) -> List[int]:
    """Python-loop transport check on a deterministic sample; returns
    indices of functions with a failing certified instance."""
    from .graph import complement_theorem_check

    q = 1 << k
    bisections = _transport_bisections(q)[:2]
    ys = [y for y in _symmetric_ys(q) if y][:2]
    bad = []
    for i in range(tables.shape[0]):
        f = GeneralizedBooleanFunction(n, k, tables[i])
        for x, _case in bisections:
            for y in ys:
                rep = complement_theorem_check(f, x, y, convention)
                if rep.applicable and rep.ok is False:
                    bad.append(i)
                    break
            else:
                continue
            break
    return bad
