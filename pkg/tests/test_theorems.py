import itertools

import numpy as np
import pytest

import gbent
from gbent import (
    BooleanFunction,
    BudgetExceeded,
    GeneralizedBooleanFunction,
)
from tests.conftest import random_function

GBENT16 = gbent.parse_expression("x1 + 2*(x1*x2 (+) x3*x4)", 4, 2)
SMALL4 = gbent.parse_expression("x1*x2 + 2*x1", 2, 2)
QUAD4 = gbent.parse_boolean_expression("x1*x2 (+) x3*x4", 4)


# --- digit combinations -----------------------------------------------------

def test_f_c_selection_q4():
    a0, a1 = gbent.components(GBENT16)
    assert gbent.f_c(GBENT16, (0,)) == a1
    assert gbent.f_c(GBENT16, (1,)) == a0 ^ a1


def test_f_c_selection_q8():
    f = random_function(np.random.Generator(np.random.PCG64(3)), 3, 3)
    a0, a1, a2 = gbent.components(f)
    assert gbent.f_c(f, (1, 0)) == a0 ^ a2
    assert gbent.f_c(f, (0, 0)) == a2
    assert gbent.f_c(f, (1, 1)) == a0 ^ a1 ^ a2


def test_f_c_errors():
    with pytest.raises(ValueError):
        gbent.f_c(GBENT16, (0, 1))
    with pytest.raises(ValueError):
        gbent.f_c(GeneralizedBooleanFunction(2, 1, [0, 1, 1, 0]), ())


# --- weight classes ---------------------------------------------------------

def test_weight_classes_q4():
    pair = gbent.weight_classes((0,), 2)
    assert pair.x1 == {2, 3} and pair.x0 == {0, 1}
    pair = gbent.weight_classes((1,), 2)
    assert pair.x1 == {1, 2} and pair.x0 == {0, 3}


def test_weight_classes_q8():
    pair = gbent.weight_classes((0, 0), 3)
    assert pair.x1 == {4, 5, 6, 7}  # top digit set
    pair = gbent.weight_classes((1, 0), 3)
    assert pair.x1 == {v for v in range(8) if ((v & 1) ^ (v >> 2)) & 1}


@pytest.mark.parametrize("k", [2, 3, 4])
def test_weight_classes_constructions_agree(k):
    # the implementation cross-checks the subset construction against the
    # digit-parity rule and raises on disagreement; also sanity-check the
    # bisection structure
    for bits in itertools.product((0, 1), repeat=k - 1):
        pair = gbent.weight_classes(bits, k)
        assert pair.x0 | pair.x1 == set(range(1 << k))
        assert not (pair.x0 & pair.x1)
        assert len(pair.x1) == 1 << (k - 1)


def test_weight_classes_errors():
    with pytest.raises(ValueError):
        gbent.weight_classes((0,), 1)
    with pytest.raises(ValueError):
        gbent.weight_classes((0, 1), 2)


# --- quartic criterion ------------------------------------------------------

def brute_uniform_count(f, y):
    """All-pairs common-count constancy by literal enumeration."""
    size = 1 << f.n
    seen = set()
    for a in range(size):
        for b in range(size):
            if a == b:
                continue
            cnt = sum(
                1
                for c in range(size)
                if int(f.table[a ^ c]) in y and int(f.table[b ^ c]) in y
            )
            seen.add(cnt)
    return seen


def test_gb4_gbent16_constants_match_brute():
    rep = gbent.gb4_check(GBENT16)
    assert rep.passed
    assert brute_uniform_count(GBENT16, {2, 3}) == {rep.cond_i.constant}
    assert brute_uniform_count(GBENT16, {1, 2}) == {rep.cond_ii.constant}


def test_gb4_quartic_demo_refuted_with_witness():
    rep = gbent.gb4_check(SMALL4)
    assert not rep.passed
    w = rep.cond_i.witness
    assert w is not None
    # the witness reproduces: two pairs with different counts
    za = w.pair_a[0] ^ w.pair_a[1]
    zb = w.pair_b[0] ^ w.pair_b[1]
    assert gbent.neighbor_count(SMALL4, 0, za, {2, 3}) == w.count_a
    assert gbent.neighbor_count(SMALL4, 0, zb, {2, 3}) == w.count_b
    assert w.count_a != w.count_b


def test_gb4_degenerate_satisfier():
    # a1 constant zero, a0 bent: both conditions hold but f is not gbent
    zero = BooleanFunction(4, [0] * 16)
    f = gbent.from_components([QUAD4, zero])
    rep = gbent.gb4_check(f)
    assert rep.passed
    assert not gbent.is_gbent(f).ok
    a0, a1 = gbent.components(f)
    assert gbent.constant_autocorrelation_nonbent(a1)


def test_gb4_errors():
    with pytest.raises(ValueError):
        gbent.gb4_check(GeneralizedBooleanFunction(2, 3, [0] * 4))
    with pytest.raises(ValueError, match="odd"):
        gbent.gb4_check(GeneralizedBooleanFunction(3, 2, [0] * 8))


def test_decomposition_criterion():
    assert gbent.decomposition_criterion_q4(GBENT16)
    zero = BooleanFunction(4, [0] * 16)
    assert not gbent.decomposition_criterion_q4(gbent.from_components([QUAD4, zero]))
    with pytest.raises(ValueError):
        gbent.decomposition_criterion_q4(GeneralizedBooleanFunction(2, 1, [0, 1, 1, 0]))


def test_decomposition_iff_gbent_exhaustive_n2():
    for table in itertools.product(range(4), repeat=4):
        f = GeneralizedBooleanFunction(2, 2, table)
        assert gbent.decomposition_criterion_q4(f) == gbent.is_gbent(f).ok


def test_constant_autocorrelation_nonbent():
    assert gbent.constant_autocorrelation_nonbent(BooleanFunction(2, [0, 0, 0, 0]))
    assert gbent.constant_autocorrelation_nonbent(BooleanFunction(2, [1, 1, 1, 1]))
    assert not gbent.constant_autocorrelation_nonbent(BooleanFunction(2, [0, 0, 0, 1]))
    assert not gbent.constant_autocorrelation_nonbent(
        gbent.parse_boolean_expression("x1", 2)
    )


# --- necessary condition ----------------------------------------------------

def test_necessary_gbent16():
    rep = gbent.necessary_condition_check(GBENT16)
    assert rep.passed and rep.fc_all_bent
    assert len(rep.entries) == 2
    for entry in rep.entries:
        assert entry.uniform_ok and entry.srg_e_eq_d_ok and entry.fc_bent


def test_necessary_q8_fixture():
    # top-digit embedding of a bent function is gbent for q = 8
    table = QUAD4.table.astype(np.int64) << 2
    f = GeneralizedBooleanFunction(4, 3, table)
    assert gbent.is_gbent(f).ok
    rep = gbent.necessary_condition_check(f)
    assert rep.passed and rep.fc_all_bent
    assert len(rep.entries) == 4


def test_necessary_witness_on_failure():
    rep = gbent.necessary_condition_check(SMALL4)
    assert not rep.passed
    bad = [e for e in rep.entries if not e.uniform_ok]
    assert bad and all(e.witness is not None for e in bad)


def test_necessary_exhaustive_gbents_n2(rng):
    for table in itertools.product(range(4), repeat=4):
        f = GeneralizedBooleanFunction(2, 2, table)
        if gbent.is_gbent(f).ok:
            rep = gbent.necessary_condition_check(f)
            assert rep.passed and rep.fc_all_bent
            # the two readings agree
            assert all(e.srg_e_eq_d_ok for e in rep.entries)


def test_necessary_errors():
    with pytest.raises(ValueError):
        gbent.necessary_condition_check(GeneralizedBooleanFunction(2, 1, [0] * 4))
    with pytest.raises(ValueError, match="odd"):
        gbent.necessary_condition_check(GeneralizedBooleanFunction(3, 2, [0] * 8))


# --- bent sets --------------------------------------------------------------

def brute_is_bent_set(parts):
    if not all(gbent.is_bent(g) for g in parts):
        return False
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            if not gbent.is_bent(parts[i] ^ parts[j]):
                return False
    return True


def test_bent_set_valid_pair():
    # derived pair: both members bent and the XOR bent
    g1 = gbent.parse_boolean_expression("x1*x2 (+) x3*x4", 4)
    g2 = gbent.parse_boolean_expression("x1*x3 (+) x2*x4 (+) x3*x4", 4)
    assert brute_is_bent_set([g1, g2])
    rep = gbent.bent_set_corollary_check([g1, g2])
    assert rep.bent_set_ok and rep.all_certified
    assert len(rep.checks) == 4 * 6  # ordered pairs x six bisections


def test_bent_set_rejects_non_set():
    # both members bent but their XOR has a rank-2 quadratic part
    g1 = gbent.parse_boolean_expression("x1*x2 (+) x3*x4", 4)
    g2 = gbent.parse_boolean_expression("x1*x3 (+) x2*x4", 4)
    assert gbent.is_bent(g1) and gbent.is_bent(g2)
    assert not gbent.is_bent(g1 ^ g2)
    rep = gbent.bent_set_corollary_check([g1, g2])
    assert not rep.bent_set_ok
    assert rep.non_bent_pairs == ((0, 1),)
    assert rep.checks == ()


def test_bent_set_singleton():
    g = gbent.parse_boolean_expression("x1*x2 (+) x3*x4", 4)
    rep = gbent.bent_set_corollary_check([g])
    assert rep.bent_set_ok and rep.all_certified
    f = gbent.from_components([g, g])  # 3*g, values in {0, 3}
    assert set(np.unique(f.table)) <= {0, 3}


def test_bent_set_non_bent_member():
    rep = gbent.bent_set_corollary_check([BooleanFunction(4, [0] * 16)])
    assert not rep.bent_set_ok and rep.non_bent_members == (0,)


# --- fixtures ---------------------------------------------------------------

def test_construct_gbent_q4_reference():
    a1 = gbent.parse_boolean_expression("x1*x2 (+) x3*x4", 4)
    h = gbent.parse_boolean_expression("x1*x2 (+) x3*x4 (+) x1", 4)
    f = gbent.construct_gbent_q4(a1, h)
    assert f == GBENT16


def test_construct_gbent_q4_equal_ingredients():
    a1 = gbent.parse_boolean_expression("x1*x2 (+) x3*x4", 4)
    f = gbent.construct_gbent_q4(a1, a1)  # a0 = 0, f = 2*a1
    assert gbent.is_gbent(f).ok
    assert np.array_equal(f.table, 2 * a1.table)


def test_construct_gbent_q4_mm():
    a1 = gbent.maiorana_mcfarland(4)
    h = gbent.maiorana_mcfarland(4, g=[0, 1, 0, 1])
    f = gbent.construct_gbent_q4(a1, h)
    assert gbent.is_gbent(f).ok


def test_construct_gbent_rejects_non_bent():
    a1 = gbent.parse_boolean_expression("x1*x2 (+) x3*x4", 4)
    with pytest.raises(ValueError):
        gbent.construct_gbent_q4(a1, BooleanFunction(4, [0] * 16))
    with pytest.raises(ValueError):
        gbent.construct_gbent_q4(BooleanFunction(4, [0] * 16), a1)


def test_maiorana_mcfarland_bent():
    for n in (2, 4, 6):
        assert gbent.is_bent(gbent.maiorana_mcfarland(n))
    m = 1 << 2
    assert gbent.is_bent(gbent.maiorana_mcfarland(4, [v ^ 3 for v in range(m)]))
    with pytest.raises(ValueError):
        gbent.maiorana_mcfarland(3)
    with pytest.raises(ValueError):
        gbent.maiorana_mcfarland(4, [0, 0, 1, 2])


@pytest.mark.parametrize("k", [1, 2, 3])
def test_gbent_fixtures_verified(k):
    fixtures = gbent.gbent_fixtures(4, k)
    assert fixtures
    for f in fixtures:
        assert (f.n, f.k) == (4, k)
        assert gbent.is_gbent(f).ok
    assert gbent.gbent_fixtures(3, k) == []


# --- audit ------------------------------------------------------------------

def test_audit_exhaustive_n2_k2():
    rep = gbent.audit(2, 2, scope="exhaustive")
    assert rep.total == 256
    assert rep.tallies["gbent"] == 64
    assert rep.tallies["butson"] == 64
    assert rep.tallies["gb4_pass"] == 100
    assert rep.tallies["decomposition"] == 64
    assert rep.equivalences["gbent_iff_butson"]["disagree"] == 0
    assert rep.equivalences["gbent_iff_decomposition"]["disagree"] == 0
    assert rep.equivalences["gbent_implies_gb4"]["violations"] == 0
    conv = rep.equivalences["gb4_implies_gbent"]
    assert conv["exceptions"] == 36
    assert conv["degenerate_exceptions"] == 36
    assert rep.equivalences["complement_transport"]["violations"] == 0
    assert rep.equivalences["counting_identity"]["violations"] == 0
    assert rep.invariant_violations == 0
    assert len(rep.exceptions) == 36
    assert all(e["kind"] == "gb4_without_gbent" for e in rep.exceptions)
    assert all(e["degenerate_match"] for e in rep.exceptions)
    # every converse exception matches the structural description
    for e in rep.exceptions:
        f = GeneralizedBooleanFunction(2, 2, e["table"])
        a0, a1 = gbent.components(f)
        assert gbent.constant_autocorrelation_nonbent(
            a1
        ) or gbent.constant_autocorrelation_nonbent(a0 ^ a1)
    # exceptions sorted by table
    tables = [tuple(e["table"]) for e in rep.exceptions]
    assert tables == sorted(tables)
    # per-function detail present for small scopes
    assert rep.per_function is not None and len(rep.per_function) == 256


def test_audit_exhaustive_k1_counts_bents():
    rep = gbent.audit(2, 1, scope="exhaustive")
    assert rep.total == 16
    assert rep.tallies["gbent"] == 8  # the weight-1 and weight-3 functions
    assert rep.equivalences["gbent_iff_butson"]["disagree"] == 0
    assert rep.invariant_violations == 0


def test_audit_exhaustive_n2_k3():
    rep = gbent.audit(2, 3, scope="exhaustive")
    assert rep.total == 4096
    assert rep.equivalences["gbent_implies_necessary"]["violations"] == 0
    assert rep.equivalences["gbent_implies_fc_bent"]["violations"] == 0
    assert rep.invariant_violations == 0


def test_audit_random_deterministic():
    a = gbent.audit(2, 2, scope="random", count=500, seed=9)
    b = gbent.audit(2, 2, scope="random", count=500, seed=9)
    assert a.to_json_dict() == b.to_json_dict()
    c = gbent.audit(2, 2, scope="random", count=500, seed=10)
    assert c.to_json_dict() != a.to_json_dict()


def test_audit_random_includes_fixtures():
    rep = gbent.audit(4, 2, scope="random", count=100, seed=1)
    assert rep.scope["fixtures"] > 0
    assert rep.total == 100 + rep.scope["fixtures"]
    assert rep.tallies["gbent"] >= rep.scope["fixtures"]
    assert rep.invariant_violations == 0


def test_audit_fixtures_scope():
    rep = gbent.audit(4, 3, scope="fixtures")
    assert rep.total > 0
    assert rep.tallies["gbent"] == rep.total
    assert rep.invariant_violations == 0


def test_audit_budget():
    with pytest.raises(BudgetExceeded):
        gbent.audit(4, 2, scope="exhaustive")
    with pytest.raises(BudgetExceeded):
        gbent.audit(2, 2, scope="exhaustive", budget=100)


def test_audit_scope_validation():
    with pytest.raises(ValueError):
        gbent.audit(2, 2, scope="everything")
    with pytest.raises(ValueError):
        gbent.audit(2, 2, scope="random")
    with pytest.raises(ValueError):
        gbent.audit(2, 2, conventions=("sideways",))


def test_audit_exclude_convention_is_informational():
    rep = gbent.audit(2, 2, scope="exhaustive", conventions=("exclude-endpoints",))
    assert not rep.enforcing
    assert rep.invariant_violations == 0  # nothing is forbidden off-convention


def test_audit_extra_conventions_reported():
    rep = gbent.audit(
        2, 2, scope="exhaustive",
        conventions=("all-vertices", "exclude-endpoints"),
    )
    assert rep.enforcing and rep.invariant_violations == 0
    assert "exclude-endpoints" in rep.extra_conventions
    assert "tallies" in rep.extra_conventions["exclude-endpoints"]


def test_audit_summary_text():
    rep = gbent.audit(2, 2, scope="exhaustive")
    text = rep.summary_text()
    assert "gbent" in text and "invariant violations: 0" in text
