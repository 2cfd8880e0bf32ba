import itertools

import numpy as np
import pytest

import gbent
from gbent import (
    BooleanFunction,
    CapExceeded,
    DimensionMismatch,
    GeneralizedBooleanFunction,
)
from tests.conftest import random_boolean, random_function

SMALL4 = GeneralizedBooleanFunction(2, 2, [0, 0, 2, 3])


# --- index conventions ------------------------------------------------------

def test_enc_is_msb_first():
    assert gbent.enc((1, 0)) == 2
    assert gbent.enc((0, 1)) == 1
    assert gbent.dec(2, 2) == (1, 0)


def test_iota_is_lsb_first():
    assert gbent.iota((1, 0)) == 1
    assert gbent.iota((0, 1)) == 2
    assert gbent.iota_inv(1, 2) == (1, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_enc_iota_bit_reversal_permutation(n):
    # enc composed with iota-decode is exactly the bit-reversal permutation
    perm = [gbent.enc(gbent.iota_inv(j, n)) for j in range(1 << n)]
    assert sorted(perm) == list(range(1 << n))
    for j in range(1 << n):
        rev = int(format(j, f"0{n}b")[::-1], 2)
        assert perm[j] == rev
    # round trips
    for j in range(1 << n):
        assert gbent.enc(gbent.dec(j, n)) == j
        assert gbent.iota(gbent.iota_inv(j, n)) == j


# --- evaluation -------------------------------------------------------------

def test_evaluate_examples():
    assert gbent.evaluate(SMALL4, (1, 0)) == 2
    assert gbent.evaluate(SMALL4, (0, 0)) == SMALL4.table[0]
    assert gbent.evaluate(SMALL4, (1, 1)) == 3
    with pytest.raises(DimensionMismatch):
        gbent.evaluate(SMALL4, (1, 0, 1))


# --- digit decomposition ----------------------------------------------------

def test_components_digit_examples():
    f = GeneralizedBooleanFunction(1, 3, [3, 0])
    a0, a1, a2 = gbent.components(f)
    assert (a0.table[0], a1.table[0], a2.table[0]) == (1, 1, 0)


def test_components_quartic_demo():
    a0, a1 = gbent.components(SMALL4)
    assert a0.table.tolist() == [0, 0, 0, 1]  # x1*x2
    assert a1.table.tolist() == [0, 0, 1, 1]  # x1


def test_components_k1_identity():
    f = GeneralizedBooleanFunction(2, 1, [0, 1, 1, 0])
    (a0,) = gbent.components(f)
    assert a0.table.tolist() == [0, 1, 1, 0]


def test_from_components_gbent16():
    a0 = gbent.parse_boolean_expression("x1", 4)
    a1 = gbent.parse_boolean_expression("x1*x2 (+) x3*x4", 4)
    f = gbent.from_components([a0, a1])
    assert f == gbent.parse_expression("x1 + 2*(x1*x2 (+) x3*x4)", 4, 2)


def test_from_components_zero_and_errors():
    z = BooleanFunction(2, [0, 0, 0, 0])
    f = gbent.from_components([z, z])
    assert f.table.tolist() == [0, 0, 0, 0]
    with pytest.raises(DimensionMismatch):
        gbent.from_components([z, BooleanFunction(3, [0] * 8)])
    with pytest.raises(DimensionMismatch):
        gbent.from_components([])


def test_components_round_trip_random(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        k = int(rng.integers(1, 5))
        f = random_function(rng, n, k)
        assert gbent.from_components(gbent.components(f)) == f


# --- complement -------------------------------------------------------------

def test_complement_examples():
    f = GeneralizedBooleanFunction(1, 2, [1, 0])
    assert gbent.complement_function(f).table.tolist() == [2, 3]
    assert gbent.complement_function(SMALL4).table.tolist() == [3, 3, 1, 0]


def test_complement_digitwise_and_involution(rng):
    for _ in range(200):
        n = int(rng.integers(1, 5))
        k = int(rng.integers(1, 5))
        f = random_function(rng, n, k)
        comp = gbent.complement_function(f)
        assert gbent.complement_function(comp) == f
        for a, abar in zip(gbent.components(f), gbent.components(comp)):
            assert np.array_equal(a.table ^ 1, abar.table)


# --- ANF --------------------------------------------------------------------

def test_anf_monomial():
    g = BooleanFunction(2, [0, 0, 0, 1])  # x1*x2
    anf = gbent.boolean_anf(g)
    assert anf.tolist() == [0, 0, 0, 1]  # only the x1x2 coefficient


def test_anf_constant_one():
    g = BooleanFunction(2, [1, 1, 1, 1])
    assert gbent.boolean_anf(g).tolist() == [1, 0, 0, 0]


def test_anf_involution_exhaustive_small():
    for n in (1, 2, 3):
        for bits in itertools.product((0, 1), repeat=1 << n):
            g = BooleanFunction(n, bits)
            anf = gbent.boolean_anf(g)
            assert gbent.anf_to_truth_table(anf, n) == g


def test_anf_involution_random(rng):
    for n in range(4, 11):
        for _ in range(20):
            g = random_boolean(rng, n)
            assert gbent.anf_to_truth_table(gbent.boolean_anf(g), n) == g


def test_anf_matches_monomial_expansion(rng):
    # independent oracle: evaluate the ANF as a polynomial at every point
    for _ in range(50):
        n = int(rng.integers(1, 6))
        g = random_boolean(rng, n)
        anf = gbent.boolean_anf(g)
        for x in range(1 << n):
            acc = 0
            for m in range(1 << n):
                if anf[m] and (m & x) == m:  # monomial m divides point x
                    acc ^= 1
            assert acc == g.table[x]


def test_algebraic_degree_examples():
    assert gbent.algebraic_degree(gbent.parse_boolean_expression("x1*x2 (+) x3*x4", 4)) == 2
    assert gbent.algebraic_degree(BooleanFunction(2, [0, 0, 0, 0])) == 0
    assert gbent.algebraic_degree(BooleanFunction(2, [1, 1, 1, 1])) == 0
    assert gbent.algebraic_degree(gbent.parse_boolean_expression("x1 (+) x2*x3*x4", 4)) == 3


# --- weight and distance ----------------------------------------------------

def test_hamming_weight_examples():
    assert gbent.hamming_weight(BooleanFunction(2, [0, 0, 0, 1])) == 1
    g = gbent.parse_boolean_expression("x1*x2 (+) x3*x4", 4)
    # enumerate the 16 inputs
    brute = sum(
        (x1 & x2) ^ (x3 & x4)
        for x1, x2, x3, x4 in itertools.product((0, 1), repeat=4)
    )
    assert brute == 6
    assert gbent.hamming_weight(g) == 6


def test_hamming_distance():
    g = gbent.parse_boolean_expression("x1", 2)
    h = gbent.parse_boolean_expression("x2", 2)
    assert gbent.hamming_distance(g, g) == 0
    assert gbent.hamming_distance(g, h) == 2
    with pytest.raises(DimensionMismatch):
        gbent.hamming_distance(g, BooleanFunction(3, [0] * 8))


# --- validation and caps ----------------------------------------------------

def test_construction_validation():
    with pytest.raises(CapExceeded):
        GeneralizedBooleanFunction(0, 1, [])
    with pytest.raises(CapExceeded):
        GeneralizedBooleanFunction(25, 1, [0] * (1 << 25))
    with pytest.raises(CapExceeded):
        GeneralizedBooleanFunction(2, 9, [0, 0, 0, 0])
    with pytest.raises(ValueError):
        GeneralizedBooleanFunction(2, 2, [0, 0, 0, 4])
    with pytest.raises(DimensionMismatch):
        GeneralizedBooleanFunction(2, 2, [0, 0, 0])
    with pytest.raises(ValueError):
        BooleanFunction(2, [0, 0, 0, 2])


def test_immutability():
    f = GeneralizedBooleanFunction(2, 2, [0, 0, 2, 3])
    with pytest.raises(AttributeError):
        f.n = 3
    with pytest.raises(ValueError):
        f.table[0] = 1


# --- .gbf format ------------------------------------------------------------

def test_gbf_round_trip(tmp_path):
    path = tmp_path / "small4.gbf"
    gbent.write_gbf(SMALL4, path)
    assert gbent.read_gbf(path) == SMALL4
    assert gbent.format_gbf(SMALL4) == "n=2 k=2\n0 0 2 3\n"


def test_gbf_comments_and_multiline():
    text = "# example\nn=2 k=2  # header\n0 0\n2 3\n"
    assert gbent.parse_gbf(text) == SMALL4


def test_gbf_errors():
    with pytest.raises(ValueError):
        gbent.parse_gbf("")
    with pytest.raises(ValueError):
        gbent.parse_gbf("n=2\n0 0 2 3\n")
    with pytest.raises(DimensionMismatch):
        gbent.parse_gbf("n=2 k=2\n0 0 2\n")
