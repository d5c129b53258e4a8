"""Brent-equation verification: exact checks, mutations, randomized cross-check."""

import itertools
import random

import pytest

from bmms import (BitMatrix, GF2k, Product, Scheme, apply_scheme, brent_residual,
                  bundled_scheme, mul_naive, standard_scheme, verify,
                  verify_randomized)


def all_bitmatrices(rows, cols):
    for bits in itertools.product(range(1 << cols), repeat=rows):
        yield BitMatrix(rows, cols, bits)


def flip_bit(s, k, side, i, j):
    masks = {"alpha": s.products[k].alpha, "beta": s.products[k].beta,
             "gamma": s.products[k].gamma}
    rows, cols = masks[side].rows, masks[side].cols
    delta = BitMatrix(rows, cols, tuple(1 << j if r == i else 0 for r in range(rows)))
    masks[side] = masks[side] + delta
    mutated = Product(masks["alpha"], masks["beta"], masks["gamma"])
    return Scheme(s.n, s.m, s.p, s.products[:k] + (mutated,) + s.products[k + 1:])


def test_standard_schemes_verify():
    for n in range(1, 4):
        for m in range(1, 4):
            for p in range(1, 4):
                report = brent_residual(standard_scheme(n, m, p))
                assert report.violations == 0
                assert report.total_equations == (n * m) * (m * p) * (n * p)


def test_strassen_verifies():
    assert brent_residual(bundled_scheme("strassen")).violations == 0


def test_strassen_deleted_product_violations():
    # regression values: dropping product k leaves this many violated equations
    expected = [8, 4, 4, 4, 4, 4, 4]
    s = bundled_scheme("strassen")
    for k in range(7):
        broken = Scheme(2, 2, 2, s.products[:k] + s.products[k + 1:])
        assert brent_residual(broken).violations == expected[k]


def test_equation_count_examples():
    assert brent_residual(standard_scheme(4, 4, 4)).total_equations == 4096
    assert brent_residual(bundled_scheme("s95")).total_equations == 15625


def test_single_bit_mutations_of_strassen_all_caught():
    s = bundled_scheme("strassen")
    for k in range(s.rank):
        for side in ("alpha", "beta", "gamma"):
            for i in range(2):
                for j in range(2):
                    assert not verify(flip_bit(s, k, side, i, j))


def test_first_violation_lexicographic():
    s = standard_scheme(1, 1, 1)
    broken = Scheme(1, 1, 1, (Product(s.products[0].alpha, s.products[0].beta,
                                      BitMatrix.zeros(1, 1)),))
    report = brent_residual(broken)
    assert report.violations == 1
    assert report.first_violation == ((0, 0), (0, 0), (0, 0))


def test_exact_check_matches_exhaustive_evaluation():
    # over all 256 input pairs, scheme output equals the oracle iff verify()
    # says so; run on the two known-good schemes and 50 mutations
    rng = random.Random(9)
    candidates = [standard_scheme(2, 2, 2), bundled_scheme("strassen")]
    base = bundled_scheme("strassen")
    while len(candidates) < 52:
        k = rng.randrange(base.rank)
        side = ("alpha", "beta", "gamma")[rng.randrange(3)]
        candidates.append(flip_bit(base, k, side, rng.randrange(2), rng.randrange(2)))
    inputs = list(all_bitmatrices(2, 2))
    for s in candidates:
        agrees = all(apply_scheme(s, A, B) == mul_naive(A, B)
                     for A in inputs for B in inputs)
        assert agrees == verify(s)


@pytest.mark.parametrize("kind,k,trials", [
    ("strassen", 2, 100),   # GF(4)
    ("standard", 8, 100),   # GF(256)
])
def test_randomized_agrees_on_correct_schemes(kind, k, trials):
    s = bundled_scheme("strassen") if kind == "strassen" else standard_scheme(2, 2, 2)
    assert verify_randomized(s, GF2k(k), trials, seed=11)


def test_randomized_catches_corruption():
    s = flip_bit(bundled_scheme("strassen"), 3, "gamma", 1, 1)
    assert not verify(s)
    assert not verify_randomized(s, GF2k(1), 100, seed=5)


def test_no_false_negatives_across_rings():
    s = bundled_scheme("strassen")
    assert verify(s)
    for k in (1, 2, 4, 8):
        assert verify_randomized(s, GF2k(k), 25, seed=k)


def test_randomized_requires_trials():
    with pytest.raises(ValueError):
        verify_randomized(bundled_scheme("strassen"), GF2k(1), 0, seed=1)
