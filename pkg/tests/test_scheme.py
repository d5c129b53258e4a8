"""Scheme model: construction, normalization, hashing."""

import random

import pytest

from bmms import (BitMatrix, Product, Scheme, bundled_scheme, canonical_hash,
                  normalize, standard_scheme)


def test_standard_rank_formula():
    for n in range(1, 6):
        for m in range(1, 6):
            for p in range(1, 6):
                assert standard_scheme(n, m, p).rank == n * m * p


def test_standard_examples():
    assert standard_scheme(4, 4, 4).rank == 64
    assert standard_scheme(2, 2, 2).rank == 8
    one = standard_scheme(1, 1, 1)
    assert one.rank == 1
    prod = one.products[0]
    assert prod.alpha.to_lists() == [[1]]
    assert prod.beta.to_lists() == [[1]]
    assert prod.gamma.to_lists() == [[1]]


def test_shape_validation():
    good = standard_scheme(2, 2, 2).products[0]
    with pytest.raises(ValueError):
        Scheme(2, 2, 3, (good,))
    with pytest.raises(ValueError):
        Scheme(0, 1, 1, ())


def test_normalize_drops_zero_mask():
    s = standard_scheme(2, 2, 2)
    dead = Product(s.products[0].alpha, s.products[0].beta, BitMatrix.zeros(2, 2))
    padded = Scheme(2, 2, 2, s.products + (dead,))
    assert normalize(padded) == s


def test_normalize_merges_shared_pair():
    s = standard_scheme(2, 2, 2)
    a, b = s.products[0], s.products[1]
    twin = Product(a.alpha, a.beta, b.gamma)
    merged = normalize(Scheme(2, 2, 2, (a, twin)))
    assert merged.rank == 1
    assert merged.products[0].gamma == a.gamma + b.gamma


def test_normalize_cancels_identical_pair():
    a = standard_scheme(2, 2, 2).products[0]
    assert normalize(Scheme(2, 2, 2, (a, a))).rank == 0


def test_normalize_fixed_point_on_standard():
    s = standard_scheme(2, 2, 2)
    assert normalize(s) == s


def test_normalize_idempotent_randomized():
    rng = random.Random(3)
    base = standard_scheme(2, 2, 2)
    for _ in range(100):
        # random duplications and zero-mask injections
        prods = list(base.products)
        for _ in range(rng.randint(0, 3)):
            prods.append(prods[rng.randrange(len(prods))])
        if rng.random() < 0.5:
            p = prods[0]
            prods.append(Product(p.alpha, BitMatrix.zeros(2, 2), p.gamma))
        s = Scheme(2, 2, 2, tuple(prods))
        once = normalize(s)
        assert normalize(once) == once
        assert once.rank <= s.rank


def test_hash_order_invariance():
    s = bundled_scheme("strassen")
    reversed_s = Scheme(s.n, s.m, s.p, tuple(reversed(s.products)))
    assert canonical_hash(s) == canonical_hash(reversed_s)


def test_hash_distinguishes_schemes():
    assert canonical_hash(standard_scheme(2, 2, 2)) != canonical_hash(
        bundled_scheme("strassen"))


def test_hash_sensitive_to_bits():
    s = bundled_scheme("strassen")
    p = s.products[0]
    flipped = Product(p.alpha, p.beta,
                      p.gamma + BitMatrix(2, 2, (1, 0)))
    mutated = Scheme(s.n, s.m, s.p, (flipped,) + s.products[1:])
    assert canonical_hash(mutated) != canonical_hash(s)
