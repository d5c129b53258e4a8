"""Tensor composition and cyclic rotation."""

import itertools

from bmms import (RecursionPlan, apply_scheme, bundled_scheme, canonical_hash,
                  mul_naive, multiply_recursive, random_matrix, rotate,
                  standard_scheme, tensor, verify)


def test_strassen_squared():
    t = tensor(bundled_scheme("strassen"), bundled_scheme("strassen"))
    assert t.dims == (4, 4, 4)
    assert t.rank == 49
    assert verify(t)


def test_tensor_unit():
    s = bundled_scheme("strassen")
    assert tensor(standard_scheme(1, 1, 1), s) == s
    assert tensor(s, standard_scheme(1, 1, 1)) == s


def test_tensor_mixed():
    t = tensor(standard_scheme(2, 2, 2), bundled_scheme("strassen"))
    assert t.rank == 56
    assert verify(t)


def test_tensor_preserves_correctness_on_pairs():
    pool = [standard_scheme(2, 2, 2), bundled_scheme("strassen"),
            standard_scheme(2, 3, 2)]
    for s1, s2 in itertools.product(pool, repeat=2):
        t = tensor(s1, s2)
        assert t.rank == s1.rank * s2.rank
        assert verify(t)


def test_tensor_agrees_with_recursion():
    # the Kronecker index order must match the recursion engine's block layout
    s = bundled_scheme("strassen")
    t2 = tensor(s, s)
    plan = RecursionPlan(s, 2, 1)
    for seed in range(20):
        A = random_matrix(4, 4, seed)
        B = random_matrix(4, 4, 500 + seed)
        flat = apply_scheme(t2, A, B)
        rec, _ = multiply_recursive(plan, A, B)
        assert flat == rec == mul_naive(A, B)


def test_rotate_dims_and_rank():
    r = rotate(standard_scheme(2, 3, 4))
    assert r.dims == (3, 4, 2)
    assert r.rank == 24
    assert verify(r)


def test_rotate_strassen():
    r = rotate(bundled_scheme("strassen"))
    assert r.dims == (2, 2, 2)
    assert r.rank == 7
    assert verify(r)


def test_rotate_preserves_correctness():
    for s in (standard_scheme(2, 2, 2), standard_scheme(2, 3, 2),
              bundled_scheme("strassen"), bundled_scheme("s95")):
        assert verify(rotate(s))


def test_rotate_order_three():
    for s in (bundled_scheme("strassen"), standard_scheme(2, 3, 4)):
        r3 = rotate(rotate(rotate(s)))
        assert r3.dims == s.dims
        assert canonical_hash(r3) == canonical_hash(s)
