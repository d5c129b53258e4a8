"""Flip moves and the rank-reducing random walk."""

import itertools

import pytest

from bmms import (FlipMove, Product, Scheme, SearchState, bundled_scheme,
                  canonical_hash, find_moves, flip, random_walk,
                  reduce_if_possible, standard_scheme, verify)
from tests.test_verify import flip_bit


def brute_force_moves(s):
    moves = []
    for side in ("alpha", "beta", "gamma"):
        for k, l in itertools.combinations(range(s.rank), 2):
            if getattr(s.products[k], side) == getattr(s.products[l], side):
                moves.append((k, l, side))
    return moves


def test_find_moves_standard_222():
    s = standard_scheme(2, 2, 2)
    moves = find_moves(s)
    assert len(moves) == 24  # regression: 12 shared pairs x 2 directions
    assert len(brute_force_moves(s)) * 2 == len(moves)


def test_find_moves_none_on_strassen():
    # Strassen's products have pairwise distinct masks on every side
    assert find_moves(bundled_scheme("strassen")) == []


def test_find_moves_s95_regression():
    assert len(find_moves(bundled_scheme("s95"))) == 42


def test_flip_preserves_rank_and_correctness():
    s = standard_scheme(2, 2, 2)
    for move in find_moves(s):
        out = flip(s, move)
        assert out is not None
        assert out.rank == s.rank
        assert verify(out)


def test_flip_involution():
    s = standard_scheme(2, 2, 2)
    for move in find_moves(s):
        there = flip(s, move)
        back = flip(there, move)
        assert back == s
        assert canonical_hash(back) == canonical_hash(s)


def test_flip_inapplicable_signals():
    s = bundled_scheme("strassen")
    assert flip(s, FlipMove(0, 1, "alpha", 0)) is None
    assert flip(s, FlipMove(2, 2, "beta", 0)) is None
    assert flip(s, FlipMove(0, 99, "gamma", 0)) is None


def test_flip_rejects_unknown_side():
    with pytest.raises(ValueError):
        flip(standard_scheme(2, 2, 2), FlipMove(0, 1, "delta", 0))


def test_reduce_noop_on_standard():
    s = standard_scheme(2, 2, 2)
    assert reduce_if_possible(s) == s


def test_reduce_drops_identical_pair():
    p = standard_scheme(2, 2, 2).products[0]
    assert reduce_if_possible(Scheme(2, 2, 2, (p, p))).rank == 0


def test_reduce_after_flip_cancellation():
    # engineer two products sharing alpha and beta; the flip-merge drops one
    s = standard_scheme(2, 2, 2)
    a, b = s.products[0], s.products[1]
    twin = Product(a.alpha, a.beta, b.gamma)
    doubled = Scheme(2, 2, 2, (a, twin))
    reduced = reduce_if_possible(doubled)
    assert reduced.rank == 1


def test_walk_budget_zero():
    s = standard_scheme(2, 2, 2)
    res = random_walk(s, budget=0, seed=1)
    assert res.best == s
    assert res.stats.steps == 0


def test_walk_rejects_unverified_start():
    broken = flip_bit(bundled_scheme("strassen"), 0, "gamma", 0, 0)
    with pytest.raises(ValueError, match="verified start"):
        random_walk(broken, budget=10, seed=1)


def test_walk_deterministic():
    s = standard_scheme(2, 2, 2)
    r1 = random_walk(s, budget=5000, target_rank=7, seed=42, restarts=5)
    r2 = random_walk(s, budget=5000, target_rank=7, seed=42, restarts=5)
    assert canonical_hash(r1.best) == canonical_hash(r2.best)
    assert r1.stats.as_dict() == r2.stats.as_dict()


def test_walk_finds_rank_seven():
    res = random_walk(standard_scheme(2, 2, 2), budget=50000, target_rank=7,
                      seed=3, restarts=5)
    assert res.best.rank == 7
    assert verify(res.best)
    assert res.stats.stopped == "target"


def test_walk_every_step_verifies():
    res = random_walk(standard_scheme(2, 3, 2), budget=300, seed=8,
                      verify_each_step=True)
    assert verify(res.best)


def test_search_state_rank_monotone_best():
    state = SearchState(standard_scheme(2, 2, 2), seed=11)
    best_seen = state.rank
    for _ in range(500):
        if not state.step():
            break
        best_seen = min(best_seen, state.rank)
        assert state.best_rank == min(state.best_rank, best_seen)
        assert state.best_rank <= state.rank or state.rank >= state.best_rank
    assert verify(state.best)


def test_walk_restarts_consume_budget():
    res = random_walk(standard_scheme(2, 2, 2), budget=100, seed=2, restarts=10)
    assert res.stats.steps <= 100
    assert res.stats.restarts >= 1
