from fractions import Fraction

import pytest

from odca import fixtures, model as md, oracle
from odca.exactla import VectorSpace

# frozen from the current implementation; the decimal function is not
# regular, so these keep growing
DECIMAL_HANKEL = [0, 0, 1, 4, 8, 12]


def test_simulate_matches_model():
    a = fixtures.prefix_aware_decimal()
    assert oracle.simulate(a, "abaaab") == 6
    for w in md.words("ab", 7):
        assert oracle.simulate(a, w) == md.evaluate(a, w)


def test_brute_equiv_reflexive():
    for seed in range(20):
        a = oracle.random_odca(2, 2, 2, seed=seed)
        assert oracle.brute_equiv(a, a, 6) is None


def test_random_odca_deterministic_and_valid():
    for seed in range(1000):
        a = oracle.random_odca(1 + seed % 3, 1 + seed % 2, 1 + seed % 3, seed=seed)
        assert md.validate(a) == []
        assert a == oracle.random_odca(1 + seed % 3, 1 + seed % 2, 1 + seed % 3, seed=seed)


def test_random_odca_pool():
    a = oracle.random_odca(3, 2, 2, [0, 1], seed=9)
    entries = [x for m in a.delta.values() for r in m for x in r]
    assert set(entries) <= {0, 1} and any(entries)
    with pytest.raises(ValueError):
        oracle.random_odca(0, 1, 1)


def test_hankel_decimal():
    a = fixtures.prefix_aware_decimal()
    ranks = [oracle.hankel_rank(lambda w: oracle.simulate(a, w), L) for L in range(6)]
    assert ranks == DECIMAL_HANKEL
    assert all(x < y for x, y in zip(ranks[2:], ranks[3:]))


def test_hankel_regular_function_is_flat():
    a = fixtures.counter_oblivious()
    ranks = [oracle.hankel_rank(lambda w: oracle.simulate(a, w), L) for L in range(5)]
    assert ranks[-1] == ranks[-2] <= a.fsm_size


def test_rank_and_outside():
    assert oracle._rank([[1, 2], [2, 4]], 2) == 1
    assert oracle._rank([[0, 1], [1, 0]], 2) == 2
    assert oracle.outside([[1, 0]], [0, 1], 2)
    assert not oracle.outside([[1, 0]], [3, 0], 2)
    assert not oracle.outside([], [0, 0], 2)


def test_brute_reach_trivial():
    a = fixtures.prefix_aware_decimal()
    c = md.initial_config(a)
    assert oracle.brute_reach(a, c, VectorSpace.zero(4), {"p0"}, 0) == ""
    assert oracle.brute_reach(a, c, VectorSpace.full(4), {"p0"}) is None
    assert oracle.lex_min_witness is oracle.brute_reach
