import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from odca import fixtures, model as md, oracle, translate
from odca.errors import NotCounterDeterministic

POOL = [-1, 1, Fraction(1, 2), 2]
FIXTURES = [fixtures.prefix_aware_decimal, fixtures.equal_prefix_power,
            fixtures.counter_oblivious, fixtures.l1_weighted]


def random_oca(seed):
    r = random.Random(seed)
    n = r.randint(1, 3)
    t0, t1 = {}, {}
    for i in range(n):
        for a in "ab":
            for j in range(n):
                if r.random() < 0.35:
                    t0[i, a, j] = (r.choice((0, 1)), r.choice(POOL))
                if r.random() < 0.35:
                    t1[i, a, j] = (r.choice((-1, 0, 1)), r.choice(POOL))
    lam = [r.choice((0, 0, 1, 2)) for _ in range(n)]
    eta = [r.choice((0, 1, -1)) for _ in range(n)]
    return translate.WeightedOCA(("a", "b"), tuple(f"s{i}" for i in range(n)),
                                 tuple(map(Fraction, lam)), tuple(map(Fraction, eta)), t0, t1)


def runs(oca, word):
    # every structural run, as a set of (state, counter)
    out = oca.outgoing()
    conf = {(i, 0) for i, x in enumerate(oca.lam) if x}
    for a in word:
        conf = {(j, n + e) for i, n in conf for j, e, _ in out.get((1 if n > 0 else 0, i, a), ())}
    return conf


def brute_violation(oca, max_len):
    for w in md.words(oca.alphabet, max_len):
        if len({n for _, n in runs(oca, w)}) > 1:
            return w
    return None


def test_violating_oca():
    v = translate.check_counter_determinacy(translate.violating_oca())
    assert isinstance(v, translate.CounterViolation)
    assert v.word == "aa" and v.counters == (0, 2)
    with pytest.raises(NotCounterDeterministic):
        translate.oca_to_odca(translate.violating_oca())


def test_determinacy_against_run_enumeration():
    bad = 0
    for seed in range(300):
        oca = random_oca(seed)
        r = translate.check_counter_determinacy(oca)
        expect = brute_violation(oca, 7)
        if isinstance(r, translate.CounterViolation):
            bad += 1
            counters = {n for _, n in runs(oca, r.word)}
            assert set(r.counters) <= counters and len(counters) > 1
            if expect is not None:
                assert r.word == expect, seed
            else:
                assert len(r.word) > 7, seed
        else:
            assert expect is None, seed
    assert 20 < bad < 280


def test_oca_to_odca_preserves_function():
    done = 0
    for seed in range(300):
        oca = random_oca(seed)
        if isinstance(translate.check_counter_determinacy(oca), translate.CounterViolation):
            continue
        odca = translate.oca_to_odca(oca)
        assert md.validate(odca) == []
        for w in md.words("ab", 6):
            assert md.evaluate(odca, w) == translate.oca_eval(oca, w), (seed, w)
        done += 1
    assert done > 20


@pytest.mark.parametrize("make", FIXTURES)
def test_round_trip(make):
    a = make()
    oca = translate.odca_to_oca(a)
    assert oca.size == len(a.counter_states) * a.fsm_size
    assert not isinstance(translate.check_counter_determinacy(oca), translate.CounterViolation)
    back = translate.oca_to_odca(oca)
    for w in md.words("ab", 8):
        assert translate.oca_eval(oca, w) == md.evaluate(a, w) == md.evaluate(back, w), w


def test_decimal_colors():
    oca = translate.odca_to_oca(fixtures.prefix_aware_decimal())
    back = translate.oca_to_odca(oca)
    # one color per reachable counter state of the source, named by the least member
    assert back.counter_states == ("c0", "c5", "c10")


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_odca_translation_is_counter_deterministic(seed):
    a = oracle.random_odca(2, 2, 2, seed=seed)
    oca = translate.odca_to_oca(a)
    assert brute_violation(oca, 6) is None
    for w in md.words("ab", 5):
        assert translate.oca_eval(oca, w) == md.evaluate(a, w)


def test_coloring_classes():
    coloring = translate.check_counter_determinacy(translate.odca_to_oca(fixtures.counter_oblivious()))
    assert isinstance(coloring, translate.ColoringMap)
    assert all(coloring.color[c] == c for c in coloring.classes())
    assert set(coloring.live_classes()) <= set(coloring.classes())


def test_single_state_oca():
    one = Fraction(1)
    oca = translate.WeightedOCA(("a", "b"), ("s",), (one,), (one,),
                                {(0, "a", 0): (1, Fraction(2))}, {(0, "a", 0): (1, Fraction(2)), (0, "b", 0): (-1, one)})
    odca = translate.oca_to_odca(oca)
    assert odca.counter_states == ("c0",)
    for w in md.words("ab", 7):
        assert md.evaluate(odca, w) == translate.oca_eval(oca, w)


def test_random_counter_deterministic_colorings():
    for seed in range(60):
        a = oracle.random_odca(2, 2, 2, seed=seed)
        oca = translate.odca_to_oca(a)
        coloring = translate.check_counter_determinacy(oca)
        assert isinstance(coloring, translate.ColoringMap)
        assert len(coloring.live_classes()) <= oca.size
        for w in md.words("ab", 6):
            assert len({n for _, n in runs(oca, w)}) <= 1


def test_empty_support():
    oca = translate.WeightedOCA(("a",), ("s0",), (Fraction(0),), (Fraction(1),), {}, {})
    odca = translate.oca_to_odca(oca)
    assert odca.counter_states == ("c0",)
    assert md.evaluate(odca, "aaa") == 0
