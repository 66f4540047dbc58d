"""The example machines from the literature, transcribed from their drawings.

The drawings leave some counter moves out.  :func:`build` completes every
missing ``delta0``/``delta1`` entry with a self-loop of counter effect 0.  No
FSM transition is enabled in those situations, so the recognised function is
unchanged.
"""

from __future__ import annotations

from fractions import Fraction

from . import exactla as la
from .model import WeightedODCA

BOTH = (0, 1)


def build(alphabet, counter_states, initial, counter_edges, fsm_states, fsm_edges, lam, eta):
    """Assemble an ODCA from drawing-style edge lists.

    ``counter_edges`` holds ``(p, letters, tests, effect, q)`` and ``fsm_edges``
    holds ``(i, letters, tests, weight, j)``, where ``tests`` lists the
    zero-test outcomes (0 = counter is zero, 1 = positive) the edge is enabled
    for.
    """
    alphabet = tuple(alphabet)
    counter_states = tuple(counter_states)
    fsm_states = tuple(fsm_states)
    tables = {0: {}, 1: {}}
    for p, letters, tests, effect, q in counter_edges:
        for a in letters:
            for d in tests:
                if (p, a) in tables[d]:
                    raise ValueError(f"two counter moves from ({p}, {a}, {d})")
                tables[d][p, a] = (q, effect)
    for d in BOTH:
        for p in counter_states:
            for a in alphabet:
                tables[d].setdefault((p, a), (p, 0))
    qi = {q: i for i, q in enumerate(fsm_states)}
    n = len(fsm_states)
    mats = {(a, d): [[Fraction(0)] * n for _ in range(n)] for a in alphabet for d in BOTH}
    for i, letters, tests, w, j in fsm_edges:
        for a in letters:
            for d in tests:
                mats[a, d][qi[i]][qi[j]] += Fraction(w)
    return WeightedODCA(
        alphabet=alphabet,
        counter_states=counter_states,
        initial_counter_state=initial,
        delta0=tables[0],
        delta1=tables[1],
        fsm_states=fsm_states,
        lam=la.vector(lam),
        delta={k: la.matrix(m) for k, m in mats.items()},
        eta=la.vector(eta),
    )


def prefix_aware_decimal() -> WeightedODCA:
    """``w1·w2 ↦ binary value of w2`` (a = 1, b = 0) when ``w1 = a^n b a^n``, n > 0,
    and every prefix of ``w2`` has at least as many a's as b's; 0 otherwise."""
    return build(
        "ab",
        ["p0", "p1", "p2"],
        "p0",
        [
            ("p0", "a", BOTH, +1, "p0"),
            ("p0", "b", (1,), -1, "p1"),
            ("p1", "a", (1,), -1, "p1"),
            ("p1", "a", (0,), 0, "p2"),
            ("p2", "a", BOTH, +1, "p2"),
            ("p2", "b", (1,), -1, "p2"),
        ],
        ["q0", "q1", "q2", "q3"],
        [
            ("q0", "a", BOTH, 1, "q0"),
            ("q0", "b", (1,), 1, "q1"),
            ("q1", "a", (1,), 1, "q1"),
            ("q1", "a", (0,), 1, "q2"),
            ("q2", "a", BOTH, 1, "q2"),
            ("q2", "b", (1,), 1, "q2"),
            ("q2", "a", BOTH, 1, "q3"),
            ("q3", "a", BOTH, 2, "q3"),
            ("q3", "b", (1,), 2, "q3"),
        ],
        [1, 0, 0, 0],
        [0, 0, 0, 1],
    )


def prefix_aware_decimal_eta2() -> WeightedODCA:
    """prefixAwareDecimal with output weight 2 on q3."""
    from dataclasses import replace

    base = prefix_aware_decimal()
    return replace(base, eta=la.vector([0, 0, 0, 2]))


def equal_prefix_power() -> WeightedODCA:
    """``w ↦ 2^k`` with k the number of nonempty proper prefixes with as many a's as b's."""
    return build(
        "ab",
        ["p0", "p1"],
        "p0",
        [
            ("p0", "a", BOTH, +1, "p0"),
            ("p0", "b", (1,), -1, "p0"),
            ("p0", "b", (0,), +1, "p1"),
            ("p1", "b", BOTH, +1, "p1"),
            ("p1", "a", (1,), -1, "p1"),
            ("p1", "a", (0,), +1, "p0"),
        ],
        ["q0", "q1", "q2"],
        [
            ("q0", "a", (0,), 1, "q1"),
            ("q0", "b", (0,), 1, "q2"),
            ("q1", "a", (0,), 2, "q1"),
            ("q1", "ab", (1,), 1, "q1"),
            ("q1", "b", (0,), 2, "q2"),
            ("q2", "b", (0,), 2, "q2"),
            ("q2", "ab", (1,), 1, "q2"),
            ("q2", "a", (0,), 2, "q1"),
        ],
        [1, 0, 0],
        [0, 1, 1],
    )


def counter_oblivious() -> WeightedODCA:
    """Counts the a's; the matrices ignore the counter entirely."""
    a = [[1, 1], [0, 1]]
    b = [[1, 0], [0, 1]]
    return WeightedODCA(
        alphabet=("a", "b"),
        counter_states=("p0",),
        initial_counter_state="p0",
        delta0={("p0", "a"): ("p0", 1), ("p0", "b"): ("p0", 0)},
        delta1={("p0", "a"): ("p0", 1), ("p0", "b"): ("p0", -1)},
        fsm_states=("q0", "q1"),
        lam=la.vector([1, 0]),
        delta={("a", 0): la.matrix(a), ("a", 1): la.matrix(a),
               ("b", 0): la.matrix(b), ("b", 1): la.matrix(b)},
        eta=la.vector([0, 1]),
    )


def l1_weighted() -> WeightedODCA:
    """The ``{a^n b a^n | n > 0}`` machine with 0/1 rational weights."""
    return build(
        "ab",
        ["p0", "p1", "p2"],
        "p0",
        [
            ("p0", "a", BOTH, +1, "p0"),
            ("p0", "b", (1,), -1, "p1"),
            ("p1", "a", (1,), -1, "p1"),
            ("p1", "a", (0,), 0, "p2"),
        ],
        ["q0", "q1", "q2"],
        [
            ("q0", "a", BOTH, 1, "q0"),
            ("q0", "b", (1,), 1, "q1"),
            ("q1", "a", (1,), 1, "q1"),
            ("q1", "a", (0,), 1, "q2"),
        ],
        [1, 0, 0],
        [0, 0, 1],
    )


def l3_weighted(k: int = 2) -> WeightedODCA:
    """``{a^n (b+c)^m b (b+c)^k | m > n}`` for ``k = 2``, as drawn (nondeterministic)."""
    if k != 2:
        raise ValueError("only the drawn k = 2 machine is available")
    return build(
        "abc",
        ["p0", "p1"],
        "p0",
        [
            ("p0", "bc", (1,), -1, "p0"),
            ("p0", "a", BOTH, +1, "p0"),
            ("p0", "b", (0,), 0, "p1"),
            ("p1", "bc", BOTH, 0, "p1"),
        ],
        ["q0", "q1", "q2", "q3", "q4", "q5"],
        [
            ("q0", "a", BOTH, 1, "q0"),
            ("q0", "bc", (0,), 1, "q1"),
            ("q0", "bc", (1,), 1, "q2"),
            ("q1", "bc", (0,), 1, "q1"),
            ("q1", "b", (0,), 1, "q3"),
            ("q2", "bc", (1,), 1, "q2"),
            ("q2", "bc", (0,), 1, "q1"),
            ("q3", "bc", (0,), 1, "q4"),
            ("q4", "bc", (0,), 1, "q5"),
        ],
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
    )
