"""Weighted one-counter automata with counter-determinacy, and their ODCAs.

A weighted OCA moves its counter per transition.  It is counter-deterministic
when all runs of a word from the initial states end with the same counter
value.  Then the counter can be driven by a separate deterministic structure
whose states ("colors") are classes of FSM states that are active together.

Colors are computed from the reachable supports ``(S, n)``: states that are
active together are merged, and so are the successors of merged states
(congruence closure).  If a class still mixes counter effects, the reachable
support sets themselves become the counter states.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from . import exactla as la
from .errors import AlphabetError, NotCounterDeterministic, ResourceLimitError
from .model import POSITIVE, ZERO_TEST, WeightedODCA, check, sgn


@dataclass(frozen=True, eq=False)
class WeightedOCA:
    """``trans0``/``trans1`` map ``(i, a, j)`` to ``(effect, weight)``; absent means weight 0."""

    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    lam: tuple[Fraction, ...]
    eta: tuple[Fraction, ...]
    trans0: Mapping[tuple[int, str, int], tuple[int, Fraction]]
    trans1: Mapping[tuple[int, str, int], tuple[int, Fraction]]

    @property
    def size(self) -> int:
        return len(self.states)

    def table(self, d: int):
        return self.trans1 if d == POSITIVE else self.trans0

    def outgoing(self):
        """``{(d, i, a): [(j, effect, weight), ...]}`` over nonzero transitions."""
        out: dict = {}
        for d in (ZERO_TEST, POSITIVE):
            for (i, a, j), (e, w) in sorted(self.table(d).items()):
                if w:
                    out.setdefault((d, i, a), []).append((j, e, w))
        return out


def validate_oca(oca: WeightedOCA) -> list[str]:
    problems = []
    n = oca.size
    if len(oca.lam) != n or len(oca.eta) != n:
        problems.append("lambda/eta length differs from the number of states")
    for d, allowed in ((ZERO_TEST, (0, 1)), (POSITIVE, (-1, 0, 1))):
        for (i, a, j), (e, _) in oca.table(d).items():
            if not (0 <= i < n and 0 <= j < n):
                problems.append(f"trans{d} entry ({i}, {a}, {j}) has a bad state index")
            if a not in oca.alphabet:
                problems.append(f"trans{d} entry ({i}, {a}, {j}) uses an unknown symbol")
            if e not in allowed:
                problems.append(f"trans{d} entry ({i}, {a}, {j}) has counter effect {e}")
    return problems


def oca_eval(oca: WeightedOCA, word) -> Fraction:
    """Sum over all runs; works with or without counter-determinacy."""
    out = oca.outgoing()
    conf = {(i, 0): x for i, x in enumerate(oca.lam) if x}
    for a in word:
        if a not in oca.alphabet:
            raise AlphabetError(f"symbol {a!r} not in alphabet")
        nxt: dict = {}
        for (i, n), x in conf.items():
            for j, e, w in out.get((sgn(n), i, a), ()):
                key = (j, n + e)
                nxt[key] = nxt.get(key, la.ZERO) + x * w
        conf = {k: v for k, v in nxt.items() if v}
    return sum((x * oca.eta[i] for (i, _), x in conf.items()), la.ZERO)


@dataclass(frozen=True)
class CounterViolation:
    word: str
    counters: tuple[int, int]


@dataclass(frozen=True)
class ColoringMap:
    """``color[i]`` is the least state index in the class of ``i``.

    ``live`` holds the classes that contain a reachable state.  Unreachable
    states keep a class of their own and never drive the counter.
    """

    color: tuple[int, ...]
    live: frozenset = frozenset()

    def classes(self) -> list[int]:
        return sorted(set(self.color))

    def live_classes(self) -> list[int]:
        return sorted(self.live)


# -- exploration -------------------------------------------------------------

def _abstract_size(oca: WeightedOCA, out) -> int:
    """Nodes of the ``(support, sign)`` graph where a decrement may or may not reach zero."""
    start = (frozenset(i for i, x in enumerate(oca.lam) if x), ZERO_TEST)
    seen = {start}
    queue = deque([start])
    while queue:
        s, d = queue.popleft()
        for a in oca.alphabet:
            succ = {}
            for i in s:
                for j, e, _ in out.get((d, i, a), ()):
                    succ.setdefault(e, set()).add(j)
            t = frozenset(j for js in succ.values() for j in js)
            if not t:
                continue
            signs = set()
            for e in succ:
                if d == ZERO_TEST:
                    signs.add(POSITIVE if e > 0 else ZERO_TEST)
                else:
                    signs.update((ZERO_TEST, POSITIVE) if e < 0 else (POSITIVE,))
            for d2 in signs:
                if (t, d2) not in seen:
                    seen.add((t, d2))
                    queue.append((t, d2))
    return len(seen)


def default_counter_cap(oca: WeightedOCA) -> int:
    r = _abstract_size(oca, oca.outgoing())
    return r * r + r


def _explore(oca: WeightedOCA, counter_cap: Optional[int], max_nodes: int):
    """Reachable ``(support, counter)`` pairs, or a violation.

    Returns ``(violation, nodes, moves)`` where ``moves`` maps a reached
    ``(support, sign, letter)`` to ``(successor support, effect)``.
    """
    out = oca.outgoing()
    cap = default_counter_cap(oca) if counter_cap is None else counter_cap
    start = (frozenset(i for i, x in enumerate(oca.lam) if x), 0)
    parents = {start: None}
    queue = deque([start])
    moves: dict = {}

    def word_of(node):
        letters = []
        while parents[node] is not None:
            node, a = parents[node]
            letters.append(a)
        return "".join(reversed(letters))

    while queue:
        node = queue.popleft()
        s, n = node
        d = sgn(n)
        for a in oca.alphabet:
            effects: dict = {}
            for i in s:
                for j, e, _ in out.get((d, i, a), ()):
                    effects.setdefault(e, set()).add(j)
            if not effects:
                continue
            if len(effects) > 1:
                e1, e2 = sorted(effects)[:2]
                return CounterViolation(word_of(node) + a, (n + e1, n + e2)), parents, moves
            (e, js), = effects.items()
            t = frozenset(js)
            moves[s, d, a] = (t, e)
            nxt = (t, n + e)
            if nxt[1] > cap or nxt in parents:
                continue
            if len(parents) >= max_nodes:
                raise ResourceLimitError(f"counter-determinacy search exceeded {max_nodes} nodes")
            parents[nxt] = (node, a)
            queue.append(nxt)
    return None, parents, moves


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j) -> bool:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        # smaller index stays representative
        if rj < ri:
            ri, rj = rj, ri
        self.parent[rj] = ri
        return True


def _coloring(oca: WeightedOCA, nodes) -> tuple[ColoringMap, set]:
    uf = _UnionFind(oca.size)
    active = set()
    for s, n in nodes:
        members = sorted(s)
        for i in members[1:]:
            uf.union(members[0], i)
        active.update((i, sgn(n)) for i in s)
    out = oca.outgoing()
    changed = True
    while changed:
        changed = False
        groups: dict = {}
        for i, d in active:
            for a in oca.alphabet:
                for j, _, _ in out.get((d, i, a), ()):
                    groups.setdefault((uf.find(i), d, a), []).append(j)
        for js in groups.values():
            for j in js[1:]:
                changed |= uf.union(js[0], j)
    color = tuple(uf.find(i) for i in range(oca.size))
    return ColoringMap(color, frozenset(color[i] for i, _ in active)), active


def check_counter_determinacy(oca: WeightedOCA, counter_cap: Optional[int] = None,
                              max_nodes: int = 10 ** 6):
    """A :class:`ColoringMap`, or a :class:`CounterViolation` with a concrete word."""
    violation, nodes, _ = _explore(oca, counter_cap, max_nodes)
    if violation is not None:
        return violation
    return _coloring(oca, nodes)[0]


# -- translations ------------------------------------------------------------

def _matrices(oca: WeightedOCA):
    n = oca.size
    mats = {}
    for a in oca.alphabet:
        for d in (ZERO_TEST, POSITIVE):
            rows = [[la.ZERO] * n for _ in range(n)]
            for (i, b, j), (_, w) in oca.table(d).items():
                if b == a:
                    rows[i][j] = Fraction(w)
            mats[a, d] = la.matrix(rows)
    return mats


def _color_moves(oca, coloring, active):
    """Counter moves per color, or None if some color mixes effects."""
    out = oca.outgoing()
    color = coloring.color
    d0, d1 = {}, {}
    for d, table in ((ZERO_TEST, d0), (POSITIVE, d1)):
        for c in coloring.live_classes():
            for a in oca.alphabet:
                seen = set()
                for i in range(oca.size):
                    if color[i] != c or (i, d) not in active:
                        continue
                    for j, e, _ in out.get((d, i, a), ()):
                        seen.add((color[j], e))
                if len(seen) > 1:
                    return None
                if seen:
                    (target, e), = seen
                    table[f"c{c}", a] = (f"c{target}", e)
                else:
                    # no active state moves: the vector becomes zero anyway
                    table[f"c{c}", a] = (f"c{c}", 0)
    return d0, d1


def oca_to_odca(oca: WeightedOCA, counter_cap: Optional[int] = None, max_nodes: int = 10 ** 6) -> WeightedODCA:
    violation, nodes, moves = _explore(oca, counter_cap, max_nodes)
    if violation is not None:
        raise NotCounterDeterministic(violation)
    coloring, active = _coloring(oca, nodes)
    mats = _matrices(oca)
    support = frozenset(i for i, x in enumerate(oca.lam) if x)
    tables = _color_moves(oca, coloring, active)
    if tables is not None:
        d0, d1 = tables
        if support:
            counter_states = tuple(f"c{c}" for c in coloring.live_classes())
            p0 = f"c{coloring.color[min(support)]}"
        else:
            # nothing is ever active: one idle counter state will do
            counter_states, p0 = ("c0",), "c0"
            d0 = {("c0", a): ("c0", 0) for a in oca.alphabet}
            d1 = dict(d0)
    else:
        d0, d1, counter_states, p0 = _support_structure(oca, nodes, moves, support)
    return check(WeightedODCA(
        alphabet=oca.alphabet,
        counter_states=counter_states,
        initial_counter_state=p0,
        delta0=d0,
        delta1=d1,
        fsm_states=oca.states,
        lam=tuple(Fraction(x) for x in oca.lam),
        delta=mats,
        eta=tuple(Fraction(x) for x in oca.eta),
    ))


def _support_structure(oca, nodes, moves, support):
    """Counter states = reachable supports; used when colors mix effects."""
    order = sorted({s for s, _ in nodes}, key=lambda s: (len(s), sorted(s)))
    name = {s: "{" + ",".join(oca.states[i] for i in sorted(s)) + "}" for s in order}
    d0, d1 = {}, {}
    for s in order:
        for a in oca.alphabet:
            for d, table in ((ZERO_TEST, d0), (POSITIVE, d1)):
                hit = moves.get((s, d, a))
                if hit is None or hit[0] not in name:
                    table[name[s], a] = (name[s], 0)
                else:
                    table[name[s], a] = (name[hit[0]], hit[1])
    return d0, d1, tuple(name[s] for s in order), name[support]


def odca_to_oca(odca: WeightedODCA) -> WeightedOCA:
    """Product states ``C × Q``; state ``(p, q)`` has index ``index(p)·|Q| + index(q)``."""
    nq = odca.fsm_size
    cidx = {p: k for k, p in enumerate(odca.counter_states)}
    states = tuple(f"{p}.{q}" for p in odca.counter_states for q in odca.fsm_states)
    trans = {ZERO_TEST: {}, POSITIVE: {}}
    for d, table in ((ZERO_TEST, odca.delta0), (POSITIVE, odca.delta1)):
        for (p, a), (q, e) in table.items():
            m = odca.delta[a, d]
            for i in range(nq):
                for j in range(nq):
                    if m[i][j]:
                        trans[d][cidx[p] * nq + i, a, cidx[q] * nq + j] = (e, m[i][j])
    zero = (la.ZERO,) * nq
    lam = []
    for p in odca.counter_states:
        lam.extend(odca.lam if p == odca.initial_counter_state else zero)
    return WeightedOCA(
        alphabet=odca.alphabet,
        states=states,
        lam=tuple(lam),
        eta=tuple(odca.eta) * len(odca.counter_states),
        trans0=trans[ZERO_TEST],
        trans1=trans[POSITIVE],
    )


def violating_oca() -> WeightedOCA:
    """Two initial states whose counters split on ``aa``.

    State ``u`` increments on every ``a``.  State ``v`` increments once and
    hands over to ``w``, which decrements.
    """
    one = la.ONE
    return WeightedOCA(
        alphabet=("a", "b"),
        states=("u", "v", "w"),
        lam=(one, one, la.ZERO),
        eta=(one, one, one),
        trans0={(0, "a", 0): (1, one), (1, "a", 2): (1, one)},
        trans1={(0, "a", 0): (1, one), (2, "a", 2): (-1, one)},
    )
