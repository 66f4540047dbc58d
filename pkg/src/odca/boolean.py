"""ODCAs over the boolean semiring.

The counter structure is still deterministic; only the finite state machine
may be nondeterministic.  A run therefore carries a set of active FSM states
along the unique counter trajectory, and the subset construction gives an
equivalent machine with the same counter structure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional

from . import exactla as la
from . import fixtures
from .equiv import EquivVerdict, odca_equiv
from .errors import AlphabetError, ValidationError
from .model import POSITIVE, ZERO_TEST, WeightedODCA, sgn

BoolMatrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class BooleanODCA:
    alphabet: tuple[str, ...]
    counter_states: tuple[str, ...]
    initial_counter_state: str
    delta0: Mapping[tuple[str, str], tuple[str, int]]
    delta1: Mapping[tuple[str, str], tuple[str, int]]
    fsm_states: tuple[str, ...]
    lam: tuple[int, ...]
    delta: Mapping[tuple[str, int], BoolMatrix]
    eta: tuple[int, ...]

    @property
    def fsm_size(self) -> int:
        return len(self.fsm_states)

    def move(self, p, a, n):
        return (self.delta1 if n > 0 else self.delta0)[p, a]

    def successors(self, active: frozenset, a: str, d: int) -> frozenset:
        m = self.delta[a, d]
        return frozenset(j for i in active for j, bit in enumerate(m[i]) if bit)

    def initial_set(self) -> frozenset:
        return frozenset(i for i, bit in enumerate(self.lam) if bit)

    def accepts_set(self, active) -> bool:
        return any(self.eta[i] for i in active)


def validate_boolean(b: BooleanODCA) -> list[str]:
    """Structural problems, reusing the weighted checks on a 0/1 copy."""
    problems = []
    for name, vec in (("lambda", b.lam), ("eta", b.eta)):
        if any(x not in (0, 1) for x in vec):
            problems.append(f"{name} has entries outside {{0, 1}}")
    for key, m in b.delta.items():
        if any(x not in (0, 1) for row in m for x in row):
            problems.append(f"matrix for {key} has entries outside {{0, 1}}")
    from .model import validate

    return problems + validate(_as_weighted(b))


def _as_weighted(b: BooleanODCA) -> WeightedODCA:
    return WeightedODCA(
        alphabet=b.alphabet,
        counter_states=b.counter_states,
        initial_counter_state=b.initial_counter_state,
        delta0=b.delta0,
        delta1=b.delta1,
        fsm_states=b.fsm_states,
        lam=la.vector(b.lam),
        delta={k: la.matrix(m) for k, m in b.delta.items()},
        eta=la.vector(b.eta),
    )


def from_weighted(w: WeightedODCA) -> BooleanODCA:
    """Read a machine with 0/1 weights as a boolean ODCA."""
    def bit(x):
        if x not in (0, 1):
            raise ValidationError(f"weight {x} is not boolean")
        return int(x)

    return BooleanODCA(
        alphabet=w.alphabet,
        counter_states=w.counter_states,
        initial_counter_state=w.initial_counter_state,
        delta0=dict(w.delta0),
        delta1=dict(w.delta1),
        fsm_states=w.fsm_states,
        lam=tuple(bit(x) for x in w.lam),
        delta={k: tuple(tuple(bit(x) for x in row) for row in m) for k, m in w.delta.items()},
        eta=tuple(bit(x) for x in w.eta),
    )


def bool_eval(b: BooleanODCA, word) -> int:
    active = b.initial_set()
    p, n = b.initial_counter_state, 0
    for a in word:
        if a not in b.alphabet:
            raise AlphabetError(f"symbol {a!r} not in alphabet")
        active = b.successors(active, a, sgn(n))
        p, e = b.move(p, a, n)
        n += e
    return int(b.accepts_set(active))


def _subset_name(b: BooleanODCA, s: frozenset) -> str:
    return "{" + ",".join(b.fsm_states[i] for i in sorted(s)) + "}"


def determinize(b: BooleanODCA) -> BooleanODCA:
    """Subset construction over the subsets reachable by some letter/test sequence."""
    start = b.initial_set()
    order = [start]
    index = {start: 0}
    queue = deque([start])
    edges = {}
    while queue:
        s = queue.popleft()
        for a in b.alphabet:
            for d in (ZERO_TEST, POSITIVE):
                t = b.successors(s, a, d)
                if t not in index:
                    index[t] = len(order)
                    order.append(t)
                    queue.append(t)
                edges[s, a, d] = t
    n = len(order)
    delta = {}
    for a in b.alphabet:
        for d in (ZERO_TEST, POSITIVE):
            rows = []
            for s in order:
                row = [0] * n
                row[index[edges[s, a, d]]] = 1
                rows.append(tuple(row))
            delta[a, d] = tuple(rows)
    return BooleanODCA(
        alphabet=b.alphabet,
        counter_states=b.counter_states,
        initial_counter_state=b.initial_counter_state,
        delta0=dict(b.delta0),
        delta1=dict(b.delta1),
        fsm_states=tuple(_subset_name(b, s) for s in order),
        lam=tuple(1 if i == 0 else 0 for i in range(n)),
        delta=delta,
        eta=tuple(int(b.accepts_set(s)) for s in order),
    )


def default_counter_cap(b: BooleanODCA) -> int:
    return (len(b.counter_states) * 2 ** b.fsm_size) ** 2


def is_deterministic(b: BooleanODCA, counter_cap: Optional[int] = None) -> bool:
    """No reachable configuration (counter at most ``counter_cap``) has two active states.

    A configuration with no active state is allowed: the machine has simply
    stopped, as in drawings that leave transitions out.
    """
    cap = default_counter_cap(b) if counter_cap is None else counter_cap
    if cap < 1:
        raise ValueError("counter cap must be at least 1")
    # one initial state and at most one successor per state: nothing to search
    if sum(b.lam) <= 1 and all(sum(row) <= 1 for m in b.delta.values() for row in m):
        return True
    start = (b.initial_counter_state, b.initial_set(), 0)
    seen = {start}
    queue = deque([start])
    while queue:
        p, s, n = queue.popleft()
        if len(s) > 1:
            return False
        for a in b.alphabet:
            t = b.successors(s, a, sgn(n))
            q, e = b.move(p, a, n)
            nxt = (q, t, n + e)
            if n + e <= cap and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


def embed_rational(b: BooleanODCA) -> WeightedODCA:
    """The same machine over the rationals; needs at most one active state at a time."""
    if not is_deterministic(b):
        raise ValidationError("boolean ODCA is not deterministic")
    return _as_weighted(b)


def bool_equiv(a: BooleanODCA, b: BooleanODCA, bound: Optional[int] = None, **kwargs) -> EquivVerdict:
    if tuple(a.alphabet) != tuple(b.alphabet):
        raise AlphabetError("machines have different alphabets")
    return odca_equiv(embed_rational(determinize(a)), embed_rational(determinize(b)), bound, **kwargs)


def l1() -> BooleanODCA:
    """``{a^n b a^n | n > 0}``."""
    return from_weighted(fixtures.l1_weighted())


def l3(k: int = 2) -> BooleanODCA:
    """``{a^n (b+c)^m b (b+c)^k | m > n}`` for ``k = 2``."""
    return from_weighted(fixtures.l3_weighted(k))
