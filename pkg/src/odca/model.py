"""Weighted one-deterministic-counter automata and their run semantics.

An ODCA is a deterministic counter structure (counter states, moves ``delta0``
used when the counter is zero and ``delta1`` when it is positive) running in
lockstep with a weighted finite state machine whose transition matrix depends
on the letter and on whether the counter is zero.

This module also builds the finite objects the decision procedures work on:
the M-unfolding (a :class:`ControlledWA`), the underlying uninitialised
weighted automaton, and the embeddings of configurations and spaces into the
unfolding's state space.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from . import exactla as la
from .errors import AlphabetError, DimensionError, ValidationError
from .exactla import Matrix, Vector, VectorSpace

ZERO_TEST = 0
POSITIVE = 1


def sgn(n: int) -> int:
    return POSITIVE if n > 0 else ZERO_TEST


@dataclass(frozen=True, eq=False)
class WeightedODCA:
    alphabet: tuple[str, ...]
    counter_states: tuple[str, ...]
    initial_counter_state: str
    delta0: Mapping[tuple[str, str], tuple[str, int]]
    delta1: Mapping[tuple[str, str], tuple[str, int]]
    fsm_states: tuple[str, ...]
    lam: Vector
    delta: Mapping[tuple[str, int], Matrix]
    eta: Vector

    @property
    def fsm_size(self) -> int:
        return len(self.fsm_states)

    @property
    def K(self) -> int:
        """``|Q|·|C|``, the size parameter of every bound."""
        return self.fsm_size * len(self.counter_states)

    def move(self, p: str, a: str, n: int) -> tuple[str, int]:
        table = self.delta1 if n > 0 else self.delta0
        return table[p, a]

    def check_symbol(self, a: str) -> None:
        if a not in self.alphabet:
            raise AlphabetError(f"symbol {a!r} not in alphabet {''.join(self.alphabet)!r}")

    def __eq__(self, other):
        if not isinstance(other, WeightedODCA):
            return NotImplemented
        return (self.alphabet, self.counter_states, self.initial_counter_state,
                dict(self.delta0), dict(self.delta1), self.fsm_states, self.lam,
                dict(self.delta), self.eta) == (
                other.alphabet, other.counter_states, other.initial_counter_state,
                dict(other.delta0), dict(other.delta1), other.fsm_states, other.lam,
                dict(other.delta), other.eta)


@dataclass(frozen=True)
class Configuration:
    x: Vector
    p: str
    n: int = 0


@dataclass(frozen=True)
class RunResult:
    final: Configuration
    weight_effect: Matrix
    counter_effect: int
    min_counter: int
    max_counter: int
    floating: bool
    trace: tuple[Configuration, ...] = field(default=(), repr=False)


def validate(odca: WeightedODCA) -> list[str]:
    """Every structural problem with ``odca``; empty when it is well formed."""
    problems = []
    if len(set(odca.alphabet)) != len(odca.alphabet):
        problems.append("alphabet symbols are not distinct")
    for a in odca.alphabet:
        if not isinstance(a, str) or len(a) != 1:
            problems.append(f"symbol {a!r} is not a single character")
    if not odca.counter_states:
        problems.append("no counter states")
    if len(set(odca.counter_states)) != len(odca.counter_states):
        problems.append("counter state names are not distinct")
    if odca.initial_counter_state not in odca.counter_states:
        problems.append(f"initial counter state {odca.initial_counter_state!r} is unknown")
    if not odca.fsm_states:
        problems.append("no finite-state-machine states")
    cs = set(odca.counter_states)
    for name, table, allowed in (("delta0", odca.delta0, (0, 1)), ("delta1", odca.delta1, (-1, 0, 1))):
        for p in odca.counter_states:
            for a in odca.alphabet:
                if (p, a) not in table:
                    problems.append(f"{name} missing entry for ({p}, {a})")
                    continue
                q, e = table[p, a]
                if q not in cs:
                    problems.append(f"{name}({p}, {a}) targets unknown counter state {q!r}")
                if e not in allowed:
                    problems.append(f"{name}({p}, {a}) has counter effect {e}, allowed {allowed}")
        for key in table:
            if key[0] not in cs or key[1] not in odca.alphabet:
                problems.append(f"{name} has an entry for unknown ({key[0]}, {key[1]})")
    n = odca.fsm_size
    if len(odca.lam) != n:
        problems.append(f"lambda has length {len(odca.lam)}, expected {n}")
    if len(odca.eta) != n:
        problems.append(f"eta has length {len(odca.eta)}, expected {n}")
    for a in odca.alphabet:
        for d in (ZERO_TEST, POSITIVE):
            m = odca.delta.get((a, d))
            if m is None:
                problems.append(f"missing matrix for ({a}, {'zero' if d == 0 else 'pos'})")
            elif la.shape(m) != (n, n) or any(len(r) != n for r in m):
                problems.append(f"matrix for ({a}, {'zero' if d == 0 else 'pos'}) is not {n}x{n}")
    return problems


def check(odca: WeightedODCA) -> WeightedODCA:
    problems = validate(odca)
    if problems:
        raise ValidationError(problems)
    return odca


def initial_config(odca: WeightedODCA) -> Configuration:
    return Configuration(odca.lam, odca.initial_counter_state, 0)


def with_initial(odca: WeightedODCA, x: Sequence, p: str) -> WeightedODCA:
    """The machine started from configuration ``(x, p, 0)``."""
    if len(x) != odca.fsm_size:
        raise DimensionError(f"initial vector of length {len(x)}, expected {odca.fsm_size}")
    if p not in odca.counter_states:
        raise ValidationError(f"unknown counter state {p!r}")
    return replace(odca, lam=la.vector(x), initial_counter_state=p)


def step(odca: WeightedODCA, c: Configuration, a: str) -> Configuration:
    odca.check_symbol(a)
    d = sgn(c.n)
    q, e = odca.move(c.p, a, c.n)
    return Configuration(la.vec_mat(c.x, odca.delta[a, d]), q, c.n + e)


def run(odca: WeightedODCA, c: Configuration, word: Iterable[str]) -> RunResult:
    n = odca.fsm_size
    we = la.identity(n)
    trace = [c]
    lo = hi = c.n
    floating = True
    word = list(word)
    for i, a in enumerate(word):
        odca.check_symbol(a)
        d = sgn(c.n)
        if d == ZERO_TEST and i < len(word) - 1:
            floating = False
        we = la.mat_mul(we, odca.delta[a, d])
        c = step(odca, c, a)
        assert c.n >= 0, "counter went negative"
        lo, hi = min(lo, c.n), max(hi, c.n)
        trace.append(c)
    return RunResult(
        final=c,
        weight_effect=we,
        counter_effect=c.n - trace[0].n,
        min_counter=lo,
        max_counter=hi,
        floating=floating,
        trace=tuple(trace),
    )


def evaluate(odca: WeightedODCA, word: Iterable[str], start: Optional[Configuration] = None) -> Fraction:
    """Accepting weight of ``word`` from ``start`` (default: the initial configuration)."""
    c = start or initial_config(odca)
    for a in word:
        c = step(odca, c, a)
    return la.dot(c.x, odca.eta)


def counter_trajectory(odca: WeightedODCA, word: Iterable[str], p: Optional[str] = None, n: int = 0):
    """``[(p0, n0), (p1, n1), ...]`` along ``word``; independent of the weights."""
    p = odca.initial_counter_state if p is None else p
    out = [(p, n)]
    for a in word:
        odca.check_symbol(a)
        p, e = odca.move(p, a, n)
        n += e
        out.append((p, n))
    return out


# -- machine surgery ---------------------------------------------------------

def pad(odca: WeightedODCA, fsm_size: int, counter_size: int) -> WeightedODCA:
    """Add unreachable zero-weight FSM states and self-looping counter states."""
    nq, nc = odca.fsm_size, len(odca.counter_states)
    if fsm_size < nq or counter_size < nc:
        raise ValueError("cannot pad to a smaller size")
    extra_q = fsm_size - nq
    new_c = [f"_pad{i}" for i in range(counter_size - nc)]
    cstates = odca.counter_states + tuple(new_c)
    d0, d1 = dict(odca.delta0), dict(odca.delta1)
    for p in new_c:
        for a in odca.alphabet:
            d0[p, a] = (p, 0)
            d1[p, a] = (p, 0)
    pad_vec = (la.ZERO,) * extra_q
    delta = {}
    for key, m in odca.delta.items():
        delta[key] = tuple(r + pad_vec for r in m) + tuple((la.ZERO,) * fsm_size for _ in range(extra_q))
    return WeightedODCA(
        alphabet=odca.alphabet,
        counter_states=cstates,
        initial_counter_state=odca.initial_counter_state,
        delta0=d0,
        delta1=d1,
        fsm_states=odca.fsm_states + tuple(f"_pad{i}" for i in range(extra_q)),
        lam=odca.lam + pad_vec,
        delta=delta,
        eta=odca.eta + pad_vec,
    )


def disjoint_union(a: WeightedODCA, b: WeightedODCA) -> WeightedODCA:
    """Side-by-side copy of two machines; starts wherever ``a`` starts.

    Counter states and FSM states of ``b`` are renamed with a ``'`` suffix.
    """
    if a.alphabet != b.alphabet:
        raise AlphabetError("disjoint union needs equal alphabets")
    ren = {p: p + "'" for p in b.counter_states}
    d0 = dict(a.delta0)
    d1 = dict(a.delta1)
    for (p, x), (q, e) in b.delta0.items():
        d0[ren[p], x] = (ren[q], e)
    for (p, x), (q, e) in b.delta1.items():
        d1[ren[p], x] = (ren[q], e)
    delta = {key: la.block_diag(a.delta[key], b.delta[key]) for key in a.delta}
    return WeightedODCA(
        alphabet=a.alphabet,
        counter_states=a.counter_states + tuple(ren[p] for p in b.counter_states),
        initial_counter_state=a.initial_counter_state,
        delta0=d0,
        delta1=d1,
        fsm_states=a.fsm_states + tuple(q + "'" for q in b.fsm_states),
        lam=a.lam + la.zero_vector(b.fsm_size),
        delta=delta,
        eta=a.eta + b.eta,
    )


# -- controlled weighted automata -------------------------------------------

DEAD = ("<dead>",)


class ControlledWA:
    """A weighted automaton steered by a deterministic control component.

    The control decides which matrix is applied next.  Vectors are kept in the
    control's local coordinates: at control ``c`` they have ``dim(c)``
    entries.  ``dead_control`` is an absorbing sink whose vectors are zero.

    Subclasses provide :meth:`move`, :meth:`matrix`, :meth:`eta` and
    :meth:`dim`.
    """

    alphabet: tuple[str, ...]
    initial_control: Hashable
    lam: Vector
    dead_control: Hashable = DEAD

    def move(self, control, a):
        raise NotImplementedError

    def matrix(self, control, a) -> Matrix:
        raise NotImplementedError

    def eta(self, control) -> Vector:
        raise NotImplementedError

    def dim(self, control) -> int:
        raise NotImplementedError

    def step(self, control, v: Vector, a: str):
        nxt = self.move(control, a)
        if nxt == self.dead_control:
            return nxt, la.zero_vector(self.dim(nxt))
        return nxt, la.vec_mat(v, self.matrix(control, a), self.dim(nxt))

    def run(self, word: Iterable[str], control=None, v: Optional[Vector] = None):
        if control is None:
            control, v = self.initial_control, self.lam
        for a in word:
            if a not in self.alphabet:
                raise AlphabetError(f"symbol {a!r} not in alphabet")
            control, v = self.step(control, v, a)
        return control, v

    def evaluate(self, word: Iterable[str], control=None, v: Optional[Vector] = None) -> Fraction:
        control, v = self.run(word, control, v)
        if control == self.dead_control:
            return la.ZERO
        return la.dot(v, self.eta(control))


class TableWA(ControlledWA):
    """A ControlledWA given by explicit finite tables.

    ``ctrl`` may be partial; missing moves go to the dead control.  All live
    controls share the dimension ``wa_size``.
    """

    def __init__(self, alphabet, controls, ctrl, initial_control, wa_size, lam, delta, eta):
        self.alphabet = tuple(alphabet)
        self.controls = tuple(controls)
        self.ctrl = dict(ctrl)
        self.initial_control = initial_control
        self.wa_size = wa_size
        self.lam = la.vector(lam)
        self.delta = {k: la.matrix(m) for k, m in delta.items()}
        self._eta = {c: la.vector(v) for c, v in eta.items()} if isinstance(eta, Mapping) else None
        self._eta_all = None if self._eta is not None else la.vector(eta)

    def move(self, control, a):
        if control == self.dead_control:
            return control
        return self.ctrl.get((control, a), self.dead_control)

    def matrix(self, control, a):
        m = self.delta.get((control, a))
        return m if m is not None else la.zero_matrix(self.wa_size, self.wa_size)

    def eta(self, control):
        if control == self.dead_control:
            return la.zero_vector(self.wa_size)
        if self._eta is not None:
            return self._eta.get(control, la.zero_vector(self.wa_size))
        return self._eta_all

    def dim(self, control):
        return self.wa_size


class Unfolding(ControlledWA):
    """The M-unfolding of an ODCA.

    Controls are ``(p, m)`` with ``m <= M``.  The FSM state space is
    ``Q × [0, M]``; a vector at control ``(p, m)`` lives entirely in block
    ``m``, so it is stored as that block alone.  Moves that would push the
    counter past ``M`` lead to the dead control.
    """

    def __init__(self, odca: WeightedODCA, M: int):
        if M < 0:
            raise ValueError("unfolding bound must be non-negative")
        self.odca = odca
        self.M = M
        self.alphabet = odca.alphabet
        self.initial_control = (odca.initial_counter_state, 0)
        self.lam = odca.lam
        self._zero = la.zero_matrix(odca.fsm_size, odca.fsm_size)

    @property
    def state_count(self) -> int:
        return self.odca.fsm_size * (self.M + 1)

    def controls(self):
        return [(p, m) for m in range(self.M + 1) for p in self.odca.counter_states]

    def move(self, control, a):
        if control == self.dead_control:
            return control
        p, m = control
        q, e = self.odca.move(p, a, m)
        if m + e > self.M:
            return self.dead_control
        return (q, m + e)

    def matrix(self, control, a):
        if control == self.dead_control or self.move(control, a) == self.dead_control:
            return self._zero
        return self.odca.delta[a, sgn(control[1])]

    def eta(self, control):
        if control == self.dead_control:
            return la.zero_vector(self.odca.fsm_size)
        return self.odca.eta

    def dim(self, control):
        return self.odca.fsm_size

    def level(self, control) -> int:
        return control[1]

    def to_global(self, control, v: Vector) -> Vector:
        """Place a local vector into its block of the ``|Q|·(M+1)`` space."""
        n = self.odca.fsm_size
        out = [la.ZERO] * self.state_count
        if control != self.dead_control:
            m = self.level(control)
            out[m * n:(m + 1) * n] = v
        return tuple(out)

    def from_global(self, control, z: Vector) -> Vector:
        n = self.odca.fsm_size
        m = self.level(control)
        return tuple(z[m * n:(m + 1) * n])


def unfold(odca: WeightedODCA, M: int) -> Unfolding:
    return Unfolding(odca, M)


def embed_config(odca: WeightedODCA, c: Configuration, M: int) -> tuple[tuple[str, int], Vector]:
    """Control ``(p, n)`` and the ``|Q|·(M+1)`` vector with ``x`` in block ``n``."""
    if c.n > M:
        raise ValueError(f"counter value {c.n} exceeds unfolding bound {M}")
    if len(c.x) != odca.fsm_size:
        raise DimensionError("configuration vector does not match the machine")
    control = (c.p, c.n)
    return control, Unfolding(odca, M).to_global(control, c.x)


def lift_space(v: VectorSpace, m: int, M: int) -> VectorSpace:
    """``v`` placed in block ``m`` of ``Q^(|Q|·(M+1))``."""
    if m > M:
        raise ValueError(f"level {m} exceeds unfolding bound {M}")
    n = v.dim
    before = (la.ZERO,) * (n * m)
    after = (la.ZERO,) * (n * (M - m))
    return VectorSpace(n * (M + 1), tuple(before + b + after for b in v.basis))


# -- underlying uninitialised weighted automaton -----------------------------

@dataclass(frozen=True, eq=False)
class UninitialisedWA:
    alphabet: tuple[str, ...]
    size: int
    delta: Mapping[str, Matrix]
    eta: Vector

    def weight(self, y: Sequence, word: Iterable[str]) -> Fraction:
        v = tuple(y)
        for a in word:
            v = la.vec_mat(v, self.delta[a])
        return la.dot(v, self.eta)


def underlying_wa(odca: WeightedODCA) -> UninitialisedWA:
    """Zero-test-free WA on ``C × Q`` following ``delta1`` and the positive matrices.

    State ``(p, i)`` has index ``index(p)·|Q| + i``.
    """
    n = odca.fsm_size
    cidx = {p: k for k, p in enumerate(odca.counter_states)}
    size = n * len(odca.counter_states)
    delta = {}
    for a in odca.alphabet:
        rows = [[la.ZERO] * size for _ in range(size)]
        pos = odca.delta[a, POSITIVE]
        for p in odca.counter_states:
            q, _ = odca.delta1[p, a]
            bp, bq = cidx[p] * n, cidx[q] * n
            for i in range(n):
                for j in range(n):
                    rows[bp + i][bq + j] = pos[i][j]
        delta[a] = la.matrix(rows)
    eta = odca.eta * len(odca.counter_states)
    return UninitialisedWA(odca.alphabet, size, delta, eta)


def uwa_embed(odca: WeightedODCA, x: Sequence, p: str) -> Vector:
    """The uwa vector that carries ``x`` in counter-state block ``p``."""
    n = odca.fsm_size
    k = odca.counter_states.index(p)
    out = [la.ZERO] * (n * len(odca.counter_states))
    out[k * n:(k + 1) * n] = x
    return tuple(out)


def words(alphabet: Sequence[str], max_len: int, min_len: int = 0):
    """All words with ``min_len <= |w| <= max_len`` in (length, lex) order."""
    layer = [""]
    for length in range(max_len + 1):
        if length >= min_len:
            yield from layer
        if length < max_len:
            layer = [w + a for w in layer for a in alphabet]
