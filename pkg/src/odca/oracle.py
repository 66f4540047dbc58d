"""Brute-force reference implementations.

Nothing here imports the algorithmic modules: runs are simulated letter by
letter on plain lists of Fractions, every word is enumerated (no pruning) and
ranks come from a separate, textbook elimination.  The only shared piece is
the :class:`~odca.model.WeightedODCA` record, read field by field.
"""

from __future__ import annotations

import random
from collections import deque
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .model import WeightedODCA

DEFAULT_POOL = (Fraction(-1), Fraction(0), Fraction(0), Fraction(1), Fraction(1, 2))


def _step(odca: WeightedODCA, x: list, p: str, n: int, a: str):
    d = 1 if n > 0 else 0
    q, e = (odca.delta1 if d else odca.delta0)[p, a]
    m = odca.delta[a, d]
    size = len(x)
    y = [Fraction(0)] * size
    for i in range(size):
        if x[i] != 0:
            row = m[i]
            for j in range(size):
                y[j] += x[i] * row[j]
    return y, q, n + e


def simulate(odca: WeightedODCA, word: str, x=None, p=None, n: int = 0) -> Fraction:
    x = list(odca.lam if x is None else x)
    p = odca.initial_counter_state if p is None else p
    for a in word:
        if a not in odca.alphabet:
            raise ValueError(f"symbol {a!r} not in alphabet")
        x, p, n = _step(odca, x, p, n, a)
    return sum((xi * ei for xi, ei in zip(x, odca.eta)), Fraction(0))


def _words(alphabet: Sequence[str], max_len: int):
    for length in range(max_len + 1):
        if length == 0:
            yield ""
            continue
        idx = [0] * length
        while True:
            yield "".join(alphabet[i] for i in idx)
            k = length - 1
            while k >= 0 and idx[k] == len(alphabet) - 1:
                idx[k] = 0
                k -= 1
            if k < 0:
                break
            idx[k] += 1


def brute_equiv(a: WeightedODCA, b: WeightedODCA, max_len: int) -> Optional[str]:
    """First word in (length, lex) order with different weights, up to ``max_len``."""
    if tuple(a.alphabet) != tuple(b.alphabet):
        raise ValueError("machines have different alphabets")
    for w in _words(a.alphabet, max_len):
        if simulate(a, w) != simulate(b, w):
            return w
    return None


def _rank(rows: Iterable[Sequence], ncols: int) -> int:
    """Rank by plain forward elimination (no reduced form)."""
    m = [list(map(Fraction, r)) for r in rows]
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(rank + 1, len(m)):
            if m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                for c in range(col, ncols):
                    m[r][c] -= f * m[rank][c]
        rank += 1
    return rank


def outside(basis: Sequence[Sequence], x: Sequence, dim: int) -> bool:
    """``x`` is not a linear combination of ``basis``."""
    if not any(x):
        return False
    return _rank(list(basis) + [x], dim) > _rank(basis, dim)


def brute_reach(
    odca: WeightedODCA,
    c,
    v,
    s: Iterable[str],
    m: Optional[int] = None,
    word_cap: int = 8,
    counter_cap: int = 12,
) -> Optional[str]:
    """First word in (length, lex) order that leads from ``c`` to a counter
    state in ``s`` (with counter value ``m`` unless ``m`` is None) and a
    vector outside the span of ``v.basis``.  Branches whose counter passes
    ``counter_cap`` are dropped.
    """
    s = set(s)
    basis = [list(b) for b in v.basis]
    dim = v.dim
    base_rank = _rank(basis, dim)
    queue = deque([("", list(c.x), c.p, c.n)])
    while queue:
        w, x, p, n = queue.popleft()
        if p in s and (m is None or n == m) and any(x) and _rank(basis + [x], dim) > base_rank:
            return w
        if len(w) == word_cap:
            continue
        for a in odca.alphabet:
            y, q, k = _step(odca, x, p, n, a)
            if k <= counter_cap:
                queue.append((w + a, y, q, k))
    return None


lex_min_witness = brute_reach


def hankel_rank(f: Callable[[str], Fraction], L: int, alphabet: Sequence[str] = "ab") -> int:
    """Rank of ``[f(u·v)]`` over all ``|u|, |v| <= L``."""
    prefixes = list(_words(alphabet, L))
    rows = [[Fraction(f(u + v)) for v in prefixes] for u in prefixes]
    return _rank(rows, len(prefixes))


def random_odca(
    num_q: int,
    num_c: int,
    alphabet_size: int,
    weight_pool: Optional[Sequence] = None,
    seed: int = 0,
) -> WeightedODCA:
    """A machine drawn from ``random.Random(seed)``; same arguments, same machine."""
    if min(num_q, num_c, alphabet_size) < 1:
        raise ValueError("sizes must be at least 1")
    pool = tuple(Fraction(w) for w in (DEFAULT_POOL if weight_pool is None else weight_pool))
    rng = random.Random(seed)
    alphabet = tuple("abcdefghijklmnopqrstuvwxyz"[:alphabet_size])
    cs = tuple(f"p{i}" for i in range(num_c))
    qs = tuple(f"q{i}" for i in range(num_q))
    d0, d1 = {}, {}
    for p in cs:
        for a in alphabet:
            d0[p, a] = (rng.choice(cs), rng.choice((0, 1)))
            d1[p, a] = (rng.choice(cs), rng.choice((-1, 0, 1)))
    delta = {}
    for a in alphabet:
        for d in (0, 1):
            delta[a, d] = tuple(tuple(rng.choice(pool) for _ in qs) for _ in qs)
    lam = tuple(rng.choice(pool) for _ in qs)
    eta = tuple(rng.choice(pool) for _ in qs)
    return WeightedODCA(
        alphabet=alphabet,
        counter_states=cs,
        initial_counter_state=cs[0],
        delta0=d0,
        delta1=d1,
        fsm_states=qs,
        lam=lam,
        delta=delta,
        eta=eta,
    )
