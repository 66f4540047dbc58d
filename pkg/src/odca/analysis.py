"""Regularity and covering.

Regularity.  Write ``KN = |C|·|Q|``.  ``W[p, m]`` is the space of vectors
``x`` for which the configuration ``(x, p, m)`` agrees on every word of
length at most ``KN`` with some configuration of the underlying uninitialised
WA.  The machine is not regular exactly when some run climbs to a counter value
in ``[KN²+KN, 2KN²+KN]`` and later reaches ``(x, p, m)`` with ``m < KN`` and
``x`` outside ``W[p, m]``.  That is one co-VS reachability query on an
unfolding whose control also remembers whether the climb has happened.

Covering.  ``a2`` covers ``a1`` when every start of ``a1`` has an equivalent
start of ``a2``.  By linearity it is enough to handle the unit vectors
``e_j`` at every counter state ``q`` of ``a1``, all matched from one common
counter state ``p`` of ``a2``.  The weights on ``p`` are learned from
counterexamples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import exactla as la
from .equiv import config_equiv
from .errors import AlphabetError
from .exactla import VectorSpace
from .model import (
    DEAD,
    POSITIVE,
    Configuration,
    ControlledWA,
    WeightedODCA,
    evaluate,
    sgn,
    underlying_wa,
)
from .wa_algo import wa_covs_reach


# -- W spaces ----------------------------------------------------------------

def _mat_col(m, c):
    """``m·c`` for a column vector ``c``."""
    return tuple(la.dot(row, c) for row in m)


class _JointSpans:
    """Spans of joint columns ``(c_w, d_w)`` over all words with ``|w| <= k``.

    ``c_w`` is the column with ``x·c_w = f(w, (x, p, n))`` and ``d_w`` the
    column with ``y·d_w`` the uwa weight of ``w`` from ``y``.
    """

    def __init__(self, odca: WeightedODCA):
        self.odca = odca
        self.uwa = underlying_wa(odca)
        self.nq = odca.fsm_size
        self.dim = self.nq + self.uwa.size
        self.memo: dict = {}
        base = tuple(odca.eta) + tuple(self.uwa.eta)
        self.base = VectorSpace.span(self.dim, [base])

    def span(self, p: str, n: int, k: int) -> VectorSpace:
        # from counter >= k no zero test fires within k letters
        n = min(n, k)
        key = (p, n, k)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if k == 0:
            self.memo[key] = self.base
            return self.base
        odca, nq = self.odca, self.nq
        vectors = list(self.base.basis)
        for a in odca.alphabet:
            q, e = odca.move(p, a, n)
            m_top = odca.delta[a, sgn(n)]
            m_bot = self.uwa.delta[a]
            for col in self.span(q, n + e, k - 1).basis:
                vectors.append(_mat_col(m_top, col[:nq]) + _mat_col(m_bot, col[nq:]))
        out = VectorSpace.span(self.dim, vectors)
        self.memo[key] = out
        return out


def w_space_table(odca: WeightedODCA) -> dict:
    """``{(p, m): W[p, m]}`` for every counter state ``p`` and ``m < KN``."""
    KN = odca.K
    spans = _JointSpans(odca)
    nq = odca.fsm_size
    table = {}
    for m in range(KN):
        for p in odca.counter_states:
            basis = spans.span(p, m, KN).basis
            # x ∈ W  iff  x·C lies in the row space of D
            top = la.transpose([b[:nq] for b in basis], nq) if basis else la.zero_matrix(nq, 0)
            bottom = la.transpose([b[nq:] for b in basis], spans.uwa.size) if basis else ()
            image = la.image_space(bottom, len(basis))
            table[p, m] = la.preimage_space(image, top, nq)
    return table


# -- regularity --------------------------------------------------------------

@dataclass(frozen=True)
class RegularityVerdict:
    regular: bool
    u: Optional[str] = None
    v: Optional[str] = None

    def to_json(self) -> dict:
        out = {"verdict": "regular" if self.regular else "not_regular"}
        if not self.regular:
            out["u"] = self.u
            out["v"] = self.v
        return out


class FlaggedUnfolding(ControlledWA):
    """Unfolding whose controls ``(p, m, flag)`` remember a visit to ``[lo, hi]``."""

    def __init__(self, odca: WeightedODCA, M: int, lo: int, hi: int):
        self.odca = odca
        self.M, self.lo, self.hi = M, lo, hi
        self.alphabet = odca.alphabet
        p0 = odca.initial_counter_state
        self.initial_control = (p0, 0, lo <= 0 <= hi)
        self.lam = odca.lam

    def move(self, control, a):
        if control == DEAD:
            return DEAD
        p, m, flag = control
        q, e = self.odca.move(p, a, m)
        n = m + e
        if n > self.M:
            return DEAD
        return (q, n, flag or self.lo <= n <= self.hi)

    def matrix(self, control, a):
        return self.odca.delta[a, sgn(control[1])]

    def eta(self, control):
        return self.odca.eta

    def dim(self, control):
        return self.odca.fsm_size


def regularity_bounds(odca: WeightedODCA) -> tuple[int, int, int]:
    """``(lo, hi, M)``: the climb window and the unfolding cap."""
    KN = odca.K
    lo, hi = KN * KN + KN, 2 * KN * KN + KN
    return lo, hi, hi + KN * KN


def is_regular(odca: WeightedODCA, *, deadline: Optional[float] = None) -> RegularityVerdict:
    KN = odca.K
    table = w_space_table(odca)
    lo, hi, M = regularity_bounds(odca)
    unf = FlaggedUnfolding(odca, M, lo, hi)

    def target(control):
        if control == DEAD:
            return None
        p, m, flag = control
        if flag and m < KN:
            return table[p, m]
        return None

    w = wa_covs_reach(unf, unf.initial_control, odca.lam, target, deadline=deadline)
    if w is None:
        return RegularityVerdict(True)
    control = unf.initial_control
    split = 0
    if not control[2]:
        for i, a in enumerate(w):
            control = unf.move(control, a)
            if control[2]:
                split = i + 1
                break
    return RegularityVerdict(False, w[:split], w[split:])


# -- covering ----------------------------------------------------------------

ZERO_CHECK = "zero-check"
NO_DISTRIBUTION = "no-distribution"


@dataclass(frozen=True)
class CoverVerdict:
    """Outcome of :func:`covers`.

    On success ``distributions[q] = (p, rows)`` where ``rows[j]`` is the start
    vector at ``p`` matching ``(e_j, q, 0)``.  On failure ``q`` and ``j`` name
    the counter state and unit vector that could not be matched; ``reason``
    is ``"zero-check"`` when already the shortest nonzero word of that start
    admits no solution, and ``"no-distribution"`` otherwise.
    """

    covered: bool
    distributions: dict = field(default_factory=dict)
    q: Optional[str] = None
    j: Optional[int] = None
    reason: Optional[str] = None

    def to_json(self) -> dict:
        if self.covered:
            return {
                "verdict": "covered",
                "distributions": {
                    q: {"counter_state": p, "rows": [[la.format_rational(x) for x in r] for r in rows]}
                    for q, (p, rows) in self.distributions.items()
                },
            }
        return {"verdict": "not_covered", "counter_state": self.q, "basis_index": self.j, "reason": self.reason}


def _match_unit(a1, q, j, a2, p, bound, w0, stats):
    """Start vector at ``p`` in ``a2`` equivalent to ``(e_j, q, 0)`` in ``a1``.

    Returns ``(alpha, None)`` or ``(None, reason)``.
    """
    n1, n2 = a1.fsm_size, a2.fsm_size
    target = Configuration(la.unit_vector(n1, j), q, 0)
    if w0 is None:
        return la.zero_vector(n2), None
    equations = []
    w = w0
    rank = 0
    # every counterexample adds an equation independent of the earlier ones
    for _ in range(n2 + 1):
        coeffs = tuple(evaluate(a2, w, Configuration(la.unit_vector(n2, i), p, 0)) for i in range(n2))
        equations.append((coeffs, evaluate(a1, w, target)))
        alpha = la.solve_linear(equations, n2)
        if alpha is None:
            return None, ZERO_CHECK if len(equations) == 1 else NO_DISTRIBUTION
        new_rank = la.rank([e[0] for e in equations], n2)
        assert new_rank > rank, "counterexample gave a dependent equation"
        rank = new_rank
        stats["equiv_calls"] = stats.get("equiv_calls", 0) + 1
        verdict = config_equiv(a1, target, a2, Configuration(alpha, p, 0), bound)
        if verdict.equivalent:
            return alpha, None
        w = verdict.witness
    raise AssertionError("learning loop did not stop after |Q|+1 equations")


def covers(a2: WeightedODCA, a1: WeightedODCA, bound: Optional[int] = None) -> CoverVerdict:
    """Does ``a2`` cover ``a1``?  Initial vectors and counter states are ignored."""
    if tuple(a1.alphabet) != tuple(a2.alphabet):
        raise AlphabetError("machines have different alphabets")
    stats: dict = {}
    distributions = {}
    for q in a1.counter_states:
        # zero-function check for every unit start; w0 is the shortest nonzero word
        zero_words = []
        for j in range(a1.fsm_size):
            e = Configuration(la.unit_vector(a1.fsm_size, j), q, 0)
            zero = Configuration(la.zero_vector(a1.fsm_size), q, 0)
            zero_words.append(config_equiv(a1, e, a1, zero, bound).witness)
        results: dict = {}

        def attempt(p, j):
            if (p, j) not in results:
                results[p, j] = _match_unit(a1, q, j, a2, p, bound, zero_words[j], stats)
            return results[p, j]

        found = None
        first_fail = None
        for p in a2.counter_states:
            rows = []
            for j in range(a1.fsm_size):
                alpha, reason = attempt(p, j)
                if alpha is None:
                    if first_fail is None:
                        first_fail = (j, reason)
                    break
                rows.append(alpha)
            else:
                found = (p, tuple(rows))
                break
        if found is None:
            for j in range(a1.fsm_size):
                fails = [attempt(p, j) for p in a2.counter_states]
                if all(alpha is None for alpha, _ in fails):
                    return CoverVerdict(False, q=q, j=j, reason=fails[0][1])
            j, reason = first_fail
            return CoverVerdict(False, q=q, j=j, reason=reason)
        distributions[q] = found
    return CoverVerdict(True, distributions=distributions)


def coverable_equiv(a1: WeightedODCA, a2: WeightedODCA, bound: Optional[int] = None) -> bool:
    return covers(a1, a2, bound).covered and covers(a2, a1, bound).covered
