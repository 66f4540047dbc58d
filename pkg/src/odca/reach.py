"""co-VS reachability and coverability for weighted ODCAs.

Both problems are reduced to a finite weighted automaton: a bound ``B`` on
the counter values a shortest witness needs is computed from ``K = |Q|·|C|``,
the ODCA is unfolded up to ``B`` and the forward saturation of
:mod:`odca.wa_algo` looks for a vector outside the target space.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .errors import DimensionError
from .exactla import VectorSpace
from .model import Configuration, Unfolding, WeightedODCA, counter_trajectory
from .wa_algo import wa_covs_reach


def counter_bound_reach(odca: WeightedODCA, n: int, m: int) -> int:
    """Counter values on some shortest reach witness from counter ``n`` to ``m`` stay below this."""
    return max(n, m) + odca.K ** 2


def counter_bound_cover(odca: WeightedODCA, n: int) -> int:
    return max(n, odca.K) + odca.K ** 2


def witness_length_bound(odca: WeightedODCA, n: int, m: int) -> int:
    K = odca.K
    return K ** 3 + max(n, m) * K


def _check_instance(odca: WeightedODCA, c: Configuration, v: VectorSpace, s: Iterable[str]) -> frozenset:
    if v.dim != odca.fsm_size:
        raise DimensionError(f"target space has dimension {v.dim}, machine has {odca.fsm_size} states")
    if len(c.x) != odca.fsm_size:
        raise DimensionError(f"configuration vector has length {len(c.x)}, machine has {odca.fsm_size} states")
    if c.p not in odca.counter_states:
        raise ValueError(f"unknown counter state {c.p!r}")
    if c.n < 0:
        raise ValueError("negative counter value")
    s = frozenset(s)
    unknown = s - set(odca.counter_states)
    if unknown:
        raise ValueError(f"unknown target counter states {sorted(unknown)}")
    return s


def _peak(odca, c, word):
    return max(n for _, n in counter_trajectory(odca, word, c.p, c.n))


def covs_reach(
    odca: WeightedODCA,
    c: Configuration,
    v: VectorSpace,
    s: Iterable[str],
    m: int,
    bound_override: Optional[int] = None,
    *,
    deadline: Optional[float] = None,
) -> Optional[str]:
    """(length, lex)-first word leading from ``c`` to some ``(x', p', m)`` with
    ``p' ∈ s`` and ``x' ∉ v``, or None.

    With ``bound_override`` the counter is capped there instead of at the
    default bound, and a None answer only covers runs inside the cap.
    """
    s = _check_instance(odca, c, v, s)
    if m < 0:
        raise ValueError("negative target counter value")
    B = counter_bound_reach(odca, c.n, m) if bound_override is None else bound_override
    if c.n > B:
        raise ValueError(f"start counter {c.n} exceeds the bound {B}")
    if m > B or not s:
        return None
    unf = Unfolding(odca, B)
    # vectors of the unfolding are kept block-local, so the lifted target
    # space at control (p, m) is v itself
    targets = {(p, m): v for p in s}
    w = wa_covs_reach(unf, (c.p, c.n), c.x, targets, deadline=deadline)
    if w is not None:
        assert _peak(odca, c, w) <= B
        if bound_override is None:
            assert len(w) <= witness_length_bound(odca, c.n, m), "witness longer than the length bound"
    return w


def covs_cover(
    odca: WeightedODCA,
    c: Configuration,
    v: VectorSpace,
    s: Iterable[str],
    bound_override: Optional[int] = None,
    *,
    deadline: Optional[float] = None,
) -> Optional[str]:
    """Like :func:`covs_reach` with the target counter value left free."""
    s = _check_instance(odca, c, v, s)
    B = counter_bound_cover(odca, c.n) if bound_override is None else bound_override
    if c.n > B:
        raise ValueError(f"start counter {c.n} exceeds the bound {B}")
    if not s:
        return None
    unf = Unfolding(odca, B)

    def target(control):
        if control != unf.dead_control and control[0] in s:
            return v
        return None

    w = wa_covs_reach(unf, (c.p, c.n), c.x, target, deadline=deadline)
    if w is not None:
        assert _peak(odca, c, w) <= B
    return w
