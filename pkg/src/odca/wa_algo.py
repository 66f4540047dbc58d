"""Forward basis saturation on controlled weighted automata.

The search visits words in (length, lex) order.  Every control keeps the span
of the vectors already seen there; a vector that is already in that span is
dropped together with all its extensions.  If ``v = Σ s_i b_i`` and some
extension ``v·M`` leaves a subspace ``U``, then one of the ``b_i·M`` leaves
``U`` too, and ``b_i`` was reached by an earlier word.  So pruning never hides
the (length, lex)-first witness, and the search stops after at most
``Σ dim(control)`` insertions.
"""

from __future__ import annotations

import time
from collections import deque
from typing import Callable, Hashable, Mapping, Optional, Union

from . import exactla as la
from .errors import AlphabetError, DeadlineExceeded, DimensionError, ResourceLimitError
from .exactla import Vector, VectorSpace
from .model import ControlledWA

TargetSpec = Union[Mapping[Hashable, VectorSpace], Callable[[Hashable], Optional[VectorSpace]]]


def _lookup(targets: TargetSpec):
    get = getattr(targets, "get", None)
    return get if get is not None else targets


def wa_covs_reach(
    cwa: ControlledWA,
    start_control,
    start_vector: Vector,
    targets: TargetSpec,
    *,
    deadline: Optional[float] = None,
    max_insertions: Optional[int] = None,
    stats: Optional[dict] = None,
) -> Optional[str]:
    """First word in (length, lex) order that ends at a target control with a
    vector outside that control's target space, or None.

    ``targets`` maps controls to spaces (a dict, or a function returning None
    for non-target controls).  ``deadline`` is a ``time.monotonic()`` value.
    """
    if len(start_vector) != cwa.dim(start_control):
        raise DimensionError(
            f"start vector of length {len(start_vector)} at a control of dimension {cwa.dim(start_control)}"
        )
    target_of = _lookup(targets)
    dead = cwa.dead_control
    letters = cwa.alphabet

    parents: list[tuple[int, str]] = [(-1, "")]
    queue = deque([(0, start_control, tuple(start_vector))])
    bases: dict = {}
    insertions = 0

    def word_of(idx: int) -> str:
        out = []
        while idx > 0:
            idx, a = parents[idx]
            out.append(a)
        return "".join(reversed(out))

    while queue:
        idx, control, v = queue.popleft()
        if control == dead or la.is_zero(v):
            continue
        target = target_of(control)
        if target is not None:
            if target.dim != len(v):
                raise DimensionError(f"target space of dimension {target.dim} at control {control!r}")
            if not la.in_span(target, v):
                witness = word_of(idx)
                _self_check(cwa, start_control, start_vector, target_of, witness)
                if stats is not None:
                    stats["insertions"] = insertions
                return witness
        space = bases.get(control)
        if space is None:
            space = VectorSpace.zero(len(v))
        space, grew = la.span_insert(space, v)
        if not grew:
            continue
        bases[control] = space
        insertions += 1
        if max_insertions is not None and insertions > max_insertions:
            raise ResourceLimitError(f"saturation exceeded {max_insertions} basis insertions")
        if deadline is not None and time.monotonic() > deadline:
            raise DeadlineExceeded("deadline passed during basis saturation")
        for a in letters:
            nxt, w = cwa.step(control, v, a)
            if nxt == dead or la.is_zero(w):
                continue
            parents.append((idx, a))
            queue.append((len(parents) - 1, nxt, w))
    if stats is not None:
        stats["insertions"] = insertions
    return None


def _self_check(cwa, start_control, start_vector, target_of, witness):
    control, v = cwa.run(witness, start_control, tuple(start_vector))
    target = target_of(control)
    assert target is not None and not la.in_span(target, v), f"witness {witness!r} does not replay"


class ProductWA(ControlledWA):
    """Synchronous product with stacked vectors and output ``η_a ⊕ −η_b``.

    A product control is dead as soon as either side is dead, so a word whose
    run leaves either machine's live part contributes zero on both sides.
    """

    def __init__(self, a: ControlledWA, b: ControlledWA):
        if tuple(a.alphabet) != tuple(b.alphabet):
            raise AlphabetError("machines have different alphabets")
        self.a, self.b = a, b
        self.alphabet = tuple(a.alphabet)
        self.initial_control = (a.initial_control, b.initial_control)
        self.lam = tuple(a.lam) + tuple(b.lam)
        self.dead_control = ("<dead>", "<dead>")
        self._matrices: dict = {}

    def _live(self, control) -> bool:
        return control != self.dead_control and control[0] != self.a.dead_control and control[1] != self.b.dead_control

    def move(self, control, x):
        if not self._live(control):
            return self.dead_control
        nxt = (self.a.move(control[0], x), self.b.move(control[1], x))
        return nxt if self._live(nxt) else self.dead_control

    def matrix(self, control, x):
        key = (control, x)
        m = self._matrices.get(key)
        if m is None:
            m = la.block_diag(self.a.matrix(control[0], x), self.b.matrix(control[1], x))
            self._matrices[key] = m
        return m

    def eta(self, control):
        if not self._live(control):
            return la.zero_vector(self.dim(control))
        return tuple(self.a.eta(control[0])) + tuple(-e for e in self.b.eta(control[1]))

    def dim(self, control):
        if control == self.dead_control:
            return 0
        return self.a.dim(control[0]) + self.b.dim(control[1])


def wa_equiv(a: ControlledWA, b: ControlledWA, *, deadline: Optional[float] = None,
             max_insertions: Optional[int] = None) -> Optional[str]:
    """(length, lex)-first word on which ``a`` and ``b`` differ, or None.

    Only words that keep both machines out of their dead controls are
    compared (see :class:`ProductWA`).  For unfoldings this means words whose
    counter stays within the bound on both sides, where the unfolded weights
    are the true ones.
    """
    prod = ProductWA(a, b)
    cache: dict = {}

    def kernel(control):
        if control == prod.dead_control:
            return None
        space = cache.get(control)
        if space is None:
            f = prod.eta(control)
            space = VectorSpace.span(len(f), la.kernel_basis([f], len(f)))
            cache[control] = space
        return space

    witness = wa_covs_reach(prod, prod.initial_control, prod.lam, kernel,
                            deadline=deadline, max_insertions=max_insertions)
    if witness is not None:
        assert a.evaluate(witness) != b.evaluate(witness)
    return witness
