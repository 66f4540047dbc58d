"""Exact rational linear algebra.

Vectors are tuples of :class:`fractions.Fraction`, matrices are tuples of row
tuples.  Everything is row-vector convention: a vector ``x`` is pushed through a
matrix ``A`` as ``x·A``.

:class:`VectorSpace` keeps its basis in reduced row-echelon form so two spaces
are equal exactly when their representations are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

from .errors import DimensionError

Rational = Fraction
Vector = Tuple[Fraction, ...]
Matrix = Tuple[Vector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


# -- rationals ---------------------------------------------------------------

def parse_rational(text) -> Fraction:
    """Parse ``"3"``, ``"-7/2"`` or ``"2/4"`` (canonicalised) into a Fraction.

    Plain ints are accepted too.  Floats and decimal points are rejected, the
    whole library stays exact.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- vectors and matrices ----------------------------------------------------

def _exact(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"floating-point value {x!r}; use an int, Fraction or string")
    return Fraction(x)


def vector(values: Iterable) -> Vector:
    return tuple(_exact(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionError("ragged matrix")
    return m


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple((ZERO,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"dot of lengths {len(u)} and {len(v)}")
    total = ZERO
    for a, b in zip(u, v):
        if a and b:
            total += a * b
    return total


def vec_add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"add of lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(s: Fraction, v: Vector) -> Vector:
    return tuple(s * a for a in v)


def vec_mat(v: Sequence[Fraction], m: Matrix, cols: Optional[int] = None) -> Vector:
    """Row vector times matrix.  ``cols`` is needed only when ``m`` has no rows."""
    if len(v) != len(m):
        raise DimensionError(f"vector of length {len(v)} times matrix with {len(m)} rows")
    n = len(m[0]) if m else (cols or 0)
    out = [ZERO] * n
    for a, row in zip(v, m):
        if not a:
            continue
        for j, b in enumerate(row):
            if b:
                out[j] += a * b
    return tuple(out)


def mat_vec(m: Matrix, v: Sequence[Fraction]) -> Vector:
    """Matrix times column vector."""
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, _ = shape(b)
    if ca != rb:
        raise DimensionError(f"cannot multiply {ra}x{ca} by {rb}x{shape(b)[1]}")
    return tuple(vec_mat(row, b) for row in a)


def transpose(m: Matrix, cols: Optional[int] = None) -> Matrix:
    n = len(m[0]) if m else (cols or 0)
    return tuple(tuple(row[j] for row in m) for j in range(n))


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    top = tuple(row + (ZERO,) * cb for row in a)
    bottom = tuple((ZERO,) * ca + row for row in b)
    return top + bottom


# -- row reduction -----------------------------------------------------------

def rref(rows: Iterable[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form.  Returns (nonzero rows, pivot columns)."""
    work = [[_exact(x) for x in r] for r in rows]
    for r in work:
        if len(r) != ncols:
            raise DimensionError(f"row of length {len(r)}, expected {ncols}")
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        pick = next((i for i in range(top, len(work)) if work[i][col]), None)
        if pick is None:
            continue
        work[top], work[pick] = work[pick], work[top]
        prow = work[top]
        lead = prow[col]
        if lead != 1:
            prow[:] = [x / lead for x in prow]
        for i, row in enumerate(work):
            if i != top and row[col]:
                f = row[col]
                row[:] = [x - f * y if y else x for x, y in zip(row, prow)]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def rank(rows: Iterable[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[0])


def kernel_basis(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[Vector]:
    """Basis of ``{y : row·y = 0 for every row}``."""
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[free]
        basis.append(tuple(v))
    return basis


# -- vector spaces -----------------------------------------------------------

@dataclass(frozen=True)
class VectorSpace:
    """Subspace of Q^dim, stored as its canonical RREF basis."""

    dim: int
    basis: tuple[Vector, ...] = ()

    def __post_init__(self):
        for b in self.basis:
            if len(b) != self.dim:
                raise DimensionError(f"basis vector of length {len(b)} in a {self.dim}-dim space")

    @classmethod
    def zero(cls, dim: int) -> "VectorSpace":
        return cls(dim, ())

    @classmethod
    def full(cls, dim: int) -> "VectorSpace":
        return cls(dim, identity(dim))

    @classmethod
    def span(cls, dim: int, vectors: Iterable[Sequence]) -> "VectorSpace":
        red, _ = rref([vector(v) for v in vectors], dim)
        return cls(dim, tuple(tuple(r) for r in red))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(b) if x) for b in self.basis)

    def is_full(self) -> bool:
        return self.rank == self.dim

    def residual(self, v: Sequence[Fraction]) -> list[Fraction]:
        """``v`` minus its reduction by the basis; zero iff ``v`` is in the span."""
        if len(v) != self.dim:
            raise DimensionError(f"vector of length {len(v)} against a {self.dim}-dim space")
        r = list(v)
        for b, pc in zip(self.basis, self.pivots):
            f = r[pc]
            if f:
                for j in range(pc, self.dim):
                    if b[j]:
                        r[j] -= f * b[j]
        return r

    def __contains__(self, v) -> bool:
        return in_span(self, v)


def in_span(s: VectorSpace, v: Sequence[Fraction]) -> bool:
    return is_zero(s.residual(v))


def span_insert(s: VectorSpace, v: Sequence[Fraction]) -> tuple[VectorSpace, bool]:
    """Add ``v`` to the space.  The flag says whether the space grew."""
    r = s.residual(v)
    if is_zero(r):
        return s, False
    return VectorSpace.span(s.dim, list(s.basis) + [r]), True


def image_space(a: Matrix, cols: Optional[int] = None) -> VectorSpace:
    """Row space of ``a``."""
    n = len(a[0]) if a else (cols or 0)
    return VectorSpace.span(n, a)


def preimage_space(v: VectorSpace, a: Matrix, rows: Optional[int] = None) -> VectorSpace:
    """``{y : y·a ∈ v}``."""
    n = len(a) if a else (rows or 0)
    if a and len(a[0]) != v.dim:
        raise DimensionError(f"matrix with {len(a[0])} columns against a {v.dim}-dim space")
    if v.is_full():
        return VectorSpace.full(n)
    # y·a ∈ v  iff  y·a is annihilated by every vector orthogonal to v
    annihilators = kernel_basis(v.basis, v.dim)
    constraints = [tuple(dot(row, c) for row in a) for c in annihilators]
    return VectorSpace.span(n, kernel_basis(constraints, n))


def solve_linear(equations: Sequence[tuple[Sequence, object]], unknowns: int) -> Optional[Vector]:
    """One exact solution of ``coeffs·α = rhs`` for every equation, or None.

    Free variables are set to zero.
    """
    rows = []
    for coeffs, rhs in equations:
        if len(coeffs) != unknowns:
            raise DimensionError(f"equation with {len(coeffs)} coefficients, expected {unknowns}")
        rows.append([Fraction(c) for c in coeffs] + [Fraction(rhs)])
    red, pivots = rref(rows, unknowns + 1)
    if pivots and pivots[-1] == unknowns:
        return None
    sol = [ZERO] * unknowns
    for row, pc in zip(red, pivots):
        sol[pc] = row[unknowns]
    return tuple(sol)
