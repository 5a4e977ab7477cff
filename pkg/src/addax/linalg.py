"""Exact rational linear algebra: row reduction, kernels and the subspace lattice.

Scalars are :class:`fractions.Fraction`. Matrices are plain lists of rows.
Subspaces are kept in reduced row-echelon form so that two subspaces are equal
exactly when their stored bases are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]
Matrix = list  # list[list[Fraction]]


class DimensionMismatch(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[as_fraction(x) for x in row] for row in rows]


def format_rational(q: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = as_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _rref_with_pivots(rows: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rref(m: Sequence[Sequence]) -> Matrix:
    """Reduced row-echelon form. Zero rows are kept at the bottom."""
    rows = to_matrix(m)
    ncols = len(rows[0]) if rows else 0
    out, _ = _rref_with_pivots(rows, ncols)
    return out


def rank(m: Sequence[Sequence]) -> int:
    rows = to_matrix(m)
    if not rows:
        return 0
    return len(_rref_with_pivots(rows, len(rows[0]))[1])


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(m: Sequence[Sequence]) -> Matrix:
    """Inverse of a square matrix; raises ``ZeroDivisionError`` if singular."""
    n = len(m)
    aug = [list(row) + e for row, e in zip(to_matrix(m), identity(n))]
    red, pivots = _rref_with_pivots(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``Q^ambient_dim`` stored by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple  # tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = to_matrix(vectors)
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(r)} in ambient {ambient_dim}")
        red, pivots = _rref_with_pivots(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in red[: len(pivots)]))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(identity(ambient_dim), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(row) if x != 0) for row in self.basis]

    def contains(self, v: Sequence) -> bool:
        return contains(self, v)

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after clearing every pivot coordinate."""
        v = [as_fraction(x) for x in v]
        for row, p in zip(self.basis, self.pivots):
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def __le__(self, other: "Subspace") -> bool:
        _check(self, other)
        return all(other.contains(b) for b in self.basis)


def _check(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim}")


def kernel(m: Sequence[Sequence], ncols: int | None = None) -> Subspace:
    """Null space ``{v : m v = 0}``.

    ``ncols`` is needed only when ``m`` has no rows.
    """
    rows = to_matrix(m)
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    red, pivots = _rref_with_pivots(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    vecs = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, ncols)


def orthogonal(a: Subspace) -> Subspace:
    """Vectors orthogonal to ``a`` under the standard pairing."""
    return kernel(list(a.basis), a.ambient_dim)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    return Subspace.span(list(a.basis) + list(b.basis), a.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check(a, b)
    return orthogonal(subspace_sum(orthogonal(a), orthogonal(b)))


def contains(a: Subspace, v: Sequence) -> bool:
    if len(v) != a.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} in ambient {a.ambient_dim}")
    return not any(a.reduce(v))


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    _check(a, b)
    return a.basis == b.basis


def extend_complement(a: Subspace) -> list[Vector]:
    """Standard basis vectors on the non-pivot coordinates of ``a``, in order."""
    piv = set(a.pivots)
    out = []
    for j in range(a.ambient_dim):
        if j not in piv:
            e = [Fraction(0)] * a.ambient_dim
            e[j] = Fraction(1)
            out.append(tuple(e))
    return out


def preimage(m: Sequence[Sequence], target: Subspace, ncols: int) -> Subspace:
    """``{v : m v in target}`` for a linear map given by the matrix ``m``."""
    rows = mat_mul(list(orthogonal(target).basis), m) if target.dim < target.ambient_dim else []
    if not rows:
        return Subspace.full(ncols)
    return kernel(rows, ncols)
