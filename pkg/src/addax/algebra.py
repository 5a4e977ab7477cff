"""Finite-dimensional local algebras given by structure constants.

Basis vector ``e_0`` is the unit and the maximal ideal is spanned by
``e_1, ..., e_n``. Elements are coordinate tuples; the coordinates may be
``Fraction`` values or :class:`~addax.poly.Poly` objects (symbolic elements),
since multiplication only needs ring operations on them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Sequence

from .linalg import (
    Subspace,
    as_fraction,
    extend_complement,
    format_rational,
    inverse,
    kernel,
    mat_vec,
    preimage,
    subspace_intersect,
    subspace_sum,
    transpose,
)
from .poly import Poly


class AlgebraError(ValueError):
    pass


class LocalAlgebra:
    """Commutative local algebra ``A = K + m`` with unit ``e_0``."""

    def __init__(self, basis_names: Sequence[str], table: Sequence[Sequence[Sequence]]):
        self.basis_names = list(basis_names)
        self.dim = len(self.basis_names)
        if len(table) != self.dim or any(len(r) != self.dim for r in table):
            raise AlgebraError("structure table must be dim x dim")
        self.table = [
            [tuple(as_fraction(c) for c in table[i][j]) for j in range(self.dim)]
            for i in range(self.dim)
        ]
        for i in range(self.dim):
            for j in range(self.dim):
                if len(self.table[i][j]) != self.dim:
                    raise AlgebraError(f"product e{i}*e{j} has wrong length")
        self._sparse = [
            (i, j, [(k, c) for k, c in enumerate(self.table[i][j]) if c])
            for i in range(self.dim)
            for j in range(self.dim)
        ]
        self._sparse = [t for t in self._sparse if t[2]]
        # integer copy of the table over a common denominator, for the rational fast path
        self._den = lcm(*(c.denominator for _, _, es in self._sparse for _, c in es)) if self._sparse else 1
        self._int_sparse = [
            (i, j, [(k, c.numerator * (self._den // c.denominator)) for k, c in es])
            for i, j, es in self._sparse
        ]

    @property
    def n(self) -> int:
        return self.dim - 1

    def __repr__(self) -> str:
        return f"LocalAlgebra(dim={self.dim}, basis={self.basis_names})"

    def __eq__(self, other) -> bool:
        return isinstance(other, LocalAlgebra) and self.table == other.table

    # elements

    def zero(self) -> tuple:
        return (Fraction(0),) * self.dim

    def one(self) -> tuple:
        return self.basis(0)

    def basis(self, i: int) -> tuple:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def element(self, coords: Sequence) -> tuple:
        if len(coords) != self.dim:
            raise AlgebraError(f"element of length {len(coords)} in algebra of dim {self.dim}")
        return tuple(as_fraction(c) for c in coords)

    @property
    def maximal_ideal(self) -> Subspace:
        return Subspace.span([self.basis(i) for i in range(1, self.dim)], self.dim)

    # products

    def mul(self, a: Sequence, b: Sequence) -> tuple:
        if len(a) != self.dim or len(b) != self.dim:
            raise AlgebraError("element length does not match the algebra")
        if all(type(c) is Fraction for c in a) and all(type(c) is Fraction for c in b):
            return self._mul_rational(a, b)
        zero = a[0] * 0
        out = [zero] * self.dim
        for i, j, entries in self._sparse:
            ai, bj = a[i], b[j]
            if not ai or not bj:
                continue
            prod = ai * bj
            for k, c in entries:
                out[k] = out[k] + prod * c
        return tuple(out)

    def _mul_rational(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple:
        da = lcm(*(c.denominator for c in a))
        db = lcm(*(c.denominator for c in b))
        ai = [c.numerator * (da // c.denominator) for c in a]
        bi = [c.numerator * (db // c.denominator) for c in b]
        out = [0] * self.dim
        for i, j, entries in self._int_sparse:
            x, y = ai[i], bi[j]
            if x and y:
                xy = x * y
                for k, c in entries:
                    out[k] += xy * c
        den = da * db * self._den
        return tuple(Fraction(v, den) for v in out)

    def power(self, a: Sequence, k: int) -> tuple:
        result = tuple(a[0] * 0 + c for c in self.one())
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def mult_matrix(self, a: Sequence) -> list[list[Fraction]]:
        """Matrix of ``v -> a * v``."""
        cols = [self.mul(a, self.basis(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    # JSON schema {"dim", "basis", "table": [[i, j, [coeffs]], ...]}

    def to_json(self) -> dict:
        rows = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                v = self.table[i][j]
                if any(v):
                    rows.append([i, j, [format_rational(c) for c in v]])
                if i != j and self.table[j][i] != v:
                    rows.append([j, i, [format_rational(c) for c in self.table[j][i]]])
        return {"dim": self.dim, "basis": self.basis_names, "table": rows}

    @classmethod
    def from_json(cls, data: dict | str) -> "LocalAlgebra":
        if isinstance(data, str):
            data = json.loads(data)
        dim = int(data["dim"])
        names = list(data.get("basis") or [f"e{i}" for i in range(dim)])
        if len(names) != dim:
            raise AlgebraError("basis name count does not match dim")
        table: list[list] = [[None] * dim for _ in range(dim)]
        for i, j, coeffs in data["table"]:
            if not (0 <= i < dim and 0 <= j < dim):
                raise AlgebraError(f"table index ({i}, {j}) out of range")
            table[i][j] = [as_fraction(c) for c in coeffs]
        for i in range(dim):
            for j in range(dim):
                if table[i][j] is None:
                    table[i][j] = table[j][i] if table[j][i] is not None else [0] * dim
        return cls(names, table)


# -- validation ----------------------------------------------------------------


def validate_algebra(A: LocalAlgebra) -> list[str]:
    """All violated invariants; an empty list means the algebra is valid."""
    v: list[str] = []
    d = A.dim
    if d == 0:
        return ["empty algebra"]
    e = [A.basis(i) for i in range(d)]
    for i in range(d):
        if A.table[0][i] != e[i] or A.table[i][0] != e[i]:
            v.append(f"e0 is not a unit on e{i}")
    for i in range(d):
        for j in range(i + 1, d):
            if A.table[i][j] != A.table[j][i]:
                v.append(f"not commutative: e{i}*e{j} != e{j}*e{i}")
    for i in range(d):
        for j in range(d):
            left = A.table[i][j]
            for k in range(d):
                if A.mul(left, e[k]) != A.mul(e[i], A.table[j][k]):
                    v.append(f"not associative on triple ({i}, {j}, {k})")
    for i in range(1, d):
        for j in range(1, d):
            if A.table[i][j][0] != 0:
                v.append(f"span(e1..en) is not an ideal: e{i}*e{j} has a unit component")
    if _raw_nilpotency(A) is None:
        v.append("maximal ideal is not nilpotent")
    return v


def _raw_nilpotency(A: LocalAlgebra) -> int | None:
    m = A.maximal_ideal
    p = m
    for k in range(1, A.dim + 2):
        if p.dim == 0:
            return k - 1
        nxt = _product(A, p, m)
        if nxt == p:
            return None
        p = nxt
    return None


def _product(A: LocalAlgebra, S: Subspace, T: Subspace) -> Subspace:
    return Subspace.span([A.mul(a, b) for a in S.basis for b in T.basis], A.dim)


def require_valid(A: LocalAlgebra) -> None:
    problems = validate_algebra(A)
    if problems:
        raise AlgebraError("; ".join(problems))


# -- exp / log -----------------------------------------------------------------


def in_maximal_ideal(a: Sequence) -> bool:
    return not a[0]


def _series(A: LocalAlgebra, m: Sequence, coeffs: Sequence[Fraction], constant: bool) -> tuple:
    """``[1 +] sum_(k>=1) coeffs[k-1] m^k``; the terms stop once ``m^k = 0``."""
    if all(type(c) is Fraction for c in m):
        return _series_rational(A, m, coeffs, constant)
    zero = m[0] * 0
    total = [zero + c for c in A.one()] if constant else [zero] * A.dim
    term = None
    for f in coeffs:
        term = tuple(m) if term is None else A.mul(term, m)
        if not any(term):
            break
        total = [t + f * c for t, c in zip(total, term)]
    return tuple(total)


def _series_rational(A: LocalAlgebra, m: Sequence[Fraction], coeffs: Sequence[Fraction], constant: bool) -> tuple:
    # integer powers over a growing denominator, combined once at the end
    D = lcm(*(c.denominator for c in m))
    a = [c.numerator * (D // c.denominator) for c in m]
    terms = []  # (numerators, denominator)
    vec, den = a, D
    for f in coeffs:
        if terms:
            nxt = [0] * A.dim
            for i, j, entries in A._int_sparse:
                x, y = vec[i], a[j]
                if x and y:
                    xy = x * y
                    for k, c in entries:
                        nxt[k] += xy * c
            vec, den = nxt, den * D * A._den
        if not any(vec):
            break
        terms.append(([v * f.numerator for v in vec], den * f.denominator))
    L = lcm(*(d for _, d in terms)) if terms else 1
    out = [0] * A.dim
    if constant:
        out[0] = L
    for vec, d in terms:
        r = L // d
        for k, v in enumerate(vec):
            if v:
                out[k] += v * r
    return tuple(Fraction(v, L) for v in out)


def exp_element(A: LocalAlgebra, m: Sequence) -> tuple:
    """``sum m^i / i!`` for ``m`` in the maximal ideal; the series is finite."""
    if not in_maximal_ideal(m):
        raise AlgebraError("exp is defined only on the maximal ideal")
    N = nilpotency_index(A)
    return _series(A, m, [Fraction(1, factorial(i)) for i in range(1, N + 1)], True)


def log_element(A: LocalAlgebra, u: Sequence) -> tuple:
    """``ln(1 + m) = sum (-1)^(i-1) m^i / i`` for ``u = 1 + m``."""
    if u[0] != 1:
        raise AlgebraError("log needs unit coordinate equal to 1")
    m = (u[0] * 0,) + tuple(u[1:])
    N = nilpotency_index(A)
    return _series(A, m, [Fraction((-1) ** (i - 1), i) for i in range(1, N + 1)], False)


# -- ideals and invariants -------------------------------------------------------


def ideal_power(A: LocalAlgebra, k: int) -> Subspace:
    if k < 1:
        raise ValueError("k must be at least 1")
    m = A.maximal_ideal
    p = m
    for _ in range(k - 1):
        p = _product(A, p, m)
    return p


def nilpotency_index(A: LocalAlgebra) -> int:
    """Largest ``N`` with ``m^N != 0`` (0 for the field itself)."""
    cached = getattr(A, "_nilpotency", None)
    if cached is not None:
        return cached
    N = _raw_nilpotency(A)
    if N is None:
        raise AlgebraError("maximal ideal is not nilpotent")
    A._nilpotency = N
    return N


def hilbert_samuel(A: LocalAlgebra) -> tuple[int, ...]:
    seq = [1]
    prev = A.maximal_ideal
    while prev.dim:
        nxt = _product(A, prev, A.maximal_ideal)
        seq.append(prev.dim - nxt.dim)
        prev = nxt
    return tuple(seq)


def annihilator(A: LocalAlgebra, z: Sequence) -> Subspace:
    return kernel(A.mult_matrix(z), A.dim)


def socle(A: LocalAlgebra) -> Subspace:
    rows = []
    for j in range(1, A.dim):
        rows.extend(A.mult_matrix(A.basis(j)))
    if not rows:
        return Subspace.full(A.dim)
    return kernel(rows, A.dim)


def subalgebra_generated(A: LocalAlgebra, S: Subspace) -> Subspace:
    """Smallest unital subalgebra containing ``S``."""
    cur = subspace_sum(S, Subspace.span([A.one()], A.dim))
    while True:
        nxt = subspace_sum(cur, _product(A, cur, cur))
        if nxt == cur:
            return cur
        cur = nxt


def is_ideal(A: LocalAlgebra, J: Subspace) -> bool:
    return all(J.contains(A.mul(A.basis(i), b)) for i in range(A.dim) for b in J.basis)


def quotient_algebra_by_ideal(A: LocalAlgebra, J: Subspace) -> tuple[LocalAlgebra, list[list[Fraction]]]:
    """``A/J`` on the complement coordinates of ``J`` and the projection matrix."""
    if not is_ideal(A, J):
        raise AlgebraError("subspace is not an ideal")
    if J.contains(A.one()):
        raise AlgebraError("cannot quotient by the whole algebra")
    keep = [next(i for i, x in enumerate(e) if x) for e in extend_complement(J)]

    def project(v):
        r = J.reduce(v)
        return tuple(r[i] for i in keep)

    proj = [[Fraction(0)] * A.dim for _ in keep]
    for j in range(A.dim):
        col = project(A.basis(j))
        for i, c in enumerate(col):
            proj[i][j] = c
    table = [[project(A.table[a][b]) for b in keep] for a in keep]
    Q = LocalAlgebra([A.basis_names[i] for i in keep], table)
    return Q, proj


def projection_apply(proj: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in proj)


def largest_ideal_in(A: LocalAlgebra, U: Subspace) -> Subspace:
    """Largest ideal of ``A`` contained in ``U``."""
    J = U
    while True:
        nxt = J
        for i in range(A.dim):
            nxt = subspace_intersect(nxt, preimage(A.mult_matrix(A.basis(i)), J, A.dim))
        if nxt == J:
            return J
        J = nxt


# -- classification ----------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    kind: str  # "chain" | "two-variable" | "other"
    n: int
    reason: str = ""

    def __str__(self) -> str:
        if self.kind == "chain":
            return f"Chain({self.n})"
        if self.kind == "two-variable":
            return "TwoVariable"
        return f"NotFiniteOrbitCandidate({self.reason})"


def classify_algebra(A: LocalAlgebra) -> Classification:
    """Decide whether ``A`` can carry a finite-orbit H-pair.

    Chain algebras are recognised by the Hilbert-Samuel sequence ``(1, ..., 1)``.
    The two-variable case ``K[x,y]/(x^2, y^2)`` is recognised by the sequence
    ``(1, 2, 1)`` together with a one-dimensional socle, which is valid over the
    algebraic closure without extracting square roots.
    """
    hs = hilbert_samuel(A)
    n = A.dim - 1
    if all(h == 1 for h in hs):
        return Classification("chain", n)
    if any(h > 1 for h in hs[2:]):
        k = next(i for i, h in enumerate(hs) if i >= 2 and h > 1)
        return Classification("other", n, f"Hilbert-Samuel entry {hs[k]} > 1 at position {k}")
    if hs[1] >= 3:
        return Classification("other", n, f"embedding dimension {hs[1]} >= 3")
    soc = socle(A).dim
    if soc > 1:
        return Classification("other", n, f"socle dim {soc}")
    r = len(hs) - 1
    if r > 2:
        return Classification("other", n, f"Hilbert-Samuel (1,2,1,...,1) with r = {r} > 2")
    return Classification("two-variable", n)


# -- chain algebra helpers -----------------------------------------------------------


def chain_generator(A: LocalAlgebra) -> tuple:
    """A basis vector of the maximal ideal outside ``m^2`` (first one found)."""
    m2 = ideal_power(A, 2) if A.dim > 1 else Subspace.zero(A.dim)
    for i in range(1, A.dim):
        if not m2.contains(A.basis(i)):
            return A.basis(i)
    raise AlgebraError("maximal ideal has no generator outside m^2")


def power_basis(A: LocalAlgebra, x: Sequence) -> list[tuple]:
    """``[1, x, x^2, ..., x^n]``."""
    out = [A.one()]
    for _ in range(A.dim - 1):
        out.append(A.mul(out[-1], x))
    return out


def chain_algebra(n: int, var: str = "x") -> LocalAlgebra:
    """``K[x]/(x^(n+1))`` with basis ``1, x, ..., x^n``."""
    d = n + 1
    names = ["1", var] + [f"{var}^{k}" for k in range(2, d)]
    table = [
        [[Fraction(int(k == i + j)) for k in range(d)] for j in range(d)]
        for i in range(d)
    ]
    return LocalAlgebra(names[:d], table)


def exp_log_symbolic(A: LocalAlgebra, gens_prefix: str = "m"):
    """Symbolic ``m`` with ``exp``/``log`` for the generic element of ``m``."""
    gens = tuple(f"{gens_prefix}{i}" for i in range(1, A.dim))
    m = (Poly(gens),) + tuple(Poly.var(gens, i) for i in range(len(gens)))
    return m, exp_element(A, m), gens


def format_element(v: Sequence) -> list[str]:
    return [format_rational(c) for c in v]


def change_basis(A: LocalAlgebra, new_basis: Sequence[Sequence]) -> tuple[LocalAlgebra, list]:
    """Re-express ``A`` in the basis ``1, f_1, ..., f_n``.

    ``new_basis`` lists ``f_1..f_n`` in old coordinates; each must lie in the
    maximal ideal. Returns the algebra and the matrix taking old coordinates
    to new ones.
    """
    fs = [A.one()] + [A.element(f) for f in new_basis]
    if len(fs) != A.dim or any(f[0] != 0 for f in fs[1:]):
        raise AlgebraError("new basis must consist of n vectors in the maximal ideal")
    to_new = inverse(transpose(fs))
    table = [[mat_vec(to_new, A.mul(fa, fb)) for fb in fs] for fa in fs]
    names = ["1"] + [f"f{k}" for k in range(1, A.dim)]
    return LocalAlgebra(names, table), to_new
