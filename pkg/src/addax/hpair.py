"""H-pairs ``(A, U)`` and the hypersurfaces they define.

``U`` is a codimension-one subspace of the maximal ideal that generates ``A``
as a unital algebra. The projection ``pi`` onto ``m/U`` is fixed by picking the
first coordinate ``w`` not occupied by a pivot of ``U``, so ``pi(w) = 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import algebra as alg
from .algebra import AlgebraError, LocalAlgebra
from .linalg import (
    Subspace,
    as_fraction,
    extend_complement,
    inverse,
    mat_mul,
    mat_vec,
    subspace_intersect,
    subspace_sum,
    transpose,
)
from .poly import (
    Poly,
    divide_by_radical,
    essential_variable_count,
    gcd_poly,
    radical,
)
from .presentations import coordinates, parse_poly_list


class HPairError(ValueError):
    pass


@dataclass(frozen=True)
class HPair:
    algebra: LocalAlgebra = field(compare=False)
    U: Subspace
    w_index: int
    pi: tuple  # coefficients of the functional on A, zero on U and on e_0

    @property
    def n(self) -> int:
        return self.algebra.dim - 1

    @property
    def w(self) -> tuple:
        return self.algebra.basis(self.w_index)

    def project(self, v: Sequence):
        """``pi(v)``; works for numeric and symbolic coordinates."""
        total = v[0] * 0
        for c, x in zip(self.pi, v):
            if c:
                total = total + x * c
        return total


def make_hpair(A: LocalAlgebra, U: Subspace | Sequence[Sequence]) -> HPair:
    alg.require_valid(A)
    if not isinstance(U, Subspace):
        U = Subspace.span(U, A.dim)
    if U.ambient_dim != A.dim:
        raise HPairError("U lives in the wrong ambient space")
    if any(b[0] != 0 for b in U.basis):
        raise HPairError("U is not contained in the maximal ideal")
    if U.dim != A.dim - 2:
        raise HPairError(f"U has dimension {U.dim}, expected codimension 1 in m (dim {A.dim - 2})")
    if alg.subalgebra_generated(A, U).dim != A.dim:
        raise HPairError("U does not generate A as a unital algebra")
    free = [next(i for i, x in enumerate(e) if x) for e in extend_complement(U)]
    j = next(i for i in free if i != 0)
    pi = [Fraction(0)] * A.dim
    pi[j] = Fraction(1)
    for row, p in zip(U.basis, U.pivots):
        pi[p] = -row[j]
    return HPair(A, U, j, tuple(pi))


def degree(h: HPair) -> int:
    """Largest ``d`` with ``m^d`` not contained in ``U``."""
    A = h.algebra
    d = 0
    k = 1
    while True:
        mk = alg.ideal_power(A, k)
        if mk.dim == 0 or mk <= h.U:
            return d
        d = k
        k += 1


@dataclass(frozen=True)
class HypersurfaceEquation:
    poly: Poly
    degree: int
    layers: tuple  # f_1, ..., f_d with poly = sum z0^(d-k) f_k

    def layer(self, k: int) -> Poly:
        return self.layers[k - 1]


def coordinate_names(dim: int) -> tuple[str, ...]:
    return tuple(f"z{i}" for i in range(dim))


def equation(h: HPair) -> HypersurfaceEquation:
    """Defining form ``sum_i (-1)^(i-1) z0^(d-i) pi(z^i) / i``.

    Powers ``z^i`` with ``i > d`` lie in ``U`` and are dropped, which is what
    keeps the form polynomial in ``z0``.
    """
    A = h.algebra
    gens = coordinate_names(A.dim)
    d = degree(h)
    z = (Poly(gens),) + tuple(Poly.var(gens, i) for i in range(1, A.dim))
    z0 = Poly.var(gens, 0)
    layers = []
    F = Poly(gens)
    power = z
    for i in range(1, d + 1):
        if i > 1:
            power = A.mul(power, z)
        f = h.project(power) * Fraction((-1) ** (i - 1), i)
        layers.append(f)
        F = F + (z0 ** (d - i)) * f
    return HypersurfaceEquation(F, d, tuple(layers))


# -- chain normalisation --------------------------------------------------------


@dataclass(frozen=True)
class ChainNormalization:
    index: int
    automorphism: list = field(compare=False)  # matrix acting on coordinate columns
    generator: tuple = ()
    beta: tuple = ()  # phi(x) = sum beta_k x^k in generator powers


def _normalize_power_coords(n: int, U: Subspace) -> tuple[int, list[Fraction]]:
    if n < 2:
        raise HPairError("U does not generate A")
    xn = tuple(Fraction(int(k == n)) for k in range(n + 1))
    if not U.contains(xn):
        if U.pivots != list(range(1, n)):
            raise HPairError("U does not generate A")
        alpha = {k: row[n] for k, row in zip(range(1, n), U.basis)}
        beta = [Fraction(0)] * (n + 1)
        beta[1] = Fraction(1)
        for k in range(n - 1, 0, -1):
            h = _coeff_of_power(beta, k, n)
            beta[n - k + 1] = -(alpha[k] + h) / k
        return n, beta
    reduced = Subspace.span([row[:n] for row in U.basis], n)
    i, beta = _normalize_power_coords(n - 1, reduced)
    return i, beta + [Fraction(0)]


def _coeff_of_power(beta: Sequence[Fraction], k: int, n: int) -> Fraction:
    """Coefficient of ``x^n`` in ``(sum beta_j x^j)^k`` truncated at degree ``n``."""
    poly = [Fraction(0)] * (n + 1)
    poly[0] = Fraction(1)
    for _ in range(k):
        nxt = [Fraction(0)] * (n + 1)
        for a, ca in enumerate(poly):
            if ca:
                for b in range(1, n + 1 - a):
                    if beta[b]:
                        nxt[a + b] += ca * beta[b]
        poly = nxt
    return poly[n]


def canonical_chain_index(h: HPair) -> ChainNormalization:
    """The ``i`` with ``(A, U)`` isomorphic to ``(K[x]/(x^(n+1)), U_i)``.

    Also returns an automorphism of ``A`` (matrix on coordinates) that carries
    ``U`` onto the span of the powers ``g^k``, ``k != i``, of the generator ``g``.
    """
    A = h.algebra
    cls = alg.classify_algebra(A)
    if cls.kind != "chain":
        raise HPairError(f"algebra is not a chain algebra: {cls}")
    n = A.n
    g = alg.chain_generator(A)
    powers = alg.power_basis(A, g)
    P = transpose(powers)
    Pinv = inverse(P)
    Upow = Subspace.span([mat_vec(Pinv, u) for u in h.U.basis], A.dim)
    i, beta = _normalize_power_coords(n, Upow)
    C = alg.chain_algebra(n)
    phi_x = tuple(beta)
    cols = alg.power_basis(C, phi_x)
    Phi = transpose(cols)
    M = mat_mul(mat_mul(P, Phi), Pinv)
    return ChainNormalization(i, M, g, tuple(beta))


def chain_subspace(A: LocalAlgebra, i: int, generator: Sequence | None = None) -> Subspace:
    """``U_i`` spanned by ``x^k`` for ``1 <= k <= n``, ``k != i``."""
    g = generator if generator is not None else alg.chain_generator(A)
    powers = alg.power_basis(A, g)
    return Subspace.span([powers[k] for k in range(1, A.dim) if k != i], A.dim)


def chain_hpair(n: int, i: int) -> HPair:
    A = alg.chain_algebra(n)
    return make_hpair(A, chain_subspace(A, i))


# -- decisions and predicates -------------------------------------------------------


@dataclass(frozen=True)
class OrbitVerdict:
    finite: bool
    certificate: str
    classification: str


def finite_orbits(h: HPair) -> OrbitVerdict:
    A = h.algebra
    cls = alg.classify_algebra(A)
    n = A.n
    if cls.kind == "chain":
        i = canonical_chain_index(h).index
        if i in (n - 1, n):
            return OrbitVerdict(True, f"isomorphic to (K[x]/(x^{n + 1}), U_{i})", str(cls))
        return OrbitVerdict(False, f"canonical index {i}, requires i ∈ {{{n - 1},{n}}}", str(cls))
    if cls.kind == "two-variable":
        m2 = alg.ideal_power(A, 2)
        if subspace_sum(h.U, m2).dim != A.dim - 1:
            raise HPairError("U does not map onto m/m^2")
        return OrbitVerdict(True, "isomorphic to (K[x,y]/(x^2,y^2), <x,y>)", str(cls))
    return OrbitVerdict(False, cls.reason, str(cls))


def is_nondegenerate_algebraic(h: HPair) -> bool:
    """Socle is a line and ``m = U + Soc(A)`` is direct."""
    soc = alg.socle(h.algebra)
    if soc.dim != 1:
        return False
    return subspace_intersect(soc, h.U).dim == 0 and subspace_sum(soc, h.U).dim == h.algebra.dim - 1


def is_nondegenerate_equation(h: HPair) -> bool:
    return essential_variable_count(equation(h).poly) == h.algebra.dim


def is_smooth(h: HPair) -> bool:
    return degree(h) == 2 and is_nondegenerate_algebraic(h)


@dataclass(frozen=True)
class NormalityVerdict:
    normal: bool
    witness: Poly  # gcd(f_d / radical(f_d), f_(d-1))
    reduced_top: Poly  # f_d divided once by its radical
    radical_top: Poly  # radical of f_d
    radical_witness: Poly  # gcd(radical(f_d), f_(d-1))

    @property
    def conventions_agree(self) -> bool:
        return self.normal == self.radical_witness.is_constant()


def is_normal(h: HPair) -> NormalityVerdict:
    """Normal iff ``f_d / (p_1 ... p_r)`` and ``f_(d-1)`` are coprime.

    The gcd with the full squarefree part ``p_1 ... p_r`` is recorded too.
    """
    eq = equation(h)
    d = eq.degree
    if d < 2:
        raise HPairError("normality test needs degree at least 2")
    top, below = eq.layer(d), eq.layer(d - 1)
    reduced = divide_by_radical(top)
    rad = radical(top)
    g = gcd_poly(reduced, below)
    g_rad = gcd_poly(rad, below)
    return NormalityVerdict(g.is_constant(), g, reduced, rad, g_rad)


# -- degenerate pairs ------------------------------------------------------------


def largest_ideal_within(h: HPair) -> Subspace:
    return alg.largest_ideal_in(h.algebra, h.U)


def kernel_quotient(h: HPair) -> tuple[HPair, list]:
    """``(A/J, U/J)`` for the largest ideal ``J`` inside ``U``, with the projection."""
    J = largest_ideal_within(h)
    if J.dim == 0:
        raise HPairError("pair is already non-degenerate (no ideal inside U)")
    Q, proj = alg.quotient_algebra_by_ideal(h.algebra, J)
    Ubar = Subspace.span([mat_vec(proj, u) for u in h.U.basis], Q.dim)
    return make_hpair(Q, Ubar), proj


def reduce_by_kernel(h: HPair) -> HPair:
    return kernel_quotient(h)[0]


def dual_algebra(n: int) -> LocalAlgebra:
    """``K[y,z]/(y^n, z^2, zy)`` with basis ``1, y, ..., y^(n-1), z``."""
    d = n + 1
    names = ["1", "y"] + [f"y^{k}" for k in range(2, n)] + ["z"]
    table = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
    for a in range(n):
        for b in range(n):
            if a + b < n:
                table[a][b][a + b] = Fraction(1)
    table[0][n][n] = table[n][0][n] = Fraction(1)
    return LocalAlgebra(names, table)


def dual_hpair_of_size(n: int) -> HPair:
    B = dual_algebra(n)
    basis = [B.basis(k) for k in range(1, n - 1)] + [B.basis(n)]
    return make_hpair(B, basis)


def dual_hpair(h: HPair) -> HPair:
    """The second induced action on the degenerate hypersurface of index ``n-1``."""
    cls = alg.classify_algebra(h.algebra)
    n = h.n
    if cls.kind != "chain" or n < 3:
        raise HPairError("dual pair needs a chain algebra with n >= 3")
    if canonical_chain_index(h).index != n - 1:
        raise HPairError("dual pair needs canonical index n-1")
    return dual_hpair_of_size(n)


def parse_elements(A: LocalAlgebra, text: str, cb=None) -> list[tuple]:
    """Elements from ``"x, x^2"`` style expressions or ``"[0,1,0]; [0,0,1]"`` vectors.

    Expressions are read against the staircase of ``cb`` when given, and
    against the algebra's basis names otherwise.
    """
    text = text.strip()
    if text.startswith("["):
        vecs = []
        for chunk in text.replace(";", "\n").splitlines():
            chunk = chunk.strip().strip(",")
            if not chunk:
                continue
            for part in chunk.split("]"):
                part = part.strip().lstrip(",").strip()
                if part:
                    vecs.append(tuple(as_fraction(x) for x in part.lstrip("[").split(",") if x.strip()))
        for v in vecs:
            if len(v) != A.dim:
                raise HPairError(f"vector of length {len(v)} in algebra of dim {A.dim}")
        return vecs
    if cb is not None:
        return [coordinates(p, cb) for p in parse_poly_list(text, cb.variables)]
    return _basis_name_vectors(A, text)


def parse_u(A: LocalAlgebra, text: str, cb=None) -> Subspace:
    """``U`` spanned by the elements listed in ``text`` (see :func:`parse_elements`)."""
    return Subspace.span(parse_elements(A, text, cb), A.dim)


def _basis_name_vectors(A: LocalAlgebra, text: str) -> list[tuple]:
    names = sorted({t for b in A.basis_names for t in re.findall(r"[A-Za-z_][A-Za-z_0-9]*", b)})
    index = {}
    for i, b in enumerate(A.basis_names):
        if b == "1":
            index[(0,) * len(names)] = i
            continue
        try:
            p = parse_poly_list(b, names)[0]
        except ValueError:
            continue
        if len(p.terms) == 1 and next(iter(p.terms.values())) == 1:
            index[next(iter(p.terms))] = i
    out = []
    for p in parse_poly_list(text, names):
        v = [Fraction(0)] * A.dim
        for e, c in p.terms.items():
            if e not in index:
                raise HPairError("U expression uses a monomial that is not a basis name")
            v[index[e]] += c
        out.append(tuple(v))
    return out
