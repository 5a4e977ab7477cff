"""Multivariate polynomials with exact rational coefficients.

A :class:`Poly` is a map from exponent tuples to nonzero ``Fraction``
coefficients together with the ordered tuple of variable names. The canonical
term order is graded lexicographic with the first variable largest.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import as_fraction, format_rational, inverse, rank

MAX_EXPONENT = 2**16


def grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


class Poly:
    __slots__ = ("gens", "terms")

    def __init__(self, gens: Sequence[str], terms: Mapping[tuple, object] | None = None):
        self.gens = tuple(gens)
        clean = {}
        for e, c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                e = tuple(e)
                if len(e) != len(self.gens):
                    raise ValueError(f"monomial {e} does not match {len(self.gens)} variables")
                clean[e] = c
        self.terms = clean

    # construction

    @classmethod
    def zero(cls, gens: Sequence[str]) -> "Poly":
        return cls(gens)

    @classmethod
    def const(cls, gens: Sequence[str], c) -> "Poly":
        return cls(gens, {(0,) * len(gens): c})

    @classmethod
    def var(cls, gens: Sequence[str], i: int) -> "Poly":
        e = [0] * len(gens)
        e[i] = 1
        return cls(gens, {tuple(e): 1})

    @classmethod
    def _raw(cls, gens: tuple, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.gens = gens
        p.terms = terms
        return p

    # basic protocol

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.gens == other.gens and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * len(self.gens): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.gens, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Poly({self.gens!r}, {str(self)!r})"

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.gens != self.gens:
                raise ValueError(f"variable lists differ: {self.gens} vs {other.gens}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.gens, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    # arithmetic

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)) and other == 0:
            return self
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.gens, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly._raw(self.gens, {})
            other = Fraction(other)
            return Poly._raw(self.gens, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.gens, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        q, r = divmod_poly(self, self._coerce(other))
        if r:
            raise ValueError("inexact polynomial division")
        return q

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(self.gens, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # inspection

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.gens), Fraction(0))

    @property
    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def leading_monomial(self, key=grlex_key) -> tuple:
        return max(self.terms, key=key)

    def leading_coefficient(self, key=grlex_key) -> Fraction:
        return self.terms[self.leading_monomial(key)]

    def sorted_terms(self, key=grlex_key) -> list[tuple[tuple, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def homogeneous_part(self, k: int) -> "Poly":
        return Poly._raw(self.gens, {e: c for e, c in self.terms.items() if sum(e) == k})

    def coeffs_in(self, i: int) -> dict[int, "Poly"]:
        """Coefficients with respect to variable ``i``; the keys are its exponents."""
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: Poly._raw(self.gens, t) for k, t in out.items()}

    def rename(self, gens: Sequence[str]) -> "Poly":
        if len(gens) != len(self.gens):
            raise ValueError("rename must keep the variable count")
        return Poly._raw(tuple(gens), dict(self.terms))

    def embed(self, gens: Sequence[str], positions: Sequence[int]) -> "Poly":
        """Same polynomial in a larger ring; variable ``i`` goes to ``positions[i]``."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(gens)
            for k, p in zip(e, positions):
                f[p] += k
            out[tuple(f)] = c
        return Poly._raw(tuple(gens), out)

    def evaluate(self, values: Sequence):
        """Substitute ``values[i]`` for variable ``i`` (numbers or polynomials)."""
        if len(values) != len(self.gens):
            raise ValueError("wrong number of values")
        total = 0
        cache: dict = {}
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = values[i] ** k
                    term = cache[key] * term
            total = total + term
        return total

    # serialization

    def to_json(self) -> list[dict]:
        return [
            {"monomial": list(e), "coeff": format_rational(c)}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, gens: Sequence[str], data: Iterable[Mapping]) -> "Poly":
        p = cls(gens)
        for t in data:
            p = p + cls(gens, {tuple(t["monomial"]): as_fraction(t["coeff"])})
        return p

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                g if k == 1 else f"{g}^{k}" for g, k in zip(self.gens, e) if k
            )
            a = abs(c)
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


# -- division, gcd --------------------------------------------------------


def divmod_poly(p: Poly, d: Poly, key=grlex_key) -> tuple[Poly, Poly]:
    """Multivariate division by a single divisor under the given order."""
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    lm = d.leading_monomial(key)
    lc = d.terms[lm]
    q: dict = {}
    r: dict = {}
    rest = dict(p.terms)
    while rest:
        m = max(rest, key=key)
        c = rest[m]
        if all(a >= b for a, b in zip(m, lm)):
            shift = tuple(a - b for a, b in zip(m, lm))
            f = c / lc
            q[shift] = q.get(shift, 0) + f
            for e, dc in d.terms.items():
                t = tuple(a + b for a, b in zip(e, shift))
                v = rest.get(t, 0) - f * dc
                if v:
                    rest[t] = v
                else:
                    rest.pop(t, None)
        else:
            r[m] = c
            del rest[m]
    return Poly._raw(p.gens, {e: c for e, c in q.items() if c}), Poly._raw(p.gens, r)


def normalize_scalar(p: Poly) -> Poly:
    """Scale so the graded-lex largest term has coefficient 1."""
    if not p:
        raise ValueError("cannot normalize the zero polynomial")
    return p * (1 / p.leading_coefficient())


def _prem(a: Poly, b: Poly, i: int) -> Poly:
    """Pseudo-remainder of ``a`` by ``b`` as univariate polynomials in variable ``i``."""
    db = b.degree_in(i)
    lc_b = b.coeffs_in(i)[db]
    xi = Poly.var(a.gens, i)
    r = a
    while r and r.degree_in(i) >= db:
        dr = r.degree_in(i)
        lc_r = r.coeffs_in(i)[dr]
        r = lc_b * r - lc_r * (xi ** (dr - db)) * b
    return r


def _content(p: Poly, i: int) -> Poly:
    g = None
    for c in p.coeffs_in(i).values():
        g = c if g is None else gcd_poly(g, c)
        if g.is_constant():
            return Poly.const(p.gens, 1)
    return g


def gcd_poly(p: Poly, q: Poly) -> Poly:
    """Monic (graded-lex) greatest common divisor.

    Recursive primitive-PRS Euclid: the highest-index variable present is the
    main variable and coefficients live in the ring of the remaining ones.
    """
    if p.gens != q.gens:
        raise ValueError(f"variable lists differ: {p.gens} vs {q.gens}")
    if not p and not q:
        raise ValueError("gcd of two zero polynomials")
    if not p:
        return normalize_scalar(q)
    if not q:
        return normalize_scalar(p)
    if p.is_constant() or q.is_constant():
        return Poly.const(p.gens, 1)
    used = p.variables_used() | q.variables_used()
    i = max(used)
    if i not in p.variables_used():
        return gcd_poly(p, _content(q, i))
    if i not in q.variables_used():
        return gcd_poly(_content(p, i), q)
    cp, cq = _content(p, i), _content(q, i)
    a, b = p / cp, q / cq
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    while b and b.degree_in(i) > 0:
        r = _prem(a, b, i)
        a = b
        b = r / _content(r, i) if r else r
    if b:
        # nonzero remainder free of the main variable: primitive gcd is 1
        g = Poly.const(p.gens, 1)
    else:
        g = a / _content(a, i)
    return normalize_scalar(gcd_poly(cp, cq) * g)


def partial_derivative(p: Poly, i: int) -> Poly:
    if not 0 <= i < len(p.gens):
        raise IndexError(f"variable index {i} out of range")
    out = {}
    for e, c in p.terms.items():
        k = e[i]
        if k:
            out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
    return Poly._raw(p.gens, out)


def radical(p: Poly) -> Poly:
    """Product of the distinct irreducible factors of ``p`` (monic).

    In characteristic zero ``gcd(p, dp/dz_0, ..., dp/dz_n)`` keeps every factor
    with multiplicity one less, so dividing it out leaves each factor once.
    """
    if not p:
        raise ValueError("squarefree part of the zero polynomial")
    g = p
    for i in range(len(p.gens)):
        d = partial_derivative(p, i)
        if d:
            g = gcd_poly(g, d)
    return normalize_scalar(p / g)


squarefree_part = radical


def divide_by_radical(p: Poly) -> Poly:
    """``p`` divided once by each of its distinct irreducible factors."""
    return p / radical(p)


def homogeneous_degree(p: Poly) -> int | None:
    """Common total degree of all terms, or ``None`` if ``p`` is not homogeneous."""
    degs = {sum(e) for e in p.terms}
    if len(degs) == 1:
        return degs.pop()
    return None


def linear_compose(p: Poly, m: Sequence[Sequence], gens: Sequence[str] | None = None) -> Poly:
    """``p`` with variable ``i`` replaced by ``sum_j m[i][j] * y_j``.

    ``gens`` names the new variables ``y``; it defaults to ``p.gens``.
    """
    gens = tuple(gens) if gens is not None else p.gens
    if len(m) != len(p.gens):
        raise ValueError("matrix row count must equal the variable count")
    lin = [
        Poly(gens, {tuple(int(k == j) for k in range(len(gens))): row[j] for j in range(len(gens))})
        for row in m
    ]
    out = p.evaluate(lin)
    return out if isinstance(out, Poly) else Poly.const(gens, out)


def substitute_linear(p: Poly, m: Sequence[Sequence]) -> Poly:
    """Invertible linear change of variables ``z -> m z``."""
    n = len(p.gens)
    if len(m) != n or any(len(r) != n for r in m):
        raise ValueError("substitution matrix must be square of the variable count")
    inverse(m)  # raises on singular input
    return linear_compose(p, m)


def essential_variable_count(p: Poly) -> int:
    """Least number of variables ``p`` can be written in after a linear change.

    Equals the dimension of the span of the first partial derivatives.
    """
    if not p:
        raise ValueError("zero polynomial")
    d = homogeneous_degree(p)
    if d is None:
        raise ValueError("polynomial is not homogeneous")
    derivs = [partial_derivative(p, i) for i in range(len(p.gens))]
    monos = sorted({e for q in derivs for e in q.terms})
    if not monos:
        return 0
    return rank([[q.coefficient(e) for e in monos] for q in derivs])
