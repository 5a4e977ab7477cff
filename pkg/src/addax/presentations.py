"""Algebra presentations ``Q[x,y]/(...)``: parsing, Buchberger completion, quotients."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .algebra import LocalAlgebra
from .poly import MAX_EXPONENT, Poly

DEFAULT_PAIR_CAP = 10_000
ORDERS = ("grlex", "grlex-rev", "grevlex", "lex")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class CompletionError(RuntimeError):
    pass


class NotZeroDimensional(ValueError):
    pass


class NotLocal(ValueError):
    pass


# -- tokenizer / expression parser -----------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()\[\],]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, gens: Sequence[str] = ()):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.gens = tuple(gens)

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok[2], self.text)

    def expect(self, value):
        tok = self.next()
        if tok[1] != value or tok[0] not in ("op",):
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    # expr := ['-'|'+'] term (('+'|'-') term)*
    def expr(self) -> Poly:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.next()[1] == "-" else 1
        p = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.next()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    # term := power (('*'|'/') power)*
    def term(self) -> Poly:
        p = self.power()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op_tok = self.next()
            rhs_tok = self.peek()
            q = self.power()
            if op_tok[1] == "*":
                p = p * q
            else:
                if not q.is_constant() or not q:
                    raise self.error("division only by a nonzero constant", rhs_tok)
                p = p * (1 / q.constant_value())
        return p

    # power := unary ('^' INT)?
    def power(self) -> Poly:
        base = self.unary()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.next()
            tok = self.next()
            if tok[0] != "num":
                raise self.error("expected integer exponent", tok)
            k = int(tok[1])
            if k > MAX_EXPONENT:
                raise self.error(f"exponent exceeds {MAX_EXPONENT}", tok)
            return base ** k
        return base

    def unary(self) -> Poly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.next()
            return -self.unary()
        return self.atom()

    def atom(self) -> Poly:
        tok = self.next()
        if tok[0] == "num":
            return Poly.const(self.gens, int(tok[1]))
        if tok[0] == "ident":
            if tok[1] not in self.gens:
                raise self.error(f"unknown symbol {tok[1]!r}", tok)
            return Poly.var(self.gens, self.gens.index(tok[1]))
        if tok[0] == "op" and tok[1] == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise self.error(f"unexpected {tok[1] or 'end of input'!r}", tok)


def parse_poly(text: str, gens: Sequence[str]) -> Poly:
    parser = _Parser(text, gens)
    p = parser.expr()
    if parser.peek()[0] != "end":
        raise parser.error(f"unexpected {parser.peek()[1]!r}")
    return p


def parse_poly_list(text: str, gens: Sequence[str]) -> list[Poly]:
    """Comma separated polynomials, e.g. ``"x, x^3 - 1/2*x^2"``."""
    parser = _Parser(text, gens)
    out = []
    if parser.peek()[0] == "end":
        return out
    while True:
        out.append(parser.expr())
        tok = parser.next()
        if tok[0] == "end":
            return out
        if tok[1] != ",":
            raise parser.error(f"expected ',' found {tok[1]!r}", tok)


# -- presentations -----------------------------------------------------------


@dataclass(frozen=True)
class AlgebraPresentation:
    field: str
    variables: tuple
    generators: tuple  # tuple[Poly, ...]


def parse_presentation(text: str) -> AlgebraPresentation:
    """Parse ``IDENT '[' varlist ']' '/' '(' polylist ')'``."""
    p = _Parser(text)
    tok = p.next()
    if tok[0] != "ident":
        raise p.error("expected coefficient field name", tok)
    fld = tok[1]
    p.expect("[")
    names: list[str] = []
    while True:
        tok = p.next()
        if tok[0] != "ident":
            raise p.error("expected variable name", tok)
        if tok[1] in names:
            raise p.error(f"duplicate variable {tok[1]!r}", tok)
        if tok[1] == fld:
            raise p.error(f"variable {tok[1]!r} clashes with the field name", tok)
        names.append(tok[1])
        tok = p.next()
        if tok[1] == "]":
            break
        if tok[1] != ",":
            raise p.error("expected ',' or ']'", tok)
    p.expect("/")
    open_tok = p.expect("(")
    p.gens = tuple(names)
    gens: list[Poly] = []
    if p.peek()[1] == ")":
        raise p.error("empty generator list", open_tok)
    while True:
        gens.append(p.expr())
        tok = p.next()
        if tok[1] == ")":
            break
        if tok[1] != ",":
            raise p.error("expected ',' or ')'", tok)
    if p.peek()[0] != "end":
        raise p.error(f"trailing input {p.peek()[1]!r}")
    return AlgebraPresentation(fld, tuple(names), tuple(gens))


# -- monomial orders ---------------------------------------------------------


def order_key(order: str = "grlex") -> Callable[[tuple], tuple]:
    """Sort key for exponent tuples; larger key means larger monomial."""
    if order == "grlex":
        return lambda e: (sum(e), e)
    if order == "grlex-rev":
        return lambda e: (sum(e), e[::-1])
    if order == "grevlex":
        return lambda e: (sum(e), tuple(-k for k in e[::-1]))
    if order == "lex":
        return lambda e: e
    raise ValueError(f"unknown monomial order {order!r}; choose from {ORDERS}")


# -- Buchberger --------------------------------------------------------------


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _reduce(p: Poly, basis: Sequence[Poly], key) -> Poly:
    """Full reduction of ``p`` by ``basis``; returns the remainder."""
    leads = [(g.leading_monomial(key), g) for g in basis]
    rest = dict(p.terms)
    rem: dict = {}
    while rest:
        m = max(rest, key=key)
        c = rest[m]
        for lm, g in leads:
            if _divides(lm, m):
                f = c / g.terms[lm]
                shift = tuple(a - b for a, b in zip(m, lm))
                for e, gc in g.terms.items():
                    t = tuple(a + b for a, b in zip(e, shift))
                    v = rest.get(t, 0) - f * gc
                    if v:
                        rest[t] = v
                    else:
                        rest.pop(t, None)
                break
        else:
            rem[m] = c
            del rest[m]
    return Poly._raw(p.gens, rem)


def _s_poly(f: Poly, g: Poly, key) -> Poly:
    lf, lg = f.leading_monomial(key), g.leading_monomial(key)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = Poly(f.gens, {tuple(a - b for a, b in zip(lcm, lf)): 1 / f.terms[lf]})
    mg = Poly(g.gens, {tuple(a - b for a, b in zip(lcm, lg)): 1 / g.terms[lg]})
    return mf * f - mg * g


@dataclass
class CompletedBasis:
    variables: tuple
    order: str
    basis: list  # reduced Groebner basis, list[Poly]
    staircase: list | None = field(default=None)  # list of exponent tuples
    pairs_processed: int = 0

    @property
    def key(self):
        return order_key(self.order)


def complete(pres: AlgebraPresentation, cap: int = DEFAULT_PAIR_CAP, order: str = "grlex") -> CompletedBasis:
    """Reduced Groebner basis of the presentation ideal."""
    if cap < 1:
        raise ValueError("pair cap must be at least 1")
    key = order_key(order)
    gens = [g for g in pres.generators]
    if any(not g for g in gens):
        raise CompletionError("zero generator in presentation")
    basis: list[Poly] = []
    for g in gens:
        r = _reduce(g, basis, key) if basis else g
        if r:
            basis.append(r)
    pairs = list(combinations(range(len(basis)), 2))
    processed = 0
    while pairs:
        if processed >= cap:
            raise CompletionError(f"pair cap {cap} exceeded after {processed} pairs")
        i, j = pairs.pop(0)
        processed += 1
        li, lj = basis[i].leading_monomial(key), basis[j].leading_monomial(key)
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        r = _reduce(_s_poly(basis[i], basis[j], key), basis, key)
        if r:
            basis.append(r)
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    reduced = _interreduce(basis, key)
    cb = CompletedBasis(tuple(pres.variables), order, reduced, pairs_processed=processed)
    cb.staircase = _staircase(cb)
    return cb


def _interreduce(basis: list[Poly], key) -> list[Poly]:
    monic = [g * (1 / g.leading_coefficient(key)) for g in basis]
    # drop elements whose leading monomial is divisible by another's
    keep: list[Poly] = []
    for i, g in enumerate(monic):
        lm = g.leading_monomial(key)
        redundant = False
        for j, h in enumerate(monic):
            if i == j:
                continue
            lh = h.leading_monomial(key)
            if _divides(lh, lm) and (lh != lm or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = _reduce(g, others, key) if others else g
        out.append(r * (1 / r.leading_coefficient(key)))
    out.sort(key=lambda g: key(g.leading_monomial(key)))
    return out


def _staircase(cb: CompletedBasis) -> list[tuple] | None:
    """Standard monomials, or ``None`` when there are infinitely many."""
    key = cb.key
    n = len(cb.variables)
    leads = [g.leading_monomial(key) for g in cb.basis]
    bounds = []
    for i in range(n):
        pure = [lm[i] for lm in leads if all(k == 0 for j, k in enumerate(lm) if j != i) and lm[i] > 0]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []

    def rec(prefix):
        if len(prefix) == n:
            e = tuple(prefix)
            if not any(_divides(lm, e) for lm in leads):
                out.append(e)
            return
        for k in range(bounds[len(prefix)]):
            rec(prefix + [k])

    rec([])
    out.sort(key=lambda e: (sum(e), tuple(-k for k in e)))
    return out


def normal_form(p: Poly, cb: CompletedBasis) -> Poly:
    if tuple(p.gens) != tuple(cb.variables):
        raise ValueError("polynomial variables do not match the presentation")
    return _reduce(p, cb.basis, cb.key)


def monomial_name(e: tuple, variables: Sequence[str]) -> str:
    if not any(e):
        return "1"
    return "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k)


def coordinates(p: Poly, cb: CompletedBasis) -> tuple:
    """Coordinates of the class of ``p`` in the staircase basis."""
    if cb.staircase is None:
        raise NotZeroDimensional("ideal is not zero-dimensional")
    r = normal_form(p, cb)
    index = {e: i for i, e in enumerate(cb.staircase)}
    v = [Fraction(0)] * len(cb.staircase)
    for e, c in r.terms.items():
        v[index[e]] = c
    return tuple(v)


def quotient_algebra(cb: CompletedBasis):
    """The local algebra with basis the staircase monomials (``1`` first)."""
    if cb.staircase is None:
        raise NotZeroDimensional("infinite staircase: the ideal is not zero-dimensional")
    stair = cb.staircase
    n = len(cb.variables)
    one = (0,) * n
    if not stair or stair[0] != one:
        raise NotLocal("the presentation ideal is the unit ideal")
    gens = cb.variables
    mono = [Poly(gens, {e: 1}) for e in stair]
    dim = len(stair)
    table = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            v = coordinates(mono[i] * mono[j], cb)
            table[i][j] = table[j][i] = v
    names = [monomial_name(e, gens) for e in stair]
    A = LocalAlgebra(names, table)
    for i in range(1, dim):
        x = mono[i]
        power = x
        for _ in range(dim + 1):
            power = normal_form(power * x, cb)
            if not power:
                break
        else:
            raise NotLocal(f"basis monomial {names[i]} is not nilpotent in the quotient")
    return A


def algebra_from_text(text: str, order: str = "grlex", cap: int = DEFAULT_PAIR_CAP):
    """Convenience: parse, complete and build the quotient algebra."""
    pres = parse_presentation(text)
    cb = complete(pres, cap=cap, order=order)
    return quotient_algebra(cb), cb
