"""Standard H-pairs used by the verification suites."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import algebra as alg
from . import hpair as hp
from .linalg import Subspace, mat_vec, rank
from .presentations import algebra_from_text


@dataclass(frozen=True)
class CorpusPair:
    label: str
    pair: hp.HPair
    family: str  # "chain" | "two-variable" | "dual" | "random-chain"
    n: int
    index: int | None = None  # canonical index for chain families


def chain_pairs(max_n: int = 6) -> list[CorpusPair]:
    return [
        CorpusPair(f"chain(n={n}, i={i})", hp.chain_hpair(n, i), "chain", n, i)
        for n in range(2, max_n + 1)
        for i in range(2, n + 1)
    ]


def two_variable_pair() -> CorpusPair:
    A, cb = algebra_from_text("Q[x,y]/(x^2, y^2)")
    return CorpusPair("P1xP1", hp.make_hpair(A, hp.parse_u(A, "x, y", cb)), "two-variable", 3)


def dual_pairs(min_n: int = 3, max_n: int = 6) -> list[CorpusPair]:
    return [
        CorpusPair(f"dual(n={n})", hp.dual_hpair_of_size(n), "dual", n)
        for n in range(min_n, max_n + 1)
    ]


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2, 3)))


def random_chain_pair(
    rng: random.Random, max_n: int = 6, min_n: int = 2, rebase_max_n: int = 4
) -> CorpusPair:
    """``U_i`` moved by a random automorphism of ``K[x]/(x^(n+1))``.

    For ``n <= rebase_max_n`` the algebra is also rewritten in a random basis
    of the maximal ideal. Larger rebased pairs make the symbolic vanishing
    oracle very expensive, since every coordinate becomes dense. The index
    ``i`` is recorded so that normalisation can be checked against it.
    """
    n = rng.randint(min_n, max_n)
    i = rng.randint(2, n)
    C = alg.chain_algebra(n)
    # automorphism x -> x + b_2 x^2 + ... + b_n x^n
    phi_x = [Fraction(0), Fraction(1)] + [_random_rational(rng) for _ in range(2, n + 1)]
    images = alg.power_basis(C, tuple(phi_x))
    U = Subspace.span([images[k] for k in range(1, n + 1) if k != i], n + 1)
    if n > rebase_max_n:
        return CorpusPair(f"random-chain(n={n}, i={i})", hp.make_hpair(C, U), "random-chain", n, i)
    # random invertible change of basis of the maximal ideal
    while True:
        T = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if rank(T) == n:
            break
    new_basis = [(Fraction(0),) + tuple(row) for row in T]
    B, to_new = alg.change_basis(C, new_basis)
    Unew = Subspace.span([mat_vec(to_new, u) for u in U.basis], n + 1)
    return CorpusPair(f"random-chain(n={n}, i={i})", hp.make_hpair(B, Unew), "random-chain", n, i)


def random_chain_pairs(count: int = 20, seed: int = 0, max_n: int = 6) -> list[CorpusPair]:
    rng = random.Random(seed)
    return [random_chain_pair(rng, max_n) for _ in range(count)]


def full_corpus(seed: int = 0, max_n: int = 6, random_count: int = 20) -> list[CorpusPair]:
    return (
        chain_pairs(max_n)
        + [two_variable_pair()]
        + dual_pairs(3, max_n)
        + random_chain_pairs(random_count, seed, max_n)
    )


def finite_expected(c: CorpusPair) -> bool:
    if c.family == "two-variable":
        return True
    if c.family == "dual":
        return False
    return c.index in (c.n - 1, c.n)
