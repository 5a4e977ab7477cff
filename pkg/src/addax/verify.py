"""Table reproduction and the invariant suites behind ``verify-invariants``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import algebra as alg
from . import hpair as hp
from . import orbits as ob
from .corpus import CorpusPair, finite_expected, full_corpus, two_variable_pair
from .poly import Poly, normalize_scalar
from .presentations import parse_poly


# -- reference table ---------------------------------------------------------------------

# (dim X, pair description, builder, printed equation)
TABLE1 = (
    (1, "(K[x]/(x^3), <x>)", lambda: hp.chain_hpair(2, 2),
     "z0*z2 - 1/2*z1^2"),
    (2, "(K[x,y]/(x^2,y^2), <x,y>)", lambda: two_variable_pair().pair,
     "z0*z3 - z1*z2"),
    (2, "(K[x]/(x^4), <x,x^2>)", lambda: hp.chain_hpair(3, 3),
     "z0^2*z3 - z0*z1*z2 + 1/3*z1^3"),
    (2, "(K[x]/(x^4), <x,x^3>)", lambda: hp.chain_hpair(3, 2),
     "z0*z2 - 1/2*z1^2"),
    (3, "(K[x]/(x^5), <x,x^2,x^3>)", lambda: hp.chain_hpair(4, 4),
     "z0^3*z4 - z0^2*z1*z3 + 1/2*z0^2*z2^2 + z0*z1^2*z2 - 1/4*z1^4"),
    (3, "(K[x]/(x^5), <x,x^2,x^4>)", lambda: hp.chain_hpair(4, 3),
     "z0^2*z3 - z0*z1*z2 + 1/3*z1^3"),
    (4, "(K[x]/(x^6), <x,x^2,x^3,x^4>)", lambda: hp.chain_hpair(5, 5),
     "z0^4*z5 - z0^3*z1*z4 - z0^3*z2*z3 + z0^2*z1^2*z3 + z0^2*z1*z2^2"
     " - z0*z1^3*z2 + 1/5*z1^5"),
    (4, "(K[x]/(x^6), <x,x^2,x^3,x^5>)", lambda: hp.chain_hpair(5, 4),
     "z0^3*z4 - z0^2*z1*z3 + 1/2*z0^2*z2^2 + z0*z1^2*z2 - 1/4*z1^4"),
)


@dataclass
class TableRow:
    row: int
    dim_x: int
    pair: str
    computed: Poly
    printed: Poly
    exact: bool
    up_to_scalar: bool

    def to_json(self) -> dict:
        return {
            "row": self.row,
            "dim_X": self.dim_x,
            "pair": self.pair,
            "computed": str(self.computed),
            "printed": str(self.printed),
            "exact": self.exact,
            "up_to_scalar": self.up_to_scalar,
            "match": self.up_to_scalar,
        }


def same_up_to_scalar(p: Poly, q: Poly) -> bool:
    if not p or not q:
        return not p and not q
    return normalize_scalar(p) == normalize_scalar(q)


def verify_table1(max_n: int = 5) -> list[TableRow]:
    """Recompute every row whose algebra has ``n <= max_n`` and compare."""
    rows = []
    for k, (dim_x, desc, build, printed_text) in enumerate(TABLE1, start=1):
        h = build()
        if h.n > max_n:
            continue
        F = hp.equation(h).poly
        printed = parse_poly(printed_text, F.gens)
        rows.append(TableRow(k, dim_x, desc, F, printed, F == printed, same_up_to_scalar(F, printed)))
    return rows


# -- oracles --------------------------------------------------------------------------


def orbit_parametrisation(h: hp.HPair) -> tuple[tuple, tuple[str, ...]]:
    """``exp(sum s_j u_j) . 1`` with symbolic ``s_j`` over a basis of ``U``."""
    A = h.algebra
    names = tuple(f"s{j + 1}" for j in range(h.U.dim))
    s = [Poly.var(names, j) for j in range(len(names))]
    m = [Poly(names) for _ in range(A.dim)]
    for sj, u in zip(s, h.U.basis):
        for c, uc in enumerate(u):
            if uc:
                m[c] = m[c] + sj * uc
    return alg.exp_element(A, tuple(m)), names


def equation_vanishes(h: hp.HPair) -> bool:
    F = hp.equation(h).poly
    point, _ = orbit_parametrisation(h)
    value = F.evaluate(list(point))
    return not value


def evaluate_at(F: Poly, point) -> Fraction:
    return Fraction(F.evaluate([Fraction(c) for c in point]))


def nondegenerate_expected(c: CorpusPair) -> bool:
    """Only ``U_n`` and the two-variable pair give non-degenerate forms."""
    if c.family == "two-variable":
        return True
    if c.family == "dual":
        return False
    return c.index == c.n


def mutate_algebra(A: alg.LocalAlgebra) -> alg.LocalAlgebra:
    """Double the coefficient of the first nonzero ``e_i e_j`` with ``1 <= i < j``.

    Both ``e_i e_j`` and ``e_j e_i`` change, so commutativity survives and
    the damage shows up as an associativity failure.
    """
    table = [[list(v) for v in row] for row in A.table]
    for i in range(1, A.dim):
        for j in range(i + 1, A.dim):
            k = next((k for k, c in enumerate(table[i][j]) if c), None)
            if k is not None:
                table[i][j][k] *= 2
                table[j][i][k] *= 2
                return alg.LocalAlgebra(A.basis_names, table)
    raise ValueError("no off-diagonal product to mutate")


# -- suites ---------------------------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, label: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(label)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "failed": len(self.failures),
            "passed": self.passed,
            "failures": self.failures[:20],
        }


def distinct_algebras(corpus: list[CorpusPair]) -> list[tuple[str, alg.LocalAlgebra]]:
    seen: list[alg.LocalAlgebra] = []
    out = []
    for c in corpus:
        A = c.pair.algebra
        if any(A == B for B in seen):
            continue
        seen.append(A)
        out.append((c.label, A))
    return out


def _random_m(rng: random.Random, A: alg.LocalAlgebra) -> tuple:
    return (Fraction(0),) + tuple(
        Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(A.n)
    )


def suite_validation(algebras, inject_fault: bool) -> SuiteResult:
    res = SuiteResult("associativity")
    mutated = False
    for label, A in algebras:
        if inject_fault and not mutated and A.dim >= 5:
            A = mutate_algebra(A)
            label += " [mutated]"
            mutated = True
        res.check(not alg.validate_algebra(A), label)
    return res


def suite_exp_log(algebras, rng: random.Random, samples: int) -> SuiteResult:
    res = SuiteResult("exp-log-roundtrip")
    for label, A in algebras:
        bad = 0
        for _ in range(samples):
            m = _random_m(rng, A)
            u = A.element((Fraction(1),) + m[1:])
            if alg.log_element(A, alg.exp_element(A, m)) != m or alg.exp_element(A, alg.log_element(A, u)) != u:
                bad += 1
        res.checked += samples
        if bad:
            res.failures.append(f"{label}: {bad} of {samples}")
    return res


def suite_vanishing(corpus) -> SuiteResult:
    res = SuiteResult("equation-vanishing")
    for c in corpus:
        if c.pair.algebra.dim <= 6:
            res.check(equation_vanishes(c.pair), c.label)
    return res


def suite_criterion(corpus) -> SuiteResult:
    res = SuiteResult("criterion-agreement")
    for c in corpus:
        a = hp.is_nondegenerate_algebraic(c.pair)
        e = hp.is_nondegenerate_equation(c.pair)
        res.check(a == e == nondegenerate_expected(c), c.label)
    return res


def suite_finite_audit(corpus) -> SuiteResult:
    res = SuiteResult("finite-vs-audit")
    for c in corpus:
        finite = hp.finite_orbits(c.pair).finite
        ok = finite == finite_expected(c)
        if c.family in ("chain", "random-chain"):
            ok = ok and ob.annihilator_audit(c.pair).all_coincide == finite
            ok = ok and hp.canonical_chain_index(c.pair).index == c.index
        res.check(ok, c.label)
    return res


def suite_dual(max_n: int) -> SuiteResult:
    res = SuiteResult("dual-equation")
    for n in range(3, max_n + 1):
        d = hp.dual_hpair(hp.chain_hpair(n, n - 1))
        ok = same_up_to_scalar(hp.equation(d).poly, hp.equation(hp.chain_hpair(n, n - 1)).poly)
        ok = ok and not hp.finite_orbits(d).finite
        res.check(ok, f"n={n}")
    return res


def _random_in_u(rng: random.Random, h: hp.HPair, lead_nonzero: bool) -> tuple:
    while True:
        coeffs = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in h.U.basis]
        v = [Fraction(0)] * h.algebra.dim
        for c, u in zip(coeffs, h.U.basis):
            v = [a + c * b for a, b in zip(v, u)]
        if any(v) and (not lead_nonzero or v[1]):
            return tuple(v)


def limit_point_checks(rng: random.Random, max_n: int, samples: int = 50) -> SuiteResult:
    """``alpha_1 != 0`` gives ``p(x^n)``; limits lie on X; base-point equivariance."""
    res = SuiteResult("limit-points")
    for n in range(2, max_n + 1):
        pairs = {i: hp.chain_hpair(n, i) for i in range(2, n + 1)}
        eqs = {i: hp.equation(h).poly for i, h in pairs.items()}
        xn = tuple(Fraction(int(k == n)) for k in range(n + 1))
        for t in range(samples):
            i = rng.randint(2, n)
            h = pairs[i]
            s = _random_in_u(rng, h, lead_nonzero=True)
            u = _random_in_u(rng, h, lead_nonzero=False)
            lim0 = ob.one_param_limit(h, s)
            lim_u = ob.one_param_limit(h, s, u)
            ok = ob.projectively_equal(lim0, xn)
            ok = ok and evaluate_at(eqs[i], lim_u) == 0
            moved = h.algebra.mul(alg.exp_element(h.algebra, u), lim0)
            ok = ok and ob.projectively_equal(moved, lim_u)
            res.check(ok, f"n={n} i={i} sample={t}")
        # any generator, including alpha_1 = 0, still limits onto X
        for i, h in pairs.items():
            for u in h.U.basis:
                res.check(evaluate_at(eqs[i], ob.one_param_limit(h, u)) == 0, f"n={n} i={i} s={u}")
    return res


@dataclass
class InvariantReport:
    seed: int
    max_n: int
    suites: list

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "max_n": self.max_n,
            "passed": self.passed,
            "suites": [s.to_json() for s in self.suites],
        }


def verify_invariants(
    max_n: int = 6,
    seed: int = 0,
    inject_fault: bool = False,
    roundtrips: int = 1000,
    limit_samples: int = 50,
) -> InvariantReport:
    corpus = full_corpus(seed=seed, max_n=max_n)
    algebras = distinct_algebras(corpus)
    rng = random.Random(seed)
    suites = [
        suite_validation(algebras, inject_fault),
        suite_exp_log(algebras, rng, roundtrips),
        suite_vanishing(corpus),
        suite_criterion(corpus),
        suite_finite_audit(corpus),
        suite_dual(max_n),
        limit_point_checks(rng, max_n, limit_samples),
    ]
    return InvariantReport(seed, max_n, suites)
