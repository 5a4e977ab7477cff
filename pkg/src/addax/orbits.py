"""Orbits of ``U`` on the hypersurface ``X`` of an H-pair.

Points of ``X`` off the open orbit are ``p(z)`` with ``z`` in ``m`` and
``z^d`` in ``U``. Their ``m``-orbits are the affine pieces ``z + z*m``; the
``m``-orbit of ``p(z)`` is a single ``U``-orbit exactly when
``Ann(z) + U = m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Sequence

from . import algebra as alg
from . import hpair as hp
from .linalg import Subspace, format_rational, subspace_sum
from .poly import Poly


class OrbitError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitReport:
    representative: tuple | str
    dimension: int
    kind: str  # "open" | "coincides" | "infinite-fiber"
    annihilator: Subspace | None = None
    note: str = ""

    def to_json(self) -> dict:
        rep = self.representative
        return {
            "representative": rep if isinstance(rep, str) else [format_rational(c) for c in rep],
            "dimension": self.dimension,
            "kind": self.kind,
            "annihilator_dim": None if self.annihilator is None else self.annihilator.dim,
            **({"note": self.note} if self.note else {}),
        }


@dataclass(frozen=True)
class OrbitPoset:
    reports: tuple
    closure_relations: tuple  # (i, j): orbit i lies in the closure of orbit j

    def to_json(self) -> dict:
        return {
            "orbits": [r.to_json() for r in self.reports],
            "closure": [list(p) for p in self.closure_relations],
        }


def _check_in_m(z: Sequence) -> None:
    if z[0] != 0:
        raise OrbitError("element is not in the maximal ideal")
    if not any(z):
        raise OrbitError("zero element does not define a point")


def complement_member(h: hp.HPair, z: Sequence) -> bool:
    """Whether ``p(z)`` lies on ``X`` outside the open orbit (``z^d`` in ``U``)."""
    z = h.algebra.element(z)
    _check_in_m(z)
    d = hp.degree(h)
    return h.U.contains(h.algebra.power(z, d))


def on_open_orbit(h: hp.HPair, a: Sequence) -> bool:
    a = h.algebra.element(a)
    if a[0] == 0:
        return False
    u = tuple(c / a[0] for c in a)
    return h.U.contains(alg.log_element(h.algebra, u))


def orbit_report(h: hp.HPair, z: Sequence) -> OrbitReport:
    A = h.algebra
    z = A.element(z)
    if z[0] != 0:
        if not on_open_orbit(h, z):
            raise OrbitError("point is not on the hypersurface")
        return OrbitReport(z, h.U.dim, "open", Subspace.zero(A.dim))
    if not complement_member(h, z):
        raise OrbitError("point is not on the hypersurface")
    ann = alg.annihilator(A, z)
    dim = A.dim - 1 - ann.dim
    if subspace_sum(ann, h.U).dim == A.dim - 1:
        return OrbitReport(z, dim, "coincides", ann)
    if not ann <= h.U:
        raise OrbitError("annihilator neither completes U nor lies in it")
    return OrbitReport(z, dim, "infinite-fiber", ann, "infinitely many U-orbits in this m-orbit")


def orbit_contains(h: hp.HPair, rep: Sequence, point: Sequence) -> bool:
    """Whether ``p(point)`` lies in the ``m``-orbit ``p(rep + rep*m)``."""
    A = h.algebra
    L = Subspace.span([A.mul(rep, A.basis(i)) for i in range(1, A.dim)], A.dim)
    if L.contains(point):
        return False
    return subspace_sum(L, Subspace.span([rep], A.dim)).contains(point)


# -- chain audit -----------------------------------------------------------------


@dataclass(frozen=True)
class AuditResult:
    all_coincide: bool
    kinds: tuple  # (k, kind) for representatives x^k


def annihilator_audit(h: hp.HPair) -> AuditResult:
    """``Ann(x^k) + U = m`` for the complement representatives ``x^2..x^n``.

    Chain algebras only; independent of the canonical-index computation.
    """
    A = h.algebra
    if alg.classify_algebra(A).kind != "chain":
        raise OrbitError("audit needs a chain algebra")
    powers = alg.power_basis(A, alg.chain_generator(A))
    kinds = []
    for k in range(2, A.dim):
        z = powers[k]
        if not complement_member(h, z):
            raise OrbitError(f"x^{k} unexpectedly off the hypersurface")
        kinds.append((k, orbit_report(h, z).kind))
    return AuditResult(all(kd == "coincides" for _, kd in kinds), tuple(kinds))


# -- orbit posets ------------------------------------------------------------------


def _require_finite(h: hp.HPair) -> hp.OrbitVerdict:
    v = hp.finite_orbits(h)
    if not v.finite:
        raise OrbitError(f"finitely many orbits not certified: {v.certificate}")
    return v


def chain_orbit_poset(h: hp.HPair) -> OrbitPoset:
    """Orbit list and closure order for a finite-orbit pair."""
    _require_finite(h)
    A = h.algebra
    kind = alg.classify_algebra(A).kind
    if kind == "two-variable":
        return _two_variable_poset(h)
    powers = alg.power_basis(A, alg.chain_generator(A))
    reports = [orbit_report(h, A.one())]
    for k in range(2, A.dim):
        reports.append(orbit_report(h, powers[k]))
    relations = [(0, 0)]
    for a in range(1, len(reports)):
        relations.append((a, 0))
    for a in range(1, len(reports)):
        for b in range(1, len(reports)):
            k, l = a + 1, b + 1
            if k >= l:
                # closure of O(x^l) is p(m^l); check the representative lies in it
                if not alg.ideal_power(A, l).contains(powers[k]):
                    raise OrbitError("closure check failed")
                relations.append((a, b))
    return OrbitPoset(tuple(reports), tuple(relations))


@dataclass(frozen=True)
class IsotropicLines:
    rational: bool
    vectors: tuple  # rational isotropic vectors in U when available
    discriminant: Fraction


def isotropic_lines(h: hp.HPair) -> IsotropicLines:
    """Zeros of ``u -> pi(u^2)`` on the two-dimensional ``U``."""
    A = h.algebra
    b1, b2 = h.U.basis
    q = lambda u, v: h.project(A.mul(u, v))
    a, b, c = q(b1, b1), q(b1, b2), q(b2, b2)
    disc = b * b - a * c
    if disc == 0:
        raise OrbitError("degenerate quadratic form on U")
    root = _rational_sqrt(disc)
    if root is None:
        return IsotropicLines(False, (), disc)
    # s*b1 + t*b2 is isotropic iff a s^2 + 2b s t + c t^2 = 0
    if a == 0:
        vecs = (b1, tuple(c * x - 2 * b * y for x, y in zip(b1, b2)))
    else:
        vecs = tuple(
            tuple((-b + sgn * root) * x + a * y for x, y in zip(b1, b2)) for sgn in (1, -1)
        )
    vecs = tuple(_scale_first(v) for v in vecs)
    for v in vecs:
        if q(v, v) != 0:
            raise OrbitError("isotropic vector computation failed")
    return IsotropicLines(True, vecs, disc)


def _scale_first(v: Sequence) -> tuple:
    lead = next(x for x in v if x)
    return tuple(x / lead for x in v)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _two_variable_poset(h: hp.HPair) -> OrbitPoset:
    A = h.algebra
    soc = alg.socle(A)
    s = soc.basis[0]
    lines = isotropic_lines(h)
    reports = [orbit_report(h, A.one())]
    if lines.rational:
        for v in lines.vectors:
            reports.append(orbit_report(h, v))
    else:
        # an isotropic u of a nondegenerate form has Ann(u) = <u> + m^2
        for sign in ("+", "-"):
            reports.append(
                OrbitReport(
                    f"isotropic line ({sign}) of pi(u^2) over Q(sqrt({format_rational(lines.discriminant)}))",
                    A.dim - 3,
                    "coincides",
                    None,
                    "representative not defined over Q",
                )
            )
    reports.append(orbit_report(h, s))
    relations = [(1, 0), (2, 0), (3, 0), (3, 1), (3, 2)]
    for a in range(4):
        relations.append((a, a))
    return OrbitPoset(tuple(reports), tuple(sorted(relations)))


def fixed_points(h: hp.HPair) -> dict:
    soc = alg.socle(h.algebra)
    return {
        "socle_basis": [[format_rational(c) for c in v] for v in soc.basis],
        "projective_dimension": soc.dim - 1,
        "infinitely_many_orbits": soc.dim > 1,
    }


# -- one-parameter subgroups ------------------------------------------------------------


def one_param_curve(h: hp.HPair, s: Sequence, u: Sequence | None = None) -> tuple:
    """Coordinates of ``exp(t s) exp(u)`` as polynomials in ``t``."""
    A = h.algebra
    s = A.element(s)
    u = A.element(u) if u is not None else A.zero()
    if not any(s):
        raise OrbitError("subgroup generator must be nonzero")
    if not h.U.contains(s) or not h.U.contains(u):
        raise OrbitError("subgroup generator and base must lie in U")
    gens = ("t",)
    t = Poly.var(gens, 0)
    ts = tuple(t * c for c in s)
    curve = alg.exp_element(A, ts)
    base = alg.exp_element(A, u)
    return A.mul(curve, tuple(Poly.const(gens, c) for c in base))


def one_param_limit(h: hp.HPair, s: Sequence, u: Sequence | None = None) -> tuple:
    """Limit point at ``t -> oo``: the top ``t``-degree coefficient vector."""
    curve = one_param_curve(h, s, u)
    D = max(c.total_degree for c in curve)
    return tuple(c.coefficient((D,)) for c in curve)


def projectively_equal(a: Sequence, b: Sequence) -> bool:
    k = next((i for i, x in enumerate(a) if x), None)
    if k is None or b[k] == 0:
        return False
    r = b[k] / a[k]
    return all(y == r * x for x, y in zip(a, b))


@dataclass
class OPEntry:
    orbit: int
    reached: bool
    witness: tuple | None = None  # (s, u)
    note: str = ""


@dataclass
class OPReport:
    poset: OrbitPoset
    entries: list = field(default_factory=list)
    limits: list = field(default_factory=list)  # (s, u, limit, orbit index or None)

    @property
    def verdict(self) -> str:
        if all(e.reached for e in self.entries):
            return "holds (witnessed)"
        return "not reached under search"

    def to_json(self) -> dict:
        fmt = lambda v: [format_rational(c) for c in v]
        return {
            "orbits": self.poset.to_json()["orbits"],
            "entries": [
                {
                    "orbit": e.orbit,
                    "reached": e.reached,
                    "witness": None if e.witness is None else {"s": fmt(e.witness[0]), "u": fmt(e.witness[1])},
                    **({"note": e.note} if e.note else {}),
                }
                for e in self.entries
            ],
            "limits": [
                {"s": fmt(s), "u": fmt(u), "limit": fmt(lim), "orbit": o} for s, u, lim, o in self.limits
            ],
            "verdict": self.verdict,
        }


def _search_family(h: hp.HPair) -> list[tuple]:
    """Generators ``s``: each U-basis row plus 0/1 combinations of later rows,
    and for a two-dimensional ``U`` a small grid of directions."""
    rows = list(h.U.basis)
    out = []
    seen = set()
    for j, lead in enumerate(rows):
        later = rows[j + 1:]
        for coeffs in product((0, 1), repeat=len(later)):
            s = list(lead)
            for c, r in zip(coeffs, later):
                if c:
                    s = [a + c * b for a, b in zip(s, r)]
            s = tuple(s)
            if s not in seen:
                seen.add(s)
                out.append(s)
    if len(rows) == 2:
        for a, b in ((1, 1), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1)):
            s = tuple(a * x + b * y for x, y in zip(*rows))
            if s not in seen:
                seen.add(s)
                out.append(s)
    return out


def _base_grid(h: hp.HPair) -> list[tuple]:
    A = h.algebra
    out = [A.zero()]
    for r in h.U.basis:
        for q in (Fraction(1), Fraction(-1), Fraction(1, 2)):
            out.append(tuple(q * c for c in r))
    return out


def op_condition_report(h: hp.HPair) -> OPReport:
    """Search one-parameter subgroups for limit points in every orbit.

    Only a structured family of subgroups and bases is tried, so a negative
    entry means "not reached under search", not a proof.
    """
    poset = chain_orbit_poset(h)
    reps = poset.reports
    report = OPReport(poset)
    found: dict[int, tuple] = {0: None}
    for s in _search_family(h):
        for u in _base_grid(h):
            lim = one_param_limit(h, s, u)
            hit = None
            for idx in range(1, len(reps)):
                rep = reps[idx].representative
                if isinstance(rep, str):
                    continue
                if orbit_contains(h, rep, lim):
                    hit = idx
                    break
            report.limits.append((s, u, lim, hit))
            if hit is not None and hit not in found:
                found[hit] = (s, u)
    for idx in range(len(reps)):
        if idx == 0:
            report.entries.append(OPEntry(0, True, None, "open orbit"))
        elif isinstance(reps[idx].representative, str):
            report.entries.append(OPEntry(idx, False, None, "orbit not defined over Q; rational search cannot reach it"))
        else:
            report.entries.append(OPEntry(idx, idx in found, found.get(idx)))
    return report
