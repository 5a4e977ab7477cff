"""Command-line entry point: ``addax <command> [INPUT] [options]``.

Every command prints one JSON document tagged with ``"schema": "addax/1"``.
Exit status is 0 on success, 1 when the input is well formed but rejected
mathematically (or a verification fails) and 2 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

from . import SCHEMA
from . import algebra as alg
from . import hpair as hp
from . import orbits as ob
from .linalg import DimensionMismatch, Subspace, format_rational
from .presentations import (
    DEFAULT_PAIR_CAP,
    CompletionError,
    NotLocal,
    NotZeroDimensional,
    ParseError,
    algebra_from_text,
    monomial_name,
)
from .verify import same_up_to_scalar, verify_invariants, verify_table1

COMMANDS = (
    "algebra-info",
    "hpair-equation",
    "hpair-degree",
    "hpair-classify",
    "hpair-normality",
    "hpair-smooth",
    "hpair-dual",
    "hpair-reduce",
    "orbits-report",
    "orbits-poset",
    "orbits-op-check",
    "verify-table1",
    "verify-invariants",
)
GROUPS = {"algebra", "hpair", "orbits", "verify"}
ORDERS = ("grlex", "grlex-rev", "grevlex", "lex")


class InputError(ValueError):
    """Malformed command-line input (exit status 2)."""


class Rejected(Exception):
    """Verification ran but did not pass (exit status 1)."""

    def __init__(self, report: dict):
        super().__init__("verification failed")
        self.report = report


def _vec(v) -> list[str]:
    return [format_rational(c) for c in v]


def _subspace(S: Subspace) -> list[list[str]]:
    return [_vec(v) for v in S.basis]


# -- input ----------------------------------------------------------------------------


def load_algebra(source: str, order: str, cap: int):
    """Presentation text, or a path to a structure-constant JSON file."""
    if source.endswith(".json") or os.path.isfile(source):
        try:
            with open(source, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON in {source}: {exc}") from exc
        try:
            A = alg.LocalAlgebra.from_json(data)
        except (KeyError, TypeError, IndexError) as exc:
            raise InputError(f"malformed structure-constant JSON: {exc!r}") from exc
        alg.require_valid(A)
        return A, None
    return algebra_from_text(source, order=order, cap=cap)


def load_pair(args) -> tuple[hp.HPair, object]:
    if args.U is None:
        raise InputError("this command needs --U")
    A, cb = load_algebra(args.input, args.order, args.pair_cap)
    U = hp.parse_u(A, args.U, cb)
    return hp.make_hpair(A, U), cb


# -- commands ---------------------------------------------------------------------------


def cmd_algebra_info(args) -> dict:
    A, cb = load_algebra(args.input, args.order, args.pair_cap)
    out = {
        "dim": A.dim,
        "basis": list(A.basis_names),
        "hilbert_samuel": list(alg.hilbert_samuel(A)),
        "socle_dim": alg.socle(A).dim,
        "nilpotency_index": alg.nilpotency_index(A),
        "classification": str(alg.classify_algebra(A)),
    }
    if cb is not None:
        out["order"] = cb.order
        out["groebner_basis"] = [str(g) for g in cb.basis]
        out["staircase"] = [monomial_name(m, cb.variables) for m in cb.staircase]
        out["pairs_processed"] = cb.pairs_processed
    return out


def _pair_header(h: hp.HPair) -> dict:
    return {"U": _subspace(h.U), "w": h.w_index, "pi": _vec(h.pi)}


def cmd_hpair_equation(args) -> dict:
    h, _ = load_pair(args)
    eq = hp.equation(h)
    return {
        "degree": eq.degree,
        "equation": str(eq.poly),
        "layers": [str(f) for f in eq.layers],
        "coordinates": list(eq.poly.gens),
        "terms": eq.poly.to_json(),
        **_pair_header(h),
    }


def cmd_hpair_degree(args) -> dict:
    h, _ = load_pair(args)
    return {"degree": hp.degree(h)}


def cmd_hpair_classify(args) -> dict:
    h, _ = load_pair(args)
    v = hp.finite_orbits(h)
    out = {
        "classification": v.classification,
        "finite_orbits": v.finite,
        "certificate": v.certificate,
    }
    if alg.classify_algebra(h.algebra).kind == "chain":
        cn = hp.canonical_chain_index(h)
        out["canonical_index"] = cn.index
        out["beta"] = _vec(cn.beta)
    return out


def cmd_hpair_normality(args) -> dict:
    h, _ = load_pair(args)
    v = hp.is_normal(h)
    return {
        "normal": v.normal,
        "witness": str(v.witness),
        "reduced_top": str(v.reduced_top),
        "radical_top": str(v.radical_top),
        "radical_witness": str(v.radical_witness),
        "conventions_agree": v.conventions_agree,
    }


def cmd_hpair_smooth(args) -> dict:
    h, _ = load_pair(args)
    return {
        "smooth": hp.is_smooth(h),
        "degree": hp.degree(h),
        "nondegenerate_algebraic": hp.is_nondegenerate_algebraic(h),
        "nondegenerate_equation": hp.is_nondegenerate_equation(h),
    }


def cmd_hpair_dual(args) -> dict:
    h, _ = load_pair(args)
    d = hp.dual_hpair(h)
    F, G = hp.equation(h).poly, hp.equation(d).poly
    return {
        "dual_basis": list(d.algebra.basis_names),
        "dual_U": _subspace(d.U),
        "equation": str(F),
        "dual_equation": str(G),
        "equal_up_to_scalar": same_up_to_scalar(F, G),
        "dual_finite_orbits": hp.finite_orbits(d).finite,
        "dual_certificate": hp.finite_orbits(d).certificate,
    }


def cmd_hpair_reduce(args) -> dict:
    h, _ = load_pair(args)
    J = hp.largest_ideal_within(h)
    if J.dim == 0:
        return {"kernel_dim": 0, "reduced": False, "equation": str(hp.equation(h).poly)}
    q, proj = hp.kernel_quotient(h)
    return {
        "kernel_dim": J.dim,
        "kernel": _subspace(J),
        "reduced": True,
        "quotient": q.algebra.to_json(),
        "U": _subspace(q.U),
        "equation": str(hp.equation(q).poly),
        "original_equation": str(hp.equation(h).poly),
    }


def cmd_orbits_report(args) -> dict:
    h, cb = load_pair(args)
    A = h.algebra
    if args.z:
        points = hp.parse_elements(A, args.z, cb)
    else:
        points = [A.one()]
        if alg.classify_algebra(A).kind == "chain":
            points += alg.power_basis(A, alg.chain_generator(A))[2:]
        else:
            points += [A.basis(i) for i in range(1, A.dim) if ob.complement_member(h, A.basis(i))]
    return {
        "orbits": [ob.orbit_report(h, z).to_json() for z in points],
        "fixed_points": ob.fixed_points(h),
        "finite_orbits": hp.finite_orbits(h).finite,
    }


def cmd_orbits_poset(args) -> dict:
    h, _ = load_pair(args)
    return ob.chain_orbit_poset(h).to_json()


def cmd_orbits_op_check(args) -> dict:
    h, _ = load_pair(args)
    return ob.op_condition_report(h).to_json()


def cmd_verify_table1(args) -> dict:
    rows = verify_table1(args.max_n if args.max_n is not None else 5)
    matched = sum(r.up_to_scalar for r in rows)
    out = {
        "rows": [r.to_json() for r in rows],
        "matched": matched,
        "total": len(rows),
        "summary": f"{matched}/{len(rows)} rows matched",
    }
    if matched != len(rows):
        raise Rejected(out)
    return out


def cmd_verify_invariants(args) -> dict:
    max_n = args.max_n if args.max_n is not None else 6
    rep = verify_invariants(max_n=max_n, seed=args.seed, inject_fault=args.inject_fault)
    out = rep.to_json()
    if not rep.passed:
        raise Rejected(out)
    return out


HANDLERS: dict[str, Callable] = {
    "algebra-info": cmd_algebra_info,
    "hpair-equation": cmd_hpair_equation,
    "hpair-degree": cmd_hpair_degree,
    "hpair-classify": cmd_hpair_classify,
    "hpair-normality": cmd_hpair_normality,
    "hpair-smooth": cmd_hpair_smooth,
    "hpair-dual": cmd_hpair_dual,
    "hpair-reduce": cmd_hpair_reduce,
    "orbits-report": cmd_orbits_report,
    "orbits-poset": cmd_orbits_poset,
    "orbits-op-check": cmd_orbits_op_check,
    "verify-table1": cmd_verify_table1,
    "verify-invariants": cmd_verify_invariants,
}


# -- driver -----------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="addax", description="Hypersurfaces with induced additive actions.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="presentation such as 'Q[x]/(x^3)' or a structure-constant JSON path")
    p.add_argument("--U", help="U as expressions 'x, x^2' or vectors '[0,1,0]; [0,0,1]'")
    p.add_argument("--z", help="orbit representatives for orbits-report, same syntax as --U")
    p.add_argument("--order", choices=ORDERS, default="grlex")
    p.add_argument("--pair-cap", type=int, default=DEFAULT_PAIR_CAP)
    p.add_argument("--max-n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="store_true", help="flip a structure constant (mutation check)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="compact JSON (default)")
    fmt.add_argument("--pretty", action="store_true", help="indented JSON")
    return p


def _normalize_argv(argv: list[str]) -> list[str]:
    # accept "hpair equation" as well as "hpair-equation"
    if len(argv) >= 2 and argv[0] in GROUPS and f"{argv[0]}-{argv[1]}" in COMMANDS:
        return [f"{argv[0]}-{argv[1]}"] + argv[2:]
    return argv


def run(argv: list[str]) -> tuple[dict, int]:
    """Execute one command; returns the JSON document and the exit status."""
    try:
        args = build_parser().parse_args(_normalize_argv(list(argv)))
    except InputError as exc:
        return {"schema": SCHEMA, "error": "input", "message": str(exc)}, 2
    head = {"schema": SCHEMA, "command": args.command}
    if args.command not in ("verify-table1", "verify-invariants") and not args.input:
        return {**head, "error": "input", "message": "missing INPUT"}, 2
    try:
        body = HANDLERS[args.command](args)
        return {**head, **body}, 0
    except Rejected as exc:
        return {**head, **exc.report}, 1
    except ParseError as exc:
        return {**head, "error": "parse", "message": str(exc), "position": exc.pos}, 2
    except (InputError, DimensionMismatch) as exc:
        return {**head, "error": "input", "message": str(exc)}, 2
    except (
        hp.HPairError,
        alg.AlgebraError,
        ob.OrbitError,
        NotLocal,
        NotZeroDimensional,
        CompletionError,
    ) as exc:
        return {**head, "error": "rejected", "kind": type(exc).__name__, "message": str(exc)}, 1
    except (ValueError, ZeroDivisionError) as exc:
        return {**head, "error": "input", "message": str(exc)}, 2


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    doc, code = run(argv)
    pretty = "--pretty" in argv
    text = json.dumps(doc, ensure_ascii=False, indent=2 if pretty else None)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
