"""Command-line front end.

    sparseres analyze --input problem.json
    sparseres eval --input problem.json --precision 80
    sparseres solve | hide | reconstruct | mv | check-addition --input ...
    sparseres selftest

Exit codes: 0 success, 1 hypothesis failure, 2 input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from fractions import Fraction
from importlib import resources
from typing import Optional, Sequence

import mpmath

from .errors import InputError, NumericalError, SparseResError
from .lattice import LatticeError
from .laurent import LaurentPolynomial
from .numeric import rel_err, to_mpc
from .poisson import addition_formula_check, eval_sparse_resultant, hidden_variable_resultant
from .polytopes import PolytopeError
from .problem import ProblemFile, dumps, load_problem, parse_polynomial
from .reconstruct import reconstruct, verify_height_bound
from .solver import bernstein_number, solve_square_system
from .supports import analyze, nontrivial_directions


def _read(path: Optional[str]) -> ProblemFile:
    if path is None:
        raise InputError("--input is required")
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return load_problem(text)


def _options(prob: ProblemFile, args):
    return prob.numeric_options(precision=args.precision, tol=args.tol, seed=args.seed)


def _require_polys(prob: ProblemFile, count: int) -> list[LaurentPolynomial]:
    if prob.polynomials is None or len(prob.polynomials) < count:
        raise InputError(f"this command needs at least {count} polynomials")
    return prob.polynomials[-count:] if len(prob.polynomials) > count else prob.polynomials


def _tail_supports(prob: ProblemFile) -> list:
    sups = [tuple(tuple(p) for p in a) for a in prob.supports]
    if len(sups) == prob.n + 1:
        return sups[1:]
    if len(sups) == prob.n:
        return sups
    raise InputError(f"expected {prob.n} or {prob.n + 1} supports")


def analyze_payload(prob: ProblemFile) -> dict:
    rep = analyze(prob.family())
    out = asdict(rep)
    out["essential_index_sets"] = [list(j) for j in rep.essential_index_sets]
    out["unique_essential"] = list(rep.unique_essential) if rep.unique_essential is not None else None
    out["degrees"] = list(rep.degrees)
    return out


def eval_payload(prob: ProblemFile, opts) -> dict:
    polys = _require_polys(prob, prob.n + 1)
    res = eval_sparse_resultant(prob.family(), polys, opts)
    return {
        "value": res.value,
        "abs_value": res.magnitude,
        "sign_ambiguous": res.sign_ambiguous,
        "precision": res.precision,
        "trace": [dict(t) for t in res.trace],
    }


def solve_payload(prob: ProblemFile, opts) -> dict:
    polys = _require_polys(prob, prob.n)
    roots = solve_square_system(polys, opts, supports=_tail_supports(prob))
    return {
        "roots": [{"point": list(p.coordinates), "multiplicity": m} for p, m in roots.roots],
        "total_multiplicity": roots.total_multiplicity,
        "residual": roots.residual,
    }


def hide_payload(prob: ProblemFile, opts, k: Optional[int]) -> dict:
    polys = _require_polys(prob, prob.n)
    h = hidden_variable_resultant(_tail_supports(prob), polys, opts, hide_index=k)
    k = prob.n if k is None else k
    return {"hide_index": k, "terms": [[list(e), c] for e, c in h.terms.items()]}


def reconstruct_payload(prob: ProblemFile, opts, precision: Optional[int] = None) -> dict:
    fam = prob.family()
    p = reconstruct(fam, precision=precision or 256, seed=opts.seed)
    height, bound, ok = verify_height_bound(p, fam)
    return {
        "multidegree": list(p.multidegree),
        "terms": [[list(e), c] for e, c in p.terms.items()],
        "term_count": len(p),
        "text": p.to_text(),
        "height": height,
        "height_bound": bound,
        "height_ok": ok,
    }


def mv_payload(prob: ProblemFile) -> dict:
    return {"mixed_volume": bernstein_number(_tail_supports(prob))}


def addition_payload(prob: ProblemFile, opts) -> dict:
    if "support0_prime" not in prob.extra or "polynomial0_prime" not in prob.extra:
        raise InputError("check-addition needs 'support0_prime' and 'polynomial0_prime'")
    polys = _require_polys(prob, prob.n + 1)
    a0p = [tuple(p) for p in prob.extra["support0_prime"]]
    f0p = parse_polynomial(prob.n, prob.extra["polynomial0_prime"])
    sups = [tuple(tuple(p) for p in a) for a in prob.supports]
    lhs, rhs = addition_formula_check(sups[0], a0p, sups[1:], polys[0], f0p, polys[1:], opts)
    return {"lhs": lhs, "rhs": rhs, "relative_error_abs": rel_err(abs(to_mpc(lhs)), abs(to_mpc(rhs)))}


def _fixture_problems():
    root = resources.files("sparseres") / "fixtures"
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            prob = load_problem(entry.read_text())
            if "expect" in prob.extra:
                yield entry.name, prob


def selftest() -> list[tuple[str, bool, str]]:
    """Run the fixture corpus and a few property smoke tests."""
    from .polytopes import convex_hull, minkowski_sum, mixed_volume

    results = []

    def record(name, fn):
        try:
            ok, detail = fn()
        except SparseResError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, bool(ok), detail))

    for fname, prob in _fixture_problems():
        expect = prob.extra.get("expect", {})
        rep = analyze(prob.family())
        if "degrees" in expect:
            record(f"{fname}: degrees", lambda: (list(rep.degrees) == expect["degrees"], str(list(rep.degrees))))
        if "exponent_dA" in expect:
            record(f"{fname}: d_A", lambda: (rep.exponent_dA == expect["exponent_dA"], str(rep.exponent_dA)))
        if "unique_essential" in expect:
            record(
                f"{fname}: essential",
                lambda: (list(rep.unique_essential or []) == expect["unique_essential"], str(rep.unique_essential)),
            )
        if "mv_tail" in expect:
            mv = bernstein_number(_tail_supports(prob))
            record(f"{fname}: mixed volume", lambda: (mv == expect["mv_tail"], str(mv)))
        if "directions" in expect:
            dirs = [list(v) for v in nontrivial_directions(_tail_supports(prob))]
            record(f"{fname}: directions", lambda: (dirs == expect["directions"], str(dirs)))
        if "abs_value" in expect and prob.polynomials:

            def check_value(prob=prob, target=Fraction(expect["abs_value"])):
                val = eval_sparse_resultant(prob.family(), prob.polynomials, prob.numeric_options()).magnitude
                return rel_err(val, target) < 1e-8, mpmath.nstr(val, 15)

            record(f"{fname}: |Res|", check_value)
        if "support0_prime" in prob.extra:

            def check_add(prob=prob):
                out = addition_payload(prob, prob.numeric_options())
                return out["relative_error_abs"] < 1e-8, f"rel err {out['relative_error_abs']:.2e}"

            record(f"{fname}: addition formula", check_add)

    def mv_symmetry():
        p = convex_hull([(0, 0), (2, 1), (1, 3)])
        q = convex_hull([(0, 0), (1, 0), (0, 2), (1, 1)])
        return mixed_volume([p, q]) == mixed_volume([q, p]), str(mixed_volume([p, q]))

    def mv_linearity():
        p = convex_hull([(0, 0), (2, 1), (1, 3)])
        q = convex_hull([(0, 0), (1, 0), (0, 2)])
        r = convex_hull([(0, 0), (1, 1), (2, 0)])
        lhs = mixed_volume([minkowski_sum(p, q), r])
        return lhs == mixed_volume([p, r]) + mixed_volume([q, r]), str(lhs)

    record("property: mixed volume symmetry", mv_symmetry)
    record("property: mixed volume additivity", mv_linearity)
    return results


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sparseres", description="Sparse resultants via the Poisson formula.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "eval", "solve", "hide", "reconstruct", "mv", "selftest", "check-addition"):
        p = sub.add_parser(name)
        p.add_argument("--input")
        p.add_argument("--precision", type=int)
        p.add_argument("--tol", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--hide-index", type=int)
        p.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def _human(payload: dict) -> str:
    lines = []
    for key in sorted(payload):
        val = json.loads(dumps(payload[key]))
        lines.append(f"{key}: {json.dumps(val) if not isinstance(val, str) else val}")
    return "\n".join(lines)


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "selftest":
            results = selftest()
            failed = [r for r in results if not r[1]]
            if args.json:
                print(dumps({"results": [{"name": n, "ok": ok, "detail": d} for n, ok, d in results], "failed": len(failed)}))
            else:
                for name, ok, detail in results:
                    print(f"{'PASS' if ok else 'FAIL'}  {name}  ({detail})")
                print(f"{len(results) - len(failed)}/{len(results)} passed")
            return 0 if not failed else 3
        prob = _read(args.input)
        opts = _options(prob, args)
        if args.command == "analyze":
            payload = analyze_payload(prob)
        elif args.command == "eval":
            payload = eval_payload(prob, opts)
        elif args.command == "solve":
            payload = solve_payload(prob, opts)
        elif args.command == "hide":
            payload = hide_payload(prob, opts, args.hide_index)
        elif args.command == "reconstruct":
            payload = reconstruct_payload(prob, opts, args.precision)
        elif args.command == "mv":
            payload = mv_payload(prob)
        else:
            payload = addition_payload(prob, opts)
        with mpmath.workprec(opts.work_prec):
            print(dumps(payload) if args.json else _human(payload))
        return 0
    except SparseResError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (LatticeError, PolytopeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return InputError.exit_code
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NumericalError.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
