"""Command-line interface.

Every subcommand prints exactly one JSON document on stdout and exits
nonzero when an exactness check fails.  Rationals travel as strings, so
the output is lossless.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .flows import (VerificationError, cell_flow_report, kdv_intertwining_check,
                    mkdv_field_at)
from .generation import (NotDegreeIncreasingError, NotFertileError,
                         critical_residuals, generate_cascade, is_fertile,
                         roots_of_tuple)
from .miura import mu_at, mu_oper
from .pseudo_diff import kdv_rhs
from .realization import generator, lambda_power
from .rings import SingularParameterError
from .scalar_ops import miura_map
from .serialize import (cascade_doc, diagonal_doc, matrix_doc, oper_doc,
                        rat_str, scalar_op_doc, tuple_doc)


def _parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(p) for p in text.split(","))


def _parse_values(text: str) -> tuple[Fraction, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(Fraction(p) for p in text.split(","))


def _cmd_generate(args) -> dict:
    casc = generate_cascade(args.n, _parse_word(args.J))
    if args.c is None:
        return cascade_doc(casc)
    values = _parse_values(args.c)
    doc = tuple_doc(casc.final.specialize(values), casc.J)
    doc["c"] = [rat_str(v) for v in values]
    doc["eps"] = list(casc.eps)
    return doc


def _cmd_verify_critical(args) -> dict:
    J = _parse_word(args.J)
    values = _parse_values(args.c)
    casc = generate_cascade(args.n, J)
    tup = casc.final.specialize(values)
    fertile = [is_fertile(tup, j) for j in range(args.n + 1)]
    roots = roots_of_tuple(tup)
    residuals = critical_residuals(tup, roots)
    doc = {
        "n": args.n,
        "J": list(J),
        "c": [rat_str(v) for v in values],
        "k": list(tup.degrees()),
        "fertile": fertile,
        "residuals": residuals,
        "max_residual": max(residuals, default=0.0),
    }
    if not all(fertile):
        raise VerificationError(json.dumps(doc))
    return doc


def _cmd_miura(args) -> dict:
    J = _parse_word(args.J)
    if args.c is None:
        oper = mu_oper(args.n, J)
    else:
        oper = mu_at(args.n, J, _parse_values(args.c))
    doc = oper_doc(oper)
    doc["J"] = list(J)
    if args.c is not None:
        doc["c"] = [rat_str(v) for v in _parse_values(args.c)]
    return doc


def _cmd_flow(args) -> dict:
    J = _parse_word(args.J)
    values = _parse_values(args.c)
    field = mkdv_field_at(args.n, J, args.r, values)
    return {
        "n": args.n,
        "J": list(J),
        "c": [rat_str(v) for v in values],
        "r": args.r,
        "field": diagonal_doc(field),
    }


def _cmd_check_flows(args) -> dict:
    return cell_flow_report(args.n, _parse_word(args.J), args.r,
                            samples=args.samples)


def _cmd_kdv_check(args) -> dict:
    J = _parse_word(args.J)
    values = _parse_values(args.c)
    if not 0 <= args.i < 2 * args.n:
        raise ValueError(f"cut index {args.i} outside 0..{2 * args.n - 1}")
    ok = kdv_intertwining_check(args.n, J, args.r, args.i, values)
    doc = {
        "n": args.n,
        "J": list(J),
        "c": [rat_str(v) for v in values],
        "r": args.r,
        "i": args.i,
        "match": ok,
    }
    if ok:
        oper = mu_at(args.n, J, values)
        doc["scalar_flow"] = scalar_op_doc(kdv_rhs(miura_map(oper, args.i), args.r))
    else:
        raise VerificationError(json.dumps(doc))
    return doc


def _cmd_dump_matrices(args) -> dict:
    if args.what == "lambda":
        return {"n": args.n, "r": args.r,
                "matrix": matrix_doc(lambda_power(args.r, args.n))}
    gens = {}
    for kind in ("e", "f", "h"):
        gens[kind] = [matrix_doc(generator(kind, i, args.n))
                      for i in range(args.n + 1)]
    return {"n": args.n, "generators": gens}


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mkdv-cells",
        description="Exact critical-point cells, their flows, and checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, c_required=None):
        p.add_argument("--n", type=int, required=True, help="rank parameter")
        p.add_argument("--J", type=str, required=True,
                       help="comma-separated word, e.g. 0,1,2")
        if c_required is not None:
            p.add_argument("--c", type=str, required=c_required,
                           help="comma-separated rationals, e.g. 1/2,3")

    p = sub.add_parser("generate", help="tuple produced along a word")
    common(p, c_required=False)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify-critical",
                       help="fertility and numeric critical residuals")
    common(p, c_required=True)
    p.set_defaults(func=_cmd_verify_critical)

    p = sub.add_parser("miura", help="diagonal potential of the cell oper")
    common(p, c_required=False)
    p.set_defaults(func=_cmd_miura)

    p = sub.add_parser("flow", help="flow field on the cell at a point")
    common(p, c_required=True)
    p.add_argument("--r", type=int, required=True, help="flow index")
    p.set_defaults(func=_cmd_flow)

    p = sub.add_parser("check-flows",
                       help="tangency coefficients, or vanishing for high index")
    common(p)
    p.add_argument("--r", type=int, required=True, help="flow index")
    p.add_argument("--samples", type=int, default=5)
    p.set_defaults(func=_cmd_check_flows)

    p = sub.add_parser("kdv-check",
                       help="flow through a factorization cut vs the scalar flow")
    common(p, c_required=True)
    p.add_argument("--r", type=int, required=True, help="flow index")
    p.add_argument("--i", type=int, required=True, help="cut position")
    p.set_defaults(func=_cmd_kdv_check)

    p = sub.add_parser("dump-matrices", help="raw matrices as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--what", choices=("lambda", "generators"), required=True)
    p.add_argument("--r", type=int, default=1, help="power for --what lambda")
    p.set_defaults(func=_cmd_dump_matrices)

    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        doc = args.func(args)
    except (VerificationError, NotFertileError, NotDegreeIncreasingError,
            SingularParameterError, ValueError) as exc:
        json.dump({"error": type(exc).__name__, "detail": str(exc)},
                  sys.stdout, indent=2)
        print()
        return 1
    json.dump(doc, sys.stdout, indent=2)
    print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
