"""Readable text and JSON views of the exact objects.

Everything renders through strings, never floats, so a consumer can parse
any value back without loss.  Parameters print as c1, c2, ... and the
independent variable as x.
"""

from __future__ import annotations

from fractions import Fraction

from .generation import Cascade, PolyTuple
from .miura import MiuraOper
from .realization import LaurentMatrix
from .rings import ParamPoly, XPoly, XRat
from .scalar_ops import ScalarDiffOp


def rat_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _mono_str(exp: tuple[int, ...]) -> str:
    parts = []
    for i, e in enumerate(exp):
        if e == 1:
            parts.append(f"c{i + 1}")
        elif e > 1:
            parts.append(f"c{i + 1}^{e}")
    return "*".join(parts)


def _join_signed(parts: list[str]) -> str:
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def _term_str(coeff: Fraction, mono: str) -> str:
    if not mono:
        return rat_str(coeff)
    if coeff == 1:
        return mono
    if coeff == -1:
        return "-" + mono
    return f"{rat_str(coeff)}*{mono}"


def param_poly_str(p: ParamPoly) -> str:
    if p.is_zero():
        return "0"
    items = sorted(p.terms.items(), reverse=True)
    return _join_signed([_term_str(c, _mono_str(e)) for e, c in items])


def xpoly_str(f: XPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for k in range(f.degree(), -1, -1):
        c = f.coeff(k)
        if c.is_zero():
            continue
        xs = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if not xs:
            parts.append(param_poly_str(c))
        elif c.is_constant():
            parts.append(_term_str(c.constant_value(), xs))
        elif len(c.terms) == 1:
            ((e, q),) = c.terms.items()
            parts.append(_term_str(q, f"{_mono_str(e)}*{xs}"))
        else:
            parts.append(f"({param_poly_str(c)})*{xs}")
    return _join_signed(parts)


def xrat_str(r: XRat) -> str:
    num, den = xpoly_str(r.num), xpoly_str(r.den)
    return num if den == "1" else f"({num})/({den})"


def tuple_doc(tup: PolyTuple, J=None) -> dict:
    doc = {"n": tup.n}
    if J is not None:
        doc["J"] = list(J)
    doc["k"] = list(tup.degrees())
    doc["y"] = [xpoly_str(y) for y in tup.ys]
    return doc


def cascade_doc(casc: Cascade) -> dict:
    doc = tuple_doc(casc.final, casc.J)
    doc["eps"] = list(casc.eps)
    return doc


def oper_doc(oper: MiuraOper) -> dict:
    return {"n": oper.n, "v": [xrat_str(w) for w in oper.v]}


def scalar_op_doc(op: ScalarDiffOp) -> dict:
    order = op.order()
    return {
        "order": None if order == float("-inf") else order,
        "coeffs": {str(k): xrat_str(c) for k, c in enumerate(op.coeffs)
                   if not c.is_zero()},
    }


def diagonal_doc(diag) -> list[str]:
    return [xrat_str(w) for w in diag]


def matrix_doc(mat: LaurentMatrix) -> dict:
    cells = [
        {"row": i, "col": j, "lambda_exp": p, "entry": xrat_str(v)}
        for i, j, p, v in sorted(mat.iter_terms(), key=lambda t: t[:3])
    ]
    return {"size": mat.size, "cells": cells}
