from fractions import Fraction

from mkdv_cells.generation import generate_cascade
from mkdv_cells.miura import mu_at
from mkdv_cells.realization import lambda_power
from mkdv_cells.rings import ParamPoly, XPoly, XRat
from mkdv_cells.scalar_ops import ScalarDiffOp
from mkdv_cells.serialize import (cascade_doc, diagonal_doc, matrix_doc,
                                  oper_doc, param_poly_str, rat_str,
                                  scalar_op_doc, tuple_doc, xpoly_str,
                                  xrat_str)


class TestRatStr:
    def test_integer(self):
        assert rat_str(Fraction(7)) == "7"
        assert rat_str(-3) == "-3"

    def test_fraction(self):
        assert rat_str(Fraction(-2, 6)) == "-1/3"


class TestParamPolyStr:
    def test_zero(self):
        assert param_poly_str(ParamPoly.zero(2)) == "0"

    def test_constant(self):
        assert param_poly_str(ParamPoly.const(1, Fraction(-5, 4))) == "-5/4"

    def test_ordering_and_signs(self):
        p = ParamPoly(2, {(2, 0): Fraction(3),
                          (0, 1): Fraction(-1, 2),
                          (0, 0): Fraction(1)})
        assert param_poly_str(p) == "3*c1^2 - 1/2*c2 + 1"

    def test_unit_coefficients_suppressed(self):
        p = ParamPoly(2, {(1, 1): Fraction(1), (0, 2): Fraction(-1)})
        assert param_poly_str(p) == "c1*c2 - c2^2"


class TestXPolyStr:
    def test_zero(self):
        assert xpoly_str(XPoly.zero(0)) == "0"

    def test_linear_rational_coefficient(self):
        f = XPoly(0, [ParamPoly.zero(0), ParamPoly.const(0, Fraction(-1, 3))])
        assert xpoly_str(f) == "-1/3*x"

    def test_single_monomial_coefficient_unparenthesized(self):
        q = ParamPoly(1, {(1,): Fraction(5, 2)})
        f = XPoly(1, [ParamPoly.zero(1), ParamPoly.zero(1), q])
        assert xpoly_str(f) == "5/2*c1*x^2"

    def test_multi_term_coefficient_parenthesized(self):
        p = ParamPoly(2, {(2, 0): Fraction(3),
                          (0, 1): Fraction(-1, 2),
                          (0, 0): Fraction(1)})
        f = XPoly(2, [ParamPoly.const(2, Fraction(1)), p,
                      ParamPoly(2, {(1, 0): Fraction(-1)})])
        assert xpoly_str(f) == "-c1*x^2 + (3*c1^2 - 1/2*c2 + 1)*x + 1"


class TestXRatStr:
    def test_polynomial_prints_bare(self):
        f = XPoly(0, [ParamPoly.zero(0), ParamPoly.const(0, Fraction(-1, 3))])
        assert xrat_str(XRat.from_xpoly(f)) == "-1/3*x"

    def test_ratio_normalizes_then_parenthesizes(self):
        # denominator is made monic during reduction, so 1 / (-x/3) = -3 / x
        f = XPoly(0, [ParamPoly.zero(0), ParamPoly.const(0, Fraction(-1, 3))])
        assert xrat_str(XRat(XPoly.one(0), f)) == "(-3)/(x)"


class TestDocs:
    def test_cascade_doc(self):
        doc = cascade_doc(generate_cascade(2, (1, 2)))
        assert doc == {
            "n": 2,
            "J": [1, 2],
            "k": [0, 1, 3],
            "y": ["1", "x + c1", "x^3 + 3*c1*x^2 + 3*c1^2*x + c2"],
            "eps": [-1, -3],
        }

    def test_tuple_doc_specialized(self):
        casc = generate_cascade(2, (1,))
        doc = tuple_doc(casc.final.specialize((Fraction(1, 2),)), casc.J)
        assert doc["y"] == ["1", "x + 1/2", "1"]
        assert doc["k"] == [0, 1, 0]

    def test_oper_doc(self):
        doc = oper_doc(mu_at(2, (1,), (Fraction(1, 2),)))
        assert doc["n"] == 2
        assert doc["v"] == ["(1)/(x + 1/2)", "(-1)/(x + 1/2)"]

    def test_scalar_op_doc(self):
        u = XRat.from_xpoly(XPoly.x(0))
        op = ScalarDiffOp(0, [u, XRat.zero(0), XRat.one(0)])
        assert scalar_op_doc(op) == {"order": 2, "coeffs": {"0": "x", "2": "1"}}

    def test_scalar_op_doc_zero(self):
        assert scalar_op_doc(ScalarDiffOp.zero(0)) == {"order": None,
                                                       "coeffs": {}}

    def test_diagonal_doc(self):
        diag = (XRat.one(0), XRat.const(0, Fraction(-1, 2)))
        assert diagonal_doc(diag) == ["1", "-1/2"]

    def test_matrix_doc_sorted_cells(self):
        doc = matrix_doc(lambda_power(1, 1))
        assert doc == {
            "size": 2,
            "cells": [
                {"row": 0, "col": 1, "lambda_exp": 1, "entry": "1"},
                {"row": 1, "col": 0, "lambda_exp": 0, "entry": "1"},
            ],
        }
