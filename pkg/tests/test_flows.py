import random
from fractions import Fraction

import pytest

from mkdv_cells.flows import (VerificationError, cell_flow_report,
                              diagonal_shape, field_difference_shape,
                              gamma_extract, gamma_fields_commute,
                              kdv_intertwining_check, mkdv_field_at,
                              mkdv_field_symbolic, tangency_solve_at,
                              verify_flow_vanishes)
from mkdv_cells.miura import dmu_dc_at, mu_at
from mkdv_cells.rings import ParamPoly, XRat
from mkdv_cells.scalar_ops import tangent_miura
from mkdv_cells.serialize import param_poly_str

PT2 = (Fraction(2, 5), Fraction(-1, 3))


class TestFieldBasics:
    def test_mirror_antisymmetry(self):
        field = mkdv_field_at(2, (1, 2), 1, PT2)
        assert len(field) == 4
        for k in range(4):
            assert field[3 - k] == -field[k]

    def test_even_index_is_zero(self):
        field = mkdv_field_symbolic(2, (1, 2), 2)
        assert all(w.is_zero() for w in field)
        field = mkdv_field_at(2, (1,), 4, (Fraction(1, 2),))
        assert all(w.is_zero() for w in field)

    def test_empty_word_has_no_flow(self):
        field = mkdv_field_at(2, (), 1, ())
        assert all(w.is_zero() for w in field)
        field = mkdv_field_at(2, (), 3, ())
        assert all(w.is_zero() for w in field)

    def test_rejects_nonpositive_index(self):
        with pytest.raises(ValueError):
            mkdv_field_at(2, (1,), 0, (Fraction(1),))


class TestSingleParameterClosedForms:
    @pytest.mark.parametrize("n", (2, 3))
    def test_first_flow_is_minus_parameter_tangent(self, n):
        for j1 in range(n + 1):
            vals = (Fraction(3, 7),)
            field = mkdv_field_at(n, (j1,), 1, vals)
            tangent = dmu_dc_at(n, (j1,), 0, vals)
            for k in range(2 * n):
                assert field[k] == -tangent[k]
            assert tangency_solve_at(n, (j1,), 1, vals) == (Fraction(-1),)

    @pytest.mark.parametrize("n", (2, 3))
    def test_higher_flows_vanish(self, n):
        for j1 in range(n + 1):
            for r in (3, 5, 7):
                assert verify_flow_vanishes(n, (j1,), r, samples=2)

    def test_symbolic_vanishing_single_parameter(self):
        field = mkdv_field_symbolic(2, (1,), 3)
        assert all(w.is_zero() for w in field)


class TestTangencyAtPoint:
    def test_pinned_two_parameter_values(self):
        assert tangency_solve_at(2, (1, 2), 1, PT2) == \
            (Fraction(-1), Fraction(-12, 25))
        assert tangency_solve_at(2, (1, 2), 3, PT2) == \
            (Fraction(0), Fraction(3))

    def test_every_length_two_word_is_tangent(self):
        for J in ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)):
            for r in (1, 3):
                gammas = tangency_solve_at(2, J, r, PT2)
                assert len(gammas) == 2


class TestGammaExtraction:
    def test_pinned_polynomials_J12(self):
        ex1 = gamma_extract(2, (1, 2), 1, seed=3)
        assert [param_poly_str(g) for g in ex1.gammas] == ["-1", "-3*c1^2"]
        assert ex1.holdouts_passed >= 5
        ex3 = gamma_extract(2, (1, 2), 3, seed=3)
        assert [param_poly_str(g) for g in ex3.gammas] == ["0", "3"]

    def test_pinned_polynomials_three_parameters(self):
        ex = gamma_extract(2, (1, 2, 1), 1, seed=5)
        assert [param_poly_str(g) for g in ex.gammas] == \
            ["-1", "-3*c1^2", "-6*c1"]

    def test_extracted_fields_commute(self):
        ex1 = gamma_extract(2, (1, 2), 1, seed=3)
        ex3 = gamma_extract(2, (1, 2), 3, seed=3)
        assert gamma_fields_commute(ex1, ex3)

    def test_first_gamma_is_always_minus_one(self):
        # the first parameter direction moves with unit speed under r=1
        for J in ((0, 2), (2, 1)):
            ex = gamma_extract(2, J, 1, seed=7)
            assert param_poly_str(ex.gammas[0]) == "-1"

    def test_gamma_value_evaluates(self):
        ex = gamma_extract(2, (1, 2), 1, seed=3)
        assert ex.gamma_value(1, PT2) == Fraction(-12, 25)


class TestVanishing:
    def test_two_parameter_fifth_flow(self):
        assert verify_flow_vanishes(2, (1, 2), 5, samples=3)

    def test_three_parameter_seventh_flow(self):
        assert verify_flow_vanishes(2, (1, 2, 1), 7, samples=2)

    def test_report_branches(self):
        rep = cell_flow_report(2, (1, 2), 5, samples=2)
        assert rep["zero_field"] and rep["verified"]
        rep = cell_flow_report(2, (1, 2), 1)
        assert not rep["zero_field"]
        assert rep["gamma"] == ["-1", "-3*c1^2"]
        assert rep["degree_budget"] == 5


class TestDifferenceShape:
    def test_last_letter_middle(self):
        rep = field_difference_shape(2, (2, 1), 1, PT2)
        assert rep.matches and rep.direction == 1

    def test_last_letter_top(self):
        rep = field_difference_shape(2, (1, 2), 1, PT2)
        assert rep.matches and rep.direction == 2
        assert rep.factor is not None and not rep.factor.is_zero()

    def test_last_letter_zero(self):
        rep = field_difference_shape(2, (1, 0), 1, PT2)
        assert rep.matches and rep.direction == 0

    def test_third_flow_difference(self):
        rep = field_difference_shape(2, (1, 2), 3, PT2)
        assert rep.matches

    def test_shape_rejects_wrong_direction(self):
        diff = [XRat.const(0, q) for q in (1, 0, 0, -1)]
        rep = diagonal_shape(diff, 2, 1)
        assert not rep.matches

    def test_difference_killed_by_unrelated_cuts(self):
        # subtract the short word's tangency combination, pushed through the
        # long word's parameter tangents: what is left lies in the kernel of
        # every factorization tangent except the cuts touching the new letter,
        # and points along the last parameter direction
        J = (1, 2)
        old = tangency_solve_at(2, J[:-1], 1, PT2[:-1])
        big = mkdv_field_at(2, J, 1, PT2)
        cols = [dmu_dc_at(2, J, l, PT2) for l in range(len(J))]
        diff = list(big)
        for l, g in enumerate(old):
            scale = XRat.const(0, g)
            diff = [d - scale * cols[l][k] for k, d in enumerate(diff)]
        oper = mu_at(2, J, PT2)
        jm = J[-1]
        for i in range(4):
            if i in (jm, 4 - jm):
                continue
            assert tangent_miura(oper, tuple(diff), i).is_zero()
        gam_last = XRat.const(0, Fraction(-12, 25))
        assert all((d - gam_last * cols[-1][k]).is_zero()
                   for k, d in enumerate(diff))


class TestIntertwining:
    @pytest.mark.parametrize("i", (0, 1, 2, 3))
    def test_single_parameter_first_flow(self, i):
        assert kdv_intertwining_check(2, (1,), 1, i, (Fraction(3, 7),))

    def test_two_parameter_third_flow(self):
        assert kdv_intertwining_check(2, (1, 2), 3, 2, PT2)

    def test_rejects_even_index(self):
        with pytest.raises(ValueError):
            kdv_intertwining_check(2, (1,), 2, 0, (Fraction(1, 2),))
