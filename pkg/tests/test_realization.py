from fractions import Fraction

import pytest

from mkdv_cells.realization import (LaurentMatrix, a_generator, commutator,
                                    exp_ad_f, generator, grade_project, h_diag,
                                    lambda_power, shift_identities_check)
from mkdv_cells.generation import cartan_matrix
from mkdv_cells.rings import ParamPoly, XPoly, XRat


def kronecker(i, j):
    return 1 if i == j else 0


class TestGenerators:
    def test_pinned_matrices_n2(self):
        e0 = generator("e", 0, 2)
        assert e0 == LaurentMatrix(4, 0, {(0, 3, 1): 1})
        h2 = generator("h", 2, 2)
        assert h2 == LaurentMatrix(4, 0, {(1, 1, 0): -1, (2, 2, 0): 1})
        e1 = generator("e", 1, 2)
        assert e1 == LaurentMatrix(4, 0, {(1, 0, 0): 1, (3, 2, 0): 1})

    @pytest.mark.parametrize("n", (2, 3))
    def test_h_sum_is_zero(self, n):
        total = LaurentMatrix.zero(2 * n, 0)
        for i in range(n + 1):
            total = total + generator("h", i, n)
        assert total.is_zero()

    @pytest.mark.parametrize("n", (2, 3))
    def test_ef_brackets(self, n):
        for i in range(n + 1):
            for j in range(n + 1):
                got = commutator(generator("e", i, n), generator("f", j, n))
                want = generator("h", i, n) if i == j else LaurentMatrix.zero(2 * n, 0)
                assert got == want, (i, j)

    @pytest.mark.parametrize("n", (2, 3))
    def test_he_brackets_read_cartan_column(self, n):
        a = cartan_matrix(n)
        for i in range(n + 1):
            hi = generator("h", i, n)
            for j in range(n + 1):
                ej = generator("e", j, n)
                got = commutator(hi, ej)
                assert got == ej.scale(a[i][j]), (i, j)
                fj = generator("f", j, n)
                assert commutator(hi, fj) == fj.scale(-a[i][j])

    @pytest.mark.parametrize("n", (2, 3))
    def test_serre_adjacent_spot_checks(self, n):
        # middle indices: (ad e_i)^{1-a_ij} e_j = 0
        a = cartan_matrix(n)
        for i in range(n + 1):
            for j in range(n + 1):
                if i == j:
                    continue
                acc = generator("e", j, n)
                for _ in range(1 - a[i][j]):
                    acc = commutator(generator("e", i, n), acc)
                assert acc.is_zero(), (i, j)

    def test_h_generator_matches_h_diag(self):
        for n in (2, 3):
            for i in range(n + 1):
                assert generator("h", i, n) == LaurentMatrix.diagonal(h_diag(i, n), 0)

    @pytest.mark.parametrize("n", (2, 3))
    def test_unfolded_brackets(self, n):
        for i in range(2 * n):
            for j in range(2 * n):
                got = commutator(a_generator("e", i, n), a_generator("f", j, n))
                if i == j:
                    assert got == a_generator("h", i, n)
                else:
                    assert got.is_zero()

    def test_index_range_errors(self):
        with pytest.raises(ValueError):
            generator("e", 3, 2)
        with pytest.raises(ValueError):
            generator("q", 1, 2)
        with pytest.raises(ValueError):
            a_generator("e", 4, 2)


class TestLambdaPowers:
    def test_pinned_n2(self):
        lam1 = lambda_power(1, 2)
        assert lam1 == LaurentMatrix(4, 0, {(1, 0, 0): 1, (2, 1, 0): 1,
                                            (3, 2, 0): 1, (0, 3, 1): 1})
        lam3 = lambda_power(3, 2)
        assert lam3 == LaurentMatrix(4, 0, {(3, 0, 0): 1, (0, 1, 1): 1,
                                            (1, 2, 1): 1, (2, 3, 1): 1})
        assert lam3 == lam1 * lam1 * lam1

    @pytest.mark.parametrize("n", (2, 3))
    def test_full_cycle_is_spectral_shift(self, n):
        lam = lambda_power(1, n)
        acc = LaurentMatrix.identity(2 * n, 0)
        for _ in range(2 * n):
            acc = acc * lam
        shift = LaurentMatrix(2 * n, 0,
                              {(i, i, 1): 1 for i in range(2 * n)})
        assert acc == shift

    @pytest.mark.parametrize("n", (2, 3))
    def test_odd_powers_multiply_out(self, n):
        lam = lambda_power(1, n)
        for r in (3, 5, 7, 9):
            acc = LaurentMatrix.identity(2 * n, 0)
            for _ in range(r):
                acc = acc * lam
            assert lambda_power(r, n) == acc

    def test_even_power_is_zero_element(self):
        for r in (2, 4, 6):
            assert lambda_power(r, 2).is_zero()

    def test_negative_power_inverts(self):
        for n in (2, 3):
            got = lambda_power(-1, n) * lambda_power(1, n)
            assert got == LaurentMatrix.identity(2 * n, 0)

    @pytest.mark.parametrize("n", (2, 3))
    def test_homogeneous_of_degree_r(self, n):
        for r in (1, 3, 5):
            assert lambda_power(r, n).degrees() == {r}


class TestGrading:
    def test_round_trip(self):
        ents = {(0, 0, 0): 2, (1, 0, 0): 3, (0, 3, 1): 5, (3, 0, -1): 7,
                (2, 2, 0): 11}
        mat = LaurentMatrix(4, 0, ents)
        degs = sorted(mat.degrees())
        acc = LaurentMatrix.zero(4, 0)
        for d in degs:
            piece = grade_project(mat, d)
            assert piece.degree == d
            acc = acc + piece.matrix
        assert acc == mat

    def test_degree_zero_is_diagonal(self):
        mat = lambda_power(1, 2) + LaurentMatrix.diagonal([1, 2, -2, -1], 0)
        part = grade_project(mat, 0).matrix
        assert part == LaurentMatrix.diagonal([1, 2, -2, -1], 0)


class TestExpAdF:
    def test_exact_inverse_and_nilpotency(self):
        g = XRat(XPoly(1, [ParamPoly.var(1, 0), ParamPoly.one(1)]))
        for n in (2, 3):
            for j in range(n + 1):
                e_mat, e_inv = exp_ad_f(j, g, n)
                ident = LaurentMatrix.identity(2 * n, 1)
                assert e_mat * e_inv == ident
                nil = e_mat - ident
                assert (nil * nil).is_zero()

    def test_zero_gives_identity(self):
        e_mat, e_inv = exp_ad_f(1, XRat.zero(0), 2)
        assert e_mat == LaurentMatrix.identity(4, 0)
        assert e_inv == LaurentMatrix.identity(4, 0)

    def test_shift_identities(self):
        assert shift_identities_check(2)
        assert shift_identities_check(3)
