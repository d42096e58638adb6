"""Exact Gaussian elimination over Q and over fields of rational functions.

Two layers: plain Fraction matrices (used for sample-wise coefficient
extraction) and matrices of XRat entries (used to reason about spans of
linear relations with rational-function coefficients).  Everything is
fraction-free in spirit but computed directly in the field; sizes here are
tiny so clarity beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .rings import XRat


def solve_rational(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Solve an (possibly overdetermined) linear system over Q.

    Returns (status, solution): status is "unique", "underdetermined", or
    "inconsistent"; solution is a list of Fractions when unique, otherwise
    None.
    """
    m = len(rows)
    if m != len(rhs):
        raise ValueError("row/rhs length mismatch")
    ncols = len(rows[0]) if m else 0
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for row in a:
        if len(row) != ncols + 1:
            raise ValueError("ragged matrix")
    piv_cols: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        piv_cols.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][ncols] != 0:
            return "inconsistent", None
    if len(piv_cols) < ncols:
        return "underdetermined", None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(piv_cols):
        sol[col] = a[i][ncols]
    return "unique", sol


def solve_particular(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Like solve_rational but returns some solution when the system is
    consistent and underdetermined (free variables pinned to zero).

    Returns (status, solution) with status "unique", "underdetermined", or
    "inconsistent"; solution is None only when inconsistent.
    """
    m = len(rows)
    if m != len(rhs):
        raise ValueError("row/rhs length mismatch")
    ncols = len(rows[0]) if m else 0
    a = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    piv_cols: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        piv_cols.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][ncols] != 0:
            return "inconsistent", None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(piv_cols):
        sol[col] = a[i][ncols]
    status = "unique" if len(piv_cols) == ncols else "underdetermined"
    return status, sol


def rational_kernel_basis(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Basis of the nullspace of a matrix over Q, one vector per free column."""
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    a = [[Fraction(v) for v in row] for row in rows]
    piv_cols: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        piv_cols.append(col)
        r += 1
        if r == m:
            break
    basis = []
    piv_set = set(piv_cols)
    for col in range(ncols):
        if col in piv_set:
            continue
        v = [Fraction(0)] * ncols
        v[col] = Fraction(1)
        for i, pc in enumerate(piv_cols):
            v[pc] = -a[i][col]
        basis.append(v)
    return basis


def rref_xrat(rows: list[list[XRat]]) -> tuple[list[list[XRat]], list[int]]:
    """Reduced row echelon form over the rational-function field.

    Zero rows are dropped.  Returns (rows, pivot column indices).
    """
    if not rows:
        return [], []
    ncols = len(rows[0])
    arity = rows[0][0].arity
    work = [list(row) for row in rows]
    for row in work:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    out: list[list[XRat]] = []
    pivots: list[int] = []
    r = 0
    m = len(work)
    for col in range(ncols):
        piv = next((i for i in range(r, m) if not work[i][col].is_zero()), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = XRat.one(arity) / work[r][col]
        work[r] = [v * inv for v in work[r]]
        for i in range(m):
            if i != r and not work[i][col].is_zero():
                f = work[i][col]
                work[i] = [u - f * v for u, v in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r):
        out.append(work[i])
    return out, pivots


def reduce_against(rref_rows: list[list[XRat]], pivots: list[int], vec: list[XRat]) -> list[XRat]:
    """Remainder of vec after eliminating the pivot columns of an RREF basis."""
    v = list(vec)
    for row, col in zip(rref_rows, pivots):
        f = v[col]
        if not f.is_zero():
            v = [u - f * w for u, w in zip(v, row)]
    return v


def in_rowspan(rref_rows: list[list[XRat]], pivots: list[int], vec: list[XRat]) -> bool:
    """Whether vec is a rational-function combination of the RREF rows."""
    return all(v.is_zero() for v in reduce_against(rref_rows, pivots, vec))
