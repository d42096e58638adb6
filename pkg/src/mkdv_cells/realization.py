"""Matrices of Laurent polynomials realizing the twisted affine generators.

Everything lives in 2n x 2n matrices whose entries are Laurent polynomials
in a spectral parameter with XRat coefficients.  The symplectic-type
generator triple (e_i, f_i, h_i), i = 0..n, is realized inside the
untwisted rank-(2n-1) algebra via the folding that pairs row/column i with
2n+1-i; both generator tables are provided so the folding can be checked.

Grading convention: the entry at (row k, column l) carrying spectral power
p is homogeneous of principal degree 2n*p + k - l.  The cyclic element is
homogeneous of degree 1 and its 2n-th matrix power is the spectral
parameter times the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rings import ParamPoly, XPoly, XRat


class LaurentMatrix:
    """Square matrix, entries = maps spectral-exponent -> XRat (nonzero)."""

    __slots__ = ("size", "arity", "entries")

    def __init__(self, size: int, arity: int, entries=None):
        self.size = size
        self.arity = arity
        rows: list[list[dict[int, XRat]]] = [[{} for _ in range(size)] for _ in range(size)]
        if entries is not None:
            for (i, j, p), v in entries.items():
                if not isinstance(v, XRat):
                    v = XRat.const(arity, v) if not isinstance(v, XPoly) else XRat(v)
                if v.arity != arity:
                    raise ValueError("entry arity mismatch")
                if not v.is_zero():
                    cell = rows[i][j]
                    if p in cell:
                        s = cell[p] + v
                        if s.is_zero():
                            del cell[p]
                        else:
                            cell[p] = s
                    else:
                        cell[p] = v
        self.entries = rows

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(size: int, arity: int) -> "LaurentMatrix":
        return LaurentMatrix(size, arity)

    @staticmethod
    def identity(size: int, arity: int) -> "LaurentMatrix":
        one = XRat.one(arity)
        return LaurentMatrix(size, arity, {(i, i, 0): one for i in range(size)})

    @staticmethod
    def diagonal(values, arity: int) -> "LaurentMatrix":
        vals = list(values)
        ents = {}
        for i, v in enumerate(vals):
            if not isinstance(v, XRat):
                v = XRat.const(arity, v)
            ents[(i, i, 0)] = v
        return LaurentMatrix(len(vals), arity, ents)

    # -- structure ----------------------------------------------------------

    def cell(self, i: int, j: int) -> dict[int, XRat]:
        return self.entries[i][j]

    def iter_terms(self):
        for i in range(self.size):
            for j in range(self.size):
                for p, v in self.entries[i][j].items():
                    yield i, j, p, v

    def is_zero(self) -> bool:
        return all(not self.entries[i][j] for i in range(self.size) for j in range(self.size))

    def degrees(self) -> set:
        """Principal degrees present among the nonzero terms."""
        return {self.size * p + i - j for i, j, p, _ in self.iter_terms()}

    def lambda0_diagonal(self) -> list[XRat]:
        z = XRat.zero(self.arity)
        return [self.entries[i][i].get(0, z) for i in range(self.size)]

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "LaurentMatrix"):
        if self.size != other.size or self.arity != other.arity:
            raise ValueError("matrix shape or arity mismatch")

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        self._check(other)
        out = LaurentMatrix(self.size, self.arity)
        for i in range(self.size):
            for j in range(self.size):
                cell = dict(self.entries[i][j])
                for p, v in other.entries[i][j].items():
                    s = cell.get(p)
                    s = v if s is None else s + v
                    if s.is_zero():
                        cell.pop(p, None)
                    else:
                        cell[p] = s
                out.entries[i][j] = cell
        return out

    def __neg__(self) -> "LaurentMatrix":
        out = LaurentMatrix(self.size, self.arity)
        for i in range(self.size):
            for j in range(self.size):
                out.entries[i][j] = {p: -v for p, v in self.entries[i][j].items()}
        return out

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentMatrix):
            self._check(other)
            out = LaurentMatrix(self.size, self.arity)
            for i in range(self.size):
                row = self.entries[i]
                for k in range(self.size):
                    if not row[k]:
                        continue
                    brow = other.entries[k]
                    for j in range(self.size):
                        if not brow[j]:
                            continue
                        cell = out.entries[i][j]
                        for p1, a in row[k].items():
                            for p2, b in brow[j].items():
                                p = p1 + p2
                                v = a * b
                                s = cell.get(p)
                                s = v if s is None else s + v
                                if s.is_zero():
                                    cell.pop(p, None)
                                else:
                                    cell[p] = s
            return out
        return self.scale(other)

    def scale(self, s) -> "LaurentMatrix":
        if not isinstance(s, XRat):
            s = XRat.const(self.arity, s)
        out = LaurentMatrix(self.size, self.arity)
        if s.is_zero():
            return out
        for i in range(self.size):
            for j in range(self.size):
                out.entries[i][j] = {p: v * s for p, v in self.entries[i][j].items()}
        return out

    def __rmul__(self, other):
        # scalars commute with everything we store
        return self.scale(other)

    def __pow__(self, k: int) -> "LaurentMatrix":
        if k < 0:
            raise ValueError("negative matrix power not supported here")
        out = LaurentMatrix.identity(self.size, self.arity)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def diff(self) -> "LaurentMatrix":
        """Entrywise d/dx."""
        out = LaurentMatrix(self.size, self.arity)
        for i in range(self.size):
            for j in range(self.size):
                cell = {}
                for p, v in self.entries[i][j].items():
                    d = v.diff()
                    if not d.is_zero():
                        cell[p] = d
                out.entries[i][j] = cell
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        if self.size != other.size or self.arity != other.arity:
            return False
        return all(self.entries[i][j] == other.entries[i][j]
                   for i in range(self.size) for j in range(self.size))

    def __repr__(self):
        nz = sum(1 for _ in self.iter_terms())
        return f"LaurentMatrix({self.size}x{self.size}, {nz} terms)"

    def specialize(self, values) -> "LaurentMatrix":
        out = LaurentMatrix(self.size, 0)
        for i in range(self.size):
            for j in range(self.size):
                cell = {}
                for p, v in self.entries[i][j].items():
                    w = v.specialize(values)
                    if not w.is_zero():
                        cell[p] = w
                out.entries[i][j] = cell
        return out


def commutator(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    return a * b - b * a


# ---------------------------------------------------------------------------
# Generator tables.  The tables below use the conventional 1-based row and
# column labels; _unit1 converts to 0-based storage once, here and nowhere
# else.
# ---------------------------------------------------------------------------


def _unit1(size: int, arity: int, k: int, l: int, lam: int = 0, coeff=1) -> LaurentMatrix:
    if not (1 <= k <= size and 1 <= l <= size):
        raise ValueError("unit matrix index out of range")
    return LaurentMatrix(size, arity, {(k - 1, l - 1, lam): XRat.const(arity, coeff)})


def a_generator(kind: str, i: int, n: int, arity: int = 0) -> LaurentMatrix:
    """Generators of the untwisted rank-(2n-1) loop realization, i = 0..2n-1."""
    size = 2 * n
    if not 0 <= i <= 2 * n - 1:
        raise ValueError(f"generator index {i} out of range 0..{2*n - 1}")
    if kind == "e":
        if i == 0:
            return _unit1(size, arity, 1, size, lam=1)
        return _unit1(size, arity, i + 1, i)
    if kind == "f":
        if i == 0:
            return _unit1(size, arity, size, 1, lam=-1)
        return _unit1(size, arity, i, i + 1)
    if kind == "h":
        if i == 0:
            return _unit1(size, arity, 1, 1) - _unit1(size, arity, size, size)
        return _unit1(size, arity, i + 1, i + 1) - _unit1(size, arity, i, i)
    raise ValueError(f"unknown generator kind {kind!r}")


def generator(kind: str, i: int, n: int, arity: int = 0) -> LaurentMatrix:
    """Symplectic-type generators e_i, f_i, h_i for i = 0..n in the folded
    realization (row/column i paired with 2n+1-i)."""
    size = 2 * n
    if not 0 <= i <= n:
        raise ValueError(f"generator index {i} out of range 0..{n}")
    if kind == "e":
        if i == 0:
            return _unit1(size, arity, 1, size, lam=1)
        if i == n:
            return _unit1(size, arity, n + 1, n)
        return _unit1(size, arity, i + 1, i) + _unit1(size, arity, 2 * n + 1 - i, 2 * n - i)
    if kind == "f":
        if i == 0:
            return _unit1(size, arity, size, 1, lam=-1)
        if i == n:
            return _unit1(size, arity, n, n + 1)
        return _unit1(size, arity, i, i + 1) + _unit1(size, arity, 2 * n - i, 2 * n + 1 - i)
    if kind == "h":
        return LaurentMatrix.diagonal(h_diag(i, n), arity)
    raise ValueError(f"unknown generator kind {kind!r}")


def h_diag(i: int, n: int) -> tuple[Fraction, ...]:
    """Diagonal of h_i as plain rationals (length 2n)."""
    if not 0 <= i <= n:
        raise ValueError(f"generator index {i} out of range 0..{n}")
    d = [Fraction(0)] * (2 * n)
    if i == 0:
        d[0] = Fraction(1)
        d[2 * n - 1] = Fraction(-1)
    elif i == n:
        d[n - 1] = Fraction(-1)
        d[n] = Fraction(1)
    else:
        d[i - 1] = Fraction(-1)
        d[i] = Fraction(1)
        d[2 * n - i - 1] = Fraction(-1)
        d[2 * n - i] = Fraction(1)
    return tuple(d)


def lambda_power(r: int, n: int, arity: int = 0) -> LaurentMatrix:
    """The degree-r element of the cyclic centralizer used by the flows.

    For odd r this is the honest r-th power of the cyclic element, in block
    form: writing r = 2n*m + j with 0 < j < 2n, the top-right j x j block is
    the spectral parameter to the power m+1 and the bottom-left block is the
    power m.  For even r the centralizer component vanishes in the folded
    algebra, so the zero matrix is returned by convention.
    """
    size = 2 * n
    if r % 2 == 0:
        return LaurentMatrix.zero(size, arity)
    j = r % size
    m = (r - j) // size
    ents = {}
    one = XRat.one(arity)
    for i in range(1, j + 1):
        ents[(i - 1, size - j + i - 1, m + 1)] = one
    for i in range(1, size - j + 1):
        ents[(j + i - 1, i - 1, m)] = one
    return LaurentMatrix(size, arity, ents)


@dataclass
class GradedComponent:
    degree: int
    matrix: LaurentMatrix


def grade_project(mat: LaurentMatrix, d: int) -> GradedComponent:
    """Extract the part of principal degree d (degree of a term at row k,
    column l with spectral power p is size*p + k - l, rows/columns 1-based;
    the shift cancels so 0-based differences give the same value)."""
    out = LaurentMatrix(mat.size, mat.arity)
    for i, j, p, v in mat.iter_terms():
        if mat.size * p + i - j == d:
            out.entries[i][j][p] = v
    return GradedComponent(d, out)


def exp_ad_f(j: int, g: XRat, n: int) -> tuple[LaurentMatrix, LaurentMatrix]:
    """Unipotent pair (E, E^{-1}) with E = Id + g * f_j.

    The matrix of f_j squares to zero, so the inverse is Id - g * f_j; the
    product E * E^{-1} is checked to be exactly the identity.
    """
    size = 2 * n
    arity = g.arity
    k = generator("f", j, n, arity).scale(g)
    ident = LaurentMatrix.identity(size, arity)
    e = ident + k
    einv = ident - k
    if e * einv != ident:
        raise AssertionError("unipotent inverse failed, f_j matrix did not square to zero")
    return e, einv


def shift_identities_check(n: int) -> bool:
    """Diagonal-shift identities past the cyclic element: with indices mod 2n,
    e_{i+1,i+1} Lam = Lam e_{i,i} and e_{i,i} Lam^{-1} = Lam^{-1} e_{i+1,i+1}."""
    size = 2 * n
    lam = lambda_power(1, n)
    lam_inv = lambda_power(-1, n)
    for i in range(1, size + 1):
        inext = i % size + 1
        ei = _unit1(size, 0, i, i)
        einext = _unit1(size, 0, inext, inext)
        if einext * lam != lam * ei:
            return False
        if ei * lam_inv != lam_inv * einext:
            return False
    return True
