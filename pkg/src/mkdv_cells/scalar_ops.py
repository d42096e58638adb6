"""Scalar differential operators and the diagonal-to-scalar maps.

A first-order factorization attaches to each diagonal potential d_1..d_2n
(mirror symmetric, d_{2n+1-k} = -d_k) a family of monic scalar operators

    m_i = (D - d_i)(D - d_{i-1}) ... (D - d_1)(D - d_2n) ... (D - d_{i+1}),

one for each cyclic cut i = 1..2n (i = 0 names the same operator as
i = 2n).  The directional derivative of m_i along a diagonal motion
X = (X_1..X_2n) replaces one factor at a time by -X_k; its second-highest
coefficient has a first-order closed form implemented separately so it can
be cross-checked.

kernel_solve packages the linear conditions "that coefficient vanishes for
every cut outside a given excluded set" as an exact row space over the
rational-function field, treating X_k and X_k' as independent symbols.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import in_rowspan, rref_xrat
from .miura import MiuraOper
from .rings import XRat


class ScalarDiffOp:
    """Polynomial in D = d/dx with XRat coefficients, lowest order first."""

    __slots__ = ("arity", "coeffs")

    def __init__(self, arity: int, coeffs: Sequence[XRat] = ()):
        cs = []
        for c in coeffs:
            if not isinstance(c, XRat):
                c = XRat.const(arity, c)
            if c.arity != arity:
                raise ValueError("coefficient arity mismatch")
            cs.append(c)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.arity = arity
        self.coeffs = tuple(cs)

    @staticmethod
    def zero(arity: int) -> "ScalarDiffOp":
        return ScalarDiffOp(arity)

    @staticmethod
    def one(arity: int) -> "ScalarDiffOp":
        return ScalarDiffOp(arity, [XRat.one(arity)])

    @staticmethod
    def d(arity: int) -> "ScalarDiffOp":
        return ScalarDiffOp(arity, [XRat.zero(arity), XRat.one(arity)])

    @staticmethod
    def multiplication(f: XRat) -> "ScalarDiffOp":
        return ScalarDiffOp(f.arity, [f])

    def order(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def coeff(self, k: int) -> XRat:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return XRat.zero(self.arity)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "ScalarDiffOp") -> "ScalarDiffOp":
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        n = max(len(self.coeffs), len(other.coeffs))
        return ScalarDiffOp(self.arity, [self.coeff(k) + other.coeff(k) for k in range(n)])

    def __neg__(self) -> "ScalarDiffOp":
        return ScalarDiffOp(self.arity, [-c for c in self.coeffs])

    def __sub__(self, other: "ScalarDiffOp") -> "ScalarDiffOp":
        return self + (-other)

    def __mul__(self, other: "ScalarDiffOp") -> "ScalarDiffOp":
        """Composition of operators (not coefficientwise product)."""
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        out: dict[int, XRat] = {}
        for p, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for q, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                # D^p (b D^q) = sum_i C(p, i) b^(i) D^(p+q-i)
                bi = b
                binom = 1
                for i in range(p + 1):
                    if i:
                        binom = binom * (p - i + 1) // i
                        bi = bi.diff()
                    term = a * bi * XRat.const(self.arity, binom)
                    k = p + q - i
                    out[k] = out.get(k, XRat.zero(self.arity)) + term
        top = max(out) if out else -1
        return ScalarDiffOp(self.arity, [out.get(k, XRat.zero(self.arity)) for k in range(top + 1)])

    def scale(self, s) -> "ScalarDiffOp":
        if not isinstance(s, XRat):
            s = XRat.const(self.arity, s)
        return ScalarDiffOp(self.arity, [c * s for c in self.coeffs])

    def specialize(self, values) -> "ScalarDiffOp":
        return ScalarDiffOp(0, [c.specialize(values) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, ScalarDiffOp):
            return NotImplemented
        return self.arity == other.arity and self.coeffs == other.coeffs

    def __repr__(self):
        return f"ScalarDiffOp(order={self.order()}, arity={self.arity})"


def _cut_order(i: int, size: int) -> list[int]:
    """Factor indices for the cut at i, leftmost first: i, i-1, .., 1, 2n, .., i+1."""
    i = i % size
    if i == 0:
        i = size
    return list(range(i, 0, -1)) + list(range(size, i, -1))


def _factors(diag: Sequence[XRat], i: int) -> list[ScalarDiffOp]:
    size = len(diag)
    arity = diag[0].arity
    d = ScalarDiffOp.d(arity)
    return [d - ScalarDiffOp.multiplication(diag[k - 1]) for k in _cut_order(i, size)]


def miura_map(oper: MiuraOper, i: int) -> ScalarDiffOp:
    """Monic scalar operator of the cut at i.

    Always has order 2n with a vanishing second-highest coefficient (the
    diagonal is trace free), which is asserted.
    """
    diag = oper.full_diagonal()
    out = ScalarDiffOp.one(oper.arity)
    for f in _factors(diag, i):
        out = out * f
    size = len(diag)
    if out.order() != size or not (out.coeff(size) == XRat.one(oper.arity)):
        raise AssertionError("factorization lost monicity")
    if not out.coeff(size - 1).is_zero():
        raise AssertionError("trace-free diagonal produced a subleading term")
    return out


def tangent_miura(oper: MiuraOper, motion: Sequence[XRat], i: int) -> ScalarDiffOp:
    """Directional derivative of miura_map along the diagonal motion.

    motion lists all 2n diagonal velocities; factor k contributes the term
    with (D - d_k) replaced by -X_k.
    """
    diag = oper.full_diagonal()
    size = len(diag)
    if len(motion) != size:
        raise ValueError("motion must give all 2n diagonal velocities")
    fs = _factors(diag, i)
    order = _cut_order(i, size)
    arity = oper.arity
    prefixes = [ScalarDiffOp.one(arity)]
    for f in fs[:-1]:
        prefixes.append(prefixes[-1] * f)
    suffixes = [ScalarDiffOp.one(arity)]
    for f in reversed(fs[1:]):
        suffixes.append(f * suffixes[-1])
    suffixes.reverse()
    out = ScalarDiffOp.zero(arity)
    for p, k in enumerate(order):
        xk = motion[k - 1]
        if xk.is_zero():
            continue
        out = out + prefixes[p] * ScalarDiffOp.multiplication(-xk) * suffixes[p]
    return out


def leading_tangent_coeff(diag: Sequence[XRat], motion: Sequence[XRat], i: int) -> XRat:
    """Closed form for the D^(2n-2) coefficient of tangent_miura when the
    diagonal is trace free:

        -( sum_k d_k X_k + sum_{k<=i} (i-k) X_k' + sum_{k>i} (i+2n-k) X_k' )

    with the cut index normalized to 1..2n.
    """
    size = len(diag)
    i = i % size
    if i == 0:
        i = size
    arity = diag[0].arity
    acc = XRat.zero(arity)
    for k in range(1, size + 1):
        acc = acc + diag[k - 1] * motion[k - 1]
        w = i - k if k <= i else i + size - k
        if w:
            acc = acc + motion[k - 1].diff() * XRat.const(arity, w)
    return -acc


@dataclass
class KernelReport:
    """Row space of the vanishing conditions outside an excluded cut set.

    Symbols are ordered X_1..X_2n then X_1'..X_2n'; rows include the mirror
    constraints and their derivatives.  implies() decides whether a linear
    relation follows; check_tangent() substitutes an actual motion.
    """

    n: int
    excluded: frozenset
    equations: list[list[XRat]]
    rref: list[list[XRat]]
    pivots: list[int]

    def implies(self, relation: dict[int, XRat | Fraction | int]) -> bool:
        size = 2 * self.n
        arity = self.rref[0][0].arity if self.rref else 0
        vec = [XRat.zero(arity) for _ in range(2 * size)]
        for col, co in relation.items():
            if not isinstance(co, XRat):
                co = XRat.const(arity, co)
            vec[col] = co
        return in_rowspan(self.rref, self.pivots, vec)

    def x_col(self, k: int) -> int:
        """Column of X_k (k = 1..2n)."""
        return k - 1

    def dx_col(self, k: int) -> int:
        """Column of X_k' (k = 1..2n)."""
        return 2 * self.n + k - 1

    def check_tangent(self, motion: Sequence[XRat]) -> bool:
        """Whether a concrete motion satisfies every equation and constraint."""
        vals = list(motion) + [x.diff() for x in motion]
        for row in self.equations:
            acc = XRat.zero(vals[0].arity)
            for co, val in zip(row, vals):
                if not co.is_zero():
                    acc = acc + co * val
            if not acc.is_zero():
                return False
        return True


def kernel_solve(oper: MiuraOper, excluded) -> KernelReport:
    """Set up the conditions "leading tangent coefficient vanishes for every
    cut i outside `excluded`" plus the mirror constraints, and reduce them.

    Cut indices in `excluded` are taken mod 2n (0 and 2n name the same cut).
    """
    n = oper.n
    size = 2 * n
    arity = oper.arity
    diag = oper.full_diagonal()
    excl = frozenset((i % size) if (i % size) else size for i in excluded)
    zero = XRat.zero(arity)
    rows: list[list[XRat]] = []
    for i in range(1, size + 1):
        if i in excl:
            continue
        row = [zero] * (2 * size)
        for k in range(1, size + 1):
            row[k - 1] = diag[k - 1]
            w = i - k if k <= i else i + size - k
            row[size + k - 1] = XRat.const(arity, w) if w else zero
        rows.append(row)
    for k in range(1, n + 1):
        mirror = [zero] * (2 * size)
        mirror[k - 1] = XRat.one(arity)
        mirror[size - k] = XRat.one(arity)
        rows.append(mirror)
        dmirror = [zero] * (2 * size)
        dmirror[size + k - 1] = XRat.one(arity)
        dmirror[2 * size - k] = XRat.one(arity)
        rows.append(dmirror)
    rref, pivots = rref_xrat(rows)
    return KernelReport(n=n, excluded=excl, equations=rows, rref=rref, pivots=pivots)
