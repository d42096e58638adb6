"""Wronskian generation of monic polynomial tuples.

A tuple (y_0, ..., y_n) of monic polynomials in x is transformed one
component at a time: component j is replaced by a higher-degree partner
y~_j solving

    Wr(y_j, y~_j) = (deg y~_j - deg y_j) * prod_{i != j} y_i^{-a[i][j]},

where a is the (n+1) x (n+1) affine symplectic-type Cartan matrix.  The
solution space of the linear problem is a line y~ + Q * y_j, so each step
appends one fresh parameter; after m steps along a direction word J the
tuple coordinates are polynomials in Q[c_1, ..., c_m][x].

The degree of the partner is forced by the degree count of the Wronskian,
giving the reflection-style transform on degree vectors implemented by
degree_transform.  Words along which every step strictly raises a degree
are enumerated by degree_increasing_sequences.

Numerical helpers at the bottom evaluate the logarithmic master value and
the stationarity residuals at the roots of a fully specialized tuple.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .rings import ParamPoly, XPoly, wronskian, xpoly_gcd


class NotDegreeIncreasingError(ValueError):
    """The requested direction does not strictly raise the component degree."""


class NotFertileError(ValueError):
    """The Wronskian generation system has no polynomial solution."""


@lru_cache(maxsize=None)
def cartan_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """Affine symplectic-type Cartan matrix with rows and columns 0..n."""
    if n < 2:
        raise ValueError("rank must be at least 2")
    a = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        a[i][i] = 2
    a[0][1] = -1
    a[n][n - 1] = -1
    for i in range(1, n):
        a[i][i - 1] = -2 if i == 1 else -1
        a[i][i + 1] = -2 if i == n - 1 else -1
    return tuple(tuple(row) for row in a)


def degree_transform(n: int, j: int, k) -> tuple[int, ...]:
    """Degree vector after generating in direction j from degrees k."""
    a = cartan_matrix(n)
    k = tuple(k)
    if len(k) != n + 1:
        raise ValueError("degree vector must have n+1 entries")
    if not 0 <= j <= n:
        raise ValueError(f"direction {j} out of range 0..{n}")
    new = 1 - k[j] + sum(-a[i][j] * k[i] for i in range(n + 1) if i != j)
    out = list(k)
    out[j] = new
    return tuple(out)


def is_degree_increasing(n: int, J) -> tuple[bool, tuple[int, ...] | None]:
    """Whether every step of the word J strictly raises a degree, starting
    from the zero degree vector; on success also returns the final vector."""
    k = (0,) * (n + 1)
    for j in J:
        new = degree_transform(n, j, k)
        if new[j] <= k[j]:
            return False, None
        k = new
    return True, k


def degree_increasing_sequences(n: int, m: int) -> list[tuple[int, ...]]:
    """All degree-increasing direction words of length m, lexicographic."""
    out: list[tuple[int, ...]] = []

    def walk(word: tuple[int, ...], k: tuple[int, ...]):
        if len(word) == m:
            out.append(word)
            return
        for j in range(n + 1):
            new = degree_transform(n, j, k)
            if new[j] > k[j]:
                walk(word + (j,), new)

    walk((), (0,) * (n + 1))
    return out


@dataclass(frozen=True)
class PolyTuple:
    """Tuple (y_0, ..., y_n) of monic polynomials sharing one parameter list."""

    n: int
    ys: tuple[XPoly, ...]

    def __post_init__(self):
        if len(self.ys) != self.n + 1:
            raise ValueError("tuple must have n+1 components")
        arity = self.ys[0].arity
        for y in self.ys:
            if y.arity != arity:
                raise ValueError("components disagree on parameter arity")
            if not y.is_monic():
                raise ValueError("components must be monic")

    @staticmethod
    def base(n: int) -> "PolyTuple":
        return PolyTuple(n, (XPoly.one(0),) * (n + 1))

    @property
    def arity(self) -> int:
        return self.ys[0].arity

    def degrees(self) -> tuple[int, ...]:
        return tuple(y.degree() for y in self.ys)

    def lifted(self, arity: int) -> "PolyTuple":
        if arity == self.arity:
            return self
        return PolyTuple(self.n, tuple(y.lift(arity) for y in self.ys))

    def specialize(self, values) -> "PolyTuple":
        values = [Fraction(v) for v in values]
        return PolyTuple(self.n, tuple(y.specialize(values) for y in self.ys))


def generation_rhs(tup: PolyTuple, j: int) -> tuple[XPoly, int, int]:
    """Right-hand-side product for direction j, with the current and target
    degrees (k, k~).  The product runs over the off-diagonal column entries."""
    a = cartan_matrix(tup.n)
    if not 0 <= j <= tup.n:
        raise ValueError(f"direction {j} out of range 0..{tup.n}")
    t = XPoly.one(tup.arity)
    for i, yi in enumerate(tup.ys):
        e = -a[i][j]
        if i != j and e:
            t = t * yi ** e
    k = tup.ys[j].degree()
    kt = 1 - k + t.degree()
    return t, k, kt


def _generation_solve(y: XPoly, t_rhs: XPoly, kt: int) -> XPoly:
    """Solve Wr(y, u) = (kt - k) * t_rhs for monic u of degree kt.

    The system is triangular in the coefficients of u once they are filled
    in from the top degree down; the coefficient of x^(deg y) in u is pinned
    to zero to fix the Wr(y, y) = 0 kernel direction.  Every pivot is a
    nonzero integer, so coefficients stay polynomial in the parameters.
    Inconsistent equations raise NotFertileError.
    """
    k = y.degree()
    if k < 0 or not y.is_monic():
        raise ValueError("base polynomial must be monic")
    if kt < 0 or kt == k:
        raise ValueError("target degree must be a fresh nonnegative degree")
    arity = y.arity
    scale = Fraction(kt - k)
    coeffs: dict[int, ParamPoly] = {kt: ParamPoly.one(arity)}
    if k < kt:
        coeffs[k] = ParamPoly.zero(arity)
    for e in range(k + kt - 1, -1, -1):
        acc = ParamPoly.zero(arity)
        unknown = None
        for a in range(max(0, e + 1 - k), min(kt, e + 1) + 1):
            co = 2 * a - e - 1
            ya = y.coeff(e - a + 1)
            if a in coeffs:
                if co and not ya.is_zero() and not coeffs[a].is_zero():
                    acc = acc + ya * coeffs[a] * Fraction(co)
            else:
                unknown = a
        resid = t_rhs.coeff(e) * scale - acc
        if unknown is None:
            if not resid.is_zero():
                raise NotFertileError(
                    f"no polynomial partner: inconsistency at x^{e}")
        else:
            # the new unknown is a = e+1-k, its pivot 2a-e-1 = a-k times the
            # monic leading coefficient of y
            coeffs[unknown] = resid * (Fraction(1) / Fraction(unknown - k))
    return XPoly(arity, [coeffs.get(a, ParamPoly.zero(arity)) for a in range(kt + 1)])


def elementary_generate(tup: PolyTuple, j: int) -> tuple[PolyTuple, int]:
    """One generation step in direction j, appending one fresh parameter.

    Returns (new tuple, eps) with eps = k - k~ the (negative) degree drop of
    the replaced component.  The fresh parameter multiplies the old
    component inside the new one, so the replacement stays monic.
    """
    m = tup.arity
    lifted = tup.lifted(m + 1)
    t_rhs, k, kt = generation_rhs(lifted, j)
    if kt <= k:
        raise NotDegreeIncreasingError(
            f"direction {j} sends degree {k} to {kt}")
    part = _generation_solve(lifted.ys[j], t_rhs, kt)
    fresh = XPoly(m + 1, [ParamPoly.var(m + 1, m)])
    ys = list(lifted.ys)
    ys[j] = part + fresh * lifted.ys[j]
    return PolyTuple(tup.n, tuple(ys)), k - kt


def is_fertile(tup: PolyTuple, j: int) -> bool:
    """Whether direction j admits a polynomial partner of the forced degree."""
    t_rhs, k, kt = generation_rhs(tup, j)
    if kt == k:
        return True
    if kt < 0:
        return False
    try:
        _generation_solve(tup.ys[j], t_rhs, kt)
    except NotFertileError:
        return False
    return True


@dataclass(frozen=True)
class Cascade:
    """Full generation history along a word J.

    levels[l] is the tuple after l steps and carries parameters c_1..c_l;
    eps[l-1] is the degree drop of step l; ks[l] the degree vector after l
    steps.
    """

    n: int
    J: tuple[int, ...]
    levels: tuple[PolyTuple, ...]
    eps: tuple[int, ...]
    ks: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.J)

    @property
    def final(self) -> PolyTuple:
        return self.levels[-1]


@lru_cache(maxsize=None)
def generate_cascade(n: int, J: tuple[int, ...]) -> Cascade:
    """Generate from the all-ones tuple along J, keeping every level."""
    J = tuple(J)
    tup = PolyTuple.base(n)
    levels = [tup]
    eps: list[int] = []
    ks = [tup.degrees()]
    for j in J:
        tup, e = elementary_generate(tup, j)
        levels.append(tup)
        eps.append(e)
        ks.append(tup.degrees())
    return Cascade(n, J, tuple(levels), tuple(eps), tuple(ks))


def multistep_generate(n: int, J) -> PolyTuple:
    """Final tuple after generating along J from the all-ones tuple."""
    return generate_cascade(n, tuple(J)).final


# ---------------------------------------------------------------------------
# Pointwise checks for fully specialized tuples (arity 0).
# ---------------------------------------------------------------------------


def is_generic(tup: PolyTuple) -> bool:
    """Each component squarefree and adjacent components coprime."""
    if tup.arity != 0:
        raise ValueError("genericity check needs a fully specialized tuple")
    for y in tup.ys:
        if y.degree() > 0 and xpoly_gcd(y, y.diff()).degree() > 0:
            return False
    for y0, y1 in zip(tup.ys, tup.ys[1:]):
        if min(y0.degree(), y1.degree()) > 0 and xpoly_gcd(y0, y1).degree() > 0:
            return False
    return True


def roots_of_tuple(tup: PolyTuple) -> list[list[complex]]:
    """Complex roots of each component (empty list for constants)."""
    import numpy as np

    if tup.arity != 0:
        raise ValueError("root finding needs a fully specialized tuple")
    out = []
    for y in tup.ys:
        cs = [float(c.constant_value()) for c in reversed(y.coeffs)]
        out.append([complex(r) for r in np.roots(cs)] if len(cs) > 1 else [])
    return out


def _coupling(n: int) -> list[list[int]]:
    # right-symmetrized Cartan matrix: column weights (1, 2, ..., 2, 1)
    a = cartan_matrix(n)
    d = [1] + [2] * (n - 1) + [1]
    return [[a[s][t] * d[t] for t in range(n + 1)] for s in range(n + 1)]


def master_value(tup: PolyTuple, roots: list[list[complex]] | None = None) -> complex:
    """Value of the interaction product over the tuple's roots.

    Computed as exp of a sum of principal logarithms; raises ValueError if
    two interacting roots coincide.
    """
    if roots is None:
        roots = roots_of_tuple(tup)
    b = _coupling(tup.n)
    total = 0j
    for s in range(tup.n + 1):
        us = roots[s]
        for i in range(len(us)):
            for l in range(i + 1, len(us)):
                total += b[s][s] * cmath.log(us[i] - us[l])
        for t in range(s + 1, tup.n + 1):
            if b[s][t] == 0:
                continue
            for u in us:
                for w in roots[t]:
                    total += b[s][t] * cmath.log(u - w)
    return cmath.exp(total)


def critical_residuals(tup: PolyTuple, roots: list[list[complex]] | None = None) -> list[float]:
    """Stationarity residual magnitudes, one per root of the tuple.

    Residual at a root u of component s: sum of b[s][s]/(u - u') over the
    other roots u' of component s, plus b[s][t]/(u - w) over the roots w of
    the coupled components t.  Coincident roots give an infinite residual.
    """
    if roots is None:
        roots = roots_of_tuple(tup)
    b = _coupling(tup.n)
    out: list[float] = []
    for s in range(tup.n + 1):
        for i, u in enumerate(roots[s]):
            try:
                r = 0j
                for l, u2 in enumerate(roots[s]):
                    if l != i:
                        r += b[s][s] / (u - u2)
                for t in range(tup.n + 1):
                    if t == s or b[s][t] == 0:
                        continue
                    for w in roots[t]:
                        r += b[s][t] / (u - w)
                out.append(abs(r))
            except ZeroDivisionError:
                out.append(float("inf"))
    return out
