"""Truncated pseudodifferential calculus over the rational-function field.

Operators are Laurent-style sums sum_k a_k D^k with XRat coefficients and
finitely many terms.  Composition uses

    D^k (a D^l) = sum_{i >= 0} C(k, i) a^(i) D^(k+l-i),

where C(k, i) = k (k-1) ... (k-i+1) / i! also makes sense for negative k;
for k < 0 the sum never terminates, so operators with negative orders are
stored truncated.  Each operator carries reliable_min: the lowest order
whose coefficient is trustworthy.  None means the operator is an honest
differential operator (no negative orders, every coefficient exact).
Arithmetic propagates reliability so that a consumer can tell exactly which
part of a result to believe; plus() refuses to run when the nonnegative
part is not fully reliable.

pdo_root extracts the monic 2n-th root of a monic order-2n operator by
peeling defects from the top; kdv_rhs forms the commutator of the operator
with the nonnegative part of an odd power of that root.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .rings import XRat
from .scalar_ops import ScalarDiffOp

_NEG_INF = float("-inf")


def binomial_series_coeff(k: int, i: int) -> Fraction:
    """C(k, i) = k (k-1) ... (k-i+1) / i! for integer k and i >= 0."""
    if i < 0:
        raise ValueError("lower index must be nonnegative")
    num = 1
    for s in range(i):
        num *= k - s
    den = 1
    for s in range(2, i + 1):
        den *= s
    return Fraction(num, den)


class PseudoDiffOp:
    """Finitely supported coefficient map order -> XRat plus a reliability
    floor (reliable_min; None for exact differential operators)."""

    __slots__ = ("arity", "coeffs", "reliable_min")

    def __init__(self, arity: int, coeffs: Mapping[int, XRat] | None = None,
                 reliable_min: int | None = None):
        cs: dict[int, XRat] = {}
        if coeffs:
            for k, v in coeffs.items():
                if not isinstance(v, XRat):
                    v = XRat.const(arity, v)
                if v.arity != arity:
                    raise ValueError("coefficient arity mismatch")
                if reliable_min is not None and k < reliable_min:
                    continue
                if not v.is_zero():
                    cs[k] = v
        if reliable_min is None and any(k < 0 for k in cs):
            raise ValueError("negative orders require a truncation floor")
        self.arity = arity
        self.coeffs = cs
        self.reliable_min = reliable_min

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(arity: int) -> "PseudoDiffOp":
        return PseudoDiffOp(arity)

    @staticmethod
    def identity(arity: int) -> "PseudoDiffOp":
        return PseudoDiffOp(arity, {0: XRat.one(arity)})

    @staticmethod
    def d(arity: int, power: int = 1) -> "PseudoDiffOp":
        if power < 0:
            raise ValueError("use a truncated representation for negative powers")
        return PseudoDiffOp(arity, {power: XRat.one(arity)})

    @staticmethod
    def from_scalar_op(op: ScalarDiffOp) -> "PseudoDiffOp":
        return PseudoDiffOp(op.arity, {k: c for k, c in enumerate(op.coeffs)})

    def to_scalar_op(self) -> ScalarDiffOp:
        if self.reliable_min is not None and any(k < self.reliable_min for k in self.coeffs):
            raise ValueError("operator has unreliable low orders")
        if any(k < 0 for k in self.coeffs):
            raise ValueError("operator has negative orders")
        top = max(self.coeffs, default=-1)
        return ScalarDiffOp(self.arity, [self.coeffs.get(k, XRat.zero(self.arity))
                                         for k in range(top + 1)])

    # -- structure ------------------------------------------------------------

    @property
    def low(self) -> float:
        return _NEG_INF if self.reliable_min is None else self.reliable_min

    def order(self):
        return max(self.coeffs) if self.coeffs else _NEG_INF

    def coeff(self, k: int) -> XRat:
        if self.reliable_min is not None and k < self.reliable_min:
            raise ValueError(f"order {k} is below the reliability floor")
        return self.coeffs.get(k, XRat.zero(self.arity))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, PseudoDiffOp):
            return NotImplemented
        return (self.arity == other.arity and self.coeffs == other.coeffs
                and self.reliable_min == other.reliable_min)

    def __repr__(self):
        rng = f"{self.reliable_min}..{self.order()}" if self.coeffs else "empty"
        return f"PseudoDiffOp(orders {rng})"

    # -- arithmetic -------------------------------------------------------------

    def _join_floor(self, other: "PseudoDiffOp") -> int | None:
        lo = max(self.low, other.low)
        return None if lo == _NEG_INF else int(lo)

    def __add__(self, other: "PseudoDiffOp") -> "PseudoDiffOp":
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        cs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = cs.get(k)
            cs[k] = v if s is None else s + v
        return PseudoDiffOp(self.arity, cs, self._join_floor(other))

    def __neg__(self) -> "PseudoDiffOp":
        return PseudoDiffOp(self.arity, {k: -v for k, v in self.coeffs.items()},
                            self.reliable_min)

    def __sub__(self, other: "PseudoDiffOp") -> "PseudoDiffOp":
        return self + (-other)

    def scale(self, s) -> "PseudoDiffOp":
        if not isinstance(s, XRat):
            s = XRat.const(self.arity, s)
        return PseudoDiffOp(self.arity, {k: v * s for k, v in self.coeffs.items()},
                            self.reliable_min)

    def __mul__(self, other: "PseudoDiffOp") -> "PseudoDiffOp":
        """Composition, truncated at the reliability floor of the result.

        A term of order k in the output picks up contributions from unknown
        coefficients of one factor below its floor whenever k < that floor
        plus the top order of the other factor; the output floor is the max
        of the two such bounds.
        """
        if self.arity != other.arity:
            raise ValueError("arity mismatch")
        floor = self._mul_floor(other)
        out: dict[int, XRat] = {}
        for k, a in self.coeffs.items():
            for l, b in other.coeffs.items():
                # expand D^k a D^l; for k >= 0 the series ends at i = k, for
                # k < 0 a floor always exists (constructor invariant) and
                # terms below it are dropped anyway
                stop = k if k >= 0 else k + l - floor
                if floor is not None:
                    stop = min(stop, k + l - floor)
                bi = b
                for i in range(stop + 1):
                    co = binomial_series_coeff(k, i)
                    if co != 0:
                        term = a * bi * XRat.const(self.arity, co)
                        if not term.is_zero():
                            idx = k + l - i
                            s = out.get(idx)
                            out[idx] = term if s is None else s + term
                    if i < stop:
                        bi = bi.diff()
        return PseudoDiffOp(self.arity, out, floor)

    def _mul_floor(self, other: "PseudoDiffOp") -> int | None:
        bounds = []
        if self.reliable_min is not None and other.coeffs:
            bounds.append(self.reliable_min + max(other.coeffs))
        if other.reliable_min is not None and self.coeffs:
            bounds.append(other.reliable_min + max(self.coeffs))
        return max(bounds) if bounds else None

    def __pow__(self, k: int) -> "PseudoDiffOp":
        if k < 0:
            raise ValueError("negative operator powers are not supported")
        out = PseudoDiffOp.identity(self.arity)
        for _ in range(k):
            out = out * self
        return out

    def plus(self) -> "PseudoDiffOp":
        """Restriction to nonnegative orders; requires them all reliable."""
        if self.reliable_min is not None and self.reliable_min > 0:
            raise ValueError("nonnegative part is not fully reliable at this depth")
        return PseudoDiffOp(self.arity, {k: v for k, v in self.coeffs.items() if k >= 0})

    def minus(self) -> "PseudoDiffOp":
        """Restriction to negative orders (keeps the truncation floor)."""
        return PseudoDiffOp(self.arity, {k: v for k, v in self.coeffs.items() if k < 0},
                            self.reliable_min)


def pdo_root(op: ScalarDiffOp | PseudoDiffOp, tail: int) -> PseudoDiffOp:
    """Monic root R of a monic even-order operator L, R^(2n) = L.

    R = D + a_0 + a_{-1} D^{-1} + ... computed down to order -tail by
    peeling the defect L - R^(2n) from the top: a defect of top order t is
    killed by adding lead / 2n at order t - (2n - 1), which strictly lowers
    the defect.  The result carries reliable_min = -tail.
    """
    if isinstance(op, ScalarDiffOp):
        op = PseudoDiffOp.from_scalar_op(op)
    if tail < 0:
        raise ValueError("tail must be nonnegative")
    size = op.order()
    arity = op.arity
    if not isinstance(size, int) or size < 2 or size % 2:
        raise ValueError("operator must have positive even order")
    if not op.coeff(size) == XRat.one(arity):
        raise ValueError("operator must be monic")
    if op.reliable_min is not None:
        raise ValueError("root extraction needs an exact operator")
    root = PseudoDiffOp(arity, {1: XRat.one(arity)}, -tail)
    scale = XRat.const(arity, Fraction(1, size))
    while True:
        defect = op - root ** size
        if defect.is_zero():
            break
        t = defect.order()
        s = t - (size - 1)
        if s < -tail:
            break
        root = root + PseudoDiffOp(arity, {s: defect.coeff(t) * scale}, -tail)
    return root


def kdv_rhs(op: ScalarDiffOp, r: int, depth: int | None = None) -> ScalarDiffOp:
    """Commutator of L with the nonnegative part of the r-th root power.

    depth controls how many negative orders of the root are computed;
    the default 2n + r + 2 leaves a margin of three beyond what plus()
    needs.  The commutator of exact differential operators is exact, and
    its order must drop to 2n - 2; a failure of that cancellation means
    the root was wrong and raises.
    """
    if isinstance(op, PseudoDiffOp):
        op = op.to_scalar_op()
    size = op.order()
    if not isinstance(size, int) or size < 2 or size % 2:
        raise ValueError("operator must have positive even order")
    if r < 1:
        raise ValueError("flow index must be positive")
    if depth is None:
        depth = size + r + 2
    tail = depth - size
    if tail < max(0, r - 1):
        raise ValueError(f"depth {depth} too shallow for flow index {r}")
    root = pdo_root(op, tail)
    b = (root ** r).plus().to_scalar_op()
    out = op * b - b * op
    if out.order() > size - 2:
        raise AssertionError("root defect: commutator failed to drop order")
    return out
