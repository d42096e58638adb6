"""Exact arithmetic over Q[c_1..c_m][x] and its field of fractions.

The coefficient tower, bottom up:

  Fraction   arbitrary-precision rationals, the only scalars,
  ParamPoly  sparse multivariate polynomials in the cell parameters c,
  XPoly      dense polynomials in x with ParamPoly coefficients,
  XRat       canonically reduced ratios of XPolys.

Every value is immutable after construction and all arithmetic is exact;
nothing in this module touches floating point.

Reduction of an XRat needs gcds in Q[c][x].  Those run a subresultant
pseudo-remainder sequence in x (known-factor exact divisions keep the
coefficient growth polynomial), with parameter-only content gcds handled
the same way one variable at a time.  Because the typical fraction
produced by the Wronskian cascade is already in lowest terms, there is a
sound shortcut: substitute a fixed rational point for c and take a
univariate gcd.  If the leading x-coefficients of both operands survive
the substitution and the specialized gcd is constant, the resultant in x
is nonzero at that point, hence nonzero as a polynomial, hence the x-gcd
is trivial and only content remains to cancel.  A failed certificate
falls back to the full sequence.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Iterable, Mapping, Sequence

Rat = Fraction


class SingularParameterError(ZeroDivisionError):
    """A denominator vanishes at the requested parameter point."""


def rat_gcd(a: Fraction, b: Fraction) -> Fraction:
    """gcd on Q: gcd of numerators over lcm of denominators, always >= 0."""
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    num = _int_gcd(a.numerator, b.numerator)
    den = (a.denominator * b.denominator) // _int_gcd(a.denominator, b.denominator)
    return Fraction(num, den)


def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    raise TypeError(f"expected rational scalar, got {type(q).__name__}")


# ---------------------------------------------------------------------------
# ParamPoly: sparse multivariate polynomials in the cell parameters.
# ---------------------------------------------------------------------------


class ParamPoly:
    """Polynomial in c_1..c_arity over Q, as a map exponent-vector -> Fraction.

    Zero is the empty map.  Exponent vectors are tuples of length ``arity``.
    The instance is treated as frozen; no method mutates ``terms``.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[tuple, Fraction] | None = None):
        self.arity = arity
        clean: dict[tuple, Fraction] = {}
        if terms:
            for e, q in terms.items():
                q = _as_fraction(q)
                if q == 0:
                    continue
                e = tuple(int(x) for x in e)
                if len(e) != arity or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent vector {e} for arity {arity}")
                clean[e] = q
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(arity: int) -> "ParamPoly":
        return ParamPoly(arity)

    @staticmethod
    def one(arity: int) -> "ParamPoly":
        return ParamPoly(arity, {(0,) * arity: Fraction(1)})

    @staticmethod
    def const(arity: int, q) -> "ParamPoly":
        return ParamPoly(arity, {(0,) * arity: _as_fraction(q)})

    @staticmethod
    def var(arity: int, i: int) -> "ParamPoly":
        """The parameter c_{i+1} as a polynomial (0-based index i)."""
        if not 0 <= i < arity:
            raise ValueError(f"variable index {i} out of range for arity {arity}")
        e = tuple(1 if k == i else 0 for k in range(arity))
        return ParamPoly(arity, {e: Fraction(1)})

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return float("-inf")
        return max(sum(e) for e in self.terms)

    def lead_unit(self) -> Fraction:
        """Coefficient of the lexicographically largest exponent vector."""
        if self.is_zero():
            raise ValueError("zero polynomial has no lead unit")
        return self.terms[max(self.terms)]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "ParamPoly | None":
        if isinstance(other, ParamPoly):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return ParamPoly.const(self.arity, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        t = dict(self.terms)
        for e, q in other.terms.items():
            s = t.get(e, Fraction(0)) + q
            if s == 0:
                t.pop(e, None)
            else:
                t[e] = s
        return ParamPoly(self.arity, t)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.arity, {e: -q for e, q in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return ParamPoly.zero(self.arity)
        t: dict[tuple, Fraction] = {}
        for e1, q1 in self.terms.items():
            for e2, q2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, Fraction(0)) + q1 * q2
                if s == 0:
                    t.pop(e, None)
                else:
                    t[e] = s
        return ParamPoly(self.arity, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # scalar division only
        q = _as_fraction(other)
        if q == 0:
            raise ZeroDivisionError("division by zero scalar")
        return ParamPoly(self.arity, {e: v / q for e, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = ParamPoly.one(self.arity)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.const(self.arity, other)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __repr__(self):
        if self.is_zero():
            return "ParamPoly(0)"
        parts = [f"{q}*c^{e}" for e, q in sorted(self.terms.items(), reverse=True)]
        return "ParamPoly(" + " + ".join(parts) + ")"

    # -- calculus and substitution ------------------------------------------

    def diff(self, i: int) -> "ParamPoly":
        """Partial derivative with respect to c_{i+1}."""
        t: dict[tuple, Fraction] = {}
        for e, q in self.terms.items():
            if e[i] == 0:
                continue
            e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
            t[e2] = t.get(e2, Fraction(0)) + q * e[i]
        return ParamPoly(self.arity, t)

    def specialize(self, values: Sequence) -> Fraction:
        """Evaluate at a full rational point."""
        if len(values) != self.arity:
            raise ValueError("wrong number of values")
        vals = [_as_fraction(v) for v in values]
        out = Fraction(0)
        for e, q in self.terms.items():
            w = q
            for x, k in zip(vals, e):
                if k:
                    w *= x ** k
            out += w
        return out

    def substitute(self, values: Mapping[int, Fraction]) -> "ParamPoly":
        """Substitute rationals for a subset of variables; survivors are
        reindexed in increasing order."""
        fixed = {i: _as_fraction(v) for i, v in values.items()}
        keep = [i for i in range(self.arity) if i not in fixed]
        t: dict[tuple, Fraction] = {}
        for e, q in self.terms.items():
            w = q
            for i, v in fixed.items():
                if e[i]:
                    w *= v ** e[i]
            if w == 0:
                continue
            e2 = tuple(e[i] for i in keep)
            s = t.get(e2, Fraction(0)) + w
            if s == 0:
                t.pop(e2, None)
            else:
                t[e2] = s
        return ParamPoly(len(keep), t)

    def lift(self, arity: int) -> "ParamPoly":
        """Reinterpret in a larger variable set (new variables appended)."""
        if arity < self.arity:
            raise ValueError("cannot drop variables by lifting")
        pad = (0,) * (arity - self.arity)
        return ParamPoly(arity, {e + pad: q for e, q in self.terms.items()})


# ---------------------------------------------------------------------------
# gcd machinery on ParamPoly (content / primitive-part recursion).
# ---------------------------------------------------------------------------


def _rat_content(p: ParamPoly) -> Fraction:
    out = Fraction(0)
    for q in p.terms.values():
        out = rat_gcd(out, q)
    return out


def _top_active_var(p: ParamPoly, q: ParamPoly):
    top = None
    for poly in (p, q):
        for e in poly.terms:
            for i in range(poly.arity - 1, -1, -1):
                if e[i] and (top is None or i > top):
                    top = i
                    break
    return top


def _deg_in(p: ParamPoly, v: int) -> int:
    return max((e[v] for e in p.terms), default=0)


def _coeff_in(p: ParamPoly, v: int, k: int) -> ParamPoly:
    t = {}
    for e, q in p.terms.items():
        if e[v] == k:
            t[e[:v] + (0,) + e[v + 1:]] = q
    return ParamPoly(p.arity, t)


def _split_var(p: ParamPoly, v: int) -> dict[int, ParamPoly]:
    buckets: dict[int, dict] = {}
    for e, q in p.terms.items():
        buckets.setdefault(e[v], {})[e[:v] + (0,) + e[v + 1:]] = q
    return {k: ParamPoly(p.arity, t) for k, t in buckets.items()}


def _var_power(arity: int, v: int, k: int) -> ParamPoly:
    e = tuple(k if i == v else 0 for i in range(arity))
    return ParamPoly(arity, {e: Fraction(1)})


def pp_exact_div(p: ParamPoly, d: ParamPoly) -> ParamPoly:
    """Exact division in Q[c]; raises ArithmeticError if d does not divide p."""
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return p
    if d.is_constant():
        return p / d.constant_value()
    q_terms: dict[tuple, Fraction] = {}
    dl = max(d.terms)
    dc = d.terms[dl]
    r = p
    while not r.is_zero():
        rl = max(r.terms)
        e = tuple(a - b for a, b in zip(rl, dl))
        if any(x < 0 for x in e):
            raise ArithmeticError("inexact polynomial division")
        qc = r.terms[rl] / dc
        q_terms[e] = qc
        r = r - ParamPoly(p.arity, {e: qc}) * d
    return ParamPoly(p.arity, q_terms)


def _pp_prem(f: ParamPoly, g: ParamPoly, v: int) -> ParamPoly:
    """Exact pseudo-remainder lc(g)^(deg f - deg g + 1) f mod g in the
    variable v (the normalization the subresultant divisions rely on)."""
    dg = _deg_in(g, v)
    lg = _coeff_in(g, v, dg)
    r = f
    e = _deg_in(f, v) - dg + 1
    while not r.is_zero():
        dr = _deg_in(r, v)
        if dr < dg:
            break
        lr = _coeff_in(r, v, dr)
        r = lg * r - lr * _var_power(f.arity, v, dr - dg) * g
        e -= 1
    if e > 0:
        r = r * lg ** e
    return r


def _pp_content_in(p: ParamPoly, v: int) -> ParamPoly:
    cont = ParamPoly.zero(p.arity)
    for part in _split_var(p, v).values():
        cont = pp_gcd(cont, part)
        if cont.is_constant() and not cont.is_zero():
            # a constant content can only shrink through its rational part
            rest = cont.constant_value()
            for part2 in _split_var(p, v).values():
                rest = rat_gcd(rest, _rat_content(part2))
            return ParamPoly.const(p.arity, rest)
    return cont


def _primitive_in(p: ParamPoly, v: int) -> ParamPoly:
    return pp_exact_div(p, _pp_content_in(p, v))


def _gcd_normalize(g: ParamPoly) -> ParamPoly:
    if g.is_zero():
        return g
    if g.lead_unit() < 0:
        return -g
    return g


def _pp_univar_probe(p: ParamPoly, v: int, pt: Sequence) -> list[Fraction]:
    """Coefficients of p in the variable v with every other variable at pt."""
    out = [Fraction(0)] * (_deg_in(p, v) + 1)
    for e, q in p.terms.items():
        s = q
        for i, k in enumerate(e):
            if i != v and k:
                s = s * pt[i] ** k
        out[e[v]] += s
    while out and out[-1] == 0:
        out.pop()
    return out


def _pp_constant_certificate(p: ParamPoly, q: ParamPoly) -> bool:
    """Sound check that gcd(p, q) is constant: for every variable active in
    both, a specialization of the others that keeps both leading coefficients
    alive yields coprime univariate images."""
    for v in range(p.arity):
        dp, dq = _deg_in(p, v), _deg_in(q, v)
        if dp == 0 or dq == 0:
            continue
        for attempt in range(2):
            pt = _probe_point(p.arity, attempt)
            up = _pp_univar_probe(p, v, pt)
            uq = _pp_univar_probe(q, v, pt)
            if len(up) != dp + 1 or len(uq) != dq + 1:
                continue
            ia, _ = _q_to_int(up)
            ib, _ = _q_to_int(uq)
            if len(_int_poly_gcd(ia, ib)) - 1 == 0:
                break
        else:
            return False
    return True


def pp_gcd(p: ParamPoly, q: ParamPoly) -> ParamPoly:
    """gcd in Q[c].  Carries the rational content (gcd(2c+2, 4) = 2) and is
    sign-normalized so the lexicographically leading coefficient is positive."""
    if p.is_zero():
        return _gcd_normalize(q)
    if q.is_zero():
        return _gcd_normalize(p)
    if p.is_constant() or q.is_constant():
        return ParamPoly.const(p.arity, rat_gcd(_rat_content(p), _rat_content(q)))
    v = _top_active_var(p, q)
    if v is None or _pp_constant_certificate(p, q):
        return ParamPoly.const(p.arity, rat_gcd(_rat_content(p), _rat_content(q)))
    cp = _pp_content_in(p, v)
    cq = _pp_content_in(q, v)
    cont = pp_gcd(cp, cq)
    a = pp_exact_div(p, cp)
    b = pp_exact_div(q, cq)
    if _deg_in(a, v) < _deg_in(b, v):
        a, b = b, a
    if _deg_in(b, v) == 0:
        return _gcd_normalize(cont)
    g = ParamPoly.one(p.arity)
    h = ParamPoly.one(p.arity)
    while True:
        delta = _deg_in(a, v) - _deg_in(b, v)
        r = _pp_prem(a, b, v)
        if r.is_zero():
            break
        if _deg_in(r, v) == 0:
            return _gcd_normalize(cont)
        a, b = b, pp_exact_div(r, g * h ** delta)
        g = _coeff_in(a, v, _deg_in(a, v))
        if delta >= 1:
            h = pp_exact_div(g ** delta, h ** (delta - 1))
    return _gcd_normalize(cont * _primitive_in(b, v))


# ---------------------------------------------------------------------------
# XPoly: dense polynomials in x over ParamPoly.
# ---------------------------------------------------------------------------


class XPoly:
    """Polynomial in x with ParamPoly coefficients, stored low degree first.

    The zero polynomial is the empty coefficient tuple; its degree is the
    sentinel -inf so that degree comparisons stay honest.
    """

    __slots__ = ("arity", "coeffs")

    def __init__(self, arity: int, coeffs: Iterable = ()):
        self.arity = arity
        cs = []
        for c in coeffs:
            if isinstance(c, (int, Fraction)):
                c = ParamPoly.const(arity, c)
            if not isinstance(c, ParamPoly):
                raise TypeError("XPoly coefficients must be ParamPoly or rationals")
            if c.arity != arity:
                raise ValueError("coefficient arity mismatch")
            cs.append(c)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(arity: int) -> "XPoly":
        return XPoly(arity)

    @staticmethod
    def one(arity: int) -> "XPoly":
        return XPoly(arity, [ParamPoly.one(arity)])

    @staticmethod
    def const(arity: int, q) -> "XPoly":
        if isinstance(q, ParamPoly):
            return XPoly(arity, [q])
        return XPoly(arity, [ParamPoly.const(arity, q)])

    @staticmethod
    def x(arity: int) -> "XPoly":
        return XPoly(arity, [ParamPoly.zero(arity), ParamPoly.one(arity)])

    # -- structure ----------------------------------------------------------

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> ParamPoly:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc() == ParamPoly.one(self.arity)

    def coeff(self, k: int) -> ParamPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ParamPoly.zero(self.arity)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "XPoly | None":
        if isinstance(other, XPoly):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other
        if isinstance(other, (int, Fraction, ParamPoly)):
            return XPoly.const(self.arity, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly(self.arity, [self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return XPoly(self.arity, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return XPoly.zero(self.arity)
        out = [ParamPoly.zero(self.arity) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                out[i + j] = out[i + j] + a * b
        return XPoly(self.arity, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = XPoly.one(self.arity)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, q) -> "XPoly":
        if isinstance(q, (int, Fraction)):
            q = ParamPoly.const(self.arity, q)
        return XPoly(self.arity, [c * q for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            other = XPoly.const(self.arity, other)
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.arity == other.arity and self.coeffs == other.coeffs

    def __repr__(self):
        return f"XPoly(deg={self.degree()}, arity={self.arity})"

    # -- calculus and substitution ------------------------------------------

    def diff(self) -> "XPoly":
        """d/dx."""
        return XPoly(self.arity, [c * k for k, c in enumerate(self.coeffs) if k > 0])

    def diff_c(self, i: int) -> "XPoly":
        """d/dc_{i+1}."""
        return XPoly(self.arity, [c.diff(i) for c in self.coeffs])

    def specialize(self, values: Sequence) -> "XPoly":
        """Substitute rationals for all parameters; result has arity 0."""
        return XPoly(0, [ParamPoly.const(0, c.specialize(values)) for c in self.coeffs])

    def substitute(self, values: Mapping[int, Fraction]) -> "XPoly":
        arity = self.arity - len(values)
        return XPoly(arity, [c.substitute(values) for c in self.coeffs])

    def lift(self, arity: int) -> "XPoly":
        return XPoly(arity, [c.lift(arity) for c in self.coeffs])

    def eval_x(self, x0) -> ParamPoly:
        """Evaluate at a rational x, keeping the parameters symbolic."""
        x0 = _as_fraction(x0)
        out = ParamPoly.zero(self.arity)
        for c in reversed(self.coeffs):
            out = out * x0 + c
        return out

    def fraction_coeffs(self) -> list[Fraction]:
        """Coefficient list for arity-0 polynomials."""
        if self.arity != 0:
            raise ValueError("fraction_coeffs needs a fully specialized polynomial")
        return [c.constant_value() for c in self.coeffs]


def wronskian(f: XPoly, g: XPoly) -> XPoly:
    """Wr(f, g) = f g' - f' g."""
    return f * g.diff() - f.diff() * g


# ---------------------------------------------------------------------------
# gcd on XPoly.
# ---------------------------------------------------------------------------

_PROBE_BASE = (2, 3, 5, 7, 11, 13, 17, 19)


def _probe_point(arity: int, attempt: int) -> tuple:
    return tuple(
        Fraction(_PROBE_BASE[i % len(_PROBE_BASE)] + 101 * attempt + 29 * (i // len(_PROBE_BASE)))
        for i in range(arity)
    )


def _int_primitive(v: list[int]) -> list[int]:
    g = 0
    for c in v:
        g = _int_gcd(g, abs(c))
    if g == 0:
        return []
    if v[-1] < 0:
        g = -g
    return [c // g for c in v]


def _int_prem(f: list[int], g: list[int]) -> list[int]:
    dg = len(g) - 1
    lg = g[-1]
    r = list(f)
    while r and len(r) - 1 >= dg:
        dr = len(r) - 1
        lr = r[-1]
        nr = [lg * c for c in r]
        for k in range(dg + 1):
            nr[dr - dg + k] -= lr * g[k]
        while nr and nr[-1] == 0:
            nr.pop()
        r = nr
    return r


def _int_poly_gcd(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_prem(a, b)
        a, b = b, _int_primitive(r)
    return _int_primitive(a)


def _q_to_int(coeffs: list[Fraction]) -> tuple[list[int], Fraction]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // _int_gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = _int_gcd(g, abs(v))
    if g == 0:
        return [], Fraction(0)
    return [v // g for v in ints], Fraction(g, den)


def _xpoly_gcd_arity0(f: XPoly, g: XPoly) -> XPoly:
    fa, ca = _q_to_int(f.fraction_coeffs())
    fb, cb = _q_to_int(g.fraction_coeffs())
    prim = _int_poly_gcd(fa, fb)
    cont = rat_gcd(ca, cb)
    return XPoly(0, [Fraction(v) * cont for v in prim])


def _specialized_gcd_degree(f0: XPoly, g0: XPoly) -> int:
    fa, _ = _q_to_int(f0.fraction_coeffs())
    fb, _ = _q_to_int(g0.fraction_coeffs())
    return len(_int_poly_gcd(fa, fb)) - 1


def _xp_content(f: XPoly) -> ParamPoly:
    cont = ParamPoly.zero(f.arity)
    for c in f.coeffs:
        cont = pp_gcd(cont, c)
    return cont


def _xp_div_pp(f: XPoly, d: ParamPoly) -> XPoly:
    return XPoly(f.arity, [pp_exact_div(c, d) for c in f.coeffs])


def _xp_prem(f: XPoly, g: XPoly) -> XPoly:
    """Exact pseudo-remainder lc(g)^(deg f - deg g + 1) f mod g in x."""
    dg = g.degree()
    lg = g.lc()
    r = f
    e = f.degree() - dg + 1
    while not r.is_zero() and r.degree() >= dg:
        dr = r.degree()
        lr = r.lc()
        pad = [ParamPoly.zero(f.arity)] * (dr - dg)
        shifted = XPoly(f.arity, pad + [c * lr for c in g.coeffs])
        r = XPoly(f.arity, [c * lg for c in r.coeffs]) - shifted
        e -= 1
    if e > 0 and not r.is_zero():
        lge = lg ** e
        r = XPoly(f.arity, [c * lge for c in r.coeffs])
    return r


def _xp_subres_prim(a: XPoly, b: XPoly) -> XPoly:
    """gcd of two x-primitive polynomials, itself primitive in x, by the
    subresultant remainder sequence (deg a >= deg b >= 0)."""
    if b.degree() == 0:
        return XPoly.one(a.arity)
    g = ParamPoly.one(a.arity)
    h = ParamPoly.one(a.arity)
    while True:
        delta = a.degree() - b.degree()
        r = _xp_prem(a, b)
        if r.is_zero():
            break
        if r.degree() == 0:
            return XPoly.one(a.arity)
        a, b = b, _xp_div_pp(r, g * h ** delta)
        g = a.lc()
        if delta >= 1:
            h = pp_exact_div(g ** delta, h ** (delta - 1))
    return _xp_div_pp(b, _xp_content(b))


def xpoly_gcd(f: XPoly, g: XPoly) -> XPoly:
    """gcd in Q[c][x], content included, sign-normalized."""
    if f.is_zero() and g.is_zero():
        return f
    if f.is_zero():
        f, g = g, f
    if g.is_zero():
        return _xp_sign_normalize(f)
    if f.arity == 0:
        return _xpoly_gcd_arity0(f, g)
    # Sound coprimality certificate by specialization.
    for attempt in range(2):
        pt = _probe_point(f.arity, attempt)
        if f.lc().specialize(pt) == 0 or g.lc().specialize(pt) == 0:
            continue
        if _specialized_gcd_degree(f.specialize(pt), g.specialize(pt)) == 0:
            cont = pp_gcd(_xp_content(f), _xp_content(g))
            return XPoly.const(f.arity, cont)
        break
    cf = _xp_content(f)
    cg = _xp_content(g)
    cont = pp_gcd(cf, cg)
    a = _xp_div_pp(f, cf)
    b = _xp_div_pp(g, cg)
    if a.degree() < b.degree():
        a, b = b, a
    prim = _xp_subres_prim(a, b)
    return _xp_sign_normalize(XPoly(f.arity, [cont]) * prim)


def _xp_sign_normalize(f: XPoly) -> XPoly:
    if f.is_zero():
        return f
    if f.lc().lead_unit() < 0:
        return -f
    return f


def xp_exact_div(f: XPoly, g: XPoly) -> XPoly:
    """Exact division in Q[c][x]; raises ArithmeticError on a nonzero remainder."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return f
    dg = g.degree()
    df = f.degree()
    if df < dg:
        raise ArithmeticError("inexact division: degree too small")
    glc = g.lc()
    rem = list(f.coeffs)
    q = [ParamPoly.zero(f.arity)] * (df - dg + 1)
    for e in range(df, dg - 1, -1):
        c = rem[e]
        if c.is_zero():
            continue
        qc = pp_exact_div(c, glc)
        q[e - dg] = qc
        for k, gc in enumerate(g.coeffs):
            rem[e - dg + k] = rem[e - dg + k] - qc * gc
    if any(not c.is_zero() for c in rem):
        raise ArithmeticError("inexact polynomial division")
    return XPoly(f.arity, q)


def xp_lcm(f: XPoly, g: XPoly) -> XPoly:
    if f.is_zero() or g.is_zero():
        return XPoly.zero(f.arity)
    return xp_exact_div(f * g, xpoly_gcd(f, g))


# ---------------------------------------------------------------------------
# XRat: canonical fractions.
# ---------------------------------------------------------------------------


class XRat:
    """Reduced ratio num/den of XPolys.

    Canonical form: gcd(num, den) is trivial including parameter content, and
    the denominator is normalized so that the lexicographically first nonzero
    rational of its leading coefficient equals 1.  With that normalization
    two equal values have structurally equal (num, den) pairs.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: XPoly, den: XPoly | None = None):
        if not isinstance(num, XPoly):
            raise TypeError("num must be an XPoly")
        if den is None:
            den = XPoly.one(num.arity)
        if not isinstance(den, XPoly):
            raise TypeError("den must be an XPoly")
        if num.arity != den.arity:
            raise ValueError("arity mismatch")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = XPoly.zero(num.arity)
            self.den = XPoly.one(num.arity)
            return
        if den.degree() > 0 or not den.coeffs[0].is_constant():
            g = xpoly_gcd(num, den)
            if g.degree() > 0:
                num = xp_exact_div(num, g)
                den = xp_exact_div(den, g)
        cont = pp_gcd(_xp_content(num), _xp_content(den))
        if not (cont.is_constant() and cont.constant_value() == 1):
            num = XPoly(num.arity, [pp_exact_div(c, cont) for c in num.coeffs])
            den = XPoly(den.arity, [pp_exact_div(c, cont) for c in den.coeffs])
        u = den.lc().lead_unit()
        if u != 1:
            num = num.scale(Fraction(1) / u)
            den = den.scale(Fraction(1) / u)
        self.num = num
        self.den = den

    @staticmethod
    def _make(num: XPoly, den: XPoly) -> "XRat":
        """Wrap a pair already known to be in canonical form."""
        r = object.__new__(XRat)
        r.num = num
        r.den = den
        return r

    @staticmethod
    def _normalized(num: XPoly, den: XPoly) -> "XRat":
        """Wrap a pair whose polynomial gcd is known trivial; only the cross
        content and the denominator leading unit still need normalizing."""
        if num.is_zero():
            return XRat._make(XPoly.zero(num.arity), XPoly.one(num.arity))
        cont = pp_gcd(_xp_content(num), _xp_content(den))
        if not (cont.is_constant() and cont.constant_value() == 1):
            num = XPoly(num.arity, [pp_exact_div(c, cont) for c in num.coeffs])
            den = XPoly(den.arity, [pp_exact_div(c, cont) for c in den.coeffs])
        u = den.lc().lead_unit()
        if u != 1:
            num = num.scale(Fraction(1) / u)
            den = den.scale(Fraction(1) / u)
        return XRat._make(num, den)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(arity: int) -> "XRat":
        return XRat(XPoly.zero(arity))

    @staticmethod
    def one(arity: int) -> "XRat":
        return XRat(XPoly.one(arity))

    @staticmethod
    def const(arity: int, q) -> "XRat":
        return XRat(XPoly.const(arity, q))

    @staticmethod
    def from_xpoly(p: XPoly) -> "XRat":
        return XRat(p)

    # -- structure ----------------------------------------------------------

    @property
    def arity(self) -> int:
        return self.num.arity

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == XPoly.one(self.arity)

    def as_xpoly(self) -> XPoly:
        if not self.is_polynomial():
            raise ValueError("denominator is not 1")
        return self.num

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "XRat | None":
        if isinstance(other, XRat):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other
        if isinstance(other, XPoly):
            return XRat(other)
        if isinstance(other, (int, Fraction, ParamPoly)):
            return XRat(XPoly.const(self.arity, other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        # with both operands reduced, the only cancellation in a sum can
        # come from the common part of the denominators
        if d1 == d2:
            g = d1
            d1r = d2r = XPoly.one(self.arity)
        else:
            g = xpoly_gcd(d1, d2)
            if g.degree() <= 0:
                return XRat._normalized(n1 * d2 + n2 * d1, d1 * d2)
            d1r = xp_exact_div(d1, g)
            d2r = xp_exact_div(d2, g)
        t = n1 * d2r + n2 * d1r
        if t.is_zero():
            return XRat.zero(self.arity)
        h = xpoly_gcd(t, g)
        if h.degree() > 0:
            t = xp_exact_div(t, h)
            g = xp_exact_div(g, h)
        return XRat._normalized(t, g * d1r * d2r)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(XRat)
        r.num = -self.num
        r.den = self.den
        return r

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return XRat.zero(self.arity)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        # cross-cancel before multiplying; the factors of the result are
        # then pairwise coprime and no further polynomial gcd is needed
        g1 = xpoly_gcd(n1, d2) if d2.degree() > 0 else XPoly.one(self.arity)
        if g1.degree() > 0:
            n1 = xp_exact_div(n1, g1)
            d2 = xp_exact_div(d2, g1)
        g2 = xpoly_gcd(n2, d1) if d1.degree() > 0 else XPoly.one(self.arity)
        if g2.degree() > 0:
            n2 = xp_exact_div(n2, g2)
            d1 = xp_exact_div(d1, g2)
        return XRat._normalized(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def _inverse(self) -> "XRat":
        if self.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return XRat._normalized(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other._inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k < 0:
            return self._inverse() ** (-k)
        if k == 0:
            return XRat.one(self.arity)
        # num and den are coprime, so their powers are too
        return XRat._normalized(self.num ** k, self.den ** k)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        # canonical form makes structural comparison complete
        return self.num == other.num and self.den == other.den

    def __repr__(self):
        return f"XRat({self.num!r} / {self.den!r})"

    # -- calculus and substitution ------------------------------------------

    def _quotient_rule(self, dnum: XPoly, dden: XPoly) -> "XRat":
        # (n/d)' = (n'd - nd')/d^2; cancel the repeated part of d first.
        # When gcd(d, d') is trivial, so is gcd of the result pair: a common
        # irreducible would divide d, hence n d', hence d' (n is coprime to
        # d), contradicting triviality.
        num, den = self.num, self.den
        if dden.is_zero():
            if dnum.is_zero():
                return XRat.zero(self.arity)
            return XRat(dnum, den)
        g = xpoly_gcd(den, dden)
        if g.degree() <= 0:
            t = dnum * den - num * dden
            return XRat._normalized(t, den * den)
        dhat = xp_exact_div(den, g)
        t = dnum * dhat - num * xp_exact_div(dden, g)
        return XRat(t, den * dhat)

    def diff(self) -> "XRat":
        """d/dx by the quotient rule."""
        return self._quotient_rule(self.num.diff(), self.den.diff())

    def diff_c(self, i: int) -> "XRat":
        return self._quotient_rule(self.num.diff_c(i), self.den.diff_c(i))

    def specialize(self, values: Sequence) -> "XRat":
        den = self.den.specialize(values)
        if den.is_zero():
            raise SingularParameterError("denominator vanishes identically at this point")
        return XRat(self.num.specialize(values), den)

    def substitute(self, values: Mapping[int, Fraction]) -> "XRat":
        den = self.den.substitute(values)
        if den.is_zero():
            raise SingularParameterError("denominator vanishes identically at this point")
        return XRat(self.num.substitute(values), den)

    def lift(self, arity: int) -> "XRat":
        r = object.__new__(XRat)
        r.num = self.num.lift(arity)
        r.den = self.den.lift(arity)
        return r

    def eval_x(self, x0) -> Fraction:
        """Evaluate an arity-0 rational function at rational x."""
        if self.arity != 0:
            raise ValueError("evaluation needs a fully specialized function")
        d = self.den.eval_x(x0).constant_value()
        if d == 0:
            raise ZeroDivisionError(f"pole at x = {x0}")
        return self.num.eval_x(x0).constant_value() / d


def reduce_ratio(num: XPoly, den: XPoly) -> XRat:
    """Canonical reduced fraction num/den."""
    return XRat(num, den)


def log_derivative(f: XRat | XPoly) -> XRat:
    """ln'(f) = f'/f; domain error on the zero function."""
    if isinstance(f, XPoly):
        f = XRat(f)
    if f.is_zero():
        raise ValueError("log derivative of zero")
    return XRat(f.num.diff() * f.den - f.den.diff() * f.num, f.num * f.den)
