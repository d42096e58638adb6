"""First-order matrix operators attached to generated tuples.

A tuple (y_0, ..., y_n) determines the diagonal potential

    v_i = ln'(y_i / y_{i-1}),   i = 1..n,

extended to 2n diagonal entries by the mirror rule d_{2n+1-i} = -d_i.  The
operator of interest is D = d/dx + Lam + V with Lam the cyclic element and
V = diag(v_1, ..., v_n, -v_n, ..., -v_1).

Three independent routes produce the same operator for a generation word J:

  * read v off the final tuple,
  * deform the zero-potential operator step by step, each step subtracting
    g_l * h_{j_l} from the diagonal where g_l solves a Riccati equation,
  * conjugate d/dx + Lam by the unipotent product built from the same g_l.

mu_oper computes the first two and insists they agree; the conjugation
route is exposed separately (conjugated_connection) since it costs matrix
work and is exercised by the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .generation import Cascade, PolyTuple, cartan_matrix, generate_cascade
from .realization import LaurentMatrix, exp_ad_f, h_diag, lambda_power
from .rings import XRat, log_derivative, wronskian


@dataclass(frozen=True)
class MiuraOper:
    """Diagonal potential of d/dx + Lam + V, stored as v_1..v_n.

    The mirror half of the diagonal is implied, so the stored data cannot
    break the mirror symmetry.
    """

    n: int
    v: tuple[XRat, ...]

    def __post_init__(self):
        if len(self.v) != self.n:
            raise ValueError("potential must have n entries")
        arity = self.v[0].arity
        if any(w.arity != arity for w in self.v):
            raise ValueError("potential entries disagree on parameter arity")

    @property
    def arity(self) -> int:
        return self.v[0].arity

    def full_diagonal(self) -> tuple[XRat, ...]:
        return self.v + tuple(-w for w in reversed(self.v))

    def matrix(self) -> LaurentMatrix:
        """Lam + V as a matrix (the d/dx term is implicit)."""
        out = lambda_power(1, self.n, self.arity)
        for i, d in enumerate(self.full_diagonal()):
            if not d.is_zero():
                out.entries[i][i][0] = d
        return out

    def specialize(self, values) -> "MiuraOper":
        return MiuraOper(self.n, tuple(w.specialize(values) for w in self.v))


def l_theta(n: int, arity: int = 0) -> MiuraOper:
    """The zero-potential operator."""
    return MiuraOper(n, (XRat.zero(arity),) * n)


def miura_from_tuple(tup: PolyTuple) -> MiuraOper:
    """Read the diagonal potential off a tuple."""
    lones = [log_derivative(y) for y in tup.ys]
    return MiuraOper(tup.n, tuple(lones[i] - lones[i - 1] for i in range(1, tup.n + 1)))


def alpha_pairing(oper: MiuraOper, j: int) -> XRat:
    """Pairing of the j-th simple root direction with the potential."""
    n, v = oper.n, oper.v
    if j == 0:
        return v[0] + v[0]
    if j == n:
        return -(v[n - 1] + v[n - 1])
    if 0 < j < n:
        return v[j] - v[j - 1]
    raise ValueError(f"direction {j} out of range 0..{n}")


def riccati_residual(oper: MiuraOper, j: int, g: XRat) -> XRat:
    """Defect of g as a deformation gauge in direction j:
    g' - <alpha_j, V> g + g^2."""
    return g.diff() - alpha_pairing(oper, j) * g + g * g


def deform(oper: MiuraOper, j: int, g: XRat) -> tuple[MiuraOper, XRat]:
    """Subtract g * h_j from the diagonal; also report the Riccati defect.

    The defect vanishes exactly when the deformation maps the operator to
    another one of the same class; callers decide whether to enforce that.
    """
    hd = h_diag(j, oper.n)
    arity = g.arity
    new_v = tuple(
        w - g * XRat.const(arity, hd[i]) if hd[i] else w
        for i, w in enumerate(oper.v)
    )
    return MiuraOper(oper.n, new_v), riccati_residual(oper, j, g)


def g_cascade(casc: Cascade) -> tuple[XRat, ...]:
    """Per-step gauges g_l = ln' of (new component / old component),
    all lifted to the full parameter arity."""
    m = casc.m
    out = []
    for l, j in enumerate(casc.J):
        old = casc.levels[l].ys[j].lift(l + 1)
        new = casc.levels[l + 1].ys[j]
        g = log_derivative(new) - log_derivative(old)
        out.append(g.lift(m))
    return tuple(out)


@lru_cache(maxsize=None)
def mu_oper(n: int, J: tuple[int, ...]) -> MiuraOper:
    """Operator of the cell reached along J, with every parameter symbolic.

    Computed from the final tuple and cross-checked against the stepwise
    deformation route: each step must have zero Riccati defect and the two
    results must be structurally equal.
    """
    J = tuple(J)
    casc = generate_cascade(n, J)
    from_tuple = miura_from_tuple(casc.final)
    oper = l_theta(n, casc.m)
    for j, g in zip(J, g_cascade(casc)):
        oper, defect = deform(oper, j, g)
        if not defect.is_zero():
            raise AssertionError(f"nonzero Riccati defect along J={J} at direction {j}")
    if oper != from_tuple:
        raise AssertionError(f"deformation route disagrees with the tuple route for J={J}")
    return from_tuple


def mu_at(n: int, J, values) -> MiuraOper:
    """Fully specialized operator at a rational parameter point."""
    return mu_oper(n, tuple(J)).specialize(values)


def conjugator(n: int, J) -> tuple[LaurentMatrix, LaurentMatrix]:
    """Unipotent product G = E_m ... E_1 with E_l = Id + g_l f_{j_l}, and its
    inverse.  The product of the two is checked to be the identity."""
    J = tuple(J)
    casc = generate_cascade(n, J)
    gs = g_cascade(casc)
    m = casc.m
    g_mat = LaurentMatrix.identity(2 * n, m)
    g_inv = LaurentMatrix.identity(2 * n, m)
    for j, g in zip(J, gs):
        e, einv = exp_ad_f(j, g, n)
        g_mat = e * g_mat
        g_inv = g_inv * einv
    if g_mat * g_inv != LaurentMatrix.identity(2 * n, m):
        raise AssertionError("conjugator inverse check failed")
    return g_mat, g_inv


def conjugated_connection(n: int, J) -> LaurentMatrix:
    """G Lam G^{-1} - G' G^{-1} for the cell conjugator G.

    Route equality says this matrix equals Lam + V of mu_oper(n, J).
    """
    J = tuple(J)
    g_mat, g_inv = conjugator(n, J)
    m = len(J)
    lam = lambda_power(1, n, m)
    return g_mat * lam * g_inv - g_mat.diff() * g_inv


def dmu_dc(oper: MiuraOper, l: int) -> tuple[XRat, ...]:
    """Full-diagonal derivative of the potential in parameter c_{l+1}."""
    dv = tuple(w.diff_c(l) for w in oper.v)
    return dv + tuple(-w for w in reversed(dv))


def dmu_dc_at(n: int, J, l: int, values) -> tuple[XRat, ...]:
    """dmu_dc specialized at a parameter point, via the tuple polynomials.

    d/dc ln'(y) = Wr(y, dy/dc) / y^2, and specializing the polynomial data
    before any fraction reduction keeps the gcd work univariate.
    """
    casc = generate_cascade(n, tuple(J))
    values = list(values)
    dln = []
    for y in casc.final.ys:
        ysp = y.specialize(values)
        ycp = y.diff_c(l).specialize(values)
        dln.append(XRat(wronskian(ysp, ycp), ysp * ysp))
    dv = tuple(dln[i] - dln[i - 1] for i in range(1, n + 1))
    return dv + tuple(-w for w in reversed(dv))


def dmu_dc_last_closed_form(n: int, J) -> tuple[XRat, ...]:
    """Closed form of dmu_dc in the last parameter: the final degree jump
    times the product of final components to the negated Cartan column of
    the last direction, spread along the h-diagonal of that direction."""
    J = tuple(J)
    if not J:
        raise ValueError("need a nonempty word")
    casc = generate_cascade(n, J)
    m = casc.m
    jlast = J[-1]
    a = cartan_matrix(n)
    jump = Fraction(-casc.eps[-1])
    prod = XRat.const(m, jump)
    for i, y in enumerate(casc.final.ys):
        e = -a[i][jlast]
        if e:
            prod = prod * XRat(y) ** e
    hd = h_diag(jlast, n)
    return tuple(prod * XRat.const(m, q) if q else XRat.zero(m) for q in hd)
