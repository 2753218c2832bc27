"""Order-by-order checks that the cocycles measure discrete invariants.

Flow a base point along an even vector field with a formal small parameter
eps, evaluate the two-, three-, and four-point invariants on the flowed
points and on their images under a contact germ, and expand the ratio in
eps.  The leading coefficients recover the multiplier, the affine cocycle,
and the quadratic-differential Schwarzian:

    two points:    ratio              = E(t1) + O(eps)
    three points:  ratio - 1          = (1/2) <eps X, d log E> + O(eps^2)
    four points:   ratio - 1          = <eps X (x) eps X, S> + O(eps^3)

Everything here is exact in the rational backend: eps is truncated at
degree three, flows use the degree-3 exponential, and the bracket ratios
are arranged so that leading eps powers cancel pairwise before inversion.

For three odd coordinates the third-order Taylor coefficient of the flowed
bracket no longer collapses to a quadratic expression; the witness
computation exposes the cubic term that blocks the construction.
"""

from __future__ import annotations

from fractions import Fraction

from .grassmann import FLOAT64, AlgebraError, GrassmannNumber
from .superjet import ORDER_INF, SuperJet
from .contactmap import MapGerm, SuperPoint
from .cocycles import (
    QuadDiffValue,
    DensityValue,
    OneFormValue,
    cocycle_A,
    cocycle_A_proj,
    cocycle_E,
    lie_cocycle,
    quad_S1,
    quad_S2,
    schwarzian_S0,
    schwarzian_S1,
)


class CartanError(AlgebraError):
    pass


def _tol(alg) -> float:
    return 1e-9 if alg.field == FLOAT64 else 0


def _half(alg):
    return Fraction(1, 2) if alg.field != FLOAT64 else 0.5


def _sixth(alg):
    return Fraction(1, 6) if alg.field != FLOAT64 else 1.0 / 6.0


# -- formal eps arithmetic -------------------------------------------------------


class EpsJet:
    """Polynomial in a formal even parameter eps, truncated beyond eps^3.

    Coefficients are Grassmann numbers; eps commutes with everything.
    ``valid`` marks the highest degree whose coefficient is actually known:
    dividing out a leading eps (shift_down) discards one order of
    information, and arithmetic propagates the weakest claim.
    """

    __slots__ = ("alg", "coeffs", "valid")

    def __init__(self, alg, coeffs, valid: int = 3):
        cs = []
        for c in coeffs:
            if not isinstance(c, GrassmannNumber):
                c = alg.scalar(c)
            cs.append(c)
        while len(cs) < 4:
            cs.append(alg.zero())
        if len(cs) > 4:
            raise CartanError("eps arithmetic is truncated at degree three")
        self.alg = alg
        self.coeffs = tuple(cs)
        self.valid = valid

    @classmethod
    def constant(cls, alg, value) -> "EpsJet":
        return cls(alg, (value,))

    def coefficient(self, k: int) -> GrassmannNumber:
        return self.coeffs[k]

    def _coerce(self, other):
        if isinstance(other, EpsJet):
            return other
        return EpsJet.constant(self.alg, other)

    def __add__(self, other):
        o = self._coerce(other)
        return EpsJet(self.alg,
                      [a + b for a, b in zip(self.coeffs, o.coeffs)],
                      min(self.valid, o.valid))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return EpsJet(self.alg,
                      [a - b for a, b in zip(self.coeffs, o.coeffs)],
                      min(self.valid, o.valid))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return EpsJet(self.alg, [-c for c in self.coeffs], self.valid)

    def __mul__(self, other):
        o = self._coerce(other)
        out = [self.alg.zero() for _ in range(4)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if i + j > 3:
                    break
                out[i + j] = out[i + j] + a * b
        return EpsJet(self.alg, out, min(self.valid, o.valid))

    __rmul__ = __mul__

    def reciprocal(self) -> "EpsJet":
        c0 = self.coeffs[0]
        c0i = c0.inverse()
        # self = c0 (1 + n) with n of positive eps valuation
        n = EpsJet(self.alg,
                   [self.alg.zero()] + [c0i * c for c in self.coeffs[1:]],
                   self.valid)
        one = EpsJet.constant(self.alg, 1)
        acc = one
        powern = one
        sign = -1
        for _ in range(3):
            powern = powern * n
            acc = acc + (sign * powern if sign < 0 else powern)
            sign = -sign
        return acc * EpsJet.constant(self.alg, c0i)

    def shift_down(self) -> "EpsJet":
        """Divide by eps; the constant term must vanish."""
        if not self.coeffs[0].is_zero(_tol(self.alg)):
            raise CartanError("cannot divide by eps: nonzero constant term")
        return EpsJet(self.alg, self.coeffs[1:] + (self.alg.zero(),),
                      self.valid - 1)

    def is_zero(self, tol=0) -> bool:
        return all(c.is_zero(tol) for c in self.coeffs)

    def is_zero_through(self, k: int, tol=None) -> bool:
        if tol is None:
            tol = _tol(self.alg)
        if k > self.valid:
            raise CartanError(
                f"coefficient {k} is beyond the tracked accuracy {self.valid}")
        return all(self.coeffs[d].is_zero(tol) for d in range(k + 1))

    def __repr__(self):
        return f"EpsJet({list(self.coeffs)!r}, valid={self.valid})"


class EpsPoint:
    """A point whose coordinates are eps expansions."""

    __slots__ = ("x", "xi")

    def __init__(self, x: EpsJet, xi):
        self.x = x
        self.xi = tuple(xi)


# -- jet evaluation in either ring -----------------------------------------------


def eval_jet(jet: SuperJet, point: SuperPoint) -> GrassmannNumber:
    """Value of a jet at a point whose body sits at the jet's base."""
    return jet.evaluate(point.x, list(point.xi))


def _eval_eps(jet: SuperJet, point: EpsPoint) -> EpsJet:
    """Evaluate with eps-expansion coordinates; mirrors SuperJet.evaluate
    over the truncated polynomial ring."""
    alg = jet.alg
    if len(point.xi) != jet.n_odd:
        raise CartanError("wrong number of odd values for this jet")
    if point.x.coefficient(0).body != jet.base_x:
        raise CartanError("point body does not match the jet base")
    disp = point.x - EpsJet.constant(alg, alg.scalar(jet.base_x))
    pows = [EpsJet.constant(alg, 1)]

    def power(p):
        while len(pows) <= p:
            pows.append(pows[-1] * disp)
        return pows[p]

    if jet.order != ORDER_INF:
        if not power(jet.order + 1).is_zero(_tol(alg)):
            raise CartanError(
                "jet order too small: the displacement does not vanish "
                "beyond the stored order")
    acc = EpsJet.constant(alg, 0)
    for (mask, p), c in sorted(jet.terms.items()):
        term = power(p)
        m, i = mask, 0
        while m:
            if m & 1:
                term = term * point.xi[i]
            m >>= 1
            i += 1
        acc = acc + term * EpsJet.constant(alg, c)
    return acc


def germ_at_eps(germ: MapGerm, point: EpsPoint) -> EpsPoint:
    return EpsPoint(_eval_eps(germ.phi, point),
                    [_eval_eps(p, point) for p in germ.psis])


# -- vector fields and flows -----------------------------------------------------


class ContactField:
    """Even vector field a.d/dx + sum g_i.d/dxi_i given by component jets.

    The field need not preserve the contact direction; the flow expansion
    only needs components.  ``from_hamiltonian`` builds the contact field
    of an even function f:

        X_f(x) = f - (1/2) sum_i xi_i D_i f,    X_f(xi_i) = (1/2) D_i f,

    so that <X_f, alpha> = f and the infinitesimal multiplier is f'.
    For one odd coordinate and f = a + 2 xi b this reads
    X_f(x) = a - b xi, X_f(xi) = (1/2) a' xi + b.
    """

    __slots__ = ("a", "gs")

    def __init__(self, a: SuperJet, gs):
        self.gs = list(gs)
        if len(self.gs) != a.n_odd:
            raise CartanError("one odd component per odd coordinate required")
        if not a.is_even():
            raise CartanError("the even component has odd terms")
        for g in self.gs:
            if not (g.is_odd() or g.is_zero()):
                raise CartanError("an odd component has even terms")
            if g.base_x != a.base_x or g.n_odd != a.n_odd:
                raise CartanError("field components disagree on base or dimension")
        self.a = a

    @property
    def alg(self):
        return self.a.alg

    @property
    def n_odd(self) -> int:
        return len(self.gs)

    @classmethod
    def from_hamiltonian(cls, f: SuperJet) -> "ContactField":
        if not f.is_even():
            raise CartanError("a contact Hamiltonian must be even")
        half = _half(f.alg)
        gs = [half * f.super_derivative(i) for i in range(f.n_odd)]
        a_comp = f
        for i, g in enumerate(gs):
            a_comp = a_comp - g.mul_left_xi(i)
        return cls(a_comp, gs)

    def apply(self, jet: SuperJet) -> SuperJet:
        """Directional derivative X(F)."""
        out = self.a * jet.derivative_x()
        for i, g in enumerate(self.gs):
            out = out + g * jet.derivative_xi(i)
        return out


def eps_flow(X: ContactField, t1: SuperPoint, steps: int = 4):
    """Points t_i = flow of (i-1) eps X from t1, degree-3 exponential."""
    alg = X.alg
    half, sixth = _half(alg), _sixth(alg)
    ax1 = X.a
    ax2 = X.apply(ax1)
    ax3 = X.apply(ax2)
    xs = [eval_jet(j, t1) for j in (ax1, ax2, ax3)]
    gs = []
    for g in X.gs:
        g2 = X.apply(g)
        g3 = X.apply(g2)
        gs.append([eval_jet(j, t1) for j in (g, g2, g3)])
    out = []
    for k in range(steps):
        x = EpsJet(alg, (t1.x, k * xs[0], (k * k * half) * xs[1],
                         (k * k * k * sixth) * xs[2]))
        xis = []
        for i in range(X.n_odd):
            xis.append(EpsJet(alg, (t1.xi[i], k * gs[i][0],
                                    (k * k * half) * gs[i][1],
                                    (k * k * k * sixth) * gs[i][2])))
        out.append(EpsPoint(x, xis))
    return out


# -- pairings --------------------------------------------------------------------


def pair_alpha(X: ContactField, t1: SuperPoint) -> GrassmannNumber:
    """<X, alpha> at the point: the eps-linear term of [t1, flow(t1)]."""
    val = eval_jet(X.a, t1)
    for i, g in enumerate(X.gs):
        val = val + t1.xi[i] * eval_jet(g, t1)
    return val


def pair_beta(X: ContactField, i: int, t1: SuperPoint) -> GrassmannNumber:
    return eval_jet(X.gs[i], t1)


def pair_oneform(X: ContactField, omega: OneFormValue,
                 t1: SuperPoint) -> GrassmannNumber:
    """<X, alpha f + beta^i g_i> evaluated at the point."""
    val = pair_alpha(X, t1) * eval_jet(omega.f, t1)
    for i, g in enumerate(omega.gs):
        val = val + pair_beta(X, i, t1) * eval_jet(g, t1)
    return val


def pair_quad(X: ContactField, q: QuadDiffValue,
              t1: SuperPoint) -> GrassmannNumber:
    """<X (x) X, Q> at the point, expanding the graded-symmetric basis."""
    a = pair_alpha(X, t1)
    val = a * a * eval_jet(q.a2, t1)
    for i, r in enumerate(q.ab):
        val = val + a * pair_beta(X, i, t1) * eval_jet(r, t1)
    for (i, j), s in q.bb.items():
        val = val + (pair_beta(X, i, t1) * pair_beta(X, j, t1)
                     * eval_jet(s, t1))
    return val


# -- eps-level brackets and invariant ratios --------------------------------------


def _eps_even_bracket(p: EpsPoint, q: EpsPoint) -> EpsJet:
    out = q.x - p.x
    for i in range(len(p.xi)):
        out = out - q.xi[i] * p.xi[i]
    return out


def _eps_odd_bracket(p: EpsPoint, q: EpsPoint):
    return tuple(q.xi[i] - p.xi[i] for i in range(len(p.xi)))


def _unit_bracket(p: EpsPoint, q: EpsPoint) -> EpsJet:
    """Even bracket with one eps divided out; leading term must be a unit."""
    return _eps_even_bracket(p, q).shift_down()


def _eps_cross_ratio(pts) -> EpsJet:
    num = _unit_bracket(pts[0], pts[2]) * _unit_bracket(pts[1], pts[3])
    den = _unit_bracket(pts[1], pts[2]) * _unit_bracket(pts[0], pts[3])
    return num * den.reciprocal()


def _check_point(germ: MapGerm, X: ContactField, t1: SuperPoint):
    if germ.n_odd != X.n_odd or len(t1.xi) != germ.n_odd:
        raise CartanError("germ, field, and point disagree on odd dimension")
    if t1.x.body != germ.base_x:
        raise CartanError("point body does not match the germ base")
    if not germ.is_contact(_tol(germ.alg)):
        raise CartanError("germ does not preserve the contact direction")
    a = pair_alpha(X, t1)
    tol = _tol(germ.alg)
    if a.body == 0 or (tol and abs(a.body) <= tol):
        raise CartanError(
            "degenerate field: <X, alpha> is not invertible at the point")


# -- the three Cartan residuals ----------------------------------------------------


def cartan_euclid(germ: MapGerm, X: ContactField, t1: SuperPoint) -> EpsJet:
    """Residual of [image(t1), image(t2)] / [t1, t2] - E(t1).

    The constant coefficient vanishes for contact germs; the higher
    coefficients carry the derivative corrections.
    """
    _check_point(germ, X, t1)
    pts = eps_flow(X, t1, steps=2)
    ims = [germ_at_eps(germ, p) for p in pts]
    ratio = _unit_bracket(ims[0], ims[1]) * _unit_bracket(
        pts[0], pts[1]).reciprocal()
    return ratio - eval_jet(germ.multiplier(), t1)


def cartan_affine(germ: MapGerm, X: ContactField, t1: SuperPoint) -> EpsJet:
    """Residual of the three-point ratio against the affine cocycle:

        I(images)/I(points) - 1 - (eps/2) <X, d log E>(t1),

    where I(t1,t2,t3) = [t1,t3]/[t1,t2].  Vanishes through order eps.
    """
    _check_point(germ, X, t1)
    pts = eps_flow(X, t1, steps=3)
    ims = [germ_at_eps(germ, p) for p in pts]

    def three_point(ps):
        return _unit_bracket(ps[0], ps[2]) * _unit_bracket(
            ps[0], ps[1]).reciprocal()

    ratio = three_point(ims) * three_point(pts).reciprocal()
    rhs = _half(germ.alg) * pair_oneform(X, cocycle_A(germ), t1)
    return ratio - 1 - EpsJet(germ.alg, (0, rhs))


def projective_quadratic(germ: MapGerm) -> QuadDiffValue:
    """The quadratic differential paired against X (x) X: the Schwarzian
    in its quadratic form, uniformly across zero, one, and two odd
    coordinates."""
    if germ.n_odd == 0:
        return QuadDiffValue(
            _sixth(germ.alg) * schwarzian_S0(germ).coeff, (), {})
    if germ.n_odd == 1:
        return quad_S1(germ)
    if germ.n_odd == 2:
        return quad_S2(germ)
    raise CartanError("no quadratic Schwarzian beyond two odd coordinates")


def cartan_projective(germ: MapGerm, X: ContactField,
                      t1: SuperPoint) -> EpsJet:
    """Residual of the cross-ratio ratio against the Schwarzian pairing:

        cr(images)/cr(points) - 1 - eps^2 <X (x) X, S>(t1).

    All coefficients through eps^2 vanish for contact germs.
    """
    _check_point(germ, X, t1)
    pts = eps_flow(X, t1, steps=4)
    ims = [germ_at_eps(germ, p) for p in pts]
    ratio = _eps_cross_ratio(ims) * _eps_cross_ratio(pts).reciprocal()
    rhs = pair_quad(X, projective_quadratic(germ), t1)
    return ratio - 1 - EpsJet(germ.alg, (0, 0, rhs))


# -- obstruction and infinitesimal comparisons -------------------------------------


def obstruction_witness_N3(germ: MapGerm):
    """Cubic Taylor coefficients of the flowed bracket for three odd
    coordinates: the jets D_k D_j D_i phi - sum_l psi^l D_k D_j D_i psi^l
    for i < j < k.  A nonzero value shows no quadratic-differential
    Schwarzian can absorb the third-order term."""
    if germ.n_odd != 3:
        raise CartanError("the obstruction lives at three odd coordinates")
    if not germ.is_contact(_tol(germ.alg)):
        raise CartanError("germ does not preserve the contact direction")
    out = {}
    for i in range(3):
        for j in range(i + 1, 3):
            for k in range(j + 1, 3):
                term = (germ.phi.super_derivative(i)
                        .super_derivative(j).super_derivative(k))
                for psi in germ.psis:
                    third = (psi.super_derivative(i)
                             .super_derivative(j).super_derivative(k))
                    term = term - psi * third
                out[(i, j, k)] = term
    return out


def obstruction_witness_map(alg, base_x=0) -> MapGerm:
    """The standard witness: identity plus the top odd product scaled by a
    fresh odd constant.  Contact, unit multiplier, nonzero cubic term."""
    if alg.gens < 4:
        raise CartanError("need at least four odd generators")
    lam = alg.gen(3)
    x = SuperJet.coordinate(alg, 3, base_x)
    xi = [SuperJet.odd_coordinate(alg, 3, base_x, i) for i in range(3)]
    phi = x + (xi[0] * xi[1] * xi[2]) * lam
    pair = [xi[1] * xi[2], -1 * (xi[0] * xi[2]), xi[0] * xi[1]]
    psis = [xi[i] - pair[i] * lam for i in range(3)]
    return MapGerm(phi, psis)


_LIE_CONSTANTS = {0: 1, 1: 1, 3: Fraction(1, 4)}


def lie_vs_group(f: SuperJet, i: int, nu_gens=None) -> DensityValue:
    """Compare the group cocycle along the flow of the contact field of f
    with the infinitesimal cocycle D^(i+2) f.

    The flow parameter is nu = theta_a theta_b, a nilpotent even constant
    built from two odd generators not used by f (defaults: the last two),
    so the time-nu flow map is exact.  Returns the residual

        C(exp nu X_f) - const_i . nu . D^(i+2) f,

    with const = 1, 1, 1/4 for i = 0, 1, 3.  Expected zero.
    """
    if i not in _LIE_CONSTANTS:
        raise CartanError("the weight index must be 0, 1, or 3")
    alg = f.alg
    if nu_gens is None:
        nu_gens = (alg.gens - 2, alg.gens - 1)
    nu = alg.gen(nu_gens[0]) * alg.gen(nu_gens[1])
    X = ContactField.from_hamiltonian(f)
    x = SuperJet.coordinate(alg, 1, f.base_x).truncate(f.order)
    xi = SuperJet.odd_coordinate(alg, 1, f.base_x, 0).truncate(f.order)
    germ = MapGerm(x + nu * X.a, [xi + nu * X.gs[0]])
    if i == 0:
        group = cocycle_E(germ)
    elif i == 1:
        group = cocycle_A_proj(germ)
    else:
        group = schwarzian_S1(germ)
    lie = lie_cocycle(f, i)
    scaled = DensityValue(lie.weight, _LIE_CONSTANTS[i] * (nu * lie.coeff))
    k = min(group.coeff.order, scaled.coeff.order)
    return DensityValue(group.weight,
                        group.coeff.truncate(k) - scaled.coeff.truncate(k))
