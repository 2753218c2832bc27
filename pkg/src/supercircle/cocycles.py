"""Group one-cocycles measuring how far a contact map is from a symmetry.

The multiplier E of a contact germ transforms multiplicatively under
composition, so log E is a cocycle vanishing exactly on the unit-multiplier
(Euclidean) maps.  Its differential d log E, written on the frame (alpha,
beta^i), vanishes on the affine maps, and a second derivative step produces
the Schwarzian, which vanishes on the fractional-linear action.  For one odd
dimension the Schwarzian lives in weight 3/2, for two odd dimensions in
weight 1; both also come packaged as quadratic differentials whose component
relations are asserted internally.

Values are coefficient jets against a fixed basis, with the coefficient on
the right of the basis element, matching df = alpha f' + beta^i D_i f.
Density weights are half-integers; half-integer powers of the multiplier go
through the jet square root and inherit its backend restrictions.

Pullbacks realize the anti-action: (outer o inner)* = inner* o outer*.  The
verified cocycle law is therefore

    C(outer o inner) = inner-pullback of C(outer) + C(inner),

with the pullback taken in the module the cocycle lands in.
"""

from __future__ import annotations

from fractions import Fraction

from .grassmann import FLOAT64, AlgebraError, NotRepresentable
from .superjet import DEFAULT_ORDER, ORDER_INF, SuperJet
from .contactmap import MapGerm


class CocycleError(AlgebraError):
    pass


def _tol(alg) -> float:
    return 1e-9 if alg.field == FLOAT64 else 0


def _finite(germ: MapGerm) -> MapGerm:
    """Exact germs carry no truncation order; series steps need one, so
    cap them at the default working order on entry."""
    return germ.truncate(DEFAULT_ORDER) if germ.order == ORDER_INF else germ


def jets_agree(a: SuperJet, b: SuperJet, tol=None) -> bool:
    """Coefficientwise agreement up to the shared valid order."""
    if tol is None:
        tol = _tol(a.alg)
    k = min(a.order, b.order)
    return (a.truncate(k) - b.truncate(k)).is_zero(tol)


def _one(like: SuperJet) -> SuperJet:
    return SuperJet.constant(like.alg, like.n_odd, like.base_x, 1, like.order)


def jet_power(e: SuperJet, weight) -> SuperJet:
    """e**weight for half-integer weight, e an even invertible jet."""
    w = Fraction(weight)
    if w == 0:
        return _one(e)
    if w.denominator == 1:
        root, n = e, w.numerator
    elif w.denominator == 2:
        root, n = e.sqrt(), w.numerator
    else:
        raise CocycleError(f"weight must be a half-integer, got {w}")
    if n < 0:
        root, n = root.reciprocal(), -n
    return root ** n


def _certify(germ: MapGerm):
    if not germ.is_contact(_tol(germ.alg)):
        raise CocycleError("germ does not preserve the contact direction")


def _multiplier_power(germ: MapGerm, weight, like: SuperJet) -> SuperJet:
    """E^weight as the density action of the germ.

    Half-integer weights on one odd coordinate take powers of the germ's
    own root D psi; its sign at the base matters, and the positive sqrt
    branch would break the cocycle law on the reflected component.
    """
    w = Fraction(weight)
    k = like.order if like.order != ORDER_INF else DEFAULT_ORDER
    if w.denominator == 2 and germ.n_odd == 1:
        root = germ.multiplier_root()
        if root.order == ORDER_INF:
            root = root.truncate(k)
        n = w.numerator
        return root ** n if n >= 0 else root.reciprocal() ** (-n)
    e = germ.multiplier()
    if e.order == ORDER_INF:
        e = e.truncate(k)
    return jet_power(e, w)


# -- value types ---------------------------------------------------------------


class DensityValue:
    """Coefficient f of a density f . alpha^weight."""

    __slots__ = ("weight", "coeff")

    def __init__(self, weight, coeff: SuperJet):
        self.weight = Fraction(weight)
        self.coeff = coeff

    @property
    def order(self) -> int:
        return self.coeff.order

    def pullback(self, germ: MapGerm) -> "DensityValue":
        """Anti-action of a contact germ: E^weight . (f o germ)."""
        f = germ.apply_jet(self.coeff)
        if self.weight:
            f = _multiplier_power(germ, self.weight, f) * f
        return DensityValue(self.weight, f)

    def _check(self, other):
        if not isinstance(other, DensityValue) or other.weight != self.weight:
            raise CocycleError("density weights do not match")

    def __add__(self, other):
        self._check(other)
        return DensityValue(self.weight, self.coeff + other.coeff)

    def __sub__(self, other):
        self._check(other)
        return DensityValue(self.weight, self.coeff - other.coeff)

    def __neg__(self):
        return DensityValue(self.weight, -self.coeff)

    def __rmul__(self, scalar):
        return DensityValue(self.weight, scalar * self.coeff)

    def is_zero(self, tol=None) -> bool:
        if tol is None:
            tol = _tol(self.coeff.alg)
        return self.coeff.is_zero(tol)

    def matches(self, other: "DensityValue", tol=None) -> bool:
        return self.weight == other.weight and jets_agree(
            self.coeff, other.coeff, tol)

    def __repr__(self):
        return f"DensityValue({self.weight}, {self.coeff!r})"


class OneFormValue:
    """Components (f, g_1..g_N) of the 1-form alpha.f + beta^i.g_i."""

    __slots__ = ("f", "gs")

    def __init__(self, f: SuperJet, gs):
        self.gs = tuple(gs)
        if len(self.gs) != f.n_odd:
            raise CocycleError("one odd component per odd coordinate required")
        self.f = f

    @property
    def n_odd(self) -> int:
        return len(self.gs)

    @property
    def order(self) -> int:
        return min([self.f.order] + [g.order for g in self.gs])

    def components(self):
        return (self.f,) + self.gs

    def pullback(self, germ: MapGerm) -> "OneFormValue":
        """Rewrite through the germ: alpha pulls to E.alpha and beta^i to
        d(psi^i) re-expanded on the frame."""
        e = germ.multiplier()
        fc = germ.apply_jet(self.f)
        gc = [germ.apply_jet(g) for g in self.gs]
        f_new = e * fc
        for i, g in enumerate(gc):
            f_new = f_new + germ.psis[i].derivative_x() * g
        gs_new = []
        for j in range(self.n_odd):
            acc = SuperJet.constant(germ.alg, germ.n_odd, germ.base_x, 0)
            for i, g in enumerate(gc):
                acc = acc + germ.psis[i].super_derivative(j) * g
            gs_new.append(acc)
        return OneFormValue(f_new, gs_new)

    def lie_x(self) -> "OneFormValue":
        """Lie derivative along d/dx: the frame is constant, so componentwise."""
        return OneFormValue(self.f.derivative_x(),
                            [g.derivative_x() for g in self.gs])

    def lie_D(self, i: int) -> "OneFormValue":
        """Lie derivative along D_i, using L_{D_i} alpha = 2 beta^i and
        L_{D_i} beta^j = 0; the odd operator picks up a sign crossing the
        odd basis elements."""
        gs_new = []
        for j, g in enumerate(self.gs):
            term = -g.super_derivative(i)
            if j == i:
                term = term + 2 * self.f
            gs_new.append(term)
        return OneFormValue(self.f.super_derivative(i), gs_new)

    def square(self) -> "QuadDiffValue":
        """Product of the form with itself in the graded-symmetric algebra."""
        a2 = self.f * self.f
        ab = [2 * (self.f * g) for g in self.gs]
        bb = {}
        for i in range(self.n_odd):
            for j in range(i + 1, self.n_odd):
                bb[(i, j)] = -2 * (self.gs[i] * self.gs[j])
        return QuadDiffValue(a2, ab, bb)

    def _check(self, other):
        if not isinstance(other, OneFormValue) or other.n_odd != self.n_odd:
            raise CocycleError("one-form component counts do not match")

    def __add__(self, other):
        self._check(other)
        return OneFormValue(self.f + other.f,
                            [a + b for a, b in zip(self.gs, other.gs)])

    def __sub__(self, other):
        self._check(other)
        return OneFormValue(self.f - other.f,
                            [a - b for a, b in zip(self.gs, other.gs)])

    def __neg__(self):
        return OneFormValue(-self.f, [-g for g in self.gs])

    def __rmul__(self, scalar):
        return OneFormValue(scalar * self.f, [scalar * g for g in self.gs])

    def is_zero(self, tol=None) -> bool:
        if tol is None:
            tol = _tol(self.f.alg)
        return all(c.is_zero(tol) for c in self.components())

    def matches(self, other: "OneFormValue", tol=None) -> bool:
        if not isinstance(other, OneFormValue) or other.n_odd != self.n_odd:
            return False
        return all(jets_agree(a, b, tol)
                   for a, b in zip(self.components(), other.components()))

    def __repr__(self):
        return f"OneFormValue({self.f!r}, {list(self.gs)!r})"


class QuadDiffValue:
    """Components of a quadratic differential on the graded-symmetric basis
    alpha^2, alpha.beta^i (symmetric), beta^i beta^j with i < j (the product
    of two odd basis forms is antisymmetric)."""

    __slots__ = ("a2", "ab", "bb")

    def __init__(self, a2: SuperJet, ab, bb=None):
        self.a2 = a2
        self.ab = tuple(ab)
        if len(self.ab) != a2.n_odd:
            raise CocycleError("one mixed component per odd coordinate required")
        norm = {}
        for (i, j), c in (bb or {}).items():
            if not 0 <= i < j < a2.n_odd:
                raise CocycleError(f"bad antisymmetric index pair ({i}, {j})")
            norm[(i, j)] = c
        self.bb = norm

    @property
    def n_odd(self) -> int:
        return len(self.ab)

    @property
    def order(self) -> int:
        orders = [self.a2.order] + [c.order for c in self.ab]
        orders += [c.order for c in self.bb.values()]
        return min(orders)

    def bb_component(self, i: int, j: int) -> SuperJet:
        zero = SuperJet.constant(self.a2.alg, self.a2.n_odd, self.a2.base_x, 0,
                                 self.a2.order)
        if i == j:
            return zero
        if i > j:
            return -self.bb_component(j, i)
        return self.bb.get((i, j), zero)

    def components(self):
        out = [self.a2] + list(self.ab)
        for key in sorted(self.bb):
            out.append(self.bb[key])
        return out

    def pullback(self, germ: MapGerm) -> "QuadDiffValue":
        """Componentwise pullback induced by alpha -> E.alpha and
        beta^i -> alpha.(psi^i)' + beta^k.D_k(psi^i)."""
        n = self.n_odd
        e = germ.multiplier()
        zero = SuperJet.constant(germ.alg, germ.n_odd, germ.base_x, 0)
        b0 = [p.derivative_x() for p in germ.psis]
        bm = [[p.super_derivative(k) for k in range(n)] for p in germ.psis]
        a2_new = e * e * germ.apply_jet(self.a2)
        ab_new = [zero] * n
        bb_new = {}

        def bb_add(i, j, term):
            if i == j:
                return
            if i > j:
                i, j, term = j, i, -term
            cur = bb_new.get((i, j))
            bb_new[(i, j)] = term if cur is None else cur + term

        for i, r in enumerate(self.ab):
            rc = germ.apply_jet(r)
            a2_new = a2_new + e * b0[i] * rc
            for k in range(n):
                ab_new[k] = ab_new[k] + e * bm[i][k] * rc
        for (i, j), s in self.bb.items():
            sc = germ.apply_jet(s)
            a2_new = a2_new + b0[i] * b0[j] * sc
            for k in range(n):
                ab_new[k] = ab_new[k] + (b0[j] * bm[i][k]
                                         - b0[i] * bm[j][k]) * sc
            for k in range(n):
                for l in range(k + 1, n):
                    bb_add(k, l, (bm[i][k] * bm[j][l]
                                  - bm[j][k] * bm[i][l]) * sc)
        return QuadDiffValue(a2_new, ab_new, bb_new)

    def pair_D(self, i: int) -> OneFormValue:
        """Contraction with D_i in the first slot: alpha^2 pairs to zero,
        alpha.beta^i to alpha/2, beta^i beta^j to (beta^j)/2."""
        half = Fraction(1, 2)
        zero = SuperJet.constant(self.a2.alg, self.a2.n_odd, self.a2.base_x, 0,
                                 self.a2.order)
        gs = [zero] * self.n_odd
        for (k, l), c in self.bb.items():
            if i == k:
                gs[l] = gs[l] + half * c
            elif i == l:
                gs[k] = gs[k] - half * c
        return OneFormValue(half * self.ab[i], gs)

    def _check(self, other):
        if not isinstance(other, QuadDiffValue) or other.n_odd != self.n_odd:
            raise CocycleError("quadratic component counts do not match")

    def __add__(self, other):
        self._check(other)
        bb = dict(self.bb)
        for key, c in other.bb.items():
            bb[key] = bb[key] + c if key in bb else c
        return QuadDiffValue(self.a2 + other.a2,
                             [a + b for a, b in zip(self.ab, other.ab)], bb)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return QuadDiffValue(-self.a2, [-c for c in self.ab],
                             {k: -c for k, c in self.bb.items()})

    def __rmul__(self, scalar):
        return QuadDiffValue(scalar * self.a2, [scalar * c for c in self.ab],
                             {k: scalar * c for k, c in self.bb.items()})

    def is_zero(self, tol=None) -> bool:
        if tol is None:
            tol = _tol(self.a2.alg)
        return all(c.is_zero(tol) for c in self.components())

    def matches(self, other: "QuadDiffValue", tol=None) -> bool:
        if not isinstance(other, QuadDiffValue) or other.n_odd != self.n_odd:
            return False
        if not (jets_agree(self.a2, other.a2, tol)
                and all(jets_agree(a, b, tol)
                        for a, b in zip(self.ab, other.ab))):
            return False
        for key in set(self.bb) | set(other.bb):
            i, j = key
            if not jets_agree(self.bb_component(i, j),
                              other.bb_component(i, j), tol):
                return False
        return True

    def __repr__(self):
        return f"QuadDiffValue({self.a2!r}, {list(self.ab)!r}, {self.bb!r})"


# -- frame products used by the structural identities ---------------------------


def alpha_times(omega: OneFormValue) -> QuadDiffValue:
    """alpha . omega in the graded-symmetric algebra."""
    return QuadDiffValue(omega.f, omega.gs, {})


def beta_times(i: int, omega: OneFormValue) -> QuadDiffValue:
    """beta^i . omega; the product of two odd basis forms lands in the
    antisymmetric components."""
    zero = SuperJet.constant(omega.f.alg, omega.f.n_odd, omega.f.base_x, 0)
    ab = [zero] * omega.n_odd
    ab[i] = omega.f
    bb = {}
    for j, g in enumerate(omega.gs):
        if j == i:
            continue
        if i < j:
            bb[(i, j)] = bb[(i, j)] + g if (i, j) in bb else g
        else:
            bb[(j, i)] = bb[(j, i)] - g if (j, i) in bb else -g
    return QuadDiffValue(zero, ab, bb)


# -- projections and sections between the weight ladder and forms ---------------


def project_oneform(omega: OneFormValue) -> DensityValue:
    """Contract a 1-form with D (one odd coordinate): picks out the beta
    component as a weight-1/2 coefficient."""
    if omega.n_odd != 1:
        raise CocycleError("the 1-form projection needs exactly one beta")
    return DensityValue(Fraction(1, 2), omega.gs[0])


def project_quad(q: QuadDiffValue) -> DensityValue:
    """Contract a quadratic differential with D: half the mixed component,
    as a weight-3/2 coefficient."""
    if q.n_odd != 1:
        raise CocycleError("the quadratic projection needs exactly one beta")
    return DensityValue(Fraction(3, 2), Fraction(1, 2) * q.ab[0])


def section_oneform(dens: DensityValue) -> OneFormValue:
    """Lift a weight-1/2 coefficient g to the 1-form alpha.Dg + beta.g."""
    if dens.weight != Fraction(1, 2):
        raise CocycleError("the 1-form section starts from weight 1/2")
    g = dens.coeff
    if g.n_odd != 1:
        raise CocycleError("the 1-form section needs exactly one beta")
    return OneFormValue(g.super_derivative(0), (g,))


def section_quad(dens: DensityValue) -> QuadDiffValue:
    """Lift a weight-3/2 coefficient g to alpha^2.Dg + 3 alpha.beta.g."""
    if dens.weight != Fraction(3, 2):
        raise CocycleError("the quadratic section starts from weight 3/2")
    g = dens.coeff
    if g.n_odd != 1:
        raise CocycleError("the quadratic section needs exactly one beta")
    return QuadDiffValue(g.super_derivative(0), (3 * g,), {})


def project_beta_pair(q: QuadDiffValue) -> DensityValue:
    """Two odd coordinates: read off the beta^1 beta^2 component as a
    weight-1 coefficient.  Under pullback this commutes with the quadratic
    pullback only up to the sign det(D_k psi^i)/E, which is +-1 on a
    connected germ."""
    if q.n_odd != 2:
        raise CocycleError("the pair projection needs exactly two betas")
    return DensityValue(1, q.bb_component(0, 1))


# -- the cocycles ----------------------------------------------------------------


def cocycle_E(germ: MapGerm) -> DensityValue:
    """log of the multiplier; zero exactly on unit-multiplier germs.
    Rational mode needs a body-one multiplier for the log."""
    _certify(germ)
    germ = _finite(germ)
    return DensityValue(0, germ.multiplier().log())


def cocycle_A(germ: MapGerm) -> OneFormValue:
    """d log E on the frame: components (E'/E, D_1 E/E, ...).  No log is
    taken, so this works in rational mode for any invertible multiplier."""
    _certify(germ)
    germ = _finite(germ)
    e = germ.multiplier()
    ei = e.reciprocal()
    return OneFormValue(e.derivative_x() * ei,
                        [e.super_derivative(i) * ei
                         for i in range(germ.n_odd)])


def cocycle_A_proj(germ: MapGerm) -> DensityValue:
    """Weight-1/2 shadow of the affine cocycle (one odd coordinate):
    DE/E."""
    _certify(germ)
    if germ.n_odd != 1:
        raise CocycleError("the projected affine cocycle needs one beta")
    germ = _finite(germ)
    e = germ.multiplier()
    return DensityValue(Fraction(1, 2),
                        e.super_derivative(0) * e.reciprocal())


def schwarzian_S0(f) -> DensityValue:
    """Classical Schwarzian f'''/f' - (3/2)(f''/f')^2 of a purely even
    germ, as the coefficient of dx^2 (weight 2)."""
    if isinstance(f, MapGerm):
        f = f.phi
    if f.n_odd != 0:
        raise CocycleError("the classical Schwarzian takes an even-only germ")
    if f.order == ORDER_INF:
        f = f.truncate(DEFAULT_ORDER)
    f1 = f.derivative_x()
    f2 = f1.derivative_x()
    f3 = f2.derivative_x()
    r = f1.reciprocal()
    val = f3 * r - Fraction(3, 2) * (f2 * r) ** 2
    return DensityValue(2, val)


def schwarzian_S1(germ: MapGerm) -> DensityValue:
    """Weight-3/2 Schwarzian of a one-odd-coordinate contact germ.

    Three routes are evaluated and must agree: in terms of the multiplier,

        (1/4)(D^3 E / E - (3/2) DE.D^2 E / E^2),

    in terms of the odd component psi,

        (1/2)(D^4 psi / D psi - 2 D^2 psi . D^3 psi / (D psi)^2),

    and through the square root of the multiplier,

        -(1/2) E^(1/2) D^3(E^(-1/2)).

    Disagreement beyond the backend tolerance raises CocycleError.
    """
    _certify(germ)
    if germ.n_odd != 1:
        raise CocycleError("this Schwarzian needs exactly one odd coordinate")
    germ = _finite(germ)
    e = germ.multiplier()
    ei = e.reciprocal()
    d1 = e.super_derivative(0)
    d2 = d1.super_derivative(0)
    d3 = d2.super_derivative(0)
    s = Fraction(1, 4) * (d3 * ei - Fraction(3, 2) * (d1 * d2) * (ei * ei))

    psi = germ.psis[0]
    p1 = psi.super_derivative(0)
    p2 = p1.super_derivative(0)
    p3 = p2.super_derivative(0)
    p4 = p3.super_derivative(0)
    s_psi = Fraction(1, 2) * (p4 * p1.reciprocal()
                              - 2 * (p2 * p3) * (p1 * p1).reciprocal())
    if not jets_agree(s, s_psi):
        raise CocycleError("Schwarzian cross-check failed: multiplier form "
                           "vs odd-component form")

    root = e.sqrt()
    h = root.reciprocal()
    h3 = h.super_derivative(0).super_derivative(0).super_derivative(0)
    s_root = Fraction(-1, 2) * (root * h3)
    if not jets_agree(s, s_root):
        raise CocycleError("Schwarzian cross-check failed: multiplier form "
                           "vs square-root form")
    return DensityValue(Fraction(3, 2), s)


def _quad1_direct(germ: MapGerm) -> QuadDiffValue:
    """Quadratic Schwarzian coefficients straight from the component
    expansion of the map, bypassing the weight-3/2 value."""
    e = germ.multiplier()
    ei = e.reciprocal()
    psi = germ.psis[0]
    e1 = e.derivative_x()
    e2 = e1.derivative_x()
    p1 = psi.derivative_x()
    p2 = p1.derivative_x()
    a2 = (Fraction(1, 6) * e2 * ei - Fraction(1, 4) * (e1 * ei) ** 2
          + Fraction(1, 3) * (p1 * p2) * ei)
    ab = (Fraction(1, 2) * e1.super_derivative(0) * ei
          - Fraction(3, 4) * (e1 * e.super_derivative(0)) * (ei * ei))
    return QuadDiffValue(a2, (ab,), {})


def quad_S1(germ: MapGerm) -> QuadDiffValue:
    """Quadratic-differential Schwarzian for one odd coordinate:
    (1/6) alpha^2 . D(4S) + (1/2) alpha.beta . 4S, where S is the
    weight-3/2 value.  Checked against the direct component expansion."""
    germ = _finite(germ)
    s = schwarzian_S1(germ).coeff
    st = 4 * s
    q = QuadDiffValue(Fraction(1, 6) * st.super_derivative(0),
                      (Fraction(1, 2) * st,), {})
    if not q.matches(_quad1_direct(germ)):
        raise CocycleError("quadratic Schwarzian disagrees with the direct "
                           "component expansion")
    return q


def schwarzian_S2(germ: MapGerm) -> DensityValue:
    """Weight-1 Schwarzian of a two-odd-coordinate contact germ:

        D_2 D_1 E / E - (3/2) D_2 E . D_1 E / E^2,

    cross-checked against -2 E^(1/2) D_2 D_1 (E^(-1/2)) whenever the root
    is representable in the active backend.

    Antisymmetric in the two odd directions, so the cocycle law holds on
    germs whose odd frame part is a proper rotation; composing with a
    reflection on the inside flips the sign.  quad_S2 composes through
    reflections as well."""
    _certify(germ)
    if germ.n_odd != 2:
        raise CocycleError("this Schwarzian needs exactly two odd coordinates")
    germ = _finite(germ)
    e = germ.multiplier()
    ei = e.reciprocal()
    d1 = e.super_derivative(0)
    d2 = e.super_derivative(1)
    d21 = d1.super_derivative(1)
    s12 = d21 * ei - Fraction(3, 2) * (d2 * d1) * (ei * ei)
    try:
        root = e.sqrt()
    except NotRepresentable:
        root = None
    if root is not None:
        h = root.reciprocal()
        h21 = h.super_derivative(0).super_derivative(1)
        s_root = -2 * (root * h21)
        if not jets_agree(s12, s_root):
            raise CocycleError("Schwarzian cross-check failed: multiplier "
                               "form vs square-root form")
    return DensityValue(1, s12)


def _quad2_direct(germ: MapGerm) -> QuadDiffValue:
    """Quadratic Schwarzian coefficients from the component expansion for
    two odd coordinates; independent of the weight-1 value."""
    e = germ.multiplier()
    ei = e.reciprocal()
    ei2 = ei * ei
    e1 = e.derivative_x()
    e2 = e1.derivative_x()
    psis = germ.psis
    pp = SuperJet.constant(germ.alg, germ.n_odd, germ.base_x, 0)
    for p in psis:
        pp = pp + p.derivative_x() * p.derivative_x().derivative_x()
    a2 = (Fraction(1, 6) * e2 * ei - Fraction(1, 4) * (e1 * ei) ** 2
          + Fraction(1, 3) * pp * ei)
    ab = []
    for i in range(2):
        dotted = SuperJet.constant(germ.alg, germ.n_odd, germ.base_x, 0)
        for p in psis:
            dotted = dotted + p.derivative_x() * p.derivative_x().super_derivative(i)
        ab.append(Fraction(1, 2) * e1.super_derivative(i) * ei
                  - dotted * ei
                  - Fraction(1, 2) * (e1 * e.super_derivative(i)) * ei2)
    c12 = germ.phi.derivative_x().super_derivative(0).super_derivative(1)
    for p in psis:
        c12 = c12 + p * p.derivative_x().super_derivative(0).super_derivative(1)
    d1 = e.super_derivative(0)
    d2 = e.super_derivative(1)
    bb = (d1.super_derivative(1) * ei - 2 * c12 * ei
          - Fraction(1, 2) * (d2 * d1) * ei2)
    return QuadDiffValue(a2, ab, {(0, 1): bb})


def quad_S2(germ: MapGerm) -> QuadDiffValue:
    """Quadratic-differential Schwarzian for two odd coordinates.  With
    S12 the weight-1 value, the components are

        alpha^2:        (1/6)(D_1 D_2 S12 + (1/2) S12^2)
        alpha.beta^1:   (1/2) D_2 S12
        alpha.beta^2:  -(1/2) D_1 S12
        beta^1 beta^2:  S12

    and they must match the direct component expansion of the map."""
    germ = _finite(germ)
    s12 = schwarzian_S2(germ).coeff
    a2 = Fraction(1, 6) * (s12.super_derivative(1).super_derivative(0)
                           + Fraction(1, 2) * (s12 * s12))
    ab = (Fraction(1, 2) * s12.super_derivative(1),
          Fraction(-1, 2) * s12.super_derivative(0))
    q = QuadDiffValue(a2, ab, {(0, 1): s12})
    if not q.matches(_quad2_direct(germ)):
        raise CocycleError("quadratic Schwarzian disagrees with the direct "
                           "component expansion")
    return q


# -- pullback, law, and structural checks ---------------------------------------


def density_pullback(dens: DensityValue, germ: MapGerm) -> DensityValue:
    """E^weight . (f o germ); the functional form of DensityValue.pullback."""
    return dens.pullback(germ)


_COCYCLES = {
    "E": (cocycle_E, None),
    "A": (cocycle_A, None),
    "A-proj": (cocycle_A_proj, 1),
    "S0": (schwarzian_S0, 0),
    "S1": (schwarzian_S1, 1),
    "S1-quad": (quad_S1, 1),
    "S2": (schwarzian_S2, 2),
    "S2-quad": (quad_S2, 2),
}


def cocycle_law_check(tag: str, outer: MapGerm, inner: MapGerm):
    """Residual of C(outer o inner) - inner-pullback of C(outer) - C(inner).

    ``inner`` must land at outer's base point.  For the tag "E" the residual
    is the multiplicative one, E_(outer o inner) - (E_outer o inner).E_inner,
    which is the exponentiated form of the additive law and avoids the
    rational-mode restriction on log.  All other tags return a value of the
    cocycle's own type with the law subtracted componentwise.
    """
    if tag not in _COCYCLES:
        raise CocycleError(f"unknown cocycle tag {tag!r}")
    op, n_req = _COCYCLES[tag]
    if n_req is not None and outer.n_odd != n_req:
        raise CocycleError(f"cocycle {tag!r} needs {n_req} odd coordinates")
    composed = outer.compose(inner)
    if tag == "E":
        res = (composed.multiplier()
               - inner.apply_jet(outer.multiplier()) * inner.multiplier())
        return DensityValue(0, res)
    lhs = op(composed)
    rhs = op(outer).pullback(inner) + op(inner)
    return lhs - rhs


def schwarzian_from_affine_check(germ: MapGerm) -> DensityValue:
    """Residual of the identity expressing the weight-3/2 Schwarzian through
    the affine cocycle A (one odd coordinate):

        S = (1/4) <D, alpha.L_x A + beta.L_D A - (1/2) A^2>

    where the bracket is the quadratic projection.  Expected zero."""
    if germ.n_odd != 1:
        raise CocycleError("the affine-to-Schwarzian identity needs one beta")
    a = cocycle_A(germ)
    w = (alpha_times(a.lie_x()) + beta_times(0, a.lie_D(0))
         + Fraction(-1, 2) * a.square())
    rhs = Fraction(1, 4) * project_quad(w)
    return schwarzian_S1(germ) - rhs


def lie_cocycle(f: SuperJet, i: int) -> DensityValue:
    """Infinitesimal cocycle on a contact Hamiltonian f (one odd
    coordinate): D^(i+2) f as a weight-i/2 coefficient, for i in 0, 1, 3."""
    if i not in (0, 1, 3):
        raise CocycleError("the weight index must be 0, 1, or 3")
    if f.n_odd != 1:
        raise CocycleError("contact Hamiltonians carry one odd coordinate")
    g = f
    for _ in range(i + 2):
        g = g.super_derivative(0)
    return DensityValue(Fraction(i, 2), g)


# -- reduction to the underlying circle ------------------------------------------


def reduce_jet(jet: SuperJet) -> SuperJet:
    """Kill the odd coordinates and the soul of every coefficient, leaving
    an ordinary function jet (no odd coordinates)."""
    out = {}
    for (mask, power), c in jet.terms.items():
        if mask:
            continue
        b = c.body
        if b:
            out[(0, power)] = jet.alg.scalar(b)
    return SuperJet(jet.alg, 0, jet.base_x, jet.order, out)


def reduce_germ(germ: MapGerm) -> MapGerm:
    """The even-only germ underneath a contact germ."""
    return MapGerm(reduce_jet(germ.phi), [])


def reduce_to_circle(value):
    """Push a cocycle value down to the circle: alpha becomes dx, every
    beta^i dies, coefficients lose their odd and soul parts.

    One-forms reduce to their dx coefficient (returned as an even-only
    OneFormValue), quadratic differentials to their dx^2 coefficient.  For
    the quadratic Schwarzian the reduced dx^2 coefficient is one sixth of
    the classical Schwarzian, matching the cross-ratio expansion
    normalization; the dedicated tests carry that factor."""
    if isinstance(value, DensityValue):
        return DensityValue(value.weight, reduce_jet(value.coeff))
    if isinstance(value, OneFormValue):
        return OneFormValue(reduce_jet(value.f), ())
    if isinstance(value, QuadDiffValue):
        return QuadDiffValue(reduce_jet(value.a2), (), {})
    raise CocycleError("not a cocycle value")
