"""Points and map germs on the supercircle, and the contact condition.

A point is (x, xi_1..xi_N) with x even and the xi odd.  A map germ collects
N+1 jets around a common base: one even component phi and N odd components
psi^i.  The germ is a contactomorphism when

    D_i phi = psi . D_i psi        (i = 1..N)

with D_i the super derivative and  psi . D_i psi = sum_k psi^k D_i(psi^k).
Every contact germ carries a multiplier E = phi' + psi . psi', the factor by
which it scales the contact form.
"""

from __future__ import annotations

from fractions import Fraction

from .grassmann import (
    EVEN,
    ODD,
    GrassmannAlgebra,
    GrassmannNumber,
    ParityError,
)
from .superjet import ORDER_INF, JetError, SuperJet, substitute


class SuperPoint:
    """A point of the (1|N)-dimensional supercircle with Grassmann entries."""

    __slots__ = ("alg", "x", "xi")

    def __init__(self, alg: GrassmannAlgebra, x, xi=()):
        if not isinstance(x, GrassmannNumber):
            x = alg.scalar(x)
        if x.alg != alg:
            raise JetError("point coordinate from a different algebra")
        if x.parity() != EVEN:
            raise ParityError("even coordinate of a point must be even")
        clean = []
        for v in xi:
            if not isinstance(v, GrassmannNumber):
                raise ParityError("odd coordinates must be Grassmann numbers")
            if v.alg != alg:
                raise JetError("point coordinate from a different algebra")
            if v.terms and v.parity() != ODD:
                raise ParityError("odd coordinate of a point must be odd")
            clean.append(v)
        self.alg = alg
        self.x = x
        self.xi = tuple(clean)

    @property
    def n_odd(self) -> int:
        return len(self.xi)

    def __eq__(self, other):
        if not isinstance(other, SuperPoint):
            return NotImplemented
        return self.alg == other.alg and self.x == other.x and self.xi == other.xi

    __hash__ = None

    def __repr__(self):
        return f"SuperPoint(x={self.x!r}, xi={list(self.xi)!r})"


class MapGerm:
    """Germ of a map of the supercircle around a base point."""

    __slots__ = ("alg", "n_odd", "base_x", "phi", "psis")

    def __init__(self, phi: SuperJet, psis):
        psis = tuple(psis)
        if len(psis) != phi.n_odd:
            raise JetError("component count must match the odd dimension")
        for p in psis:
            phi._check(p)
        if phi.parity() not in (EVEN,):
            raise ParityError("even component must be an even jet")
        for p in psis:
            if p.terms and p.parity() != ODD:
                raise ParityError("odd components must be odd jets")
        self.alg = phi.alg
        self.n_odd = phi.n_odd
        self.base_x = phi.base_x
        self.phi = phi
        self.psis = psis

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, alg: GrassmannAlgebra, n_odd: int, base_x) -> "MapGerm":
        phi = SuperJet.coordinate(alg, n_odd, base_x)
        psis = [SuperJet.odd_coordinate(alg, n_odd, base_x, i) for i in range(n_odd)]
        return cls(phi, psis)

    @classmethod
    def odd_involution(cls, alg: GrassmannAlgebra, n_odd: int, base_x) -> "MapGerm":
        """(x, xi) -> (x, -xi); contact with multiplier one."""
        phi = SuperJet.coordinate(alg, n_odd, base_x)
        psis = [-SuperJet.odd_coordinate(alg, n_odd, base_x, i)
                for i in range(n_odd)]
        return cls(phi, psis)

    # -- structure ----------------------------------------------------------

    @property
    def order(self) -> int:
        return min([self.phi.order] + [p.order for p in self.psis])

    def image_base(self):
        """Body of the image of the base point."""
        return self.phi.coefficient(0, 0).body

    def truncate(self, order: int) -> "MapGerm":
        return MapGerm(self.phi.truncate(order),
                       [p.truncate(order) for p in self.psis])

    def with_algebra(self, alg: GrassmannAlgebra) -> "MapGerm":
        return MapGerm(self.phi.with_algebra(alg),
                       [p.with_algebra(alg) for p in self.psis])

    def apply_jet(self, f: SuperJet) -> SuperJet:
        """Pullback f o Phi of a function jet centred at the image base."""
        return substitute(f, self.phi, self.psis)

    def apply_point(self, p: SuperPoint) -> SuperPoint:
        x = self.phi.evaluate(p.x, p.xi)
        xi = [q.evaluate(p.x, p.xi) for q in self.psis]
        return SuperPoint(self.alg, x, xi)

    def compose(self, inner: "MapGerm") -> "MapGerm":
        """self o inner, a germ at inner's base point."""
        if self.alg != inner.alg or self.n_odd != inner.n_odd:
            raise JetError("germs live over different contexts")
        phi = substitute(self.phi, inner.phi, inner.psis)
        psis = [substitute(p, inner.phi, inner.psis) for p in self.psis]
        return MapGerm(phi, psis)

    def __eq__(self, other):
        if not isinstance(other, MapGerm):
            return NotImplemented
        return self.phi == other.phi and self.psis == other.psis

    __hash__ = None

    def __repr__(self):
        return (f"MapGerm(n_odd={self.n_odd}, base={self.base_x}, "
                f"order={'inf' if self.order == ORDER_INF else self.order})")

    # -- contact geometry -----------------------------------------------------

    def contact_residuals(self):
        """D_i phi - psi . D_i psi for each i; all zero iff contact."""
        out = []
        for i in range(self.n_odd):
            r = self.phi.super_derivative(i)
            for k in range(self.n_odd):
                r = r - self.psis[k] * self.psis[k].super_derivative(i)
            out.append(r)
        return out

    def is_contact(self, tol=0) -> bool:
        return all(r.is_zero(tol) for r in self.contact_residuals())

    def multiplier(self) -> SuperJet:
        """E = phi' + psi . psi', the contact-form scaling factor."""
        e = self.phi.derivative_x()
        for k in range(self.n_odd):
            e = e + self.psis[k] * self.psis[k].derivative_x()
        return e

    def multiplier_root(self, order=None) -> SuperJet:
        """The square root of the multiplier carried by the germ.

        For one odd coordinate this is D psi itself ((D psi)^2 = E is the
        contact identity), whose sign at the base separates the two
        components of the contact group; half-integer density actions must
        use this root, not the positive branch.  Otherwise the positive
        sqrt(E), exact in the rational backend when body(E) is a square.
        """
        if self.n_odd == 1:
            root = self.psis[0].super_derivative(0)
            return root if order is None else root.truncate(order)
        e = self.multiplier()
        if order is not None or e.order != ORDER_INF:
            return e.sqrt(order=order)
        # an exact multiplier that is a perfect square (the case for all the
        # built-in families) has a polynomial root; find it and certify
        root = e.sqrt(order=e_max_power(e) + 1)
        root = SuperJet(root.alg, root.n_odd, root.base_x, ORDER_INF, root.terms)
        if root * root == e:
            return root
        raise JetError("exact multiplier is not a perfect square; pass an order")


def e_max_power(jet: SuperJet) -> int:
    return max((k[1] for k in jet.terms), default=0)


def contact_from_components(psi0: SuperJet, psi1: SuperJet, constant) -> MapGerm:
    """Contact germ of the (1|1) supercircle from free odd data.

    Writing psi = psi1(x) + xi . psi0(x) with psi0 even-valued and psi1
    odd-valued, the contact condition determines the even component up to
    one constant of integration:

        phi1 = psi0 . psi1,     phi0' = psi0^2 - psi1 . psi1'.
    """
    if psi0.n_odd != 1 or psi1.n_odd != 1:
        raise JetError("free-data construction is specific to one odd dimension")
    psi0._check(psi1)
    if any(mask for (mask, _) in psi0.terms) or any(mask for (mask, _) in psi1.terms):
        raise JetError("free data must not depend on xi")
    if not psi0.is_even() or not (psi1.is_odd() or psi1.is_zero()):
        raise ParityError("free data needs even psi0 and odd psi1")
    alg, base = psi0.alg, psi0.base_x
    xi = SuperJet.odd_coordinate(alg, 1, base, 0)
    phi0 = (psi0 * psi0 - psi1 * psi1.derivative_x()).antiderivative_x(constant)
    phi = phi0 + xi * (psi0 * psi1)
    psi = psi1 + xi * psi0
    return MapGerm(phi, [psi])


def lift_diffeomorphism(alg: GrassmannAlgebra, n_odd: int, base_x,
                        sqrt_gprime: SuperJet, g_constant,
                        rotation=None) -> MapGerm:
    """Contact lift (x, xi) -> (g(x), sqrt(g'(x)) R xi) of a circle map.

    The lift is built from p = sqrt(g'), handed in directly so that the
    square root is exact: g is recovered as the antiderivative of p^2.
    ``rotation`` is an orthogonal N x N matrix of backend scalars.
    """
    if sqrt_gprime.n_odd != n_odd:
        raise JetError("sqrt(g') jet has the wrong odd dimension")
    if any(mask for (mask, _) in sqrt_gprime.terms):
        raise JetError("sqrt(g') must not depend on xi")
    if rotation is None:
        rotation = [[alg.coerce(1 if i == j else 0) for j in range(n_odd)]
                    for i in range(n_odd)]
    g = (sqrt_gprime * sqrt_gprime).antiderivative_x(g_constant)
    psis = []
    for k in range(n_odd):
        acc = SuperJet.constant(alg, n_odd, base_x, 0)
        for j in range(n_odd):
            r = alg.coerce(rotation[k][j])
            if r == 0:
                continue
            acc = acc + SuperJet.odd_coordinate(alg, n_odd, base_x, j) * r
        psis.append(acc * sqrt_gprime)
    return MapGerm(g, psis)


def nilpotent_flow(alg: GrassmannAlgebra, n_odd: int, base_x,
                   poly_coeffs, mu: GrassmannNumber) -> MapGerm:
    """Exactly-contact flow Id + mu (p d/dx + p'/2 sum xi_k d/dxi_k).

    ``mu`` must be even with mu^2 = 0 (a product of two fresh generators is
    the canonical choice); then the time-mu flow of the contact field of the
    Hamiltonian p truncates after the linear term and stays exactly contact.
    """
    if mu.parity() != EVEN or not (mu * mu).is_zero():
        raise ParityError("flow parameter must be even with square zero")
    p = SuperJet.from_polynomial(alg, n_odd, base_x, poly_coeffs)
    half_dp = p.derivative_x() * Fraction(1, 2)
    mu_jet = SuperJet.constant(alg, n_odd, base_x, mu)
    phi = SuperJet.coordinate(alg, n_odd, base_x) + mu_jet * p
    psis = []
    for k in range(n_odd):
        xi_k = SuperJet.odd_coordinate(alg, n_odd, base_x, k)
        psis.append(xi_k + mu_jet * half_dp * xi_k)
    return MapGerm(phi, psis)
