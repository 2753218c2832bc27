"""The orthosymplectic group SpO(2|N) and its fractional-linear action.

Elements are (2+N) x (2+N) grids of Grassmann numbers in the block layout

    [ a  b  gamma ]        a,b,c,d even scalars,
    [ c  d  delta ]        gamma, delta odd rows, alpha, beta odd columns,
    [ al be   e   ]        e an even N x N block,

subject to the four defining relations checked by relation_residuals().
The group acts on the supercircle by

    x  ->  (a x + b + gamma.xi) / (c x + d + delta.xi)
    xi ->  (alpha x + beta + e xi) / (c x + d + delta.xi)

and action germs of these maps are contactomorphisms wherever the
denominator has an invertible body.
"""

from __future__ import annotations

from fractions import Fraction

from .contactmap import MapGerm
from .grassmann import (
    EVEN,
    ODD,
    AlgebraError,
    GrassmannAlgebra,
    GrassmannNumber,
    NotInvertible,
    ParityError,
)
from .superjet import DEFAULT_ORDER, SuperJet


class GroupError(AlgebraError):
    """Structural misuse of group elements."""


def _coerce_entry(alg: GrassmannAlgebra, v) -> GrassmannNumber:
    if isinstance(v, GrassmannNumber):
        if v.alg != alg:
            raise GroupError("matrix entry from a different algebra")
        return v
    return alg.scalar(v)


class OspMatrix:
    __slots__ = ("alg", "n_odd", "mat")

    def __init__(self, alg: GrassmannAlgebra, n_odd: int, mat):
        size = 2 + n_odd
        if len(mat) != size or any(len(row) != size for row in mat):
            raise GroupError(f"matrix must be {size} x {size}")
        grid = [[_coerce_entry(alg, v) for v in row] for row in mat]
        for i in range(size):
            for j in range(size):
                odd_slot = (i < 2) != (j < 2)
                ent = grid[i][j]
                if not ent.terms:
                    continue
                if odd_slot and ent.parity() != ODD:
                    raise ParityError(f"entry ({i},{j}) must be odd")
                if not odd_slot and ent.parity() != EVEN:
                    raise ParityError(f"entry ({i},{j}) must be even")
        self.alg = alg
        self.n_odd = n_odd
        self.mat = grid

    # -- block accessors ---------------------------------------------------

    @property
    def a(self):
        return self.mat[0][0]

    @property
    def b(self):
        return self.mat[0][1]

    @property
    def c(self):
        return self.mat[1][0]

    @property
    def d(self):
        return self.mat[1][1]

    @property
    def gamma(self):
        return tuple(self.mat[0][2 + k] for k in range(self.n_odd))

    @property
    def delta(self):
        return tuple(self.mat[1][2 + k] for k in range(self.n_odd))

    @property
    def alpha(self):
        return tuple(self.mat[2 + k][0] for k in range(self.n_odd))

    @property
    def beta(self):
        return tuple(self.mat[2 + k][1] for k in range(self.n_odd))

    @property
    def e_block(self):
        return tuple(
            tuple(self.mat[2 + i][2 + j] for j in range(self.n_odd))
            for i in range(self.n_odd)
        )

    # -- group structure ---------------------------------------------------

    @classmethod
    def identity(cls, alg: GrassmannAlgebra, n_odd: int) -> "OspMatrix":
        size = 2 + n_odd
        return cls(alg, n_odd,
                   [[1 if i == j else 0 for j in range(size)] for i in range(size)])

    def __matmul__(self, other: "OspMatrix") -> "OspMatrix":
        if not isinstance(other, OspMatrix):
            return NotImplemented
        if self.alg != other.alg or self.n_odd != other.n_odd:
            raise GroupError("matrices live over different contexts")
        size = 2 + self.n_odd
        zero = self.alg.zero()
        out = []
        for i in range(size):
            row = []
            for j in range(size):
                s = zero
                for k in range(size):
                    s = s + self.mat[i][k] * other.mat[k][j]
                row.append(s)
            out.append(row)
        return OspMatrix(self.alg, self.n_odd, out)

    def __neg__(self) -> "OspMatrix":
        return OspMatrix(self.alg, self.n_odd,
                         [[-v for v in row] for row in self.mat])

    def __eq__(self, other):
        if not isinstance(other, OspMatrix):
            return NotImplemented
        return (self.alg == other.alg and self.n_odd == other.n_odd
                and self.mat == other.mat)

    __hash__ = None

    def __repr__(self):
        return f"OspMatrix(n_odd={self.n_odd})"

    # -- defining relations ---------------------------------------------------

    def relation_residuals(self):
        """All defining relations as a flat list of Grassmann residuals."""
        alg, n = self.alg, self.n_odd
        out = []
        sym = self.a * self.d - self.b * self.c - alg.one()
        for k in range(n):
            sym = sym - self.alpha[k] * self.beta[k]
        out.append(sym)
        e = self.e_block
        for i in range(n):
            for j in range(i, n):
                s = alg.zero()
                for k in range(n):
                    s = s + e[k][i] * e[k][j]
                s = s + self.gamma[i] * self.delta[j] + self.gamma[j] * self.delta[i]
                if i == j:
                    s = s - alg.one()
                out.append(s)
        for j in range(n):
            s1 = -self.a * self.delta[j] + self.c * self.gamma[j]
            s2 = -self.b * self.delta[j] + self.d * self.gamma[j]
            for k in range(n):
                s1 = s1 + self.alpha[k] * e[k][j]
                s2 = s2 + self.beta[k] * e[k][j]
            out.append(s1)
            out.append(s2)
        return out

    def is_orthosymplectic(self, tol=0) -> bool:
        return all(r.is_zero(tol) for r in self.relation_residuals())

    def berezinian(self) -> GrassmannNumber:
        """Berezinian, implemented for one odd dimension only."""
        if self.n_odd != 1:
            raise GroupError("berezinian exposed only for one odd dimension")
        e = self.e_block[0][0]
        if e.body == 0:
            raise NotInvertible("odd-odd block must be invertible")
        return e + self.alpha[0] * self.beta[0] * e.inverse()

    # -- the action -------------------------------------------------------------

    def has_pole_at(self, base_x) -> bool:
        base = self.alg.coerce(base_x)
        return self.c.body * base + self.d.body == 0

    def action_germ(self, base_x, order: int = DEFAULT_ORDER) -> MapGerm:
        """Germ of the fractional-linear action around base_x."""
        alg, n = self.alg, self.n_odd
        if self.has_pole_at(base_x):
            raise NotInvertible("action has a pole at the requested base point")
        x = SuperJet.coordinate(alg, n, base_x)
        xis = [SuperJet.odd_coordinate(alg, n, base_x, i) for i in range(n)]

        def const(g):
            return SuperJet.constant(alg, n, base_x, g)

        den = x * const(self.c) + const(self.d)
        num = x * const(self.a) + const(self.b)
        for k in range(n):
            den = den + const(self.delta[k]) * xis[k]
            num = num + const(self.gamma[k]) * xis[k]
        rec = den.reciprocal(order=order)
        phi = num * rec
        psis = []
        e = self.e_block
        for i in range(n):
            o = x * const(self.alpha[i]) + const(self.beta[i])
            for j in range(n):
                o = o + const(e[i][j]) * xis[j]
            psis.append(o * rec)
        return MapGerm(phi, psis)

    def apply_point(self, p) -> "object":
        """Pointwise action; avoids jets entirely."""
        from .contactmap import SuperPoint

        alg, n = self.alg, self.n_odd
        den = self.c * p.x + self.d
        for k in range(n):
            den = den + self.delta[k] * p.xi[k]
        rec = den.inverse()
        num = self.a * p.x + self.b
        for k in range(n):
            num = num + self.gamma[k] * p.xi[k]
        e = self.e_block
        xi = []
        for i in range(n):
            o = self.alpha[i] * p.x + self.beta[i]
            for j in range(n):
                o = o + e[i][j] * p.xi[j]
            xi.append(o * rec)
        return SuperPoint(alg, num * rec, xi)


# -- generators ------------------------------------------------------------------


def translation(alg: GrassmannAlgebra, n_odd: int, b, beta=()) -> OspMatrix:
    """(x, xi) -> (x + b - beta.xi, beta + xi)."""
    beta = list(beta) + [alg.zero()] * (n_odd - len(beta))
    size = 2 + n_odd
    m = [[alg.zero() for _ in range(size)] for _ in range(size)]
    m[0][0] = alg.one()
    m[0][1] = _coerce_entry(alg, b)
    m[1][1] = alg.one()
    for k in range(n_odd):
        bk = _coerce_entry(alg, beta[k])
        m[0][2 + k] = -bk
        m[2 + k][1] = bk
        m[2 + k][2 + k] = alg.one()
    return OspMatrix(alg, n_odd, m)


def dilation(alg: GrassmannAlgebra, n_odd: int, a) -> OspMatrix:
    """(x, xi) -> (a^2 x, a xi)."""
    av = _coerce_entry(alg, a)
    size = 2 + n_odd
    m = [[alg.zero() for _ in range(size)] for _ in range(size)]
    m[0][0] = av
    m[1][1] = av.inverse()
    for k in range(n_odd):
        m[2 + k][2 + k] = alg.one()
    return OspMatrix(alg, n_odd, m)


def rotation(alg: GrassmannAlgebra, n_odd: int, r) -> OspMatrix:
    """(x, xi) -> (x, R xi) for an orthogonal scalar matrix R."""
    size = 2 + n_odd
    m = [[alg.zero() for _ in range(size)] for _ in range(size)]
    m[0][0] = alg.one()
    m[1][1] = alg.one()
    for i in range(n_odd):
        for j in range(n_odd):
            m[2 + i][2 + j] = _coerce_entry(alg, r[i][j])
    return OspMatrix(alg, n_odd, m)


def inversion(alg: GrassmannAlgebra, n_odd: int) -> OspMatrix:
    """(x, xi) -> (-1/x, xi/x)."""
    size = 2 + n_odd
    m = [[alg.zero() for _ in range(size)] for _ in range(size)]
    m[0][1] = -alg.one()
    m[1][0] = alg.one()
    for k in range(n_odd):
        m[2 + k][2 + k] = alg.one()
    return OspMatrix(alg, n_odd, m)


def lower_triangular(alg: GrassmannAlgebra, n_odd: int, c, delta=()) -> OspMatrix:
    """(x, xi) -> (x, delta x + xi) / (c x + 1 + delta.xi)."""
    delta = list(delta) + [alg.zero()] * (n_odd - len(delta))
    size = 2 + n_odd
    m = [[alg.zero() for _ in range(size)] for _ in range(size)]
    m[0][0] = alg.one()
    m[1][0] = _coerce_entry(alg, c)
    m[1][1] = alg.one()
    for k in range(n_odd):
        dk = _coerce_entry(alg, delta[k])
        m[1][2 + k] = dk
        m[2 + k][0] = dk
        m[2 + k][2 + k] = alg.one()
    return OspMatrix(alg, n_odd, m)


def signed_translation(alg: GrassmannAlgebra, eps: int, b, beta) -> OspMatrix:
    """Upper-triangular factor with sign, one odd dimension."""
    if eps not in (1, -1):
        raise GroupError("sign factor must be +1 or -1")
    bv = _coerce_entry(alg, b)
    be = _coerce_entry(alg, beta)
    ev = alg.scalar(eps)
    return OspMatrix(alg, 1, [
        [ev, bv, -be],
        [alg.zero(), ev, alg.zero()],
        [alg.zero(), ev * be, alg.one()],
    ])


def so2_matrix(alg: GrassmannAlgebra, t, reflect: bool = False):
    """Rational point of SO(2) (or O(2) minus) from the tangent parameter."""
    tv = alg.coerce(t)
    one = alg.coerce(1)
    den = one + tv * tv
    p = (one - tv * tv) / den
    q = (tv + tv) / den
    if reflect:
        return [[p, q], [q, -p]]
    return [[p, -q], [q, p]]


def factor_triangular(m: OspMatrix):
    """Factor an SpO(2|1) element into lower . dilation . signed upper,
    with a trailing odd reflection when the element sits in the component
    with body(e) = -1.

    Requires body(a) != 0.  Returns the list of factors; their product is
    asserted to rebuild the input exactly.
    """
    if m.n_odd != 1:
        raise GroupError("triangular factorisation is specific to SpO(2|1)")
    alg = m.alg
    if m.a.body == 0:
        raise NotInvertible("factorisation needs an invertible upper-left entry")
    e_body = m.e_block[0][0].body
    if e_body not in (1, -1):
        raise GroupError("odd-odd entry must have body +1 or -1 in the group")
    tail = []
    work = m
    if e_body == -1:
        refl = rotation(alg, 1, [[-1]])
        work = m @ refl  # refl is an involution
        tail = [refl]
    eps = 1 if work.a.body > 0 else -1
    a_t = work.a * eps
    inv_a = a_t.inverse()
    b_t = work.b * inv_a
    beta_t = -(work.gamma[0] * inv_a)
    c_t = work.c * eps * inv_a
    delta_t = work.alpha[0] * eps * inv_a
    low = lower_triangular(alg, 1, c_t, [delta_t])
    dil = dilation(alg, 1, a_t)
    up = signed_translation(alg, eps, b_t, beta_t)
    factors = [low, dil, up] + tail
    rebuilt = factors[0]
    for f in factors[1:]:
        rebuilt = rebuilt @ f
    if rebuilt != m:
        raise GroupError("factorisation failed to rebuild the element")
    return factors
