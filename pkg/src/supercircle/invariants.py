"""Euclidean, affine, and projective invariants of point tuples.

Two points t = (x, xi) on the supercircle have an even bracket
[t1, t2] = x2 - x1 - xi2.xi1 and an odd bracket {t1, t2} = xi2 - xi1.
Every invariant below is a rational or square-root expression in these
brackets.  Each one is also recomputed through a normalizer: the group
element moving the first points onto a fixed model tuple, applied to
the last point.  The two routes agree, which is what the test suite
checks, so the closed forms and the group action certify each other.

Square roots restrict the usable inputs: the radicand must have
positive body, and in rational mode the body must be a perfect square
(NotRepresentable otherwise).  Ratios of brackets never need roots, so
even parts stay exact in rational mode.
"""

from __future__ import annotations

from .grassmann import (
    EVEN,
    ODD,
    RATIONAL,
    AlgebraError,
    GrassmannNumber,
)
from .contactmap import SuperPoint
from .ospgroup import OspMatrix, dilation, translation


class InvariantError(AlgebraError):
    pass


EXACT = "exact"
UP_TO_SIGN = "sign"
UP_TO_ORTHOGONAL = "orthogonal"


class InvariantValue:
    """An even scalar and/or a vector of odd components.

    ``ambiguity`` records how far the odd part is canonical: "exact",
    "sign" (defined up to a global flip), or "orthogonal" (defined up to
    an orthogonal rotation of the components).  ``matches`` compares two
    values modulo the declared ambiguity; ``==`` is strict.
    """

    __slots__ = ("even", "odd", "ambiguity")

    def __init__(self, even, odd=(), ambiguity: str = EXACT):
        if even is not None and even.parity() not in (EVEN,):
            raise InvariantError("even part of an invariant must be even")
        for q in odd:
            if q.terms and q.parity() != ODD:
                raise InvariantError("odd part of an invariant must be odd")
        self.even = even
        self.odd = tuple(odd)
        self.ambiguity = ambiguity

    def __eq__(self, other):
        if not isinstance(other, InvariantValue):
            return NotImplemented
        return (self.even == other.even and self.odd == other.odd
                and self.ambiguity == other.ambiguity)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def __repr__(self):
        return (f"InvariantValue(even={self.even!r}, odd={self.odd!r}, "
                f"ambiguity={self.ambiguity!r})")

    def matches(self, other: "InvariantValue", tol: float = 0.0) -> bool:
        if (self.even is None) != (other.even is None):
            return False
        if len(self.odd) != len(other.odd):
            return False
        if self.even is not None and not _close(self.even, other.even, tol):
            return False
        if not self.odd:
            return True
        if self.ambiguity == EXACT:
            return all(_close(p, q, tol) for p, q in zip(self.odd, other.odd))
        if self.ambiguity == UP_TO_SIGN:
            return (all(_close(p, q, tol) for p, q in zip(self.odd, other.odd))
                    or all(_close(-p, q, tol) for p, q in zip(self.odd, other.odd)))
        if self.ambiguity == UP_TO_ORTHOGONAL:
            return orthogonal_orbit_residual(self.odd, other.odd) <= max(tol, 1e-9) ** 2
        raise InvariantError(f"unknown ambiguity tag {self.ambiguity!r}")


def _close(a: GrassmannNumber, b: GrassmannNumber, tol: float) -> bool:
    d = a - b
    return all(abs(c) <= tol for c in d.terms.values())


# -- brackets ----------------------------------------------------------------


def even_bracket(t1: SuperPoint, t2: SuperPoint) -> GrassmannNumber:
    """[t1, t2] = x2 - x1 - xi2 . xi1 (antisymmetric)."""
    out = t2.x - t1.x
    for i in range(len(t1.xi)):
        out = out - t2.xi[i] * t1.xi[i]
    return out


def odd_bracket(t1: SuperPoint, t2: SuperPoint):
    """{t1, t2} = xi2 - xi1, componentwise."""
    return tuple(t2.xi[i] - t1.xi[i] for i in range(len(t1.xi)))


def bracket_identity(t1: SuperPoint, t2: SuperPoint, t3: SuperPoint) -> GrassmannNumber:
    """Residual of [t2,t3] + [t1,t2] - {t1,t2}.{t2,t3} - [t1,t3]; always zero."""
    out = even_bracket(t2, t3) + even_bracket(t1, t2) - even_bracket(t1, t3)
    w12 = odd_bracket(t1, t2)
    w23 = odd_bracket(t2, t3)
    for i in range(len(w12)):
        out = out - w12[i] * w23[i]
    return out


def _body(t: SuperPoint):
    return t.x.body


def _require_distinct(points) -> None:
    bodies = [_body(t) for t in points]
    if len(set(bodies)) != len(bodies):
        raise InvariantError("points must have pairwise distinct even bodies")


# -- orientation -------------------------------------------------------------


def ord_index(t1: SuperPoint, t2: SuperPoint, t3: SuperPoint) -> int:
    """+1 when the bodies run in cyclic (counterclockwise) order, else -1.

    Flips sign under any transposition of its arguments.
    """
    _require_distinct((t1, t2, t3))
    x1, x2, x3 = _body(t1), _body(t2), _body(t3)
    return 1 if (x2 - x1) * (x3 - x2) * (x3 - x1) > 0 else -1


# -- Euclidean ---------------------------------------------------------------


def euclid_invariant(t1: SuperPoint, t2: SuperPoint) -> InvariantValue:
    return InvariantValue(even_bracket(t1, t2), odd_bracket(t1, t2), EXACT)


def euclid_normalizer(t1: SuperPoint) -> OspMatrix:
    """The unique pure translation sending t1 to (0, 0)."""
    return translation(t1.alg, len(t1.xi), -t1.x, tuple(-q for q in t1.xi))


# -- affine ------------------------------------------------------------------


def _affine_order(t1: SuperPoint, t2: SuperPoint):
    _require_distinct((t1, t2))
    if _body(t1) > _body(t2):
        return t2, t1
    return t1, t2


def affine_invariant(t1: SuperPoint, t2: SuperPoint, t3: SuperPoint) -> InvariantValue:
    """([t1,t3]/[t1,t2], {t1,t3}/[t1,t2]^(1/2)), after ordering t1, t2."""
    t1, t2 = _affine_order(t1, t2)
    u12 = even_bracket(t1, t2)
    inv = u12.inverse()
    root_inv = u12.sqrt().inverse()
    even = even_bracket(t1, t3) * inv
    odd = tuple(q * root_inv for q in odd_bracket(t1, t3))
    return InvariantValue(even, odd, EXACT)


def affine_J(t1: SuperPoint, t2: SuperPoint) -> InvariantValue:
    """{t1,t2}/[t1,t2]^(1/2), the fundamental two-point odd invariant."""
    t1, t2 = _affine_order(t1, t2)
    root_inv = even_bracket(t1, t2).sqrt().inverse()
    return InvariantValue(None, tuple(q * root_inv for q in odd_bracket(t1, t2)), EXACT)


def affine_normalizer(t1: SuperPoint, t2: SuperPoint) -> OspMatrix:
    """Translation-dilation sending t1 to (0,0) and the body of t2 to 1.

    Requires body(x1) < body(x2); the caller is responsible for ordering.
    """
    if not _body(t1) < _body(t2):
        raise InvariantError("affine normalizer needs body(x1) < body(x2)")
    alg, n = t1.alg, len(t1.xi)
    a = even_bracket(t1, t2).inverse().sqrt()
    return dilation(alg, n, a) @ euclid_normalizer(t1)


# -- projective --------------------------------------------------------------


def cross_ratio(t1: SuperPoint, t2: SuperPoint, t3: SuperPoint,
                t4: SuperPoint) -> GrassmannNumber:
    """[t1,t3][t2,t4] / ([t2,t3][t1,t4]); exact in rational mode."""
    num = even_bracket(t1, t3) * even_bracket(t2, t4)
    den = even_bracket(t2, t3) * even_bracket(t1, t4)
    return num * den.inverse()


def _oriented(t1, t2, t3):
    if ord_index(t1, t2, t3) != 1:
        return t2, t1
    return t1, t2


def proj_odd_invariant(t1: SuperPoint, t2: SuperPoint, t3: SuperPoint,
                       t4: SuperPoint) -> InvariantValue:
    """Odd four-point invariant; up to sign for one odd dimension, up to an
    orthogonal rotation of components beyond that.

    Swaps t1 and t2 first when the triple is negatively oriented, so the
    value returned is always the one attached to the +1 orientation.
    """
    t1, t2 = _oriented(t1, t2, t3)
    n = len(t1.xi)
    cr = cross_ratio(t1, t2, t3, t4)
    u12 = even_bracket(t1, t2)
    u24 = even_bracket(t2, t4)
    u14 = even_bracket(t1, t4)
    w12 = odd_bracket(t1, t2)
    w24 = odd_bracket(t2, t4)
    scale = cr.sqrt() * (u12 * u24 * u14).sqrt().inverse()
    odd = tuple((w24[i] * u12 - w12[i] * u24) * scale for i in range(n))
    return InvariantValue(None, odd, UP_TO_SIGN if n == 1 else UP_TO_ORTHOGONAL)


def proj_J(t1: SuperPoint, t2: SuperPoint, t3: SuperPoint) -> InvariantValue:
    """Three-point odd invariant ({t2,t3}[t1,t2] - {t1,t2}[t2,t3]) / ([t1,t2][t2,t3][t1,t3])^(1/2).

    For one odd dimension the same value is recomputed in the cyclic form
    (xi1 [t2,t3] + xi2 [t3,t1] + xi3 [t1,t2] - xi1 xi2 xi3 over the cyclic
    root) and the two are required to agree up to a global sign.
    """
    t1, t2 = _oriented(t1, t2, t3)
    n = len(t1.xi)
    u12 = even_bracket(t1, t2)
    u23 = even_bracket(t2, t3)
    u13 = even_bracket(t1, t3)
    w12 = odd_bracket(t1, t2)
    w23 = odd_bracket(t2, t3)
    root_inv = (u12 * u23 * u13).sqrt().inverse()
    jp = tuple((w23[i] * u12 - w12[i] * u23) * root_inv for i in range(n))
    if n == 1:
        cyc = (u13 * even_bracket(t3, t2) * even_bracket(t2, t1)).sqrt().inverse()
        x1, x2, x3 = t1.xi[0], t2.xi[0], t3.xi[0]
        num = (x1 * u23 + x2 * even_bracket(t3, t1) + x3 * u12
               - x1 * x2 * x3)
        jc = num * cyc
        tol = 0.0 if t1.alg.field == RATIONAL else 1e-9
        if not (_close(jp[0], jc, tol) or _close(-jp[0], jc, tol)):
            raise InvariantError("cyclic and bracket forms of the odd "
                                 "three-point invariant disagree")
    return InvariantValue(None, jp, UP_TO_SIGN)


def cyclic_shift(alg, n_odd: int) -> OspMatrix:
    """Fractional-linear map x -> (x - 1)/x, xi -> -xi/x.

    Permutes the model points cyclically: 0 -> infinity -> 1 -> 0.
    """
    size = 2 + n_odd
    m = [[alg.zero() for _ in range(size)] for _ in range(size)]
    m[0][0] = alg.one()
    m[0][1] = -alg.one()
    m[1][0] = alg.one()
    for k in range(n_odd):
        m[2 + k][2 + k] = -alg.one()
    return OspMatrix(alg, n_odd, m)


def proj_normalizer(t1: SuperPoint, t2: SuperPoint, t3: SuperPoint) -> OspMatrix:
    """The group element k with k(t1) = infinity, k(t2) = (0,0), and the even
    image of t3 equal to 1.

    Requires ord(t1,t2,t3) = +1.  The remaining sign freedom is fixed by
    taking positive square-root branches throughout, so this is one of
    the two (for one odd dimension) admissible normalizers; the other is
    its composition with xi -> -xi.
    """
    if ord_index(t1, t2, t3) != 1:
        raise InvariantError("projective normalizer needs a positively "
                             "oriented triple")
    alg, n = t1.alg, len(t1.xi)
    pts = (t1, t2, t3)
    for r in range(3):
        rot = pts[r:] + pts[:r]
        if _body(rot[0]) < _body(rot[1]) < _body(rot[2]):
            break
    s1, s2, s3 = rot

    u12 = even_bracket(s1, s2)
    u23 = even_bracket(s2, s3)
    u13 = even_bracket(s1, s3)
    w12 = odd_bracket(s1, s2)

    trans = euclid_normalizer(s2)
    dil = dilation(alg, n, u23.inverse().sqrt())

    # fixes (0,0), keeps the even image of the second model point at 1,
    # and sends the image of s1 off to infinity
    a = (u13 * u12.inverse()).sqrt()
    d = a.inverse()
    c = u23 * u12.inverse() * d
    sq23 = u23.sqrt()
    inv12 = u12.inverse()
    alpha = tuple(-w12[i] * sq23 * inv12 for i in range(n))
    delta = tuple(alpha[i] * d for i in range(n))
    size = 2 + n
    m = [[alg.zero() for _ in range(size)] for _ in range(size)]
    m[0][0] = a
    m[1][0] = c
    m[1][1] = d
    for i in range(n):
        m[1][2 + i] = delta[i]
        m[2 + i][0] = alpha[i]
        m[2 + i][2 + i] = alg.one()
    h = OspMatrix(alg, n, m)

    k = h @ dil @ trans
    cyc = cyclic_shift(alg, n)
    for _ in range((3 - r) % 3):
        k = cyc @ k
    return k


# -- the constructive route --------------------------------------------------


def constructive_invariant(kind: str, points) -> InvariantValue:
    """Invariant computed by normalizing the leading points and evaluating
    the normalizer at the last one.

    Independent of the closed forms above: the only shared ingredients
    are the brackets inside the normalizer parameters.
    """
    if kind == "euclid":
        t1, t2 = points
        img = euclid_normalizer(t1).apply_point(t2)
        return InvariantValue(img.x, tuple(img.xi), EXACT)
    if kind == "affine":
        t1, t2, t3 = points
        t1, t2 = _affine_order(t1, t2)
        img = affine_normalizer(t1, t2).apply_point(t3)
        return InvariantValue(img.x, tuple(img.xi), EXACT)
    if kind == "projective":
        t1, t2, t3, t4 = points
        t1, t2 = _oriented(t1, t2, t3)
        img = proj_normalizer(t1, t2, t3).apply_point(t4)
        n = len(t1.xi)
        return InvariantValue(img.x, tuple(img.xi),
                              UP_TO_SIGN if n == 1 else UP_TO_ORTHOGONAL)
    raise InvariantError(f"unknown invariant kind {kind!r}")


# -- comparison of odd vectors up to O(N) ------------------------------------


def orthogonal_orbit_residual(v, w) -> float:
    """Least-squares distance between R.v and w over orthogonal R.

    Components are compared coefficient by coefficient over all Grassmann
    monomials.  Supports one and two odd dimensions, which is where the
    orbit ambiguity actually arises here.
    """
    n = len(v)
    if len(w) != n:
        raise InvariantError("odd vectors must have the same length")
    masks = set()
    for q in tuple(v) + tuple(w):
        masks.update(q.terms)
    masks = sorted(masks)

    def coeff(q, m):
        return float(q.terms.get(m, 0))

    if n == 1:
        best = None
        for s in (1.0, -1.0):
            r = sum((s * coeff(v[0], m) - coeff(w[0], m)) ** 2 for m in masks)
            best = r if best is None else min(best, r)
        return max(best, 0.0)
    if n == 2:
        norm = sum(coeff(q, m) ** 2 for q in tuple(v) + tuple(w) for m in masks)
        # rotation branch: R = [[c,-s],[s,c]], optimum aligns (c,s) with (A,B)
        A = sum(coeff(v[0], m) * coeff(w[0], m) + coeff(v[1], m) * coeff(w[1], m)
                for m in masks)
        B = sum(coeff(v[0], m) * coeff(w[1], m) - coeff(v[1], m) * coeff(w[0], m)
                for m in masks)
        # reflection branch: R = [[c,s],[s,-c]]
        C = sum(coeff(v[0], m) * coeff(w[0], m) - coeff(v[1], m) * coeff(w[1], m)
                for m in masks)
        D = sum(coeff(v[1], m) * coeff(w[0], m) + coeff(v[0], m) * coeff(w[1], m)
                for m in masks)
        best = norm - 2.0 * max((A * A + B * B) ** 0.5, (C * C + D * D) ** 0.5)
        return max(best, 0.0)
    raise InvariantError("orbit comparison implemented for one or two odd "
                         "dimensions")
