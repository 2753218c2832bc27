"""Seeded random data for the verification suites.

Every sampler takes an explicit random.Random so a seed fully determines
the draw.  Samplers that can land on a pole or a degenerate body resample
deterministically until the draw is usable.  Odd constants are taken from
a pool of generator indices so callers can keep point coordinates and
group parameters on disjoint generators.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .grassmann import FLOAT64, GrassmannAlgebra
from .superjet import SuperJet
from .contactmap import (
    MapGerm,
    SuperPoint,
    contact_from_components,
    lift_diffeomorphism,
    nilpotent_flow,
)
from .ospgroup import (
    OspMatrix,
    dilation,
    inversion,
    lower_triangular,
    rotation,
    signed_translation,
    so2_matrix,
    translation,
)


def frac(rng: Random, max_num: int = 3, max_den: int = 3,
         nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        if v or not nonzero:
            return v


def _scalar(rng: Random, alg, **kw):
    v = frac(rng, **kw)
    return float(v) if alg.field == FLOAT64 else v


def odd_scalar(rng: Random, alg, pool):
    return alg.gen(rng.choice(pool)) * _scalar(rng, alg, nonzero=True)


def _pool(alg, pool):
    return tuple(pool) if pool is not None else tuple(range(alg.gens))


def _h(alg, n_odd, base, order):
    x = SuperJet.coordinate(alg, n_odd, base).truncate(order)
    return x - SuperJet.constant(alg, n_odd, base, base).truncate(order)


def _poly(h, cs):
    acc = SuperJet.constant(h.alg, h.n_odd, h.base_x, cs[0]).truncate(h.order)
    p = None
    for c in cs[1:]:
        p = h if p is None else p * h
        acc = acc + c * p
    return acc


def sample_point(rng: Random, alg, n_odd: int, body=None, pool=None,
                 soul: bool = False) -> SuperPoint:
    """A point with the given (or random) body; odd coordinates are single
    generators with rational weight, optionally with an even soul on x."""
    pool = _pool(alg, pool)
    if body is None:
        body = _scalar(rng, alg)
    x = alg.coerce(body)
    if soul and len(pool) >= 2:
        i, j = rng.sample(pool, 2)
        x = x + alg.gen(i) * alg.gen(j) * _scalar(rng, alg)
    xi = [odd_scalar(rng, alg, pool) for _ in range(n_odd)]
    return SuperPoint(alg, x, xi)


def sample_points(rng: Random, alg, n_odd: int, count: int, pool=None,
                  soul: bool = False):
    """Points with pairwise distinct bodies, odd coordinates on disjoint
    generators when the pool allows it."""
    pool = _pool(alg, pool)
    bodies: list = []
    while len(bodies) < count:
        b = _scalar(rng, alg, max_num=4)
        if b not in bodies:
            bodies.append(b)
    pts = []
    free = list(pool)
    for k, b in enumerate(bodies):
        own = []
        for _ in range(n_odd):
            own.append(free.pop(0) if free else rng.choice(pool))
        pts.append(sample_point(rng, alg, n_odd, body=b, pool=own or pool,
                                soul=soul))
    return pts


def sample_word(rng: Random, alg, n_odd: int, pool=None,
                length=None) -> OspMatrix:
    """A word in the standard generators: translations and lower-triangular
    factors with odd parameters, dilations, inversions, rotations for two
    odd coordinates, and signed translations for one."""
    pool = _pool(alg, pool)
    count = length if length is not None else rng.randint(1, 3)
    kinds = ["t", "l", "d", "i"]
    if n_odd == 2:
        kinds.append("r")
    if n_odd == 1:
        kinds.append("s")
    g = None
    for _ in range(count):
        kind = rng.choice(kinds)
        if kind == "t":
            beta = tuple(odd_scalar(rng, alg, pool) for _ in range(n_odd))
            m = translation(alg, n_odd, frac(rng, max_num=4), beta)
        elif kind == "l":
            delta = tuple(odd_scalar(rng, alg, pool) for _ in range(n_odd))
            m = lower_triangular(alg, n_odd, frac(rng), delta)
        elif kind == "d":
            m = dilation(alg, n_odd, Fraction(rng.randint(1, 4),
                                              rng.randint(1, 3)))
        elif kind == "r":
            m = rotation(alg, 2, so2_matrix(alg, frac(rng, max_num=2)))
        elif kind == "s":
            m = signed_translation(alg, rng.choice((1, -1)),
                                   frac(rng), odd_scalar(rng, alg, pool))
        else:
            m = inversion(alg, n_odd)
        g = m if g is None else g @ m
    return g


def sample_word_germ(rng: Random, alg, n_odd: int, base, order: int,
                     pool=None) -> MapGerm:
    """Action germ of a random word, resampled away from poles."""
    while True:
        g = sample_word(rng, alg, n_odd, pool=pool)
        if not g.has_pole_at(base):
            return g.action_germ(base, order)


def sample_k1_germ(rng: Random, alg, base, order: int = 6, pool=None,
                   image=None) -> MapGerm:
    """A generic contactomorphism germ for one odd coordinate: psi built
    from random polynomials of degree at most four, invertible at the
    base, phi integrated from the contact condition."""
    pool = _pool(alg, pool)
    h = _h(alg, 1, base, order)
    deg0 = rng.randint(1, 4)
    psi0 = _poly(h, [_scalar(rng, alg, nonzero=True)]
                 + [_scalar(rng, alg) for _ in range(deg0)])
    gens = rng.sample(pool, min(2, len(pool)))
    deg1 = rng.randint(0, 4)
    psi1 = _poly(h, [alg.gen(rng.choice(gens)) * _scalar(rng, alg)
                     for _ in range(deg1 + 1)])
    constant = image if image is not None else _scalar(rng, alg)
    return contact_from_components(psi0, psi1, constant)


def sample_k1_pair(rng: Random, alg, base, order: int = 6, pool=None):
    """(outer, inner) with the outer germ based at the inner image."""
    pool = _pool(alg, pool)
    mid = _scalar(rng, alg)
    inner = sample_k1_germ(rng, alg, base, order, pool=pool, image=mid)
    outer = sample_k1_germ(rng, alg, mid, order, pool=pool)
    return outer, inner


def sample_lift(rng: Random, alg, base, order: int = 6, pool=None,
                image=None) -> MapGerm:
    """Contact lift of a circle germ with a random rotation block.

    The block is a proper rotation.  Reflections in the odd frame are
    also contact, but the scalar Schwarzian changes sign through them
    (only its quadratic-differential parent composes there), so they
    stay out of the sampled family.
    """
    h = _h(alg, 2, base, order)
    sq = _poly(h, [_scalar(rng, alg, nonzero=True)]
               + [_scalar(rng, alg) for _ in range(rng.randint(1, 2))])
    rot = so2_matrix(alg, frac(rng, max_num=2))
    constant = image if image is not None else _scalar(rng, alg)
    return lift_diffeomorphism(alg, 2, base, sq, constant, rotation=rot)


def k2_sample(rng: Random, alg, base, order: int = 6, pool=None,
              length=None) -> MapGerm:
    """A contactomorphism germ for two odd coordinates, as a short word in
    three exactly-contact families: lifts with rotation blocks, group
    action germs, and nilpotent Hamiltonian flows.  Each piece uses at
    most two odd generators."""
    pool = _pool(alg, pool)
    count = length if length is not None else rng.randint(1, 3)
    germ = None
    cur = base
    for _ in range(count):
        kind = rng.choice(["lift", "word", "flow"])
        piece_pool = tuple(rng.sample(pool, min(2, len(pool))))
        if kind == "lift":
            piece = sample_lift(rng, alg, cur, order + 2, pool=piece_pool)
        elif kind == "word":
            piece = sample_word_germ(rng, alg, 2, cur, order + 2,
                                     pool=piece_pool)
        else:
            if len(piece_pool) < 2:
                continue
            mu = alg.gen(piece_pool[0]) * alg.gen(piece_pool[1])
            coeffs = [_scalar(rng, alg) for _ in range(rng.randint(1, 4))]
            piece = nilpotent_flow(alg, 2, cur, coeffs, mu)
        germ = piece if germ is None else piece.compose(germ)
        cur = piece.image_base()
    if germ is None:
        germ = MapGerm.identity(alg, 2, base)
    return germ.truncate(order)


def sample_k2_pair(rng: Random, alg, base, order: int = 6, pool=None):
    inner = k2_sample(rng, alg, base, order, pool=pool)
    outer = k2_sample(rng, alg, inner.image_base(), order, pool=pool)
    return outer, inner


def sample_hamiltonian(rng: Random, alg, n_odd: int, base, order: int = 6,
                       pool=None) -> SuperJet:
    """An even contact Hamiltonian, invertible at the base point."""
    pool = _pool(alg, pool)
    h = _h(alg, n_odd, base, order)
    f = _poly(h, [_scalar(rng, alg, nonzero=True)]
              + [_scalar(rng, alg) for _ in range(rng.randint(1, 3))])
    for i in range(n_odd):
        xi = SuperJet.odd_coordinate(alg, n_odd, base, i).truncate(order)
        f = f + xi * (_poly(h, [_scalar(rng, alg), _scalar(rng, alg)])
                      * alg.gen(rng.choice(pool)))
    if n_odd >= 2:
        for i in range(n_odd):
            for j in range(i + 1, n_odd):
                xi = SuperJet.odd_coordinate(alg, n_odd, base, i)
                xj = SuperJet.odd_coordinate(alg, n_odd, base, j)
                f = f + (xi * xj).truncate(order) * _poly(
                    h, [_scalar(rng, alg), _scalar(rng, alg)])
    return f


def sample_even_field(rng: Random, alg, n_odd: int, base, order: int = 6,
                      pool=None):
    """Components of an arbitrary even vector field, not necessarily
    contact; the even component is invertible at the base."""
    from .cartan import ContactField

    pool = _pool(alg, pool)
    h = _h(alg, n_odd, base, order)
    a = _poly(h, [_scalar(rng, alg, nonzero=True)]
              + [_scalar(rng, alg) for _ in range(2)])
    for i in range(n_odd):
        xi = SuperJet.odd_coordinate(alg, n_odd, base, i).truncate(order)
        a = a + xi * (_poly(h, [_scalar(rng, alg), _scalar(rng, alg)])
                      * alg.gen(rng.choice(pool)))
    gs = []
    for i in range(n_odd):
        g = _poly(h, [_scalar(rng, alg), _scalar(rng, alg)]) \
            * alg.gen(rng.choice(pool))
        for j in range(n_odd):
            g = g + _poly(h, [_scalar(rng, alg),
                              _scalar(rng, alg)]).mul_left_xi(j)
        gs.append(g)
    return ContactField(a, gs)
