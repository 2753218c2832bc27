from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from supercircle.grassmann import (
    FLOAT64,
    RATIONAL,
    GrassmannAlgebra,
    NotInvertible,
)
from supercircle.superjet import JetError, SuperJet, TruncationError
from supercircle.contactmap import (
    MapGerm,
    SuperPoint,
    contact_from_components,
    lift_diffeomorphism,
)
from supercircle.ospgroup import (
    dilation,
    inversion,
    lower_triangular,
    so2_matrix,
    translation,
)
from supercircle.cartan import (
    CartanError,
    ContactField,
    EpsJet,
    cartan_affine,
    cartan_euclid,
    cartan_projective,
    eps_flow,
    eval_jet,
    germ_at_eps,
    lie_vs_group,
    obstruction_witness_N3,
    obstruction_witness_map,
    pair_alpha,
    pair_beta,
    pair_oneform,
    pair_quad,
    projective_quadratic,
    _eps_cross_ratio,
    _eps_even_bracket,
    _eps_odd_bracket,
)
from supercircle.cocycles import cocycle_A, quad_S1, schwarzian_S0


def coords(alg, n, base, order=9):
    x = SuperJet.coordinate(alg, n, base).truncate(order)
    h = x - SuperJet.constant(alg, n, base, base).truncate(order)
    xis = [SuperJet.odd_coordinate(alg, n, base, i).truncate(order)
           for i in range(n)]
    return x, h, xis


def poly(h, cs):
    acc = SuperJet.constant(h.alg, h.n_odd, h.base_x, cs[0]).truncate(h.order)
    p = None
    for c in cs[1:]:
        p = h if p is None else p * h
        acc = acc + c * p
    return acc


def n1_instance(alg, base):
    """A non-group contact germ, a Hamiltonian field, and a point."""
    x, h, (xi,) = coords(alg, 1, base)
    psi0 = poly(h, [1, 1, F(1, 3), F(-1, 5)])
    psi1 = poly(h, [0, 1, 2]) * alg.gen(0)
    germ = contact_from_components(psi0, psi1, F(2))
    f = poly(h, [1, F(1, 2), 1, F(1, 7)]) + xi * (poly(h, [1, 1]) * alg.gen(1))
    X = ContactField.from_hamiltonian(f)
    t1 = SuperPoint(alg, base, (alg.gen(2),))
    return germ, X, t1


def n2_instance(alg, base):
    x, h, xis = coords(alg, 2, base)
    g = (translation(alg, 2, F(1, 2)) @ dilation(alg, 2, F(3, 2))
         @ lower_triangular(alg, 2, F(1, 4)))
    germ = g.action_germ(base, 9)
    f = (poly(h, [1, 1, F(1, 2)]) + xis[0] * xis[1] * poly(h, [2, 1])
         + xis[0] * (poly(h, [1, 1]) * alg.gen(0))
         + xis[1] * (poly(h, [0, 1]) * alg.gen(1)))
    X = ContactField.from_hamiltonian(f)
    t1 = SuperPoint(alg, base, (alg.gen(2), alg.gen(3)))
    return germ, X, t1


class TestEpsJet:
    alg = GrassmannAlgebra(4, RATIONAL)

    def test_ring_ops(self):
        a = EpsJet(self.alg, (1, 2, 3, 4))
        b = EpsJet(self.alg, (2, 0, 1, 0))
        s = a + b
        assert [c.body for c in s.coeffs] == [3, 2, 4, 4]
        p = a * b
        # (1+2e+3e^2+4e^3)(2+e^2) truncated
        assert [c.body for c in p.coeffs] == [2, 4, 7, 10]
        assert [c.body for c in (-a).coeffs] == [-1, -2, -3, -4]
        assert [c.body for c in (a - 1).coeffs] == [0, 2, 3, 4]
        assert [c.body for c in (3 * a).coeffs] == [3, 6, 9, 12]

    def test_reciprocal_is_exact(self):
        a = EpsJet(self.alg, (F(2), F(1, 3), self.alg.gen(0) * self.alg.gen(1), 5))
        one = a * a.reciprocal() - 1
        assert one.is_zero()

    def test_reciprocal_needs_invertible_constant(self):
        a = EpsJet(self.alg, (self.alg.gen(0) * self.alg.gen(1), 1, 0, 0))
        with pytest.raises(NotInvertible):
            a.reciprocal()

    def test_shift_down(self):
        a = EpsJet(self.alg, (0, 5, 6, 7))
        d = a.shift_down()
        assert [c.body for c in d.coeffs] == [5, 6, 7, 0]
        assert d.valid == 2
        with pytest.raises(CartanError):
            EpsJet(self.alg, (1, 0, 0, 0)).shift_down()

    def test_validity_propagates(self):
        a = EpsJet(self.alg, (0, 1, 2, 3)).shift_down()
        b = EpsJet(self.alg, (1, 1, 1, 1))
        assert (a * b).valid == 2
        assert (a + b).valid == 2
        assert a.reciprocal().valid == 2
        with pytest.raises(CartanError):
            (a * b).is_zero_through(3)

    def test_degree_cap(self):
        with pytest.raises(CartanError):
            EpsJet(self.alg, (1, 2, 3, 4, 5))


class TestFlow:
    alg = GrassmannAlgebra(4, RATIONAL)

    def test_exponential_flow(self):
        # X = x d/dx from the point 1: step k lands at exp(k eps)
        x = SuperJet.coordinate(self.alg, 0, 1)
        X = ContactField(x, [])
        pts = eps_flow(X, SuperPoint(self.alg, 1), steps=4)
        assert [c.body for c in pts[1].x.coeffs] == [1, 1, F(1, 2), F(1, 6)]
        assert [c.body for c in pts[2].x.coeffs] == [1, 2, 2, F(4, 3)]
        assert [c.body for c in pts[3].x.coeffs] == [1, 3, F(9, 2), F(9, 2)]

    def test_flow_starts_at_the_point(self):
        x = SuperJet.coordinate(self.alg, 1, 0).truncate(6)
        f = x * x + 1
        X = ContactField.from_hamiltonian(f)
        t1 = SuperPoint(self.alg, 0, (self.alg.gen(0),))
        pts = eps_flow(X, t1, steps=3)
        assert pts[0].x.coefficient(0) == t1.x
        assert all(pts[0].x.coefficient(k).is_zero() for k in (1, 2, 3))
        assert pts[0].xi[0].coefficient(0) == t1.xi[0]

    def test_translation_flow_is_linear(self):
        one = SuperJet.constant(self.alg, 0, 0, 1).truncate(4)
        X = ContactField(one, [])
        pts = eps_flow(X, SuperPoint(self.alg, 0), steps=4)
        for k, p in enumerate(pts):
            assert p.x.coefficient(1).body == k
            assert p.x.coefficient(2).is_zero()


class TestEval:
    alg = GrassmannAlgebra(4, RATIONAL)

    def test_value_with_soul(self):
        x, h, (xi,) = coords(self.alg, 1, F(1, 2), order=5)
        jet = poly(h, [2, 3, 4]) + xi * (poly(h, [1, 1]) * self.alg.gen(0))
        s = self.alg.gen(0) * self.alg.gen(1)
        pt = SuperPoint(self.alg, self.alg.scalar(F(1, 2)) + s,
                        (self.alg.gen(2),))
        val = eval_jet(jet, pt)
        # 2 + 3 s + xi gen0 (1 + s) evaluated by hand: s^2 = 0
        hand = (self.alg.scalar(2) + 3 * s
                + self.alg.gen(2) * self.alg.gen(0) * (self.alg.one() + s))
        assert (val - hand).is_zero()

    def test_rejects_wrong_body(self):
        x = SuperJet.coordinate(self.alg, 0, 0).truncate(4)
        with pytest.raises(JetError):
            eval_jet(x, SuperPoint(self.alg, 1))

    def test_rejects_insufficient_order(self):
        x = SuperJet.coordinate(self.alg, 0, 0)
        j = (x * x).truncate(1)
        disp = (self.alg.gen(0) * self.alg.gen(1)
                + self.alg.gen(2) * self.alg.gen(3))
        with pytest.raises(TruncationError):
            eval_jet(j, SuperPoint(self.alg, disp))

    def test_exact_jets_need_no_order(self):
        x = SuperJet.coordinate(self.alg, 0, 0)
        disp = self.alg.gen(0) * self.alg.gen(1)
        assert (eval_jet(x * x, SuperPoint(self.alg, disp))).is_zero()


class TestPairings:
    alg = GrassmannAlgebra(6, RATIONAL)
    base = F(1, 3)

    def test_first_order_brackets_match_pairings(self):
        germ, X, t1 = n1_instance(self.alg, self.base)
        pts = eps_flow(X, t1, steps=2)
        br = _eps_even_bracket(pts[0], pts[1])
        assert br.coefficient(0).is_zero()
        assert (br.coefficient(1) - pair_alpha(X, t1)).is_zero()
        ob = _eps_odd_bracket(pts[0], pts[1])
        assert ob[0].coefficient(0).is_zero()
        assert (ob[0].coefficient(1) - pair_beta(X, 0, t1)).is_zero()

    def test_hamiltonian_pairs_to_its_value(self):
        # <X_f, alpha> = f at every point
        _, X, t1 = n1_instance(self.alg, self.base)
        f = X.a + X.gs[0].mul_left_xi(0)
        assert (pair_alpha(X, t1) - eval_jet(f, t1)).is_zero()

    def test_oneform_pairing_by_hand(self):
        _, X, t1 = n1_instance(self.alg, self.base)
        om = cocycle_A(MapGerm(*_simple_lift(self.alg, self.base)))
        val = pair_oneform(X, om, t1)
        hand = (pair_alpha(X, t1) * eval_jet(om.f, t1)
                + pair_beta(X, 0, t1) * eval_jet(om.gs[0], t1))
        assert (val - hand).is_zero()

    def test_quad_pairing_by_hand(self):
        germ, X, t1 = n1_instance(self.alg, self.base)
        q = quad_S1(germ)
        a = pair_alpha(X, t1)
        g = pair_beta(X, 0, t1)
        hand = a * a * eval_jet(q.a2, t1) + a * g * eval_jet(q.ab[0], t1)
        assert (pair_quad(X, q, t1) - hand).is_zero()


def _simple_lift(alg, base):
    x, h, (xi,) = coords(alg, 1, base)
    psi0 = poly(h, [1, F(1, 2), F(1, 4)])
    psi1 = poly(h, [0, 0, 1]) * alg.gen(3)
    g = contact_from_components(psi0, psi1, base)
    return g.phi, g.psis


class TestHamiltonianField:
    alg = GrassmannAlgebra(4, RATIONAL)

    def test_one_odd_component_formula(self):
        # f = a + 2 xi b: X(x) = a - b xi, X(xi) = a'/2 xi + b
        x, h, (xi,) = coords(self.alg, 1, 0, order=6)
        a = poly(h, [1, 2, 3])
        b = poly(h, [1, 1]) * self.alg.gen(0)
        f = a + 2 * (xi * b)
        X = ContactField.from_hamiltonian(f)
        assert (X.a - (a + b.mul_left_xi(0))).is_zero()
        want_g = (F(1, 2) * a.derivative_x()).mul_left_xi(0) + b
        assert (X.gs[0] - want_g).is_zero()

    def test_rejects_odd_function(self):
        x, h, (xi,) = coords(self.alg, 1, 0, order=4)
        with pytest.raises(CartanError):
            ContactField.from_hamiltonian(xi + h * self.alg.gen(0))

    def test_component_parity_enforced(self):
        x, h, (xi,) = coords(self.alg, 1, 0, order=4)
        with pytest.raises(CartanError):
            ContactField(x, [h])
        with pytest.raises(CartanError):
            ContactField(xi, [xi])

    def test_apply_is_a_derivation(self):
        x, h, (xi,) = coords(self.alg, 1, 0, order=6)
        f = poly(h, [1, 1, 1]) + xi * (poly(h, [2, 1]) * self.alg.gen(0))
        X = ContactField.from_hamiltonian(f)
        u = poly(h, [1, 3]) + xi * (h * self.alg.gen(1))
        v = poly(h, [2, 0, 1])
        lhs = X.apply(u * v)
        rhs = X.apply(u) * v + u * X.apply(v)
        assert (lhs.truncate(4) - rhs.truncate(4)).is_zero()


class TestEuclid:
    alg = GrassmannAlgebra(6, RATIONAL)

    def test_vanishes_at_leading_order(self):
        for mk, base in ((n1_instance, F(1, 2)), (n2_instance, F(1, 3))):
            germ, X, t1 = mk(self.alg, base)
            res = cartan_euclid(germ, X, t1)
            assert res.is_zero_through(0)

    def test_detects_the_multiplier(self):
        # replacing E(t1) by anything else leaves a constant term
        germ, X, t1 = n1_instance(self.alg, F(1, 2))
        pts = eps_flow(X, t1, steps=2)
        ims = [germ_at_eps(germ, p) for p in pts]
        ratio = (_eps_even_bracket(ims[0], ims[1]).shift_down()
                 * _eps_even_bracket(pts[0], pts[1]).shift_down().reciprocal())
        e_val = eval_jet(germ.multiplier(), t1)
        assert (ratio.coefficient(0) - e_val).is_zero()
        assert not (ratio.coefficient(0) - 2 * e_val).is_zero()

    def test_rejects_non_contact(self):
        x, h, (xi,) = coords(self.alg, 1, 0, order=5)
        bad = MapGerm(x * x + x, [xi])
        _, X, t1 = n1_instance(self.alg, F(1, 2))
        t0 = SuperPoint(self.alg, 0, (self.alg.gen(2),))
        X0 = ContactField.from_hamiltonian(
            SuperJet.constant(self.alg, 1, 0, 1).truncate(5))
        with pytest.raises(CartanError):
            cartan_euclid(bad, X0, t0)


class TestAffine:
    alg = GrassmannAlgebra(6, RATIONAL)

    def test_vanishes_through_first_order(self):
        for mk, base in ((n1_instance, F(1, 2)), (n2_instance, F(1, 3))):
            germ, X, t1 = mk(self.alg, base)
            assert cartan_affine(germ, X, t1).is_zero_through(1)

    def test_n0_instance(self):
        alg = GrassmannAlgebra(2, RATIONAL)
        x = SuperJet.coordinate(alg, 0, 1)
        germ = MapGerm((x * x).truncate(10), [])
        X = ContactField(SuperJet.constant(alg, 0, 1, 1), [])
        t1 = SuperPoint(alg, 1)
        assert cartan_affine(germ, X, t1).is_zero_through(1)

    def test_euclidean_motions_have_flat_ratio(self):
        # the three-point ratio of a multiplier-one germ is 1 + O(eps^2)
        germ = translation(self.alg, 1, F(1, 3),
                           beta=(self.alg.gen(0),)).action_germ(F(1, 4), 8)
        _, X, t1 = n1_instance(self.alg, F(1, 4))
        res = cartan_affine(germ, X, t1)
        assert res.is_zero_through(1)
        pts = eps_flow(X, t1, steps=3)
        ims = [germ_at_eps(germ, p) for p in pts]

        def three_point(ps):
            return (_eps_even_bracket(ps[0], ps[2]).shift_down()
                    * _eps_even_bracket(ps[0], ps[1]).shift_down().reciprocal())

        ratio = three_point(ims) * three_point(pts).reciprocal()
        assert (ratio - 1).is_zero_through(1)


class TestProjective:
    alg = GrassmannAlgebra(6, RATIONAL)

    def test_classical_minus_three_halves(self):
        alg = GrassmannAlgebra(2, RATIONAL)
        x = SuperJet.coordinate(alg, 0, 1)
        germ = MapGerm((x * x).truncate(10), [])
        X = ContactField(SuperJet.constant(alg, 0, 1, 1), [])
        t1 = SuperPoint(alg, 1)
        res = cartan_projective(germ, X, t1)
        assert res.is_zero_through(2)
        pts = eps_flow(X, t1, steps=4)
        ims = [germ_at_eps(germ, p) for p in pts]
        q = _eps_cross_ratio(ims) * _eps_cross_ratio(pts).reciprocal()
        assert q.coefficient(1).is_zero()
        assert q.coefficient(2).body == F(-1, 4)
        assert 6 * q.coefficient(2).body == F(-3, 2)
        assert schwarzian_S0(germ).coeff.coefficient(0, 0).body == F(-3, 2)

    def test_cross_ratio_of_equally_spaced_points(self):
        alg = GrassmannAlgebra(2, RATIONAL)
        X = ContactField(SuperJet.constant(alg, 0, 0, 1), [])
        pts = eps_flow(X, SuperPoint(alg, 0), steps=4)
        cr = _eps_cross_ratio(pts)
        assert cr.coefficient(0).body == F(4, 3)

    def test_first_order_term_always_cancels(self):
        for mk, base in ((n1_instance, F(1, 2)), (n2_instance, F(1, 3))):
            germ, X, t1 = mk(self.alg, base)
            pts = eps_flow(X, t1, steps=4)
            ims = [germ_at_eps(germ, p) for p in pts]
            q = _eps_cross_ratio(ims) * _eps_cross_ratio(pts).reciprocal()
            assert q.coefficient(1).is_zero()

    def test_vanishes_through_second_order(self):
        for mk, base in ((n1_instance, F(1, 2)), (n2_instance, F(1, 3))):
            germ, X, t1 = mk(self.alg, base)
            assert cartan_projective(germ, X, t1).is_zero_through(2)

    def test_lift_instance_n2(self):
        alg = self.alg
        base = F(1, 3)
        x, h, xis = coords(alg, 2, base)
        sq = poly(h, [1, 1, F(-1, 5)])
        germ = lift_diffeomorphism(alg, 2, base, sq, F(1),
                                   rotation=so2_matrix(alg, F(1, 2)))
        _, X, t1 = n2_instance(alg, base)
        assert cartan_projective(germ, X, t1).is_zero_through(2)

    def test_fractional_words_have_zero_quadratic_term(self):
        # the cross-ratio is already invariant, so the ratio is 1 + O(eps^3)
        g = (translation(self.alg, 1, F(1, 3)) @ inversion(self.alg, 1)
             @ translation(self.alg, 1, 3))
        germ = g.action_germ(F(1, 4), 9)
        _, X, t1 = n1_instance(self.alg, F(1, 4))
        pts = eps_flow(X, t1, steps=4)
        ims = [germ_at_eps(germ, p) for p in pts]
        q = _eps_cross_ratio(ims) * _eps_cross_ratio(pts).reciprocal()
        assert (q - 1).is_zero_through(2)
        assert pair_quad(X, projective_quadratic(germ), t1).is_zero()

    def test_float_backend(self):
        alg = GrassmannAlgebra(5, FLOAT64)
        base = 0.5
        x, h, (xi,) = coords(alg, 1, base)
        psi0 = poly(h, [1.0, 0.7, -0.2])
        psi1 = poly(h, [0.0, 0.3, 0.9]) * alg.gen(0)
        germ = contact_from_components(psi0, psi1, 1.25)
        f = poly(h, [1.0, 0.4, 0.11]) + xi * (poly(h, [0.8, 0.3]) * alg.gen(1))
        X = ContactField.from_hamiltonian(f)
        t1 = SuperPoint(alg, base, (alg.gen(2),))
        assert cartan_euclid(germ, X, t1).is_zero_through(0, tol=1e-9)
        assert cartan_affine(germ, X, t1).is_zero_through(1, tol=1e-9)
        assert cartan_projective(germ, X, t1).is_zero_through(2, tol=1e-9)

    def test_no_quadratic_beyond_two_odd(self):
        alg = GrassmannAlgebra(5, RATIONAL)
        wit = obstruction_witness_map(alg)
        with pytest.raises(CartanError):
            projective_quadratic(wit)

    def test_holds_for_non_contact_fields(self):
        # only the flow of an even field is needed, contact or not
        alg = self.alg
        base = F(1, 2)
        x, h, (xi,) = coords(alg, 1, base)
        germ, _, t1 = n1_instance(alg, base)
        a = poly(h, [1, 1, 1]) + xi * (poly(h, [2, 1]) * alg.gen(1))
        g = (poly(h, [1, 3]) * alg.gen(4)
             + poly(h, [F(1, 2), 1]).mul_left_xi(0))
        X = ContactField(a, [g])
        assert cartan_euclid(germ, X, t1).is_zero_through(0)
        assert cartan_affine(germ, X, t1).is_zero_through(1)
        assert cartan_projective(germ, X, t1).is_zero_through(2)

    @settings(max_examples=8, deadline=None)
    @given(e1=st.integers(-2, 2), e2=st.integers(-1, 1),
           o1=st.integers(-2, 2), fa=st.integers(-2, 2))
    def test_random_n1_instances(self, e1, e2, o1, fa):
        alg = GrassmannAlgebra(6, RATIONAL)
        base = F(1, 2)
        x, h, (xi,) = coords(alg, 1, base)
        psi0 = poly(h, [1, e1, F(e2, 3)])
        psi1 = poly(h, [0, o1, 1]) * alg.gen(0)
        germ = contact_from_components(psi0, psi1, F(1, 7))
        f = poly(h, [1, fa, 1]) + xi * (poly(h, [1, e2]) * alg.gen(1))
        X = ContactField.from_hamiltonian(f)
        t1 = SuperPoint(alg, base, (alg.gen(2),))
        assert cartan_euclid(germ, X, t1).is_zero_through(0)
        assert cartan_affine(germ, X, t1).is_zero_through(1)
        assert cartan_projective(germ, X, t1).is_zero_through(2)


class TestObstruction:
    alg = GrassmannAlgebra(5, RATIONAL)

    def test_witness_is_contact_with_unit_multiplier(self):
        wit = obstruction_witness_map(self.alg)
        assert wit.is_contact()
        e = wit.multiplier()
        assert (e - SuperJet.constant(self.alg, 3, 0, 1)).is_zero()

    def test_cubic_term_survives(self):
        wit = obstruction_witness_map(self.alg)
        obs = obstruction_witness_N3(wit)
        assert set(obs) == {(0, 1, 2)}
        t = obs[(0, 1, 2)]
        assert not t.is_zero()
        lam = self.alg.gen(3)
        assert (t - SuperJet.constant(self.alg, 3, 0, lam)).is_zero()

    def test_identity_has_no_cubic_term(self):
        ident = MapGerm.identity(self.alg, 3, 0)
        obs = obstruction_witness_N3(ident)
        assert obs[(0, 1, 2)].is_zero()

    def test_wrong_dimension_rejected(self):
        x = SuperJet.coordinate(self.alg, 1, 0).truncate(4)
        xi = SuperJet.odd_coordinate(self.alg, 1, 0, 0).truncate(4)
        with pytest.raises(CartanError):
            obstruction_witness_N3(MapGerm(x, [xi]))


class TestLieVsGroup:
    alg = GrassmannAlgebra(6, RATIONAL)
    base = F(1, 4)

    def hams(self):
        x, h, (xi,) = coords(self.alg, 1, self.base, order=8)
        yield SuperJet.constant(self.alg, 1, self.base, 1).truncate(8)
        yield x
        yield -2 * (xi * (poly(h, [1, 1, 1]) * self.alg.gen(0)))
        yield x * x + poly(h, [0, 0, 0, 1]) + xi * (poly(h, [2, 1]) * self.alg.gen(1))

    def test_all_weights_match(self):
        for f in self.hams():
            for i in (0, 1, 3):
                res = lie_vs_group(f, i)
                assert res.coeff.is_zero(), (f, i)

    def test_weights_are_correct(self):
        for f in self.hams():
            assert lie_vs_group(f, 0).weight == 0
            assert lie_vs_group(f, 1).weight == F(1, 2)
            assert lie_vs_group(f, 3).weight == F(3, 2)

    def test_unknown_index_rejected(self):
        x, h, (xi,) = coords(self.alg, 1, self.base, order=6)
        with pytest.raises(CartanError):
            lie_vs_group(x, 2)


class TestValidation:
    alg = GrassmannAlgebra(4, RATIONAL)

    def test_degenerate_field_rejected(self):
        x = SuperJet.coordinate(self.alg, 0, 0).truncate(5)
        germ = MapGerm(x, [])
        X = ContactField(SuperJet.constant(self.alg, 0, 0, 0).truncate(5), [])
        with pytest.raises(CartanError):
            cartan_euclid(germ, X, SuperPoint(self.alg, 0))

    def test_dimension_mismatch_rejected(self):
        x = SuperJet.coordinate(self.alg, 0, 0).truncate(5)
        germ = MapGerm(x, [])
        X1 = ContactField.from_hamiltonian(
            SuperJet.constant(self.alg, 1, 0, 1).truncate(5))
        with pytest.raises(CartanError):
            cartan_euclid(germ, X1, SuperPoint(self.alg, 0))

    def test_base_mismatch_rejected(self):
        x = SuperJet.coordinate(self.alg, 0, 0).truncate(5)
        germ = MapGerm(x, [])
        X = ContactField(SuperJet.constant(self.alg, 0, 0, 1).truncate(5), [])
        with pytest.raises(CartanError):
            cartan_euclid(germ, X, SuperPoint(self.alg, 1))
