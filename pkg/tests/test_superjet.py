"""Jets: calculus rules, series inverses, evaluation, substitution."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fractions
from supercircle.grassmann import GrassmannAlgebra, NotInvertible, ParityError
from supercircle.superjet import (
    ORDER_INF,
    JetError,
    SuperJet,
    TruncationError,
    nilpotency_index,
    substitute,
)

A = GrassmannAlgebra(4)


def jets(alg=A, n_odd=2, base_x=0, max_power=3, order=ORDER_INF):
    masks = st.integers(min_value=0, max_value=(1 << n_odd) - 1)
    powers = st.integers(min_value=0, max_value=max_power)
    coeff_masks = st.integers(min_value=0, max_value=(1 << alg.gens) - 1)
    coeffs = st.dictionaries(coeff_masks, fractions(4, 3), max_size=3).map(
        alg.from_terms
    )
    return st.dictionaries(st.tuples(masks, powers), coeffs, max_size=5).map(
        lambda t: SuperJet.from_terms(alg, n_odd, base_x, order, t)
    )


def even_points(alg=A):
    even_masks = [m for m in range(1 << alg.gens) if not bin(m).count("1") & 1]
    return st.dictionaries(st.sampled_from(even_masks), fractions(3, 2), max_size=3).map(
        alg.from_terms
    )


def odd_points(alg=A):
    odd_masks = [m for m in range(1 << alg.gens) if bin(m).count("1") & 1]
    return st.dictionaries(st.sampled_from(odd_masks), fractions(3, 2), max_size=2).map(
        alg.from_terms
    )


class TestCalculus:
    @given(jets())
    @settings(max_examples=50, deadline=None)
    def test_super_derivative_squares_to_x_derivative(self, f):
        for i in range(2):
            dd = f.super_derivative(i).super_derivative(i)
            fx = f.derivative_x()
            assert (dd - fx.truncate(dd.order)).is_zero()

    @given(jets())
    @settings(max_examples=50, deadline=None)
    def test_super_derivatives_anticommute(self, f):
        d12 = f.super_derivative(0).super_derivative(1)
        d21 = f.super_derivative(1).super_derivative(0)
        assert (d12 + d21).is_zero()

    @given(jets(), jets())
    @settings(max_examples=50, deadline=None)
    def test_x_derivative_leibniz(self, f, g):
        lhs = (f * g).derivative_x()
        rhs = f.derivative_x() * g + f * g.derivative_x()
        assert (lhs - rhs.truncate(lhs.order)).is_zero()

    @given(jets())
    @settings(max_examples=50, deadline=None)
    def test_super_leibniz_on_homogeneous_parts(self, f):
        # D(fg) = (Df) g + (-1)^|f| f (Dg) for homogeneous f; split f first
        g = SuperJet.coordinate(A, 2, 0) + SuperJet.odd_coordinate(A, 2, 0, 0)
        for part, sign in ((lambda j: _even_jet_part(j), 1),
                           (lambda j: _odd_jet_part(j), -1)):
            fh = part(f)
            lhs = (fh * g).super_derivative(0)
            rhs = fh.super_derivative(0) * g + sign * (fh * g.super_derivative(0))
            assert (lhs - rhs.truncate(lhs.order)).is_zero()

    @given(jets())
    @settings(max_examples=40, deadline=None)
    def test_antiderivative_inverts_derivative(self, f):
        F = f.antiderivative_x(constant=0)
        back = F.derivative_x()
        assert (back - f.truncate(back.order)).is_zero()

    def test_antiderivative_constant_slot(self):
        f = SuperJet.coordinate(A, 1, 0)
        F = f.antiderivative_x(constant=Fraction(5, 3))
        assert F.coefficient(0, 0) == A.scalar(Fraction(5, 3))
        assert F.coefficient(0, 2) == A.scalar(Fraction(1, 2))


def _even_jet_part(f):
    terms = {}
    for (mask, power), c in f.terms.items():
        keep = c.even_part() if not mask.bit_count() & 1 else c.odd_part()
        if keep.terms:
            terms[(mask, power)] = keep
    return SuperJet(f.alg, f.n_odd, f.base_x, f.order, terms)


def _odd_jet_part(f):
    terms = {}
    for (mask, power), c in f.terms.items():
        keep = c.odd_part() if not mask.bit_count() & 1 else c.even_part()
        if keep.terms:
            terms[(mask, power)] = keep
    return SuperJet(f.alg, f.n_odd, f.base_x, f.order, terms)


class TestSeries:
    def test_reciprocal_of_coordinate(self):
        x = SuperJet.coordinate(A, 1, 1)
        r = x.reciprocal(order=4)
        for j in range(5):
            assert r.coefficient(0, j) == A.scalar((-1) ** j)
        assert (x * r - 1).truncate(4).is_zero()

    @given(jets(n_odd=1, max_power=2))
    @settings(max_examples=40, deadline=None)
    def test_reciprocal_roundtrip(self, f):
        f = f + 2  # make the base value invertible
        r = f.reciprocal(order=4)
        assert (f * r - 1).truncate(r.order).is_zero()
        assert (r * f - 1).truncate(r.order).is_zero()

    @given(jets(n_odd=1, max_power=2))
    @settings(max_examples=40, deadline=None)
    def test_sqrt_roundtrip(self, f):
        g = _even_jet_part(f) + 3
        sq = g * g
        r = sq.sqrt(order=4)
        assert (r * r - sq.truncate(4)).is_zero()

    @given(jets(n_odd=1, max_power=2))
    @settings(max_examples=40, deadline=None)
    def test_log_exp_roundtrip(self, f):
        g = _even_jet_part(f)
        g = g - g.coefficient(0, 0) + 1  # body one for exact log
        l = g.log(order=4)
        assert (l.exp() - g.truncate(4)).is_zero()

    def test_series_on_exact_jet_needs_order(self):
        x = SuperJet.coordinate(A, 1, 1)
        with pytest.raises(TruncationError):
            x.reciprocal()

    def test_series_needs_invertible_base(self):
        x = SuperJet.coordinate(A, 1, 0)
        with pytest.raises(NotInvertible):
            x.reciprocal(order=3)

    def test_sqrt_rejects_odd_jet(self):
        xi = SuperJet.odd_coordinate(A, 1, 0, 0)
        with pytest.raises(ParityError):
            (xi + 1).sqrt(order=3)


class TestEvaluation:
    @given(jets(), even_points(), odd_points(), odd_points())
    @settings(max_examples=50, deadline=None)
    def test_evaluation_is_a_homomorphism(self, f, dx, o1, o2):
        g = SuperJet.coordinate(A, 2, 0) ** 2 + SuperJet.odd_coordinate(A, 2, 0, 1)
        p = A.scalar(0) + dx.soul()
        args = (p, [o1, o2])
        lhs = (f + g).evaluate(*args)
        assert lhs == f.evaluate(*args) + g.evaluate(*args)
        lhs = (f * g).evaluate(*args)
        assert lhs == f.evaluate(*args) * g.evaluate(*args)

    def test_body_mismatch_raises(self):
        f = SuperJet.coordinate(A, 1, 2)
        with pytest.raises(JetError):
            f.evaluate(A.scalar(3), [A.zero()])

    def test_truncation_guard(self):
        # jet valid to h^1 evaluated where delta^2 != 0 must refuse
        f = SuperJet.coordinate(A, 0, 0).truncate(1)
        delta = A.gen(0) * A.gen(1) + A.gen(2) * A.gen(3)
        assert not (delta * delta).is_zero()
        with pytest.raises(TruncationError):
            f.evaluate(A.scalar(0) + delta, [])

    def test_parity_guards(self):
        f = SuperJet.coordinate(A, 1, 0)
        with pytest.raises(ParityError):
            f.evaluate(A.gen(0), [A.zero()])
        with pytest.raises(ParityError):
            f.evaluate(A.scalar(0), [A.scalar(1)])


class TestSubstitution:
    def test_polynomial_composition_exact(self):
        xp = SuperJet.coordinate(A, 1, 1)
        inner = xp * xp + 3  # value 4 at base 1
        xi_in = SuperJet.odd_coordinate(A, 1, 1, 0)
        outer = SuperJet.coordinate(A, 1, 4) ** 2
        comp = substitute(outer, inner, [xi_in])
        assert comp.order == ORDER_INF
        assert comp == inner * inner

    def test_nilpotent_shift_lowers_order(self):
        xp = SuperJet.coordinate(A, 1, 1)
        nu = A.gen(0) * A.gen(1)
        inner = xp * xp + 3 + SuperJet.constant(A, 1, 1, nu)
        xi_in = SuperJet.odd_coordinate(A, 1, 1, 0)
        outer = (SuperJet.coordinate(A, 1, 4) ** 2).truncate(6)
        comp = substitute(outer, inner, [xi_in])
        assert nilpotency_index(nu) == 2
        assert comp.order == 5
        assert comp == (inner * inner).truncate(5)

    def test_odd_substitution_signs(self):
        # outer = xi1 xi2 . c ; inner swaps the odd coordinates
        A2 = GrassmannAlgebra(2)
        c = A2.gen(0)
        outer = SuperJet.from_terms(A2, 2, 0, ORDER_INF, {(0b11, 0): c})
        x_in = SuperJet.coordinate(A2, 2, 0)
        xi1 = SuperJet.odd_coordinate(A2, 2, 0, 0)
        xi2 = SuperJet.odd_coordinate(A2, 2, 0, 1)
        comp = substitute(outer, x_in, [xi2, xi1])
        # xi2 xi1 . c = - xi1 xi2 . c
        assert comp == SuperJet.from_terms(A2, 2, 0, ORDER_INF, {(0b11, 0): -c})

    @given(jets(n_odd=1, max_power=2))
    @settings(max_examples=30, deadline=None)
    def test_substitute_matches_evaluate(self, f):
        # recentre f from base 0 to base 7 by composing with a translation,
        # then check both jets agree at a common point
        x_in = SuperJet.coordinate(A, 1, 7) - 7
        xi_in = SuperJet.odd_coordinate(A, 1, 7, 0)
        comp = substitute(f, x_in, [xi_in])
        pt = A.gen(0) * A.gen(1) * Fraction(1, 2)
        xi_val = A.gen(2)
        lhs = comp.evaluate(A.scalar(7) + pt, [xi_val])
        rhs = f.evaluate(A.scalar(0) + pt, [xi_val])
        assert lhs == rhs
