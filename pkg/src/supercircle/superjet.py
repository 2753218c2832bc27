"""Truncated Taylor expansions in one even and several odd variables.

A SuperJet represents a germ f(x, xi_1..xi_N) around a base point a through
terms

    f = sum_{A, j}  h^j . xi^A . c_{A,j},      h = x - a,

keyed by (ximask, power) with the Grassmann coefficient kept on the *right*
of the odd monomial.  ``order`` says through which power of h the expansion
is trusted; ORDER_INF marks jets that are exact (polynomials in h and xi).

All coefficients live in one GrassmannAlgebra, so a jet mixes two kinds of
odd quantities: the xi variables of the supercircle and the theta generators
hidden inside the coefficients.  The sign bookkeeping below is exactly the
bookkeeping needed to keep those straight.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .grassmann import (
    EVEN,
    MIXED,
    ODD,
    RATIONAL,
    AlgebraError,
    BackendMismatch,
    GrassmannAlgebra,
    GrassmannNumber,
    NotInvertible,
    ParityError,
    _merge_sign,
)

DEFAULT_ORDER = 6
ORDER_INF = 10 ** 9


class JetError(AlgebraError):
    """Structural misuse of jets (mismatched contexts, exhausted order)."""


class TruncationError(JetError):
    """An operation would have needed more expansion order than available."""


def _term_parity(mask: int, coeff: GrassmannNumber) -> str:
    p = coeff.parity()
    if p == MIXED:
        return MIXED
    flip = mask.bit_count() & 1
    if p == EVEN:
        return ODD if flip else EVEN
    return EVEN if flip else ODD


class SuperJet:
    __slots__ = ("alg", "n_odd", "base_x", "order", "terms")

    def __init__(self, alg: GrassmannAlgebra, n_odd: int, base_x, order: int,
                 terms: dict):
        self.alg = alg
        self.n_odd = n_odd
        self.base_x = base_x
        self.order = order
        self.terms = terms

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, alg: GrassmannAlgebra, n_odd: int, base_x, value,
                 order: int = ORDER_INF) -> "SuperJet":
        if not isinstance(value, GrassmannNumber):
            value = alg.scalar(value)
        elif value.alg != alg:
            raise BackendMismatch("constant coefficient from a different algebra")
        terms = {} if not value.terms else {(0, 0): value}
        return cls(alg, n_odd, alg.coerce(base_x), order, terms)

    @classmethod
    def coordinate(cls, alg: GrassmannAlgebra, n_odd: int, base_x) -> "SuperJet":
        """The even coordinate x = a + h, exact."""
        a = alg.coerce(base_x)
        terms = {(0, 1): alg.scalar(1)}
        if a != 0:
            terms[(0, 0)] = alg.scalar(a)
        return cls(alg, n_odd, a, ORDER_INF, terms)

    @classmethod
    def odd_coordinate(cls, alg: GrassmannAlgebra, n_odd: int, base_x,
                       i: int) -> "SuperJet":
        """The odd coordinate xi_i (0-based), exact."""
        if not 0 <= i < n_odd:
            raise JetError(f"odd index {i} out of range for n_odd={n_odd}")
        return cls(alg, n_odd, alg.coerce(base_x), ORDER_INF,
                   {(1 << i, 0): alg.scalar(1)})

    @classmethod
    def from_terms(cls, alg: GrassmannAlgebra, n_odd: int, base_x, order: int,
                   terms: dict) -> "SuperJet":
        """Build from {(ximask, power): coefficient}, dropping zeros."""
        out = {}
        for (mask, power), c in terms.items():
            if mask < 0 or mask >= (1 << n_odd):
                raise JetError(f"ximask {mask} out of range for n_odd={n_odd}")
            if power < 0:
                raise JetError("negative power in jet term")
            if order != ORDER_INF and power > order:
                raise JetError("stored power exceeds the declared order")
            if not isinstance(c, GrassmannNumber):
                c = alg.scalar(c)
            elif c.alg != alg:
                raise BackendMismatch("jet coefficient from a different algebra")
            if c.terms:
                out[(mask, power)] = c
        return cls(alg, n_odd, alg.coerce(base_x), order, out)

    @classmethod
    def from_polynomial(cls, alg: GrassmannAlgebra, n_odd: int, base_x,
                        coeffs) -> "SuperJet":
        """sum_k coeffs[k] x^k re-expanded around base_x, exact.

        Coefficients may be scalars or GrassmannNumbers (xi-independent).
        """
        x = cls.coordinate(alg, n_odd, base_x)
        out = cls.constant(alg, n_odd, base_x, 0)
        xp = cls.constant(alg, n_odd, base_x, 1)
        for k, c in enumerate(coeffs):
            if k:
                xp = xp * x
            out = out + xp * cls.constant(alg, n_odd, base_x, c)
        return out

    def _like(self, terms: dict, order=None) -> "SuperJet":
        return SuperJet(self.alg, self.n_odd, self.base_x,
                        self.order if order is None else order, terms)

    # -- bookkeeping -------------------------------------------------------

    def _check(self, other: "SuperJet"):
        if (self.alg != other.alg or self.n_odd != other.n_odd
                or self.base_x != other.base_x):
            raise JetError("jets live over different contexts or base points")

    def coefficient(self, mask: int, power: int) -> GrassmannNumber:
        c = self.terms.get((mask, power))
        return c if c is not None else self.alg.zero()

    def is_zero(self, tol=0) -> bool:
        return all(c.is_zero(tol) for c in self.terms.values())

    def max_abs(self):
        return max((c.max_abs() for c in self.terms.values()),
                   default=self.alg.zero_scalar)

    def parity(self) -> str:
        seen = set()
        for (mask, _), c in self.terms.items():
            seen.add(_term_parity(mask, c))
            if MIXED in seen or len(seen) > 1:
                return MIXED
        if not seen:
            return EVEN
        return seen.pop()

    def is_even(self) -> bool:
        return self.parity() == EVEN

    def is_odd(self) -> bool:
        return self.parity() == ODD

    def truncate(self, order: int) -> "SuperJet":
        """Restrict validity to h^order, dropping higher stored powers."""
        if order >= self.order:
            return self if order == self.order else self._like(dict(self.terms), self.order)
        terms = {k: c for k, c in self.terms.items() if k[1] <= order}
        return self._like(terms, order)

    def with_algebra(self, alg: GrassmannAlgebra) -> "SuperJet":
        """Promote coefficients into a larger algebra, same backend."""
        terms = {k: alg.promote(c) for k, c in self.terms.items()}
        return SuperJet(alg, self.n_odd, alg.coerce(self.base_x), self.order, terms)

    def twist(self, k: int) -> "SuperJet":
        """Sign for commuting this whole jet across k odd symbols."""
        if not k & 1:
            return self
        out = {}
        for (mask, power), c in self.terms.items():
            c = c.twist(1)
            if mask.bit_count() & 1:
                c = -c
            out[(mask, power)] = c
        return self._like(out)

    # -- ring operations -----------------------------------------------------

    def _coerce_operand(self, other):
        if isinstance(other, SuperJet):
            self._check(other)
            return other
        if isinstance(other, GrassmannNumber):
            return SuperJet.constant(self.alg, self.n_odd, self.base_x, other)
        if isinstance(other, (int, float, Fraction, str)):
            return SuperJet.constant(self.alg, self.n_odd, self.base_x,
                                     self.alg.scalar(other))
        return None

    def __add__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if not s.terms:
                    del out[k]
                else:
                    out[k] = s
        if order < self.order or order < other.order:
            out = {k: c for k, c in out.items() if k[1] <= order}
        return SuperJet(self.alg, self.n_odd, self.base_x, order, out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        out: dict = {}
        for (ma, ja), c in self.terms.items():
            for (mb, jb), d in other.terms.items():
                if ma & mb:
                    continue
                j = ja + jb
                if j > order:
                    continue
                v = c.twist(mb.bit_count()) * d
                if _merge_sign(ma, mb) < 0:
                    v = -v
                if not v.terms:
                    continue
                key = (ma | mb, j)
                s = out.get(key)
                out[key] = v if s is None else s + v
        return SuperJet(self.alg, self.n_odd, self.base_x, order,
                        {k: c for k, c in out.items() if c.terms})

    def __rmul__(self, other):
        # scalars and plain numbers commute; Grassmann constants go through
        # a constant jet on the left to keep the sign convention honest
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise JetError("only nonnegative integer powers of jets")
        out = SuperJet.constant(self.alg, self.n_odd, self.base_x, 1)
        for _ in range(n):
            out = out * self
            if not out.terms:
                break
        return out

    def __truediv__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        eff = min(self.order, other.order)
        if eff >= ORDER_INF:
            return self * other.reciprocal()
        return self * other.reciprocal(order=eff)

    def __eq__(self, other):
        if not isinstance(other, SuperJet):
            return NotImplemented
        return (self.alg == other.alg and self.n_odd == other.n_odd
                and self.base_x == other.base_x and self.order == other.order
                and self.terms == other.terms)

    __hash__ = None

    # -- calculus --------------------------------------------------------------

    def derivative_x(self) -> "SuperJet":
        out = {}
        for (mask, power), c in self.terms.items():
            if power == 0:
                continue
            out[(mask, power - 1)] = c * power
        order = self.order if self.order == ORDER_INF else self.order - 1
        return self._like(out, order)

    def derivative_xi(self, i: int) -> "SuperJet":
        """Left derivative with respect to xi_i."""
        if not 0 <= i < self.n_odd:
            raise JetError(f"odd index {i} out of range")
        bit = 1 << i
        out = {}
        for (mask, power), c in self.terms.items():
            if not mask & bit:
                continue
            below = (mask & (bit - 1)).bit_count()
            out[(mask ^ bit, power)] = -c if below & 1 else c
        return self._like(out)

    def mul_left_xi(self, i: int) -> "SuperJet":
        """xi_i . f, multiplication by the odd coordinate on the left."""
        bit = 1 << i
        out = {}
        for (mask, power), c in self.terms.items():
            if mask & bit:
                continue
            sign = _merge_sign(bit, mask)
            out[(mask | bit, power)] = c if sign > 0 else -c
        return self._like(out)

    def super_derivative(self, i: int) -> "SuperJet":
        """D_i = d/dxi_i + xi_i d/dx, the square root of d/dx."""
        fx = self.derivative_x()
        out = self.derivative_xi(i) + fx.mul_left_xi(i)
        order = self.order if self.order == ORDER_INF else self.order - 1
        return out.truncate(order) if order < out.order else out

    def antiderivative_x(self, constant=0) -> "SuperJet":
        """Termwise h-antiderivative; ``constant`` fills the (0, 0) slot."""
        out = {}
        for (mask, power), c in self.terms.items():
            out[(mask, power + 1)] = c * self.alg.coerce(Fraction(1, power + 1))
        if not isinstance(constant, GrassmannNumber):
            constant = self.alg.scalar(constant)
        if constant.terms:
            out[(0, 0)] = constant
        order = self.order if self.order == ORDER_INF else self.order + 1
        return self._like(out, order)

    # -- series functions ----------------------------------------------------

    def _split_unit(self, order: int):
        """Write self = (1 + u) . c0 with u carrying no (0, 0) part."""
        c0 = self.coefficient(0, 0)
        if c0.body == 0:
            raise NotInvertible("jet has no invertible value at the base point")
        u = self.truncate(order) * c0.inverse() - 1
        if self.alg.field != RATIONAL and (0, 0) in u.terms:
            # mathematically zero; floating noise would stall the series
            u = u._like({k: c for k, c in u.terms.items() if k != (0, 0)})
        return u, c0

    def _series_order(self, order) -> int:
        eff = self.order if order is None else min(order, self.order)
        if eff >= ORDER_INF:
            raise TruncationError(
                "series operation on an exact jet needs an explicit order")
        if eff < 0:
            raise TruncationError("jet order exhausted")
        return eff

    def _geometric(self, u: "SuperJet", coeff_of_k, order: int,
                   lead: "SuperJet") -> "SuperJet":
        acc = lead
        upow = SuperJet.constant(self.alg, self.n_odd, self.base_x, 1, order)
        for k in range(1, order + self.n_odd + self.alg.gens + 2):
            upow = upow * u
            if not upow.terms:
                break
            acc = acc + upow * self.alg.coerce(coeff_of_k(k))
        return acc

    def reciprocal(self, order=None) -> "SuperJet":
        eff = self._series_order(order)
        u, c0 = self._split_unit(eff)
        one = SuperJet.constant(self.alg, self.n_odd, self.base_x, 1, eff)
        series = self._geometric(u, lambda k: Fraction((-1) ** k), eff, one)
        inv = SuperJet.constant(self.alg, self.n_odd, self.base_x, c0.inverse(), eff)
        return inv * series

    def sqrt(self, order=None) -> "SuperJet":
        if self.parity() != EVEN:
            raise ParityError("jet square root requires an even jet")
        eff = self._series_order(order)
        u, c0 = self._split_unit(eff)
        coeffs = {}

        def binom_half(k, _c=coeffs):
            if k not in _c:
                _c[k] = (Fraction(1) if k == 0
                         else binom_half(k - 1) * (Fraction(1, 2) - (k - 1)) / k)
            return _c[k]

        one = SuperJet.constant(self.alg, self.n_odd, self.base_x, 1, eff)
        series = self._geometric(u, binom_half, eff, one)
        return series * c0.sqrt()

    def log(self, order=None) -> "SuperJet":
        if self.parity() != EVEN:
            raise ParityError("jet log requires an even jet")
        eff = self._series_order(order)
        u, c0 = self._split_unit(eff)
        zero = SuperJet.constant(self.alg, self.n_odd, self.base_x, 0, eff)
        series = self._geometric(u, lambda k: Fraction((-1) ** (k + 1), k), eff, zero)
        return series + c0.log()

    def exp(self, order=None) -> "SuperJet":
        if self.parity() != EVEN:
            raise ParityError("jet exp requires an even jet")
        eff = self._series_order(order)
        body = self.coefficient(0, 0)
        rest = self.truncate(eff) - body
        one = SuperJet.constant(self.alg, self.n_odd, self.base_x, 1, eff)
        series = self._geometric(rest, lambda k: Fraction(1, math.factorial(k)),
                                 eff, one)
        return series * body.exp()

    def power_half(self, num: int) -> "SuperJet":
        """self^(num/2) via sqrt; num may be negative."""
        r = self.sqrt()
        if num >= 0:
            return r ** num
        return r.reciprocal() ** (-num)

    # -- evaluation and substitution -------------------------------------------

    def evaluate(self, x_value: GrassmannNumber, xi_values) -> GrassmannNumber:
        """Exact evaluation at a point of the algebra; raises if truncation
        would matter, i.e. if the even displacement is not nilpotent enough."""
        if not isinstance(x_value, GrassmannNumber) or x_value.alg != self.alg:
            raise BackendMismatch("evaluation point from wrong algebra")
        if len(xi_values) != self.n_odd:
            raise JetError("wrong number of odd coordinates")
        if x_value.body != self.base_x:
            raise JetError("evaluation point body must equal the jet base")
        if x_value.parity() not in (EVEN,):
            raise ParityError("even coordinate value must be even")
        for v in xi_values:
            if v.alg != self.alg:
                raise BackendMismatch("odd value from wrong algebra")
            if v.terms and v.parity() != ODD:
                raise ParityError("odd coordinate values must be odd")
        delta = x_value.soul()
        if self.order != ORDER_INF and self.order >= 0:
            if not (delta ** (self.order + 1)).is_zero():
                raise TruncationError(
                    "displacement outlives the jet order; evaluation inexact")
        if self.order < 0:
            raise TruncationError("jet order exhausted")
        # group by power, reuse delta powers
        by_power: dict = {}
        for (mask, power), c in self.terms.items():
            by_power.setdefault(power, []).append((mask, c))
        out = self.alg.zero()
        dp = self.alg.one()
        for power in range(0, max(by_power, default=0) + 1):
            if power:
                dp = dp * delta
                if not dp.terms:
                    break
            entries = by_power.get(power)
            if not entries:
                continue
            inner = self.alg.zero()
            for mask, c in entries:
                prod = c
                m = mask
                while m:
                    i = m.bit_length() - 1
                    prod = xi_values[i] * prod
                    m ^= 1 << i
                inner = inner + prod
            out = out + dp * inner
        return out

    def __repr__(self):
        if not self.terms:
            return f"SuperJet(0 @ {self.base_x})"
        bits = []
        for (mask, power) in sorted(self.terms, key=lambda k: (k[1], k[0])):
            c = self.terms[(mask, power)]
            head = []
            if power:
                head.append(f"h^{power}" if power > 1 else "h")
            for i in range(mask.bit_length()):
                if mask >> i & 1:
                    head.append(f"x{i + 1}")
            core = ".".join(head) if head else "1"
            bits.append(f"{core}.({c!r})")
        tag = "inf" if self.order == ORDER_INF else self.order
        return f"SuperJet[{tag} @ {self.base_x}]: " + " + ".join(bits)


def nilpotency_index(x: GrassmannNumber) -> int:
    """Smallest m >= 1 with x^m == 0; requires x to be nilpotent."""
    if x.body != 0:
        raise AlgebraError("element with nonzero body is not nilpotent")
    p = x
    m = 1
    while p.terms:
        p = p * x
        m += 1
    return m


def substitute(outer: "SuperJet", x_inner: "SuperJet", xi_inner) -> "SuperJet":
    """Composite jet  outer(x_inner, xi_inner_1, ...).

    The inner jets share one context and base point; the body of x_inner at
    its base must equal outer's base point.  The result order accounts for
    the inner jets' orders and for the outer truncation interacting with the
    nilpotent part of the displacement: everything the even displacement
    carries at power zero (a soul constant, xi-monomial terms) can convert a
    dropped outer power into a surviving low power, so the validity cap is
    outer.order + 1 - m, with m the nilpotency index of that power-zero part.
    """
    if len(xi_inner) != outer.n_odd:
        raise JetError("wrong number of inner odd components")
    for g in xi_inner:
        x_inner._check(g)
    c00 = x_inner.coefficient(0, 0)
    if c00.body != outer.base_x:
        raise JetError("inner image base does not match outer base point")
    alg, n_odd, base = x_inner.alg, x_inner.n_odd, x_inner.base_x
    X = x_inner - alg.scalar(outer.base_x)
    if outer.order == ORDER_INF:
        cap = ORDER_INF
    else:
        level = {k: c for k, c in X.terms.items() if k[1] == 0}
        m0 = 1
        if level:
            nu_jet = SuperJet(alg, n_odd, base, ORDER_INF, level)
            p = nu_jet
            while p.terms:
                p = p * nu_jet
                m0 += 1
        cap = outer.order + 1 - m0
    inner_order = min([x_inner.order] + [g.order for g in xi_inner])
    result_order = min(inner_order, cap)
    if result_order < 0:
        raise TruncationError("composition exhausts the available jet order")
    by_power: dict = {}
    top = 0
    for (mask, power), c in outer.terms.items():
        by_power.setdefault(power, []).append((mask, c))
        top = max(top, power)
    zero = SuperJet.constant(alg, n_odd, base, 0, result_order)
    out = zero
    xp = SuperJet.constant(alg, n_odd, base, 1)
    for power in range(0, top + 1):
        if power:
            xp = xp * X
            if not xp.terms:
                break
        entries = by_power.get(power)
        if not entries:
            continue
        inner = zero
        for mask, c in entries:
            prod = SuperJet.constant(alg, n_odd, base, c)
            m = mask
            while m:
                i = m.bit_length() - 1
                prod = xi_inner[i] * prod
                m ^= 1 << i
            inner = inner + prod
        out = out + xp * inner
    return out.truncate(result_order)
