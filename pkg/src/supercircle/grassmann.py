"""Finite Grassmann algebras over exact rationals or binary floats.

A GrassmannNumber is a finite sum  sum_m  theta^m . c_m  where m runs over
subsets of the generators (stored as bitmasks, bit i = generator i) and the
scalar coefficients c_m live in one of two backends:

* ``rational``: ``fractions.Fraction``, all operations exact, tolerance 0;
* ``f64``: Python floats, comparisons against an explicit tolerance.

The backend is a property of the algebra, never of an individual number, and
two numbers only combine when their algebras agree in both generator count
and backend.  Generators anticommute, so every number is nilpotent apart
from its body (the coefficient of the empty monomial), which is what makes
the inverse / square root / logarithm series below terminate exactly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

RATIONAL = "rational"
FLOAT64 = "f64"

EVEN = "even"
ODD = "odd"
MIXED = "mixed"


class AlgebraError(ValueError):
    """Base error for algebra misuse."""


class BackendMismatch(AlgebraError):
    """Operands belong to different algebras or scalar backends."""


class ParityError(AlgebraError):
    """Operation requires a definite parity the operand does not have."""


class NotInvertible(AlgebraError):
    """Zero body where an invertible element is required."""


class NotRepresentable(AlgebraError):
    """Result exists but not in the requested exact backend."""


@lru_cache(maxsize=None)
def _merge_sign(a: int, b: int) -> int:
    """Sign of theta^a . theta^b relative to theta^(a|b), for disjoint masks.

    Each generator in b hops over the generators of a that sit above it.
    """
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        swaps += (a >> low.bit_length()).bit_count()
        bb ^= low
    return -1 if swaps & 1 else 1


def _sqrt_fraction(q: Fraction) -> Fraction:
    if q < 0:
        raise NotRepresentable("negative body under exact square root")
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise NotRepresentable(f"{q} is not a perfect rational square")
    return Fraction(rn, rd)


class GrassmannAlgebra:
    """Context object fixing the generator count and the scalar backend."""

    __slots__ = ("gens", "field")

    def __init__(self, gens: int, field: str = RATIONAL):
        if gens < 0:
            raise AlgebraError("generator count must be nonnegative")
        if field not in (RATIONAL, FLOAT64):
            raise AlgebraError(f"unknown scalar backend {field!r}")
        self.gens = gens
        self.field = field

    def __eq__(self, other):
        return (
            isinstance(other, GrassmannAlgebra)
            and self.gens == other.gens
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.gens, self.field))

    def __repr__(self):
        return f"GrassmannAlgebra(gens={self.gens}, field={self.field!r})"

    # -- scalar handling ------------------------------------------------

    def coerce(self, value):
        """Coerce a plain scalar into this backend, rejecting lossy mixes."""
        if self.field == RATIONAL:
            if isinstance(value, float):
                raise BackendMismatch("float scalar in rational backend")
            if isinstance(value, Fraction):
                return value
            if isinstance(value, int):
                return Fraction(value)
            if isinstance(value, str):
                return Fraction(value)
            raise BackendMismatch(f"cannot coerce {type(value).__name__} to Fraction")
        if isinstance(value, (int, float)):
            return float(value)
        if isinstance(value, Fraction):
            return float(value)
        if isinstance(value, str):
            return float(Fraction(value))
        raise BackendMismatch(f"cannot coerce {type(value).__name__} to float")

    @property
    def zero_scalar(self):
        return Fraction(0) if self.field == RATIONAL else 0.0

    # -- constructors ----------------------------------------------------

    def zero(self) -> "GrassmannNumber":
        return GrassmannNumber(self, {})

    def one(self) -> "GrassmannNumber":
        return self.scalar(1)

    def scalar(self, value) -> "GrassmannNumber":
        v = self.coerce(value)
        return GrassmannNumber(self, {0: v} if v != 0 else {})

    def gen(self, i: int) -> "GrassmannNumber":
        """Generator theta_i, 0-based."""
        if not 0 <= i < self.gens:
            raise AlgebraError(f"generator index {i} out of range for {self.gens} gens")
        return GrassmannNumber(self, {1 << i: self.coerce(1)})

    def monomial(self, indices, value=1) -> "GrassmannNumber":
        """theta_{i1}...theta_{ik} . value for strictly increasing indices."""
        mask = 0
        last = -1
        for i in indices:
            if not 0 <= i < self.gens:
                raise AlgebraError(f"generator index {i} out of range")
            if i <= last:
                raise AlgebraError("monomial indices must be strictly increasing")
            mask |= 1 << i
            last = i
        v = self.coerce(value)
        return GrassmannNumber(self, {mask: v} if v != 0 else {})

    def from_terms(self, terms: dict) -> "GrassmannNumber":
        out = {}
        for mask, value in terms.items():
            if mask < 0 or mask >= (1 << self.gens):
                raise AlgebraError(f"mask {mask} out of range")
            v = self.coerce(value)
            if v != 0:
                out[mask] = v
        return GrassmannNumber(self, out)

    def extend(self, extra: int) -> "GrassmannAlgebra":
        """Same backend with ``extra`` more generators appended."""
        return GrassmannAlgebra(self.gens + extra, self.field)

    def promote(self, x: "GrassmannNumber") -> "GrassmannNumber":
        """Reinterpret a number from a smaller algebra (same backend) here."""
        if x.alg.field != self.field or x.alg.gens > self.gens:
            raise BackendMismatch("cannot promote across backends or into fewer gens")
        return GrassmannNumber(self, dict(x.terms))


class GrassmannNumber:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: GrassmannAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    # -- bookkeeping -----------------------------------------------------

    def _check(self, other: "GrassmannNumber"):
        if self.alg != other.alg:
            raise BackendMismatch(f"algebra mismatch: {self.alg} vs {other.alg}")

    def _coerce_operand(self, other):
        if isinstance(other, GrassmannNumber):
            self._check(other)
            return other
        if isinstance(other, (int, float, Fraction, str)):
            return self.alg.scalar(other)
        return None

    @property
    def body(self):
        return self.terms.get(0, self.alg.zero_scalar)

    def soul(self) -> "GrassmannNumber":
        return GrassmannNumber(self.alg, {m: v for m, v in self.terms.items() if m})

    def coefficient(self, mask: int):
        return self.terms.get(mask, self.alg.zero_scalar)

    def parity(self) -> str:
        """EVEN, ODD or MIXED; the zero element counts as even."""
        seen_even = seen_odd = False
        for m in self.terms:
            if m.bit_count() & 1:
                seen_odd = True
            else:
                seen_even = True
        if seen_odd and seen_even:
            return MIXED
        return ODD if seen_odd else EVEN

    def is_even(self) -> bool:
        return self.parity() == EVEN

    def is_odd(self) -> bool:
        return self.parity() == ODD

    def even_part(self) -> "GrassmannNumber":
        return GrassmannNumber(
            self.alg, {m: v for m, v in self.terms.items() if not m.bit_count() & 1}
        )

    def odd_part(self) -> "GrassmannNumber":
        return GrassmannNumber(
            self.alg, {m: v for m, v in self.terms.items() if m.bit_count() & 1}
        )

    def twist(self, k: int) -> "GrassmannNumber":
        """Sign picked up by commuting this coefficient across k odd symbols."""
        if not k & 1:
            return self
        return GrassmannNumber(
            self.alg,
            {m: (-v if m.bit_count() & 1 else v) for m, v in self.terms.items()},
        )

    def max_abs(self):
        return max((abs(v) for v in self.terms.values()), default=self.alg.zero_scalar)

    def is_zero(self, tol=0) -> bool:
        if not self.terms:
            return True
        if tol:
            return all(abs(v) <= tol for v in self.terms.values())
        return False

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, v in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = v
            else:
                s = s + v
                if s == 0:
                    del out[m]
                else:
                    out[m] = s
        return GrassmannNumber(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannNumber(self.alg, {m: -v for m, v in self.terms.items()})

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
        if not isinstance(other, GrassmannNumber):
            if not isinstance(other, (int, float, Fraction, str)):
                return NotImplemented
            c = self.alg.coerce(other)
            if c == 0:
                return self.alg.zero()
            return GrassmannNumber(self.alg, {m: v * c for m, v in self.terms.items()})
        self._check(other)
        a, b = self.terms, other.terms
        # scalar fast paths keep the hot loops short
        if len(a) == 1 and 0 in a:
            c = a[0]
            return GrassmannNumber(self.alg, {m: c * v for m, v in b.items()})
        if len(b) == 1 and 0 in b:
            c = b[0]
            return GrassmannNumber(self.alg, {m: v * c for m, v in a.items()})
        out: dict = {}
        for ma, va in a.items():
            for mb, vb in b.items():
                if ma & mb:
                    continue
                m = ma | mb
                v = va * vb
                if _merge_sign(ma, mb) < 0:
                    v = -v
                s = out.get(m)
                out[m] = v if s is None else s + v
        return GrassmannNumber(self.alg, {m: v for m, v in out.items() if v != 0})

    def __rmul__(self, other):
        # scalars commute with everything
        return self.__mul__(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise AlgebraError("only nonnegative integer powers")
        out = self.alg.one()
        for _ in range(n):
            out = out * self
            if not out.terms:
                break
        return out

    def __truediv__(self, other):
        other = self._coerce_operand(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, float, str)):
            other = self.alg.scalar(other)
        if not isinstance(other, GrassmannNumber):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    __hash__ = None

    # -- nilpotent-aware functions -----------------------------------------

    def inverse(self) -> "GrassmannNumber":
        """Geometric series in u = soul/body; u is nilpotent so it stops."""
        b = self.body
        if b == 0:
            raise NotInvertible("zero body is not invertible")
        inv_b = self.alg.coerce(1) / b
        u = self.soul() * inv_b
        acc = self.alg.one()
        term = self.alg.one()
        while True:
            term = term * u
            if not term.terms:
                break
            term = -term
            acc = acc + term
        return acc * inv_b

    def sqrt(self) -> "GrassmannNumber":
        """Principal square root of an even element with positive body.

        Rationally the body must itself be a perfect square; the rest is the
        binomial series in the nilpotent part, which terminates.
        """
        if self.parity() != EVEN:
            raise ParityError("square root requires an even element")
        b = self.body
        if b <= 0:
            raise NotInvertible("square root requires positive body")
        if self.alg.field == RATIONAL:
            rb = _sqrt_fraction(b)
        else:
            rb = math.sqrt(b)
        u = self.soul() * (self.alg.coerce(1) / b)
        acc = self.alg.one()
        upow = self.alg.one()
        c = Fraction(1)
        k = 0
        while True:
            c = c * (Fraction(1, 2) - k) / (k + 1)
            k += 1
            upow = upow * u
            if not upow.terms:
                break
            acc = acc + upow * self.alg.coerce(c)
        return acc * rb

    def log(self) -> "GrassmannNumber":
        """log of an even element with positive body.

        In the rational backend the body must be exactly 1 (log of any other
        rational is irrational); floats take the usual branch.
        """
        if self.parity() != EVEN:
            raise ParityError("log requires an even element")
        b = self.body
        if b <= 0:
            raise NotInvertible("log requires positive body")
        if self.alg.field == RATIONAL:
            if b != 1:
                raise NotRepresentable("exact log needs body 1")
            lead = self.alg.zero()
        else:
            lead = self.alg.scalar(math.log(b))
        u = self.soul() * (self.alg.coerce(1) / b)
        acc = self.alg.zero()
        upow = self.alg.one()
        k = 0
        while True:
            upow = upow * u
            k += 1
            if not upow.terms:
                break
            c = Fraction((-1) ** (k + 1), k)
            acc = acc + upow * self.alg.coerce(c)
        return lead + acc

    def exp(self) -> "GrassmannNumber":
        """exp of an even element; rational backend needs body 0."""
        if self.parity() != EVEN:
            raise ParityError("exp requires an even element")
        b = self.body
        if self.alg.field == RATIONAL:
            if b != 0:
                raise NotRepresentable("exact exp needs body 0")
            lead = self.alg.coerce(1)
        else:
            lead = math.exp(b)
        u = self.soul()
        acc = self.alg.one()
        upow = self.alg.one()
        k = 0
        while True:
            upow = upow * u
            k += 1
            if not upow.terms:
                break
            acc = acc + upow * self.alg.coerce(Fraction(1, math.factorial(k)))
        return acc * lead

    def power(self, num: int, den: int = 1) -> "GrassmannNumber":
        """x^(num/den) for den in {1, 2}; half powers go through sqrt."""
        if den == 1:
            if num >= 0:
                return self ** num
            return self.inverse() ** (-num)
        if den == 2:
            r = self.sqrt()
            return r.power(num, 1)
        raise AlgebraError("only integer and half-integer powers supported")

    # -- display ------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=lambda m: (m.bit_count(), m)):
            v = self.terms[m]
            if m == 0:
                bits.append(f"{v}")
            else:
                gens = ".".join(f"t{i + 1}" for i in range(m.bit_length()) if m >> i & 1)
                bits.append(f"{gens}*{v}" if v != 1 else gens)
        return " + ".join(bits)
