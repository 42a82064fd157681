"""Rational functions kept in the factored form t^shift * p(t) * prod (1-t^k)^e_k.

The only denominators that ever occur in this project are products of
cyclotomic-style factors (1 - t^k), so the factor dict maps k >= 1 to an
integer exponent e_k (negative exponents are denominator factors).  Keeping
the factorization explicit makes exact series expansion and exact
polynomial certification cheap.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import (
    LaurentPoly,
    LaurentSeries,
    NonDivisible,
    divide_exact,
    geometric_power,
    one_minus,
)


class PoleAtPoint(ArithmeticError):
    """Evaluation requested at a genuine pole."""


class FactoredRatFunc:
    """Immutable t^shift * numer * prod_k (1 - t^k)^{e_k}.

    Canonical form: numer is zero (then shift = 0, factors empty) or has
    min exponent 0; factor exponents are nonzero.  No attempt is made to
    cancel (1 - t^k) factors against the numerator, so equality testing
    cross-multiplies instead of comparing representations.
    """

    __slots__ = ("shift", "numer", "factors")

    def __init__(self, shift=0, numer=None, factors=None):
        if numer is None:
            numer = LaurentPoly.one()
        fac = {}
        if factors:
            for k, e in factors.items():
                k, e = int(k), int(e)
                if k < 1:
                    raise ValueError("factor index must be >= 1")
                if e:
                    fac[k] = fac.get(k, 0) + e
            fac = {k: e for k, e in fac.items() if e}
        if numer.is_zero():
            shift, fac = 0, {}
        else:
            m = numer.min_exp()
            if m:
                shift += m
                numer = numer.shift(-m)
        object.__setattr__(self, "shift", int(shift))
        object.__setattr__(self, "numer", numer)
        object.__setattr__(self, "factors", fac)

    def __setattr__(self, name, value):
        raise AttributeError("FactoredRatFunc is immutable")

    @classmethod
    def zero(cls):
        return cls(0, LaurentPoly.zero())

    @classmethod
    def one(cls):
        return cls()

    @classmethod
    def monomial(cls, e, c=1):
        return cls(e, LaurentPoly({0: c}))

    @classmethod
    def from_poly(cls, poly):
        return cls(0, poly)

    def is_zero(self):
        return self.numer.is_zero()

    def __mul__(self, other):
        if not isinstance(other, FactoredRatFunc):
            return NotImplemented
        fac = dict(self.factors)
        for k, e in other.factors.items():
            fac[k] = fac.get(k, 0) + e
        return FactoredRatFunc(self.shift + other.shift, self.numer * other.numer, fac)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.numer.is_monomial():
                raise ValueError("negative power with non-monomial numerator is unsupported")
            ((e, c),) = self.numer.coeffs.items()
            return FactoredRatFunc(
                (self.shift + e) * n,
                LaurentPoly({0: Fraction(1, 1) / c ** (-n)}),
                {k: v * n for k, v in self.factors.items()},
            )
        return FactoredRatFunc(
            self.shift * n, self.numer**n, {k: v * n for k, v in self.factors.items()}
        )

    def scale(self, c):
        return FactoredRatFunc(self.shift, self.numer.scale(c), self.factors)

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if not isinstance(other, FactoredRatFunc):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        keys = set(self.factors) | set(other.factors)
        common = {k: min(self.factors.get(k, 0), other.factors.get(k, 0)) for k in keys}
        shift = min(self.shift, other.shift)

        def lifted(f):
            p = f.numer.shift(f.shift - shift)
            for k in keys:
                e = f.factors.get(k, 0) - common[k]
                if e:
                    p = p * one_minus(k) ** e
            return p

        return FactoredRatFunc(shift, lifted(self) + lifted(other), common)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, FactoredRatFunc):
            return NotImplemented
        return (self - other).is_zero()

    def expand(self, trunc):
        """LaurentSeries of this function, exact through trunc."""
        work = trunc - self.shift
        if self.numer.is_zero() or work < 0:
            # zero function, or every exponent of the result is >= shift > trunc
            return LaurentSeries.zero(trunc)
        series = LaurentSeries.from_poly(self.numer, work)
        for k, e in sorted(self.factors.items()):
            if e > 0:
                series = series.mul_poly(one_minus(k) ** e)
                series = series.truncate(work)
            else:
                series = series * geometric_power(k, -e, work)
        assert series.trunc >= work
        return series.truncate(work).shift(self.shift)

    def to_laurent_poly(self):
        """Exact Laurent polynomial equal to this function.

        Raises NonDivisible if some denominator factor does not divide out.
        """
        p = self.numer
        for k, e in sorted(self.factors.items()):
            if e > 0:
                p = p * one_minus(k) ** e
        for k, e in sorted(self.factors.items()):
            for _ in range(-e if e < 0 else 0):
                p = divide_exact(p, one_minus(k))
        return p.shift(self.shift)

    def order_lower_bound(self):
        """Cheap certified lower bound on the t-order (exact if no cancellation)."""
        if self.is_zero():
            return None
        return self.shift  # numer and all (1-t^k)^e expansions start at t^0

    def evaluate(self, x):
        """Exact value at t = x, removing removable singularities.

        Raises PoleAtPoint when the function has a genuine pole at x.
        """
        if not isinstance(x, (int, Fraction)):
            raise TypeError("evaluation point must be exact (int or Fraction)")
        x = Fraction(x)
        if self.is_zero():
            return Fraction(0)
        if x == 0:
            if self.shift < 0:
                raise PoleAtPoint("pole at t = 0")
            return self.numer.coeff(0) if self.shift == 0 else Fraction(0)
        # split each piece as (t - x)^m * unit and combine orders exactly
        order, unit = _vanishing_split(self.numer, x)
        for k, e in self.factors.items():
            if x**k == 1:
                order += e
                # (1 - t^k) = (t - x) * h with h(x) = -k * x^(k-1)
                unit *= (Fraction(-k) * x ** (k - 1)) ** e
            else:
                unit *= (1 - x**k) ** e
        if order < 0:
            raise PoleAtPoint(f"pole of order {-order} at t = {x}")
        if order > 0:
            return Fraction(0)
        return x**self.shift * unit

    def __repr__(self):
        fac = "".join(
            f"*(1-t^{k})^{e}" for k, e in sorted(self.factors.items())
        )
        return f"FactoredRatFunc(t^{self.shift} * ({self.numer!r}){fac})"


def _vanishing_split(poly, x):
    """Return (m, value) with poly = (t - x)^m * h and h(x) = value != 0."""
    m = poly.min_exp()
    work = {e - m: c for e, c in poly.coeffs.items()}  # ordinary polynomial now
    order = 0
    while True:
        deg = max(work)
        # synthetic division by (t - x) evaluates and divides in one pass
        quot = {}
        acc = Fraction(0)
        for e in range(deg, -1, -1):
            acc = acc * x + work.get(e, Fraction(0))
            if e > 0:
                quot[e - 1] = acc
        if acc:
            return order, acc * x**m
        order += 1
        work = {e: c for e, c in quot.items() if c}
        if not work:
            raise AssertionError("nonzero polynomial fully divided by (t - x)")


def expand_series(func, trunc):
    """Module-level convenience wrapper for FactoredRatFunc.expand."""
    return func.expand(trunc)
