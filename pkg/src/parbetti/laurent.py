"""Exact Laurent polynomials and truncated Laurent series in one variable t.

Coefficients are fractions.Fraction throughout.  A LaurentPoly is a finite
sum of c*t^e with integer e (negative allowed).  A LaurentSeries carries its
coefficients only up to a truncation exponent and tracks how far it is exact,
so products of truncated series never silently pretend to more precision
than they have.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

MAX_TRUNCATION = 20000


class NonDivisible(ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class TruncationLimit(ValueError):
    """Requested series truncation exceeds MAX_TRUNCATION."""


def _coerce(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class LaurentPoly:
    """Immutable sparse Laurent polynomial {exponent: coefficient}, zeros dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for e, c in coeffs.items():
                c = _coerce(c)
                if c:
                    d[int(e)] = c
        object.__setattr__(self, "coeffs", d)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def t_power(cls, e, c=1):
        return cls({e: c})

    def is_zero(self):
        return not self.coeffs

    def is_monomial(self):
        return len(self.coeffs) == 1

    def min_exp(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no min exponent")
        return min(self.coeffs)

    def max_exp(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no max exponent")
        return max(self.coeffs)

    def coeff(self, e):
        return self.coeffs.get(e, Fraction(0))

    def items(self):
        return self.coeffs.items()

    def shift(self, k):
        """Multiply by t^k."""
        if k == 0:
            return self
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def scale(self, c):
        c = _coerce(c)
        if not c:
            return LaurentPoly.zero()
        return LaurentPoly({e: v * c for e, v in self.coeffs.items()})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = d.get(e, Fraction(0)) + c
            if s:
                d[e] = s
            elif e in d:
                del d[e]
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "coeffs", d)
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        d = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                s = d.get(e, Fraction(0)) + ca * cb
                if s:
                    d[e] = s
                elif e in d:
                    del d[e]
        out = LaurentPoly.__new__(LaurentPoly)
        object.__setattr__(out, "coeffs", d)
        return out

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial is unsupported")
            ((e, c),) = self.coeffs.items()
            return LaurentPoly({e * n: Fraction(1, 1) / c ** (-n)})
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def evaluate(self, x):
        x = _coerce(x)
        if x == 0 and self.coeffs and self.min_exp() < 0:
            raise ZeroDivisionError("negative exponent at t = 0")
        total = Fraction(0)
        for e, c in self.coeffs.items():
            total += c * x**e
        return total

    def __repr__(self):
        if not self.coeffs:
            return "LaurentPoly(0)"
        parts = [f"{c}*t^{e}" for e, c in sorted(self.coeffs.items())]
        return "LaurentPoly(" + " + ".join(parts) + ")"


def one_minus(k):
    """The polynomial 1 - t^k, k >= 1."""
    if k < 1:
        raise ValueError("factor exponent must be >= 1")
    return LaurentPoly({0: 1, k: -1})


def one_plus(k):
    return LaurentPoly({0: 1, k: 1})


def divide_exact(num, den):
    """Exact quotient num / den of Laurent polynomials.

    Raises NonDivisible if the division leaves a remainder.  Division is run
    top down, so the detected remainder is reported by its highest exponent.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero()
    ns, ds = num.min_exp(), den.min_exp()
    rem = {e - ns: c for e, c in num.coeffs.items()}
    dvs = {e - ds: c for e, c in den.coeffs.items()}
    dtop = max(dvs)
    dlead = dvs[dtop]
    quot = {}
    while rem:
        rtop = max(rem)
        if rtop < dtop:
            raise NonDivisible(f"remainder of degree {rtop + ns}")
        c = rem[rtop] / dlead
        e = rtop - dtop
        quot[e] = c
        for de, dc in dvs.items():
            k = de + e
            s = rem.get(k, Fraction(0)) - c * dc
            if s:
                rem[k] = s
            elif k in rem:
                del rem[k]
    return LaurentPoly(quot).shift(ns - ds)


class LaurentSeries:
    """Laurent series known exactly through exponent trunc (inclusive).

    Coefficients with exponent > trunc are unknown, not zero.  Arithmetic
    shrinks trunc per the usual rules so exactness is never overstated.
    """

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs, trunc):
        trunc = int(trunc)
        if trunc > MAX_TRUNCATION:
            raise TruncationLimit(f"truncation {trunc} exceeds {MAX_TRUNCATION}")
        d = {}
        if coeffs:
            for e, c in coeffs.items():
                c = _coerce(c)
                if c and e <= trunc:
                    d[int(e)] = c
        object.__setattr__(self, "coeffs", d)
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    @classmethod
    def from_poly(cls, poly, trunc):
        return cls(dict(poly.coeffs), trunc)

    @classmethod
    def zero(cls, trunc):
        return cls({}, trunc)

    def is_zero(self):
        """True if no nonzero coefficient is known; says nothing beyond trunc."""
        return not self.coeffs

    def order(self):
        """Exponent of the first known nonzero coefficient, or None if all zero."""
        return min(self.coeffs) if self.coeffs else None

    def order_bound(self):
        """Certified lower bound for the true order, valid even for a zero prefix."""
        return min(self.coeffs) if self.coeffs else self.trunc + 1

    def coeff(self, e):
        if e > self.trunc:
            raise ValueError(f"coefficient of t^{e} beyond truncation {self.trunc}")
        return self.coeffs.get(e, Fraction(0))

    def coeff_list(self, lo=None, hi=None):
        """Coefficients for exponents lo..hi inclusive as a list."""
        if lo is None:
            lo = self.order()
            if lo is None:
                return []
        if hi is None:
            hi = self.trunc
        if hi > self.trunc:
            raise ValueError("range exceeds truncation")
        return [self.coeffs.get(e, Fraction(0)) for e in range(lo, hi + 1)]

    def truncate(self, n):
        if n >= self.trunc:
            return self
        return LaurentSeries({e: c for e, c in self.coeffs.items() if e <= n}, n)

    def shift(self, k):
        if k == 0:
            return self
        return LaurentSeries({e + k: c for e, c in self.coeffs.items()}, self.trunc + k)

    def scale(self, c):
        c = _coerce(c)
        return LaurentSeries({e: v * c for e, v in self.coeffs.items()} if c else {}, self.trunc)

    def __neg__(self):
        return self.scale(-1)

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        trunc = min(self.trunc, other.trunc)
        d = {e: c for e, c in self.coeffs.items() if e <= trunc}
        for e, c in other.coeffs.items():
            if e > trunc:
                continue
            s = d.get(e, Fraction(0)) + c
            if s:
                d[e] = s
            elif e in d:
                del d[e]
        return LaurentSeries(d, trunc)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        # product is exact through min(trunc_a + ord_b, trunc_b + ord_a);
        # a zero prefix contributes its certified bound trunc+1
        ma, mb = self.order_bound(), other.order_bound()
        trunc = min(self.trunc + mb, other.trunc + ma)
        d = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = ea + eb
                if e > trunc:
                    continue
                s = d.get(e, Fraction(0)) + ca * cb
                if s:
                    d[e] = s
                elif e in d:
                    del d[e]
        return LaurentSeries(d, trunc)

    def mul_poly(self, poly):
        """Multiply by an exact polynomial; trunc shifts by its min exponent."""
        if poly.is_zero():
            return LaurentSeries.zero(self.trunc)
        m = poly.min_exp()
        trunc = self.trunc + m
        d = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in poly.coeffs.items():
                e = ea + eb
                if e > trunc:
                    continue
                s = d.get(e, Fraction(0)) + ca * cb
                if s:
                    d[e] = s
                elif e in d:
                    del d[e]
        return LaurentSeries(d, trunc)

    def inverse(self):
        """Multiplicative inverse; needs a known leading coefficient.

        For a series of true order m exact through N, the inverse is exact
        through N - 2m.
        """
        m = self.order()
        if m is None:
            raise ZeroDivisionError("cannot invert a series with no known nonzero term")
        lead = self.coeffs[m]
        trunc = self.trunc - 2 * m
        a = {e - m: c for e, c in self.coeffs.items()}
        n_terms = trunc + m  # compute b_0 .. b_{n_terms} of the order-0 inverse
        b = [Fraction(1, 1) / lead]
        for j in range(1, n_terms + 1):
            s = Fraction(0)
            for i in range(1, j + 1):
                ai = a.get(i)
                if ai:
                    s += ai * b[j - i]
            b.append(-s / lead)
        return LaurentSeries({j - m: c for j, c in enumerate(b) if c}, trunc)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, frozenset(self.coeffs.items())))

    def agrees_with(self, other, through=None):
        """Compare coefficients through min(truncs) or an explicit bound."""
        n = min(self.trunc, other.trunc)
        if through is not None:
            if through > n:
                raise ValueError("comparison bound exceeds truncation")
            n = through
        for e in set(self.coeffs) | set(other.coeffs):
            if e <= n and self.coeffs.get(e, 0) != other.coeffs.get(e, 0):
                return False
        return True

    def first_difference(self, other, through=None):
        """Smallest exponent where the series differ, or None."""
        n = min(self.trunc, other.trunc)
        if through is not None:
            n = min(n, through)
        exps = sorted(e for e in set(self.coeffs) | set(other.coeffs) if e <= n)
        for e in exps:
            if self.coeffs.get(e, 0) != other.coeffs.get(e, 0):
                return e
        return None

    def __repr__(self):
        if not self.coeffs:
            return f"LaurentSeries(0 + O(t^{self.trunc + 1}))"
        parts = [f"{c}*t^{e}" for e, c in sorted(self.coeffs.items())]
        return "LaurentSeries(" + " + ".join(parts) + f" + O(t^{self.trunc + 1}))"


def geometric_power(k, m, trunc):
    """The series (1 - t^k)^(-m) through trunc, for k >= 1, m >= 1."""
    if k < 1 or m < 1:
        raise ValueError("geometric_power needs k >= 1, m >= 1")
    d = {}
    j = 0
    while k * j <= trunc:
        d[k * j] = Fraction(comb(m - 1 + j, m - 1))
        j += 1
    return LaurentSeries(d, trunc)
