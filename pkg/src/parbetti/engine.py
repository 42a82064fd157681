"""Betti number engines for the parabolic moduli spaces.

Three independent routes to the same polynomial:

* ``poincare_closed``: direct closed formula, a finite alternating sum over
  block decompositions of the flag data, assembled in exact factored
  rational-function arithmetic and certified by exact division.
* ``poincare_qclosed``: the point-count route.  The same block sum phrased
  for the stable-count generating function, bridged back to Betti numbers
  and compared against the first route coefficient by coefficient.
* ``recursion_poincare``: solves the filtration recursion numerically in
  truncated Laurent series with certified truncation bookkeeping, never
  citing the closed solution.

``siegel_check`` verifies the underlying mass identity order by order.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import rank2 as _rank2
from .counting import flag_series, mass_series_jac
from .counting import block_factor as _raw_block_factor
from .laurent import LaurentPoly, LaurentSeries, NonDivisible, one_minus, one_plus
from .parabolic import (
    canonical_form,
    coinv_count,
    flag_dim,
    floor_sum,
    floor_sum_genus,
    inv_count,
    linear_offset,
    moduli_dim,
    partitions,
    slope_coincidence_witness,
    weight_sum,
)
from .ratfunc import FactoredRatFunc
from .result import NonPolynomialResult, result_from_poly


class StrictSemistable(ValueError):
    """Input has strictly semistable points; pass force=True to continue."""


class MismatchAgainstClosed(ArithmeticError):
    """The point-count route disagreed with the closed formula."""


class TruncationTooSmall(ValueError):
    """The recursion's guard band past twice the dimension was nonzero."""


class MethodInapplicable(ValueError):
    """The requested method does not apply to this input."""


METHODS = ("closed", "qclosed", "recursion", "rank2")


def _check_stability(instance, force):
    wit = slope_coincidence_witness(instance.data, instance.degree)
    if wit is None:
        return True
    if not force:
        sub, e = wit
        raise StrictSemistable(
            f"sub-datum of rank {sub.rank} at degree {e} can sit at the "
            "total slope; rerun with force to evaluate the formula anyway"
        )
    return False


_BLOCK_FACTOR_CACHE = {}
_BLOCK_Q_CACHE = {}


def _block_factor(block, genus):
    key = (canonical_form(block), genus)
    hit = _BLOCK_FACTOR_CACHE.get(key)
    if hit is None:
        hit = _raw_block_factor(key[0], genus)
        _BLOCK_FACTOR_CACHE[key] = hit
    return hit


def _block_q(block, genus):
    """Count generating function of the full family over one block."""
    key = (canonical_form(block), genus)
    hit = _BLOCK_Q_CACHE.get(key)
    if hit is None:
        n = key[0].rank
        hit = (
            FactoredRatFunc.monomial(n * n * (genus - 1))
            * flag_series(key[0])
            * mass_series_jac(n, genus)
        )
        _BLOCK_Q_CACHE[key] = hit
    return hit


def _chain_sign_factors(cols):
    """Sign and denominator exponents of one block decomposition term."""
    factors = {}
    for k in range(len(cols) - 1):
        m = 2 * (cols[k] + cols[k + 1])
        factors[m] = factors.get(m, 0) - 1
    sign = -1 if (len(cols) - 1) % 2 else 1
    return sign, factors


def _bridge(data, genus):
    """Prefactor converting the count function into the Betti polynomial."""
    n = data.rank
    c = 2 * flag_dim(data) + n * n * (genus - 1)
    return FactoredRatFunc(c, one_minus(1) ** (2 * genus), {2: 1 - 2 * genus})


def _certify(func, instance, method, ss_ok):
    dim = moduli_dim(instance.data, instance.genus)
    try:
        poly = func.to_laurent_poly()
    except NonDivisible as exc:
        raise NonPolynomialResult(
            f"{method} route did not produce a polynomial: {exc}"
        ) from exc
    return result_from_poly(poly, dim, method, ss_ok, enforce=ss_ok)


def poincare_closed(instance, force=False):
    """Betti polynomial by the direct closed formula."""
    data, d, g = instance.data, instance.degree, instance.genus
    ss_ok = _check_stability(instance, force)
    n = data.rank
    lam = Fraction(d + weight_sum(data), n)
    total = FactoredRatFunc.zero()
    for part in partitions(data):
        expo = 2 * (
            coinv_count(part)
            - (n - part.cols[-1]) * d
            + floor_sum_genus(part, lam, g)
        )
        sign, fac = _chain_sign_factors(part.cols)
        term = FactoredRatFunc(expo, LaurentPoly({0: sign}), fac)
        for b in part.blocks():
            term = term * _block_factor(b, g)
        total = total + term
    pre = FactoredRatFunc(0, one_minus(1) ** (2 * g), {2: 1 - 2 * g})
    return _certify(total * pre, instance, "closed", ss_ok)


def q_ratfunc(data, d, genus):
    """Stable-count generating function, exact in factored form.

    Same block decomposition sum as the closed formula, written on the
    count side; the r = 1 term is the full-family count itself.
    """
    lam = Fraction(d + weight_sum(data), data.rank)
    total = FactoredRatFunc.zero()
    for part in partitions(data):
        expo = 2 * (linear_offset(part, d) + floor_sum(part, lam))
        sign, fac = _chain_sign_factors(part.cols)
        term = FactoredRatFunc(expo, LaurentPoly({0: sign}), fac)
        for b in part.blocks():
            term = term * _block_q(b, genus)
        total = total + term
    return total


def poincare_qclosed(instance, force=False):
    """Betti polynomial via the count route, checked against the closed one."""
    data, d, g = instance.data, instance.degree, instance.genus
    ss_ok = _check_stability(instance, force)
    func = _bridge(data, g) * q_ratfunc(data, d, g)
    res = _certify(func, instance, "qclosed", ss_ok)
    ref = poincare_closed(instance, force=force)
    if res.poly != ref.poly:
        diff = res.poly - ref.poly
        raise MismatchAgainstClosed(
            f"count route differs from closed formula, first at t^{diff.min_exp()}"
        )
    return res


def hn_degree_tuples(cols, alphas, d, pairing_bound):
    """Integer degree tuples with total ``d``, strictly decreasing block
    slopes, and cross pairing at most ``pairing_bound``.

    The pairing of a tuple is ``sum over l < k of d_l n_k - d_k n_l`` and the
    slope of block k is ``(d_k + alphas[k]) / cols[k]``.  Slope decrease makes
    every pairwise pairing at least ``floor(a_k n_l - a_l n_k) + 1``, which
    closes both ends of each search range:

    * replacing all later choices by those pairwise floors gives a pairing
      lower bound that grows strictly with the degree picked now, so the
      bound caps it from above;
    * the remaining blocks must fit strictly under the current slope, which
      caps it from below.

    No artificial cutoff is involved, so the returned list is complete.
    Returns (tuple, pairing) pairs.
    """
    r = len(cols)
    n = sum(cols)
    if r == 1:
        return [((d,), 0)] if pairing_bound >= 0 else []
    lb = [[0] * r for _ in range(r)]
    for l in range(r):
        for k in range(l + 1, r):
            lb[l][k] = math.floor(alphas[k] * cols[l] - alphas[l] * cols[k]) + 1
    lbsuf = [0] * (r + 1)
    for j in range(r - 1, -1, -1):
        lbsuf[j] = lbsuf[j + 1] + sum(lb[j][k] for k in range(j + 1, r))
    asuf = [Fraction(0)] * (r + 1)
    for j in range(r - 1, -1, -1):
        asuf[j] = asuf[j + 1] + alphas[j]
    out = []

    def rec(j, deg_sum, pair_in, prefix):
        nprev = sum(cols[:j])
        nj = cols[j]
        if j == r - 1:
            v = d - deg_sum
            if (v + alphas[j]) * cols[j - 1] >= (prefix[-1] + alphas[j - 1]) * nj:
                return
            pair_total = pair_in + nj * deg_sum - v * nprev
            if pair_total <= pairing_bound:
                out.append((tuple(prefix) + (v,), pair_total))
            return
        assert n - nprev > 0
        x = nj * (d - deg_sum + asuf[j + 1]) - (n - nprev - nj) * alphas[j]
        lo = math.floor(Fraction(x, n - nprev)) + 1
        c0 = (
            pair_in
            + nj * deg_sum
            + n * deg_sum
            - d * (nprev + nj)
            + lbsuf[j + 1]
        )
        hi = math.floor(Fraction(pairing_bound - c0, n - nprev))
        if j > 0:
            cap = Fraction(prefix[-1] + alphas[j - 1], cols[j - 1]) * nj - alphas[j]
            hi = min(hi, math.ceil(cap) - 1)
        for v in range(lo, hi + 1):
            rec(j + 1, deg_sum + v, pair_in + nj * deg_sum - v * nprev, prefix + [v])

    rec(0, 0, 0, [])
    return out


class _Recursor:
    """Solves the filtration recursion in truncated series, memoized.

    Degree enters only through its residue mod the rank: twisting by a line
    bundle of degree one shifts every degree tuple compatibly and leaves
    both the pairing and the slope chain intact.
    """

    def __init__(self, genus):
        self.genus = genus
        self.memo = {}

    def q_series(self, data, d, trunc):
        cdata = canonical_form(data)
        key = (cdata, d % cdata.rank)
        hit = self.memo.get(key)
        if hit is not None and hit.trunc >= trunc:
            return hit
        series = self._compute(cdata, key[1], trunc)
        assert series.trunc >= trunc
        self.memo[key] = series
        return series

    def _compute(self, data, d, trunc):
        total = _block_q(data, self.genus).expand(trunc)
        if data.rank == 1:
            return total
        for part in partitions(data, min_length=2):
            total = total - self._partition_term(part, d, trunc)
        assert total.trunc >= trunc
        return total.truncate(trunc)

    def _partition_term(self, part, d, trunc):
        """Sum over degree tuples of one block decomposition, exact through
        trunc.  Tuples whose certified order exceeds trunc are skipped; the
        bound argument to the enumerator makes the skipped tail rigorous."""
        g = self.genus
        blocks = part.blocks()
        r = part.length
        cols = part.cols
        sigma = inv_count(part)
        alphas = [weight_sum(b) for b in blocks]
        min_pairing = 0
        for l in range(r):
            for k in range(l + 1, r):
                min_pairing += (
                    math.floor(alphas[k] * cols[l] - alphas[l] * cols[k]) + 1
                )
        qhat_orders = [
            -b.rank**2 * (g - 1) - 2 * flag_dim(b) for b in blocks
        ]
        per_block = []
        certs = []
        for k, b in enumerate(blocks):
            probe = (
                trunc
                - 2 * (min_pairing - sigma)
                - (sum(qhat_orders) - qhat_orders[k])
            )
            by_residue = {}
            for rho in range(b.rank):
                by_residue[rho] = self.q_series(b, rho, probe)
            per_block.append(by_residue)
            certs.append(min(s.order_bound() for s in by_residue.values()))
        bound = (trunc - sum(certs)) // 2 + sigma
        # anything past the bound sits beyond trunc after the shift
        assert 2 * (bound + 1 - sigma) + sum(certs) > trunc
        acc = LaurentSeries.zero(trunc)
        for dvec, pairing in hn_degree_tuples(cols, alphas, d, bound):
            shift = 2 * (pairing - sigma)
            while True:
                prod = None
                for k in range(r):
                    s = per_block[k][dvec[k] % blocks[k].rank]
                    prod = s if prod is None else prod * s
                if prod.order_bound() + shift > trunc:
                    prod = None
                    break
                if prod.trunc + shift >= trunc:
                    break
                # a block series started later than its family count
                # predicts; deepen every factor by the deficit and retry
                bump = trunc - shift - prod.trunc
                for k in range(r):
                    rho = dvec[k] % blocks[k].rank
                    per_block[k][rho] = self.q_series(
                        blocks[k], rho, per_block[k][rho].trunc + bump
                    )
            if prod is not None:
                acc = acc + prod.shift(shift)
        assert acc.trunc >= trunc
        return acc


def recursion_poincare(instance, truncation=None, force=False):
    """Betti polynomial by solving the recursion in truncated series.

    The default truncation is two past twice the dimension; the band above
    twice the dimension must come out identically zero and acts as the
    self-check of this route.
    """
    data, d, g = instance.data, instance.degree, instance.genus
    ss_ok = _check_stability(instance, force)
    dim = moduli_dim(data, g)
    n_master = 2 * dim + 2 if truncation is None else truncation
    n_master = max(n_master, 2)
    if dim >= 0 and n_master <= 2 * dim:
        raise TruncationTooSmall(
            f"truncation {n_master} cannot reach degree {2 * dim}"
        )
    c = 2 * flag_dim(data) + data.rank**2 * (g - 1)
    rec = _Recursor(g)
    q = rec.q_series(data, d, n_master - c)
    p = q.shift(c).mul_poly(one_minus(2))
    if g:
        inv = LaurentSeries.from_poly(one_plus(1) ** (2 * g), n_master).inverse()
        p = p * inv
    bad = sorted(e for e in p.coeffs if e < 0)
    if bad:
        raise NonPolynomialResult(
            f"recursion series carries negative exponent t^{bad[0]}"
        )
    assert p.trunc >= n_master
    band = sorted(e for e in p.coeffs if 2 * dim < e <= n_master)
    if band:
        raise TruncationTooSmall(
            f"nonzero coefficient at t^{band[0]} beyond twice the dimension"
        )
    poly = LaurentPoly({e: c2 for e, c2 in p.coeffs.items() if e <= 2 * dim})
    return result_from_poly(poly, dim, "recursion", ss_ok, enforce=ss_ok)


def siegel_check(data, genus, d, order):
    """Verify the mass identity through the given series order.

    Left side: the full-family count of the datum.  Right side: the sum over
    block decompositions and slope-decreasing degree tuples of the stable
    counts of the blocks, all taken from the closed count route.  Returns
    (True, None) on agreement, otherwise (False, first differing exponent).
    """
    data = canonical_form(data)
    lhs = _block_q(data, genus).expand(order)
    rhs = LaurentSeries.zero(order)
    qcache = {}

    def stable_q(block, dblk):
        key = (canonical_form(block), dblk % block.rank)
        if key not in qcache:
            qcache[key] = q_ratfunc(key[0], key[1], genus)
        return qcache[key]

    for part in partitions(data):
        blocks = part.blocks()
        cols = part.cols
        sigma = inv_count(part)
        alphas = [weight_sum(b) for b in blocks]
        shifts = []
        for k, b in enumerate(blocks):
            per = []
            for rho in range(b.rank):
                f = stable_q(b, rho)
                per.append(order + 1 if f.is_zero() else f.order_lower_bound())
            shifts.append(min(per))
        bound = (order - sum(shifts)) // 2 + sigma
        for dvec, pairing in hn_degree_tuples(cols, alphas, d, bound):
            shift = 2 * (pairing - sigma)
            term = None
            for k, b in enumerate(blocks):
                depth = order - shift - (sum(shifts) - shifts[k])
                s = stable_q(b, dvec[k]).expand(depth)
                term = s if term is None else term * s
            if term.order_bound() + shift > order:
                continue
            assert term.trunc + shift >= order
            rhs = rhs + term.shift(shift)
    diff = lhs.first_difference(rhs, through=order)
    return (diff is None, diff)


def compute(instance, method="closed", truncation=None, force=False):
    """Run one route.  Truncation only matters for the recursion route."""
    if method == "closed":
        return poincare_closed(instance, force)
    if method == "qclosed":
        return poincare_qclosed(instance, force)
    if method == "recursion":
        return recursion_poincare(instance, truncation, force)
    if method == "rank2":
        if instance.data.rank != 2:
            raise MethodInapplicable("rank2 route needs rank-2 data")
        try:
            profile = _rank2.profile_from_instance(instance)
        except ValueError as exc:
            raise MethodInapplicable(str(exc)) from exc
        return _rank2.poincare_rank2(profile)
    raise MethodInapplicable(f"unknown method {method!r}")


def applicable_methods(instance):
    """Routes that accept this instance without raising on its shape."""
    methods = ["closed", "qclosed", "recursion"]
    if instance.data.rank == 2:
        try:
            profile = _rank2.profile_from_instance(instance)
            _rank2.exists_stable_rank2(profile)
        except ValueError:
            pass
        else:
            methods.append("rank2")
    return methods


def compare_methods(instance, methods=None, truncation=None, force=False):
    """Run several routes and compare the polynomials coefficient-wise.

    Returns (results, mismatch) with mismatch either None or a triple
    (reference method, differing method, first differing exponent).
    """
    if methods is None:
        methods = applicable_methods(instance)
    results = {}
    for m in methods:
        results[m] = compute(instance, m, truncation=truncation, force=force)
    base = methods[0]
    for m in methods[1:]:
        if results[m].poly != results[base].poly:
            diff = results[m].poly - results[base].poly
            return results, (base, m, diff.min_exp())
    return results, None
