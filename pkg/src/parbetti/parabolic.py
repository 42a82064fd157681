"""Quasi-parabolic data on a marked curve and its filtration combinatorics.

A FlagPoint records the multiplicity vector of a flag at one marked point
together with strictly increasing rational weights in [0, 1).  Zero
multiplicities are allowed so that sub-data and blocks of a partition can be
kept aligned with the ambient flag; dropping the zero rows is the canonical
form and the two presentations are interchangeable.

A Partition splits the data into r ordered blocks: at every point a matrix
with the data's multiplicities as row sums and a common column-sum vector
(the block ranks) across points.  These index the filtration strata that
drive every formula downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import floor


def _as_fraction(w):
    if isinstance(w, Fraction):
        return w
    if isinstance(w, int):
        return Fraction(w)
    if isinstance(w, str):
        return Fraction(w)
    raise TypeError(f"weight must be exact, got {type(w).__name__}")


@dataclass(frozen=True)
class FlagPoint:
    mults: tuple
    weights: tuple

    def __post_init__(self):
        mults = tuple(int(m) for m in self.mults)
        weights = tuple(_as_fraction(w) for w in self.weights)
        object.__setattr__(self, "mults", mults)
        object.__setattr__(self, "weights", weights)
        if len(mults) != len(weights) or not mults:
            raise ValueError("mults and weights must be nonempty and equally long")
        if any(m < 0 for m in mults):
            raise ValueError("multiplicities must be >= 0")
        for w in weights:
            if not (0 <= w < 1):
                raise ValueError(f"weight {w} outside [0, 1)")
        for a, b in zip(weights, weights[1:]):
            if not a < b:
                raise ValueError("weights must be strictly increasing")

    @property
    def rank(self):
        return sum(self.mults)

    def weight_sum(self):
        return sum((Fraction(m) * w for m, w in zip(self.mults, self.weights)), Fraction(0))


@dataclass(frozen=True)
class QPData:
    points: tuple

    def __post_init__(self):
        points = tuple(self.points)
        object.__setattr__(self, "points", points)
        if not points:
            raise ValueError("data needs at least one marked point")
        ranks = {p.rank for p in points}
        if len(ranks) != 1:
            raise ValueError(f"points have different ranks {sorted(ranks)}")
        if points[0].rank < 1:
            raise ValueError("rank must be >= 1")

    @property
    def rank(self):
        return self.points[0].rank

    @property
    def num_points(self):
        return len(self.points)


def make_data(point_specs):
    """Build QPData from [(mults, weights), ...] pairs."""
    return QPData(tuple(FlagPoint(tuple(m), tuple(w)) for m, w in point_specs))


@dataclass(frozen=True)
class Instance:
    genus: int
    degree: int
    data: QPData

    def __post_init__(self):
        if not isinstance(self.genus, int) or self.genus < 0:
            raise ValueError("genus must be a non-negative integer")
        if not isinstance(self.degree, int):
            raise ValueError("degree must be an integer")


def weight_sum(data):
    """Total weight: sum over points of multiplicity-weighted flag weights."""
    return sum((p.weight_sum() for p in data.points), Fraction(0))


def flag_dim(data):
    """Dimension of the product of flag varieties attached to the data."""
    total = 0
    for p in data.points:
        sq = sum(m * m for m in p.mults)
        total += (p.rank**2 - sq) // 2
    return total


def moduli_dim(data, genus):
    """Dimension of the fixed-determinant moduli space."""
    n = data.rank
    return flag_dim(data) + (n * n - 1) * (genus - 1)


def canonical_form(data):
    """Drop zero-multiplicity rows; weights of surviving rows are kept."""
    pts = []
    for p in data.points:
        kept = [(m, w) for m, w in zip(p.mults, p.weights) if m > 0]
        pts.append(FlagPoint(tuple(m for m, _ in kept), tuple(w for _, w in kept)))
    return QPData(tuple(pts))


def reembed(data, ambient):
    """Express data on the ambient weight rows, inserting zero rows.

    Inverse of canonical_form for sub-data of ambient: every weight row of
    data must occur among the ambient point's rows.
    """
    if data.num_points != ambient.num_points:
        raise ValueError("point counts differ")
    pts = []
    for p, q in zip(data.points, ambient.points):
        lookup = dict(zip(p.weights, p.mults))
        if len(lookup) != len(p.weights) or not set(p.weights) <= set(q.weights):
            raise ValueError("weights do not embed into the ambient rows")
        pts.append(FlagPoint(tuple(lookup.get(w, 0) for w in q.weights), q.weights))
    return QPData(tuple(pts))


def _bounded_compositions(total, bounds):
    """All tuples 0 <= v_i <= bounds_i with sum(v) == total, lexicographic."""
    out = []

    def rec(i, left, acc):
        if i == len(bounds):
            if left == 0:
                out.append(tuple(acc))
            return
        tail = sum(bounds[i + 1 :])
        lo = max(0, left - tail)
        hi = min(bounds[i], left)
        for v in range(lo, hi + 1):
            rec(i + 1, left - v, acc + [v])

    rec(0, total, [])
    return out


def subdata(data, rank_of_sub=None):
    """All proper sub-data of the given data, zero rows retained.

    A sub-datum takes componentwise multiplicities <= the data's with equal
    per-point sums strictly between 0 and the full rank.  Deterministic
    order: by sub-rank, then per point lexicographically.
    """
    n = data.rank
    ranks = [rank_of_sub] if rank_of_sub is not None else list(range(1, n))
    out = []
    for r in ranks:
        if not 0 < r < n:
            raise ValueError("sub-rank must be strictly between 0 and the rank")
        per_point = [_bounded_compositions(r, p.mults) for p in data.points]
        for combo in iproduct(*per_point):
            out.append(
                QPData(
                    tuple(
                        FlagPoint(mults, p.weights)
                        for mults, p in zip(combo, data.points)
                    )
                )
            )
    return out


def complement(data, sub):
    """The componentwise complement data - sub, zero rows retained."""
    pts = []
    for p, q in zip(data.points, sub.points):
        if p.weights != q.weights:
            raise ValueError("sub-data rows are not aligned with the data")
        mults = tuple(a - b for a, b in zip(p.mults, q.mults))
        if any(m < 0 for m in mults):
            raise ValueError("not a sub-datum")
        pts.append(FlagPoint(mults, p.weights))
    return QPData(tuple(pts))


@dataclass(frozen=True)
class Partition:
    """Ordered split of data into r blocks, one matrix per point.

    tables[p][i][k] is how much of row i at point p lands in block k; row
    sums reproduce the data multiplicities and column sums are the block
    ranks, the same at every point.
    """

    data: QPData
    cols: tuple
    tables: tuple

    def __post_init__(self):
        cols = tuple(int(c) for c in self.cols)
        tables = tuple(tuple(tuple(row) for row in tbl) for tbl in self.tables)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "tables", tables)
        if not cols or any(c < 1 for c in cols):
            raise ValueError("block ranks must be >= 1")
        if sum(cols) != self.data.rank:
            raise ValueError("block ranks must sum to the rank")
        if len(tables) != self.data.num_points:
            raise ValueError("one table per point required")
        for p, tbl in zip(self.data.points, tables):
            if len(tbl) != len(p.mults):
                raise ValueError("table row count differs from flag length")
            for i, row in enumerate(tbl):
                if len(row) != len(cols) or any(v < 0 for v in row):
                    raise ValueError("bad table row")
                if sum(row) != p.mults[i]:
                    raise ValueError("row sums must reproduce the multiplicities")
            for k in range(len(cols)):
                if sum(row[k] for row in tbl) != cols[k]:
                    raise ValueError("column sums must equal the block ranks")

    @property
    def length(self):
        return len(self.cols)

    def block(self, k):
        """Block k as data on the full weight rows (zeros retained)."""
        pts = []
        for p, tbl in zip(self.data.points, self.tables):
            pts.append(FlagPoint(tuple(row[k] for row in tbl), p.weights))
        return QPData(tuple(pts))

    def blocks(self):
        return [self.block(k) for k in range(self.length)]

    def prefix_data(self, j):
        """Union of the first j blocks as data."""
        pts = []
        for p, tbl in zip(self.data.points, self.tables):
            pts.append(FlagPoint(tuple(sum(row[:j]) for row in tbl), p.weights))
        return QPData(tuple(pts))

    def head(self, j):
        """Induced partition of the first j blocks, 1 <= j <= r."""
        tables = tuple(tuple(row[:j] for row in tbl) for tbl in self.tables)
        return Partition(self.prefix_data(j), self.cols[:j], tables)

    def tail(self, j):
        """Induced partition of the blocks after the first j."""
        pts = []
        tables = []
        for p, tbl in zip(self.data.points, self.tables):
            pts.append(FlagPoint(tuple(sum(row[j:]) for row in tbl), p.weights))
            tables.append(tuple(row[j:] for row in tbl))
        return Partition(QPData(tuple(pts)), self.cols[j:], tuple(tables))


def _compositions(n, r):
    """Compositions of n into r parts >= 1, lexicographic."""
    if r == 1:
        return [(n,)]
    out = []
    for first in range(1, n - r + 2):
        for rest in _compositions(n - first, r - 1):
            out.append((first,) + rest)
    return out


def partitions(data, min_length=1):
    """All partitions of the data, by length then lexicographically."""
    n = data.rank
    out = []
    for r in range(max(min_length, 1), n + 1):
        for cols in _compositions(n, r):
            per_point = []
            for p in data.points:
                per_point.append(_tables_for_point(p.mults, cols))
            for tbls in iproduct(*per_point):
                out.append(Partition(data, cols, tbls))
    return out


def _tables_for_point(mults, cols):
    """All matrices with the given row and column sums, row-major lex order."""
    results = []

    def rec(i, remaining, acc):
        if i == len(mults):
            # row sums exhaust the total, so remaining is all zeros here
            results.append(tuple(acc))
            return
        for row in _bounded_compositions(mults[i], remaining):
            new_rem = tuple(a - b for a, b in zip(remaining, row))
            rec(i + 1, new_rem, acc + [row])

    rec(0, tuple(cols), [])
    return results


# ---------------------------------------------------------------------------
# numeric invariants of partitions and sub-data


def inv_count(part):
    """Cross-block pairs where the later block sits deeper in the flag.

    Counts, at every point, pairs of flag rows (i, t) with i > t whose mass
    lies in blocks k > l respectively.
    """
    total = 0
    for tbl in part.tables:
        rows = len(tbl)
        r = part.length
        for k in range(1, r):
            for l in range(k):
                for i in range(1, rows):
                    a = tbl[i][k]
                    if not a:
                        continue
                    for t in range(i):
                        total += a * tbl[t][l]
    return total


def coinv_count(part):
    """Cross-block pairs where the later block sits shallower in the flag."""
    total = 0
    for tbl in part.tables:
        rows = len(tbl)
        r = part.length
        for k in range(1, r):
            for l in range(k):
                for i in range(rows - 1):
                    a = tbl[i][k]
                    if not a:
                        continue
                    for t in range(i + 1, rows):
                        total += a * tbl[t][l]
    return total


def split_inversions(data, sub):
    """Pairs with complement mass strictly deeper than sub-data mass."""
    comp = complement(data, sub)
    total = 0
    for pc, ps in zip(comp.points, sub.points):
        rows = len(pc.mults)
        for i in range(1, rows):
            a = pc.mults[i]
            if not a:
                continue
            for t in range(i):
                total += a * ps.mults[t]
    return total


def hom_euler(ranks, degs, genus):
    """Euler pairing between the ordered graded pieces of ranks and degrees."""
    total = 0
    r = len(ranks)
    for k in range(1, r):
        for l in range(k):
            total += degs[l] * ranks[k] - degs[k] * ranks[l]
            total += (genus - 1) * ranks[l] * ranks[k]
    return total


def term_exponent(part, degs):
    """Exponent of a filtration term in the point-count recursion."""
    cols = part.cols
    r = part.length
    total = 0
    for k in range(1, r):
        for l in range(k):
            total += degs[l] * cols[k] - degs[k] * cols[l]
    return total - inv_count(part)


def stratum_exponent(part, degs, genus):
    """Codimension-style exponent of a filtration stratum."""
    return inv_count(part) - hom_euler(part.cols, degs, genus)


def linear_offset(part, d):
    """Degree-linear part of the closed-formula exponent."""
    cols = part.cols
    n = part.data.rank
    return -(n - cols[-1]) * d - inv_count(part) + (2 * n - cols[0] - cols[-1])


def floor_sum(part, lam):
    """Sum of floored prefix slope gaps weighted by adjacent block ranks."""
    cols = part.cols
    total = 0
    nk = 0
    for k in range(part.length - 1):
        nk += cols[k]
        a = weight_sum(part.prefix_data(k + 1))
        total += (cols[k] + cols[k + 1]) * floor(Fraction(nk) * lam - a)
    return total


def floor_sum_genus(part, lam, genus):
    """floor_sum with each floor bumped by one plus the genus pairing term."""
    cols = part.cols
    total = 0
    nk = 0
    for k in range(part.length - 1):
        nk += cols[k]
        a = weight_sum(part.prefix_data(k + 1))
        total += (cols[k] + cols[k + 1]) * (floor(Fraction(nk) * lam - a) + 1)
    pair = 0
    for i in range(part.length):
        for j in range(i + 1, part.length):
            pair += cols[i] * cols[j]
    return total + (genus - 1) * pair


def degree_at_slope(sub, lam):
    """Degree a bundle on this sub-datum needs to sit exactly at slope lam."""
    return Fraction(sub.rank) * lam - weight_sum(sub)


def slope_coincidence_witness(data, degree):
    """A proper sub-datum whose slope can match the total slope, or None.

    Returns (sub, e) where e is the integer degree achieving the match.
    """
    lam = Fraction(degree + weight_sum(data), data.rank)
    for sub in subdata(data):
        d = degree_at_slope(sub, lam)
        if d.denominator == 1:
            return sub, int(d)
    return None


def ss_equals_stable(data, degree):
    """True when no proper sub-datum can sit at the total slope."""
    return slope_coincidence_witness(data, degree) is None
