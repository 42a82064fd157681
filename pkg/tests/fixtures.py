"""Frozen reference data shared by the test suites.

Betti tables are independently verified values, recorded up to the middle
dimension; ``full_table`` unfolds them by duality.  An entry of (0,) means
the moduli space is empty.  The closed-form constructors are independent
transcriptions kept deliberately separate from the library routes so that
agreement is a real cross-check, not a tautology.
"""

from parbetti import FactoredRatFunc, LaurentPoly

tp = LaurentPoly.t_power


def one_plus_t(k):
    return LaurentPoly({0: 1, k: 1})


def poly_of(*pairs):
    return LaurentPoly(dict(pairs))


def full_table(half):
    """Unfold a table given up to the middle dimension using duality."""
    half = list(half)
    if half == [0]:
        return []
    return half + half[:-1][::-1]


# -- rank 2, one to four flagged points, all tables at degree 0 -------------

RANK2_CASES = {
    "A": (("0", "1/3"),),
    "B": (("0", "1/3"), ("0", "1/4")),
    "C": (("0", "3/4"), ("0", "1/4"), ("0", "1/5")),
    "D": (("0", "1/2"), ("0", "1/3"), ("0", "1/4")),
    "E": (("0", "4/5"), ("0", "1/5"), ("0", "1/7"), ("0", "1/11")),
    "F": (("0", "1/2"), ("0", "1/3"), ("0", "1/4"), ("0", "1/5")),
}

RANK2_TABLES = {
    "A": {
        0: (0,),
        1: (1, 0),
        2: (1, 0, 2, 4, 2),
        3: (1, 0, 2, 6, 3, 12, 18, 12),
    },
    "B": {
        0: (0,),
        1: (1, 0, 2),
        2: (1, 0, 3, 4, 4, 8),
        3: (1, 0, 3, 6, 5, 18, 21, 24, 36),
    },
    "C": {
        0: (0,),
        1: (1, 0, 3, 0),
        2: (1, 0, 4, 4, 7, 12, 8),
        3: (1, 0, 4, 6, 8, 24, 26, 42, 57, 48),
    },
    "D": {
        0: (1,),
        1: (1, 0, 4, 2),
        2: (1, 0, 4, 4, 8, 16, 14),
        3: (1, 0, 4, 6, 8, 24, 27, 48, 72, 68),
    },
    "E": {
        0: (0,),
        1: (1, 0, 4, 0, 6),
        2: (1, 0, 5, 4, 11, 16, 15, 24),
        3: (1, 0, 5, 6, 12, 30, 34, 66, 83, 90, 114),
    },
    "F": {
        0: (1, 0),
        1: (1, 0, 5, 2, 8),
        2: (1, 0, 5, 4, 12, 20, 22, 32),
        3: (1, 0, 5, 6, 12, 30, 35, 72, 99, 116, 144),
    },
}

# -- rank 3, full flags ------------------------------------------------------

# case A: one point, any degree (tables at 0); B/C: two points, the verdict
# depends on degree mod 3 (B covers residues 0 and 2, C covers residue 1)
RANK3_CASES = {
    "A": {"points": (("0", "1/12", "3/12"),), "degrees": (0, 1, 2)},
    "B": {
        "points": (("0", "1/12", "3/12"), ("1/12", "5/12", "6/12")),
        "degrees": (0, 2),
    },
    "C": {
        "points": (("0", "1/12", "3/12"), ("1/12", "5/12", "6/12")),
        "degrees": (1,),
    },
}

RANK3_TABLES = {
    "A": {
        0: (0,),
        1: (1, 0, 2, 0),
        2: (1, 0, 3, 4, 7, 16, 18, 36, 45, 56, 70, 64),
        3: (1, 0, 3, 6, 7, 24, 28, 60, 103, 140, 261, 354, 537, 780,
            998, 1380, 1652, 1936, 2170, 2160),
    },
    "B": {
        0: (0,),
        1: (1, 0, 5, 2, 12, 6, 16),
        2: (1, 0, 5, 4, 15, 24, 40, 80, 108, 188, 251, 344, 436, 480, 528),
        3: (1, 0, 5, 6, 15, 36, 49, 120, 176, 314, 531, 784, 1312, 1878,
            2816, 4036, 5454, 7442, 9346, 11526, 13394, 14562, 15210),
    },
    "C": {
        0: (0,),
        1: (1, 0, 4, 0, 8, 0, 10),
        2: (1, 0, 5, 4, 15, 24, 39, 76, 98, 164, 203, 264, 318, 332, 370),
        3: (1, 0, 5, 6, 15, 36, 49, 120, 176, 314, 530, 778, 1293, 1828,
            2697, 3788, 4983, 6610, 8007, 9572, 10812, 11508, 11984),
    },
}

# -- rank 4, one point, full flag --------------------------------------------

RANK4_WEIGHTS = ("0", "1/8", "1/4", "1/2")
RANK4_WEIGHTS_ALT = ("0", "1/5", "4/5", "9/10")

# case A: degrees 0,1,2 with the first weights (0 and 2 with the second);
# case B: degree 3 with the first weights (1 and 3 with the second)
RANK4_CASES = {
    "A": {"weights": RANK4_WEIGHTS, "degrees": (0, 1, 2)},
    "B": {"weights": RANK4_WEIGHTS, "degrees": (3,)},
}

RANK4_TABLES = {
    "A": {
        0: (0,),
        1: (1, 0, 4, 2, 8, 4, 10),
        2: (1, 0, 4, 4, 11, 20, 31, 64, 90, 164, 241, 376, 563, 792, 1144,
            1508, 2003, 2492, 2989, 3424, 3675, 3816),
    },
    "B": {
        0: (0,),
        1: (1, 0, 3, 0, 5, 0, 6),
        2: (1, 0, 4, 4, 11, 20, 31, 64, 89, 160, 232, 356, 521, 712, 1001,
            1272, 1635, 1952, 2263, 2528, 2660, 2760),
    },
}


# -- independent closed forms ------------------------------------------------
#
# Each constructor returns the Poincare polynomial as a factored rational
# function of t; denominators are kept in (1 - t^k) form, so 1 + t^2 in a
# denominator appears as factors {2: +1, 4: -1} and 1 + t^2 + t^4 as
# factors {2: +1, 6: -1}.


def rank3_one_point_form(genus):
    """Rank 3, one fully flagged point; valid for every degree and weights."""
    g = genus
    num = (
        tp(6 * g - 2) * poly_of((0, 1), (2, 1), (4, 1)) * one_plus_t(1) ** (4 * g)
        - tp(4 * g - 2) * one_plus_t(2) ** 2 * one_plus_t(1) ** (2 * g)
        * one_plus_t(3) ** (2 * g)
        + one_plus_t(3) ** (2 * g) * one_plus_t(5) ** (2 * g)
    )
    return FactoredRatFunc(0, num, {2: -3, 4: -1})


def rank3_two_point_main_form(genus):
    """Rank 3, two fully flagged points, degree residues 0 and 2 mod 3."""
    g = genus
    num = (
        one_plus_t(3) ** (2 * g) * one_plus_t(5) ** (2 * g)
        * poly_of((0, 1), (2, 1), (4, 1))
        - tp(4 * g).scale(3) * one_plus_t(1) ** (2 * g) * one_plus_t(2) ** 2
        * one_plus_t(3) ** (2 * g)
        + tp(6 * g) * one_plus_t(1) ** (4 * g) * poly_of((0, 2), (2, 5), (4, 2))
    )
    return FactoredRatFunc(0, num, {2: -4})


def rank3_two_point_alt_form(genus):
    """Rank 3, two fully flagged points, degree residue 1 mod 3."""
    g = genus
    num = poly_of((0, 1), (2, 1), (4, 1)) * (
        tp(6 * g - 2) * poly_of((0, 1), (2, 1), (4, 1)) * one_plus_t(1) ** (4 * g)
        - tp(4 * g - 2) * one_plus_t(2) ** 2 * one_plus_t(1) ** (2 * g)
        * one_plus_t(3) ** (2 * g)
        + one_plus_t(3) ** (2 * g) * one_plus_t(5) ** (2 * g)
    )
    return FactoredRatFunc(0, num, {2: -4})


def rank4_even_form(genus):
    """Rank 4, one fully flagged point, degrees 0, 1 and 2."""
    g = genus
    sq = poly_of((0, 1), (2, 1), (4, 1))
    num = (
        one_plus_t(3) ** (2 * g) * one_plus_t(5) ** (2 * g)
        * one_plus_t(7) ** (2 * g)
        - tp(6 * g - 2).scale(2) * one_plus_t(1) ** (2 * g)
        * one_plus_t(3) ** (2 * g) * one_plus_t(5) ** (2 * g) * sq
        - tp(8 * g - 4) * one_plus_t(1) ** (2 * g) * one_plus_t(3) ** (4 * g)
        * sq ** 2
        + tp(10 * g - 4) * one_plus_t(2) * one_plus_t(1) ** (4 * g)
        * one_plus_t(3) ** (2 * g) * poly_of((0, 3), (2, 5), (4, 5), (6, 3))
        - tp(12 * g - 4).scale(2) * one_plus_t(1) ** (6 * g) * sq ** 2
    )
    return FactoredRatFunc(0, num, {2: -4, 4: -1, 6: -1})


def rank4_odd_form(genus, uncorrected=False):
    """Rank 4, one fully flagged point, degree 3.

    This form is sometimes stated with a factor 2 on the final numerator
    term; with that factor the expression is not even a polynomial in t.
    Replacing 2 by 1 yields an exact identity against every general route
    and against the frozen tables, so that is the default here.  Pass
    uncorrected=True to get the broken variant.
    """
    g = genus
    sq = poly_of((0, 1), (2, 1), (4, 1))
    tail = 2 if uncorrected else 1
    num = (
        one_plus_t(3) ** (2 * g) * one_plus_t(5) ** (2 * g)
        * one_plus_t(7) ** (2 * g)
        - tp(6 * g - 4) * one_plus_t(1) ** (2 * g) * one_plus_t(3) ** (2 * g)
        * one_plus_t(5) ** (2 * g) * sq * one_plus_t(4)
        - tp(8 * g - 4) * one_plus_t(1) ** (2 * g) * one_plus_t(3) ** (4 * g)
        * sq ** 2
        + tp(10 * g - 6) * one_plus_t(2) ** 4 * one_plus_t(1) ** (4 * g)
        * one_plus_t(3) ** (2 * g) * one_plus_t(4)
        - tp(12 * g - 6).scale(tail) * one_plus_t(1) ** (6 * g)
        * one_plus_t(4) * sq ** 2
    )
    return FactoredRatFunc(0, num, {2: -4, 4: -1, 6: -1})
