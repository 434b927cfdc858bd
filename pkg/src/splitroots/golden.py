"""Published reference values used by ``--check`` and the acceptance tests.

Keys are thresholds m (X = least split prime above 10^m) unless noted.
"""

from __future__ import annotations

QUADRATIC = "x^2+1"
SEXTIC = "x^6+14*x^4+49*x^2+7"
QUARTIC_CYCLOTOMIC = "x^4+1"
OCTIC = "(x^2+1)*(x^2-2)*(x^4-2*x^2+9)"
TWO_QUADRATICS = "(x^2+x+1)*(x^2+2*x+2)"
SHIFTED_SQRT2 = "(x^2-2)*((x-1)^2-2)"
ABELIAN_CUBIC = "x^3-3*x+1"

DIFF_TOLERANCE = 0.002
PATTERN_TOLERANCE = 0.005
SHARE_TOLERANCE = 0.01

# largest relative gap between the share of r_1/p, r_2/p below a and its limit
QUADRATIC_DIFF = {5: 0.04473, 6: 0.01189, 7: 0.00623, 8: 0.00120, 9: 0.00056,
                  10: 0.00008, 11: 0.00007}

# (L, m) -> max over allowed patterns of |share * #patterns - 1| for k = 1
QUADRATIC_PATTERN_ERROR = {
    (2, 5): 0.00501, (2, 6): 0.00336, (2, 7): 0.0004,
    (3, 5): 0.04724, (3, 6): 0.01633, (3, 7): 0.00344,
    (4, 5): 0.01505, (4, 6): 0.00888, (4, 7): 0.00325,
    (5, 5): 0.08444, (5, 6): 0.03359, (5, 7): 0.02004,
    (6, 5): 0.10619, (6, 6): 0.02705, (6, 7): 0.00743,
    (7, 5): 0.15008, (7, 6): 0.05978, (7, 7): 0.02224,
    (8, 5): 0.05351, (8, 6): 0.02266, (8, 7): 0.01289,
}

# share of the larger coset minus 3/4
SEXTIC_SHARE_GAP = {5: 0.00094, 6: 0.00436, 7: 0.00190, 8: -0.00009, 9: -0.00015, 10: -0.00004}
SEXTIC_VOLUMES = ("1/8*sqrt(3)", "1/24*sqrt(3)")
SEXTIC_SHARES = (0.75, 0.25)

QUARTIC_CYCLOTOMIC_PATTERN_ERROR = {(2, 5): 0.05073, (2, 6): 0.00721, (2, 7): 0.00718}

# relation rows and coset representatives in the published root numbering
OCTIC_ROWS = (
    (1, 0, 0, 0, 0, 0, 0, 1, 0),
    (0, 1, 0, 0, 0, 0, 1, 0, 0),
    (0, 0, 1, 0, 0, 1, 0, 0, 0),
    (0, 0, 0, 1, 1, 0, 0, 0, 0),
    (1, 1, -1, 0, 0, 0, 0, 0, 0),
    (1, 0, 1, 0, -1, 0, 0, 0, 0),
)
OCTIC_SIGMAS = (
    (1, 2, 3, 5, 4, 6, 7, 8), (1, 2, 4, 3, 6, 5, 7, 8), (1, 4, 6, 2, 7, 3, 5, 8),
    (2, 1, 3, 4, 5, 6, 8, 7), (2, 1, 3, 5, 4, 6, 8, 7), (2, 1, 4, 3, 6, 5, 8, 7),
    (3, 1, 4, 2, 7, 5, 8, 6),
)
OCTIC_GROUP = (
    (1, 2, 3, 4, 5, 6, 7, 8), (1, 4, 6, 2, 7, 3, 5, 8), (3, 4, 8, 7, 2, 1, 5, 6),
    (3, 7, 1, 4, 5, 8, 2, 6), (6, 2, 8, 5, 4, 1, 7, 3), (6, 5, 1, 2, 7, 8, 4, 3),
    (8, 5, 3, 7, 2, 6, 4, 1), (8, 7, 6, 5, 4, 3, 2, 1),
)
OCTIC_VOLUMES = ("1/4", "3/40", "1/20", "3/40", "1/8", "1/20", "1/8")
OCTIC_SHARES = ("1/3", "1/10", "1/15", "1/10", "1/6", "1/15", "1/6")

TWO_QUADRATICS_ROWS = ((1, 0, 0, 1, -2), (0, 1, 1, 0, -1))
TWO_QUADRATICS_G = ((1, 2, 3, 4), (1, 3, 2, 4), (2, 1, 4, 3), (2, 4, 1, 3),
                    (3, 1, 4, 2), (3, 4, 1, 2), (4, 2, 3, 1), (4, 3, 2, 1))
TWO_QUADRATICS_GHAT = ((1, 2, 3, 4), (1, 3, 2, 4), (4, 2, 3, 1), (4, 3, 2, 1))
TWO_QUADRATICS_PATTERN_COUNTS = {2: 4, 3: 9, 4: 16, 5: 100, 6: 36, 7: 294, 8: 128,
                                 9: 243, 10: 400, 11: 1210, 12: 144}
TWO_QUADRATICS_REGION_SHARE = "8/9"

SHIFTED_SQRT2_ROWS = ((1, 0, 0, 1, 1), (1, -1, 0, 0, -1), (1, 0, 1, 0, 0))
SHIFTED_SQRT2_G = ((1, 2, 3, 4), (1, 2, 4, 3), (2, 1, 3, 4), (2, 1, 4, 3),
                   (3, 4, 1, 2), (3, 4, 2, 1), (4, 3, 1, 2), (4, 3, 2, 1))
SHIFTED_SQRT2_GHAT = ((1, 2, 3, 4), (3, 4, 1, 2))
SHIFTED_SQRT2_K = (1, 0, 1)
SHIFTED_SQRT2_PATTERN_COUNTS = {2: 2, 3: 6, 4: 8, 5: 20, 6: 12, 7: 42, 8: 16}
SHIFTED_SQRT2_REGION_SHARE = "2/3"

ABELIAN_CUBIC_EXPRESSIONS = ((0, 1), (2, -1, -1), (-2, 0, 1))
ABELIAN_CUBIC_G0 = ((1, 2, 3), (3, 1, 2), (2, 3, 1))
ABELIAN_CUBIC_INSIDE = (37, 73, 89, 181, 233, 251, 269, 397, 449, 467, 521, 541, 557, 593,
                        613, 631, 683, 809, 811, 919, 937, 953)
ABELIAN_CUBIC_OUTSIDE = (17, 19, 53, 71, 107, 109, 127, 163, 179, 197, 199, 271, 307, 359,
                         379, 431, 433, 487, 503, 523, 577, 647, 701, 719, 739, 757, 773,
                         827, 829, 863, 881, 883, 971, 991)

DECIMAL_SEVENTH = {2: "142 + 857 = 1·999, k=1", 3: "14 + 28 + 57 = 1·99, k=1",
                   6: "1 + 4 + 2 + 8 + 5 + 7 = 3·9, k=3"}
