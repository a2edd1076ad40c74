"""Published hypergeometric parameter rows, typed in by hand.

Each row is (alpha, beta, sign, t_constant magnitude, exponent of psi).
"""

from fractions import Fraction as F

CLUB_T = F(1, 2**10 * 3**6)
KING_T = F(1, 2**4)


def fr(*pairs):
    return sorted(F(a, b) for a, b in pairs)


ROWS = {
    "club0": (fr((1, 12), (1, 6), (5, 12), (7, 12), (5, 6), (11, 12)),
              fr((1, 2), (1, 3), (2, 3), (1, 1), (1, 1), (1, 1)), 1, CLUB_T, -12),
    "club1": (fr((1, 12), (5, 12), (7, 12), (11, 12)), fr((1, 4), (1, 2), (3, 4), (1, 1)), 1, CLUB_T, -12),
    "club2": (fr((1, 12), (1, 6), (5, 12), (5, 6)), fr((1, 8), (5, 8), (1, 4), (1, 1)), -1, CLUB_T, -12),
    "club3": (fr((7, 12), (1, 6), (11, 12), (5, 6)), fr((3, 8), (7, 8), (3, 4), (1, 1)), -1, CLUB_T, -12),
    "club4": (fr(*[(j, 24) for j in (1, 5, 7, 11, 13, 17, 19, 23)]),
              fr((1, 6), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (5, 6), (1, 1)), 1, CLUB_T, -12),
    "king0": (fr((1, 6), (1, 3), (2, 3), (5, 6)), fr((1, 2), (1, 1), (1, 1), (1, 1)), 1, KING_T, -6),
    "king1": (fr((1, 12), (5, 12), (7, 12), (11, 12)), fr((1, 4), (1, 2), (3, 4), (1, 1)), 1, KING_T, -6),
    "king2": (fr((5, 6), (1, 3)), fr((2, 3), (1, 1)), 1, KING_T, -6),
    "king3": (fr((1, 6), (2, 3)), fr((1, 3), (1, 1)), 1, KING_T, -6),
    "king4": (fr((5, 12), (11, 12)), fr((5, 6), (1, 1)), 1, KING_T, -6),
    "king5": (fr((1, 12), (7, 12)), fr((1, 6), (1, 1)), 1, KING_T, -6),
    "spade0": (fr((1, 36), (1, 18), (5, 36), (7, 36), (5, 18), (11, 36), (13, 36), (7, 18), (17, 36),
                  (19, 36), (11, 18), (23, 36), (25, 36), (13, 18), (29, 36), (31, 36), (17, 18), (35, 36)),
               fr((1, 8), (1, 4), (3, 8), (1, 2), (5, 8), (3, 4), (7, 8), (1, 7), (2, 7), (3, 7), (4, 7),
                  (5, 7), (6, 7), (1, 3), (2, 3), (1, 1), (1, 1), (1, 1)),
               1, F(1, 2**48 * 3**30 * 7**7), -36),
    "heart0": (fr(*[(j, 27) for j in range(1, 27) if j % 3]),
               fr((1, 3), (2, 3), (1, 2), (1, 5), (2, 5), (3, 5), (4, 5), (1, 6), (5, 6), (1, 7), (2, 7),
                  (3, 7), (4, 7), (5, 7), (6, 7), (1, 1), (1, 1), (1, 1)),
               1, F(1, 2**6 * 3**24 * 5**5 * 7**7), -27),
}

LATTICE_SIZES = {"C4": 18, "C3F1": 18, "C2F2": 18, "C2L2": 14, "C2C2": 16}
