"""Published numbers of inequivalent Z4-codes with no identically zero coordinate.

``N_PRIME[n][(k1, k2)]`` is the count for length n and type 4^k1 2^k2,
together with the per-length totals of those counts and of all
inequivalent codes (zero code excluded).
"""

N_PRIME: dict[int, dict[tuple[int, int], int]] = {
    1: {(0, 1): 1, (1, 0): 1},
    2: {(0, 1): 1, (0, 2): 1, (1, 0): 2, (1, 1): 2, (2, 0): 1},
    3: {
        (0, 1): 1, (0, 2): 2, (1, 0): 3, (0, 3): 1, (1, 1): 7,
        (1, 2): 3, (2, 0): 5, (2, 1): 3, (3, 0): 1,
    },
    4: {
        (0, 1): 1, (0, 2): 3, (1, 0): 4, (0, 3): 3, (1, 1): 17, (0, 4): 1, (1, 2): 16,
        (2, 0): 18, (1, 3): 4, (2, 1): 23, (2, 2): 6, (3, 0): 9, (3, 1): 4, (4, 0): 1,
    },
    5: {
        (0, 1): 1, (0, 2): 4, (1, 0): 5, (0, 3): 6, (1, 1): 33, (0, 4): 4, (1, 2): 54,
        (2, 0): 49, (0, 5): 1, (1, 3): 29, (2, 1): 121, (1, 4): 5, (2, 2): 67, (3, 0): 63,
        (2, 3): 10, (3, 1): 55, (3, 2): 10, (4, 0): 14, (4, 1): 5, (5, 0): 1,
    },
    6: {
        (0, 1): 1, (0, 2): 6, (1, 0): 6, (0, 3): 12, (1, 1): 58, (0, 4): 11, (1, 2): 149,
        (2, 0): 121, (0, 5): 5, (1, 3): 134, (2, 1): 499, (0, 6): 1, (1, 4): 47,
        (2, 2): 500, (3, 0): 381, (1, 5): 6, (2, 3): 157, (3, 1): 587, (2, 4): 16,
        (3, 2): 212, (4, 0): 179, (3, 3): 22, (4, 1): 112, (4, 2): 16, (5, 0): 20,
        (5, 1): 6, (6, 0): 1,
    },
    7: {
        (0, 1): 1, (0, 2): 7, (1, 0): 7, (0, 3): 21, (1, 1): 93, (0, 4): 27, (1, 2): 359,
        (2, 0): 256, (0, 5): 17, (1, 3): 503, (2, 1): 1728, (0, 6): 6, (1, 4): 283,
        (2, 2): 2896, (3, 0): 1955, (0, 7): 1, (1, 5): 70, (2, 3): 1582, (3, 1): 5184,
        (1, 6): 7, (2, 4): 319, (3, 2): 3247, (4, 0): 2215, (2, 5): 23, (3, 3): 648,
        (4, 1): 2257, (3, 4): 43, (4, 2): 565, (5, 0): 429, (4, 3): 43, (5, 1): 204,
        (5, 2): 23, (6, 0): 27, (6, 1): 7, (7, 0): 1,
    },
}

N_PRIME_TOTAL = {1: 2, 2: 7, 3: 26, 4: 110, 5: 537, 6: 3265, 7: 25054}
N_TOTAL = {1: 2, 2: 9, 3: 35, 4: 145, 5: 682, 6: 3947, 7: 29001}
