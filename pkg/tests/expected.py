"""Frozen expected values."""

# published tightness rows: n -> (N_codes, BCH, HT, BS, RS, BC)
PUBLISHED_ROWS = {
    2: {
        15: (32, 30, 32, 30, 32, 32),
        17: (8, 5, 8, 5, 8, 8),
        19: (4, 4, 4, 4, 4, 4),
        21: (64, 52, 54, 52, 58, 54),
        23: (8, 4, 4, 4, 4, 4),
    },
    3: {
        8: (32, 30, 32, 30, 32, 32),
        10: (16, 16, 16, 16, 16, 16),
        11: (8, 4, 4, 4, 4, 4),
        13: (32, 19, 26, 19, 27, 26),
        14: (16, 16, 16, 16, 16, 16),
    },
    5: {
        8: (64, 60, 64, 60, 64, 64),
        9: (8, 8, 8, 8, 8, 8),
        11: (8, 4, 4, 4, 4, 4),
    },
    7: {
        8: (32, 26, 32, 26, 32, 32),
        9: (32, 32, 32, 32, 32, 32),
    },
}

# the binary length-21 code with defining set C1 u C3 u C7 u C9
CODE21 = {"q": 2, "n": 21, "set": "C1+C3+C7+C9"}
CODE21_S = (1, 2, 3, 4, 6, 7, 8, 9, 11, 12, 14, 15, 16, 18)
CODE21_R = "D0000D0000D00D000D0DD"
CODE21_BOUNDS = {"BCH": 5, "HT": 6, "BS": 6, "ROOS": 8, "BOUND_C": 6}
CODE21_DISTANCE = 8
CODE21_ROOS_BEST = {"m": 2, "r": 2, "i0": 3, "k": [0, 1, 2, 3, 5, 6]}
# (m=3, r=1) starting at the third position, 0-based start 2
CODE21_ROOS_AT = {"m": 3, "r": 1, "i0": 2, "value": 7, "k": [0, 1, 3, 5]}
# generator polynomial for the primitive root alpha^-1 of our alpha, low degree first
CODE21_G_INVERSE_ALPHA = (1, 0, 0, 1, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1)

# operation tables over {0, D, N}
SUM = {
    ("0", "0"): "0", ("0", "D"): "D", ("0", "N"): "N",
    ("D", "0"): "D", ("D", "D"): "D", ("D", "N"): "D",
    ("N", "0"): "N", ("N", "D"): "D", ("N", "N"): "D",
}
PRODUCT = {
    ("0", "0"): "0", ("0", "D"): "0", ("0", "N"): "0",
    ("D", "0"): "0", ("D", "D"): "D", ("D", "N"): "D",
    ("N", "0"): "0", ("N", "D"): "D", ("N", "N"): "N",
}

# (u, v, included)
INCLUSION_EXAMPLES = [
    ("DND", "00DNDN", True),
    ("00D", "0DND0", True),
    ("0NN", "NN0DD", False),
    ("0NN", "DN00N", False),
]
NON_TRANSITIVE = ("N0N", "NN0", "NN00N")

# worked proof examples
BOUND_I_EXAMPLE = {"ell": 7, "m": 2, "r": 1, "s": 5}
BOUND_I_N = 29
BOUND_I_VALUE = 11
# normalized vector for each admissible secondary pivot, and the removed rows of T (1-based)
BOUND_I_CASES = {
    17: ("N00D00D00D00D00DNDDDDD0000000", [4, 7]),
    18: ("N00D00D00D00D00D0NDDDD0000000", [5, 8]),
}
BOUND_II_EXAMPLE = {"lam": 2, "mu": 4, "s": 4}
BOUND_II_N = 27
BOUND_II_VECTOR = "N000D000D000D000DND00000000"
BOUND_II_SURVIVORS = 13
