"""Published reference counts used by the acceptance suite."""

CENSUS = {1: 1, 2: 1, 3: 2, 4: 3, 5: 7, 6: 16, 7: 54, 8: 243, 9: 2038, 10: 33120}

# order -> (distinct characteristic polynomials, classes with a cospectral mate, largest family)
COSPECTRAL = {8: (235, 15, 3), 9: (1824, 400, 4), 10: (28488, 8340, 12)}

# order -> counts for k = 1..n distinct eigenvalues
DISTINCT = {
    1: [1],
    2: [0, 1],
    3: [0, 2, 0],
    4: [0, 2, 0, 1],
    5: [0, 2, 1, 4, 0],
    6: [0, 3, 2, 5, 2, 4],
    7: [0, 2, 0, 16, 8, 20, 8],
    8: [0, 2, 2, 17, 20, 64, 46, 92],
    9: [0, 2, 3, 20, 55, 188, 218, 652, 900],
    10: [0, 3, 4, 37, 56, 406, 696, 3507, 5960, 22451],
}

# order -> (>= -3, = -3, >= -5, = -5, >= -7, = -7) for the smallest eigenvalue
LAMBDA_MIN = {
    3: (2, 0, 2, 0, 2, 0),
    4: (3, 1, 3, 0, 3, 0),
    5: (5, 1, 7, 0, 7, 0),
    6: (9, 4, 16, 1, 16, 0),
    7: (16, 9, 51, 2, 54, 0),
    8: (25, 23, 215, 8, 243, 1),
    9: (40, 38, 1601, 33, 2033, 2),
    10: (58, 56, 21249, 306, 33027, 10),
}

# lines at angle 1/3 in R^7, orders 8..29
R7_LINES = [23, 37, 54, 70, 90, 101, 103, 101, 90, 70, 54, 37, 23, 16, 10, 5, 3, 2, 1, 1, 1, 0]

# lines at angle 1/5 in R^12 (multiplicity of -5 only), tail from order 17
R12_TAIL = {17: 155223, 18: 16385, 19: 852, 20: 32, 21: 0}
