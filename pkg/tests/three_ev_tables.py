"""Reference rows: three-eigenvalue spectra with known class counts (None = open)."""

INTEGER_ROWS = [
    (6, "[-3]^2,[1]^3,[3]^1", 1), (8, "[-3]^3,[1]^4,[5]^1", 1),
    (9, "[-5]^2,[1]^6,[4]^1", 1), (9, "[-3]^4,[0]^1,[3]^4", 1),
    (10, "[-3]^4,[1]^5,[7]^1", 1), (12, "[-7]^2,[1]^9,[5]^1", 1),
    (12, "[-5]^3,[1]^8,[7]^1", 1), (12, "[-3]^6,[1]^3,[5]^3", 1),
    (12, "[-3]^5,[1]^6,[9]^1", 1), (14, "[-3]^6,[1]^7,[11]^1", 1),
    (15, "[-9]^2,[1]^12,[6]^1", 1), (15, "[-5]^4,[1]^10,[10]^1", 1),
    (15, "[-3]^9,[2]^1,[5]^5", 1), (16, "[-7]^3,[1]^12,[9]^1", 1),
    (16, "[-3]^8,[1]^6,[9]^2", 0), (16, "[-3]^7,[1]^8,[13]^1", 1),
    (18, "[-11]^2,[1]^15,[7]^1", 1), (18, "[-9]^3,[1]^9,[3]^6", 0),
    (18, "[-5]^6,[1]^9,[7]^3", 1), (18, "[-5]^5,[1]^12,[13]^1", 1),
    (18, "[-3]^8,[1]^9,[15]^1", 1), (18, "[-3]^11,[3]^5,[9]^2", 1),
    (20, "[-9]^3,[1]^16,[11]^1", 1), (20, "[-7]^5,[1]^10,[5]^5", 4),
    (20, "[-7]^4,[1]^15,[13]^1", 1), (20, "[-5]^8,[1]^5,[5]^7", 8),
    (20, "[-3]^9,[1]^10,[17]^1", 1), (21, "[-13]^2,[1]^18,[8]^1", 1),
    (21, "[-5]^6,[1]^14,[16]^1", 1), (21, "[-3]^14,[0]^1,[7]^6", 1),
    (21, "[-3]^14,[5]^6,[12]^1", 0), (22, "[-3]^10,[1]^11,[19]^1", 1),
    (24, "[-15]^2,[1]^21,[9]^1", 1), (24, "[-11]^3,[1]^20,[13]^1", 1),
    (24, "[-7]^7,[1]^9,[5]^8", None), (24, "[-7]^6,[1]^15,[9]^3", None),
    (24, "[-7]^5,[1]^18,[17]^1", 1), (24, "[-5]^10,[1]^8,[7]^6", None),
    (24, "[-5]^8,[1]^14,[13]^2", 0), (24, "[-5]^7,[1]^16,[19]^1", 1),
    (24, "[-5]^11,[3]^9,[7]^4", None), (24, "[-3]^16,[1]^3,[9]^5", 0),
    (24, "[-3]^11,[1]^12,[21]^1", 1), (24, "[-3]^16,[3]^5,[11]^3", 0),
    (24, "[-3]^17,[5]^3,[9]^4", 1),
]

# roots -1 +- 2 sqrt(3) are those of x^2 + 2x - 11, and so on
QUADRATIC_ROWS = [
    (5, "[0]^1,Q(0,-5)^2", 1), (8, "[1]^4,Q(-2,-11)^2", 0),
    (10, "[3]^4,Q(-4,-1)^3", 1), (12, "[1]^6,Q(-2,-19)^3", 1),
    (13, "[0]^1,Q(0,-13)^6", 1), (16, "[1]^8,Q(-2,-27)^4", 0),
    (16, "[1]^12,Q(-6,-39)^2", 0), (16, "[3]^8,Q(-6,-3)^4", 0),
    (17, "[0]^1,Q(0,-17)^8", 1), (18, "[1]^12,Q(-4,-41)^3", 1),
    (20, "[3]^10,Q(-6,-11)^5", 0), (21, "[0]^1,Q(0,-21)^10", 0),
    (24, "[1]^12,Q(-2,-43)^6", None), (24, "[1]^18,Q(-6,-71)^3", 1),
    (24, "[1]^20,Q(-10,-83)^2", 0), (24, "[3]^12,Q(-6,-19)^6", 0),
]

THREE_EV_TOTALS = {3: 0, 4: 0, 5: 1, 6: 2, 7: 0, 8: 2, 9: 3, 10: 4, 11: 0, 12: 10, 13: 1,
                   14: 2, 15: 6, 16: 4, 17: 1, 18: 12, 19: 0, 20: 30, 21: 6, 22: 2, 23: 0}
