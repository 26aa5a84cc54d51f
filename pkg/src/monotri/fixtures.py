"""Published table values that the recomputation is compared against."""

# (A, B, discriminant, polynomial verdict) for x^4 + A x^2 + B
TABLE1 = (
    (2, 4, 2**10 * 3**2, "NM"),
    (2, 10, 2**9 * 3**4 * 5, "NM"),
    (5, 5, 2**4 * 5**3, "NM"),
    (7, 7, 2**4 * 3**2 * 7**3, "M"),
)

# (n, m, actual count, rounded main term) at X = 10000
TABLE2 = (
    (24, 12, 460, 461),
    (19, 1, 5549, 5548),
    (14, 7, 624, 618),
    (12, 3, 1380, 1383),
    (8, 4, 1617, 1614),
)

TABLE3 = (
    (24, 12, 232, 231),
    (14, 7, 102, 103),
    (12, 3, 688, 691),
    (8, 4, 1619, 1614),
)

TABLE_X = 10000
