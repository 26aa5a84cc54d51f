import math
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from monotri.trinomial import (
    Reason,
    SearchBudget,
    Status,
    Trinomial,
    bareiss_det,
    d_value,
    discriminant_resultant_oracle,
    discriminant_swan,
    divides,
    _search_factor,
    galois_order_bound,
    irreducibility_certificate,
)

X = sympy.Symbol("x")


def as_sympy(tri):
    return X**tri.n + tri.A * X**tri.m + tri.B


def test_validation():
    for args in ((1, 1, 1, 1), (4, 4, 1, 1), (4, 0, 1, 1), (4, 2, 0, 1), (4, 2, 1, 0)):
        with pytest.raises(ValueError):
            Trinomial(*args)
    with pytest.raises(ValueError):
        Trinomial(5, 2, 1, 1).t


def test_derived_fields():
    tri = Trinomial(24, 12, 5, 7)
    assert (tri.t, tri.d, tri.kappa) == (2, 12, 6)
    assert str(Trinomial(4, 2, -3, 5)) == "x^4 - 3x^2 + 5"


@pytest.mark.parametrize("tri,disc", [
    (Trinomial(3, 1, -3, 9), -2079),
    (Trinomial(4, 2, 2, 4), 9216),
    (Trinomial(4, 2, 5, 5), 2000),
    (Trinomial(4, 2, 2, 10), 207360),
    (Trinomial(4, 2, 7, 7), 49392),
])
def test_discriminant_examples(tri, disc):
    assert discriminant_swan(tri) == disc
    assert discriminant_resultant_oracle(tri) == disc


def test_oracle_repeated_root():
    assert discriminant_resultant_oracle(Trinomial(2, 1, 2, 1)) == 0
    assert discriminant_swan(Trinomial(2, 1, 2, 1)) == 0


def test_bareiss_matches_sympy():
    rng = random.Random(3)
    for size in range(1, 7):
        mat = [[rng.randint(-9, 9) for _ in range(size)] for _ in range(size)]
        assert bareiss_det(mat) == sympy.Matrix(mat).det()
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[0, 0], [1, 1]]) == 0


def test_swan_equals_oracle_random():
    rng = random.Random(2024)
    for _ in range(200):
        n = rng.randint(2, 12)
        m = rng.randint(1, n - 1)
        A = rng.choice([a for a in range(-50, 51) if a])
        B = rng.choice([b for b in range(-50, 51) if b])
        tri = Trinomial(n, m, A, B)
        assert discriminant_swan(tri) == discriminant_resultant_oracle(tri)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.data())
def test_swan_matches_sympy(n, data):
    m = data.draw(st.integers(1, n - 1))
    A = data.draw(st.integers(-30, 30).filter(bool))
    B = data.draw(st.integers(-30, 30).filter(bool))
    tri = Trinomial(n, m, A, B)
    assert discriminant_swan(tri) == sympy.discriminant(as_sympy(tri), X)


def test_d_value_examples():
    assert d_value(Trinomial(4, 2, 7, 7)) == -3
    assert d_value(Trinomial(4, 2, 2, 10)) == 18
    assert d_value(Trinomial(4, 2, 4, 4)) == 0
    assert discriminant_swan(Trinomial(4, 2, 4, 4)) == 0


def test_d_value_errors():
    with pytest.raises(ValueError):
        d_value(Trinomial(5, 2, 1, 1))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6), st.integers(2, 4), st.integers(1, 40), st.integers(-40, 40).filter(bool))
def test_discriminant_identity(m, t, g, B0):
    A, B = g, B0 * g
    tri = Trinomial(t * m, m, A, B)
    D = d_value(tri)
    n = t * m
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    gcd = math.gcd(A, B)
    assert discriminant_swan(tri) == sign * m**n * B ** (m - 1) * (gcd ** (t - 1) * D) ** m


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(2, 4), st.integers(1, 200))
def test_discriminant_identity_a_equals_b(m, t, A):
    tri = Trinomial(t * m, m, A, A)
    n = t * m
    D = t**t + (1 - t) ** (t - 1) * A
    assert d_value(tri) == D
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    assert discriminant_swan(tri) == sign * m**n * A ** (n - 1) * D**m


def test_galois_bound():
    assert galois_order_bound(Trinomial(4, 2, 1, 1)) == 8
    assert galois_order_bound(Trinomial(2, 1, 1, 1)) == 2
    assert galois_order_bound(Trinomial(24, 12, 1, 1)) == 1152
    assert galois_order_bound(Trinomial(24, 12, 1, 1)) < math.factorial(24)


def test_certificate_eisenstein():
    c = irreducibility_certificate(Trinomial(4, 2, 7, 7))
    assert c.status is Status.PROVEN_IRREDUCIBLE and c.reason is Reason.EISENSTEIN and c.prime == 7


def test_certificate_needs_search():
    c = irreducibility_certificate(Trinomial(4, 2, 2, 4))
    assert c.status is Status.PROVEN_IRREDUCIBLE
    assert c.reason is Reason.FACTOR_SEARCH_EXHAUSTED


def test_factor_search_x4_plus_4():
    # x^4 + 4 has A = 0, so it is not a Trinomial; drive the search directly
    class Binomial:
        n, B = 4, 4

        @staticmethod
        def coefficients():
            return [4, 0, 0, 0, 1]

    factor, exhausted = _search_factor(Binomial, [1, 2], SearchBudget())
    assert exhausted and factor == (2, 2, 1)
    assert sympy.expand((X**2 + 2 * X + 2) * (X**2 - 2 * X + 2)) == X**4 + 4


def test_certificate_reducible_quartic():
    c = irreducibility_certificate(Trinomial(4, 2, 1, 1))  # (x^2+x+1)(x^2-x+1)
    assert c.status is Status.PROVEN_REDUCIBLE
    assert c.factor == (1, 1, 1)
    assert divides(c.factor, [1, 0, 1, 0, 1])


def test_certificate_integer_root():
    c = irreducibility_certificate(Trinomial(3, 1, -7, 6))  # roots 1, 2, -3
    assert c.status is Status.PROVEN_REDUCIBLE and len(c.factor) == 2


def test_certificate_repeated_factor():
    c = irreducibility_certificate(Trinomial(4, 2, 2, 1))  # (x^2+1)^2
    assert c.status is Status.PROVEN_REDUCIBLE
    assert c.factor == (1, 0, 1)


def test_certificate_budget_exceeded():
    tri = Trinomial(4, 2, 2, 4)
    c = irreducibility_certificate(tri, SearchBudget(max_subsets=1))
    assert c.status is Status.UNKNOWN and c.reason is Reason.BUDGET_EXCEEDED


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 8), st.data())
def test_certificate_matches_sympy(n, data):
    m = data.draw(st.integers(1, n - 1))
    A = data.draw(st.integers(-12, 12).filter(bool))
    B = data.draw(st.integers(-12, 12).filter(bool))
    tri = Trinomial(n, m, A, B)
    c = irreducibility_certificate(tri)
    expected = sympy.Poly(as_sympy(tri), X).is_irreducible
    assert c.status is not Status.UNKNOWN
    assert c.irreducible == expected
    if c.status is Status.PROVEN_REDUCIBLE:
        assert divides(c.factor, tri.coefficients())
        assert 1 <= len(c.factor) - 1 < n
    if c.reason is Reason.EISENSTEIN:
        p = c.prime
        assert A % p == 0 and B % p == 0 and B % (p * p)


def test_integer_root_never_irreducible():
    for B in range(-20, 21):
        if not B:
            continue
        for r in range(-abs(B), abs(B) + 1):
            if r == 0:
                continue
            # choose A so that r is a root of x^3 + A x + B
            num = -(r**3 + B)
            if num % r or num // r == 0:
                continue
            c = irreducibility_certificate(Trinomial(3, 1, num // r, B))
            assert c.status is Status.PROVEN_REDUCIBLE
