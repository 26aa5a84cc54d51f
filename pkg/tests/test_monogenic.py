import math
import random

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy.polys.numberfields.basis import round_two
from sympy.polys.numberfields.exceptions import ClosureFailure
from sympy.polys.polyerrors import CoercionFailed

from monotri.arith import Effort, is_squarefree
from monotri.monogenic import (
    NOT_APPLICABLE,
    Kind,
    Outcome,
    ReducibleError,
    family_criterion,
    hypotheses_hold,
    is_monogenic,
    jks_prime_test,
)
from monotri.trinomial import SearchBudget, Trinomial, discriminant_swan

X = sympy.Symbol("x")


def oracle_index(tri):
    """[O_K : Z[theta]] from sympy's round-two integral basis."""
    f = sympy.Poly(X**tri.n + tri.A * X**tri.m + tri.B, X, domain="ZZ")
    try:
        _, dK = round_two(f)
    except (ClosureFailure, CoercionFailed):
        return None  # sympy's round-two implementation fails on a few inputs
    q, r = divmod(discriminant_swan(tri), int(dK))
    idx = math.isqrt(q) if q > 0 else 0
    if r or idx * idx != q:
        return None  # inconsistent answer (seen for x^4 + 19x + 1)
    return idx


def engine_monogenic(tri):
    """is_monogenic as a boolean; a reducible f is not monogenic."""
    try:
        v = is_monogenic(tri)
    except ReducibleError:
        return False
    assert v.status is not Outcome.UNKNOWN
    return v.monogenic


TABLE1 = [((2, 4), "NM", 2), ((2, 10), "NM", 3), ((5, 5), "NM", 2), ((7, 7), "M", None)]


@pytest.mark.parametrize("AB,status,witness", TABLE1)
def test_table1_verdicts(AB, status, witness):
    tri = Trinomial(4, 2, *AB)
    v = is_monogenic(tri)
    assert v.status.value == status
    assert v.witness == witness
    idx = oracle_index(tri)
    assert idx is not None
    assert (idx == 1) == (status == "M")
    if witness:
        assert idx % witness == 0
        assert discriminant_swan(tri) % (witness * witness) == 0


def test_jks_examples():
    assert jks_prime_test(Trinomial(4, 2, 2, 4), 2) is False
    assert jks_prime_test(Trinomial(4, 2, 7, 7), 7) is True
    assert jks_prime_test(Trinomial(4, 2, 2, 10), 3) is False


def test_jks_requires_prime_of_disc():
    with pytest.raises(ValueError):
        jks_prime_test(Trinomial(4, 2, 7, 7), 5)
    with pytest.raises(ValueError):
        jks_prime_test(Trinomial(5, 2, 1, 1), 2)


def test_reducible_raises():
    with pytest.raises(ReducibleError) as exc:
        is_monogenic(Trinomial(4, 2, 1, 1))
    assert exc.value.factor == (1, 1, 1)


def test_unknown_when_irreducibility_unsettled():
    v = is_monogenic(Trinomial(4, 2, 2, 4), budget=SearchBudget(max_subsets=1))
    assert v.status is Outcome.UNKNOWN and "irreducib" in v.reason


def test_unknown_when_factoring_incomplete():
    # D = 4 B - A^2 with B a product of two ~30-bit primes; a 1-step rho
    # budget cannot split B, and every found prime passes
    B = 1000000007 * 998244353
    tri = Trinomial(4, 2, 1, B)
    v = is_monogenic(tri, effort=Effort(trial_bound=100, rho_iterations=1))
    assert v.status in (Outcome.UNKNOWN, Outcome.NOT_MONOGENIC)
    if v.status is Outcome.UNKNOWN:
        assert "factored" in v.reason


def _irreducible_divisible(draw_n, draw_m, A, B):
    tri = Trinomial(draw_n, draw_m, A, B)
    f = sympy.Poly(X**tri.n + A * X**tri.m + B, X)
    return tri if f.is_irreducible else None


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (4, 1), (4, 2), (6, 2), (6, 3), (6, 1), (8, 4), (9, 3)]),
       st.integers(-40, 40).filter(bool), st.integers(-40, 40).filter(bool))
def test_is_monogenic_matches_round_two(nm, A, B):
    tri = _irreducible_divisible(*nm, A, B)
    if tri is None:
        return
    idx = oracle_index(tri)
    assume(idx is not None)
    v = is_monogenic(tri)
    assert v.status is not Outcome.UNKNOWN
    assert v.monogenic == (idx == 1)
    disc = discriminant_swan(tri)
    for p in sympy.primefactors(disc):
        assert jks_prime_test(tri, p, disc) == (idx % p != 0), p
    if v.witness:
        assert disc % (v.witness**2) == 0


@pytest.mark.parametrize("kind,n,m,A,expected", [
    ("first", 8, 4, 6, True),
    ("kappa2", 4, 2, 5, False),
    ("second", 4, 2, 7, True),
])
def test_family_examples(kind, n, m, A, expected):
    assert family_criterion(kind, n, m, A, A) is expected
    assert is_monogenic(Trinomial(n, m, A, A)).monogenic is expected


def test_not_applicable():
    assert family_criterion("first", 8, 4, 3, 3) is NOT_APPLICABLE
    assert family_criterion("second", 4, 2, 5, 5) is NOT_APPLICABLE
    assert family_criterion("kappa2", 4, 2, 7, 7) is NOT_APPLICABLE
    assert family_criterion("lemma", 4, 2, 3, 5) is NOT_APPLICABLE
    with pytest.raises(TypeError):
        bool(NOT_APPLICABLE)


def test_kind_parse():
    assert Kind.parse("FirstType") is Kind.FIRST
    assert Kind.parse("second_type") is Kind.SECOND
    assert Kind.parse("GeneralLemma") is Kind.GENERAL_LEMMA
    with pytest.raises(ValueError):
        Kind.parse("third")


@pytest.mark.parametrize("n,m", [(4, 2), (6, 3), (8, 4), (6, 2), (6, 1), (9, 3)])
def test_criteria_agree_with_engine_small(n, m):
    for kind in (Kind.FIRST, Kind.SECOND, Kind.KAPPA2):
        for A in range(2, 301):
            c = family_criterion(kind, n, m, A, A)
            if c is NOT_APPLICABLE:
                continue
            assert c == engine_monogenic(Trinomial(n, m, A, A)), (kind, A)


@pytest.mark.parametrize("n,m", [(4, 2), (6, 3), (6, 1), (8, 4)])
def test_negated_variant(n, m):
    for A in range(2, 200):
        c = family_criterion(Kind.FIRST, n, m, A, A, negated=True)
        if c is NOT_APPLICABLE:
            continue
        assert c == engine_monogenic(Trinomial(n, m, -A, -A)), A


def test_negated_variant_limited_to_first_family():
    assert family_criterion(Kind.SECOND, 4, 2, 3, 3, negated=True) is NOT_APPLICABLE
    assert not engine_monogenic(Trinomial(4, 2, -3, -3))


def test_general_lemma_soundness():
    rng = random.Random(11)
    hits = 0
    while hits < 200:
        m = rng.choice([1, 2, 3, 4, 6])
        t = rng.randint(2, 4)
        kappa = math.prod(sympy.primefactors(m))
        g = kappa * rng.randint(1, 6)
        A, B = g * rng.randint(1, 8), g * rng.randint(1, 8)
        if not hypotheses_hold(Kind.GENERAL_LEMMA, t * m, m, A, B):
            continue
        if math.gcd(A, B) == 1:
            continue
        if family_criterion(Kind.GENERAL_LEMMA, t * m, m, A, B) is True:
            hits += 1
            assert is_monogenic(Trinomial(t * m, m, A, B)).monogenic


@pytest.mark.parametrize("n,m", [(4, 2), (6, 3), (8, 4), (6, 2), (9, 3)])
def test_family_discriminant_not_squarefree(n, m):
    for kind in (Kind.FIRST, Kind.SECOND):
        for A in range(2, 400):
            if family_criterion(kind, n, m, A, A) is True:
                assert is_squarefree(discriminant_swan(Trinomial(n, m, A, A))) is False


@pytest.mark.parametrize("k", [1, 2, 3])
def test_kappa2_quartic_style_never_monogenic(k):
    for A in range(5, 120, 4):
        assert is_monogenic(Trinomial(2 ** (k + 1), 2**k, A, A)).status is Outcome.NOT_MONOGENIC
