"""Monogenicity of trinomials from their coefficients.

:func:`jks_prime_test` decides whether a prime p dividing the discriminant
divides the index [O_K : Z[theta]], using only n, m, A, B and p (the
Jakhar-Khanduja-Sangwan conditions).  :func:`is_monogenic` runs it over every
prime of the discriminant.  :func:`family_criterion` holds the shortcut
criteria for the A = B families and the general lemma.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

from .arith import DEFAULT_EFFORT, Effort, factorize, is_squarefree, squarefree_kernel, valuation
from .polymod import jks_condition4_polys, poly_gcd
from .trinomial import (
    DEFAULT_BUDGET,
    SearchBudget,
    Status,
    Trinomial,
    d_value,
    discriminant_swan,
    irreducibility_certificate,
)


class ReducibleError(ValueError):
    """Monogenicity is undefined for a reducible polynomial."""

    def __init__(self, tri: Trinomial, factor):
        super().__init__(f"{tri} is reducible (factor {factor})")
        self.factor = factor


class Outcome(enum.Enum):
    MONOGENIC = "M"
    NOT_MONOGENIC = "NM"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class MonogenicVerdict:
    status: Outcome
    witness: Optional[int] = None
    reason: Optional[str] = None

    @property
    def monogenic(self) -> bool:
        return self.status is Outcome.MONOGENIC


def _case(tri: Trinomial, p: int) -> int:
    A, B = tri.A, tri.B
    pa, pb = A % p == 0, B % p == 0
    if pa and pb:
        return 1
    if pa:
        return 2
    if pb:
        return 3
    return 4 if tri.m % p == 0 else 5


def jks_prime_test(tri: Trinomial, p: int, disc: Optional[int] = None) -> bool:
    """True iff p does not divide the index of Z[theta] (p must divide disc)."""
    tri.require_divisor()
    if disc is None:
        disc = discriminant_swan(tri)
    if disc % p:
        raise ValueError(f"{p} does not divide the discriminant {disc}")
    n, m, A, B, t = tri.n, tri.m, tri.A, tri.B, tri.t
    p2 = p * p
    case = _case(tri, p)
    if case == 1:
        return B % p2 != 0
    if case == 2:
        a2 = A // p
        j = valuation(t * m, p)
        b1 = ((B + pow(-B, p**j, p2)) % p2) // p
        if a2 % p == 0 and b1 % p:
            return True
        return (a2 * (pow(a2, t, p) * B + pow(-b1, t, p))) % p != 0
    if case == 3:
        b2 = B // p
        l = valuation((t - 1) * m, p)
        a1 = ((A + pow(-A, p**l, p2)) % p2) // p
        if a1 % p == 0 and b2 % p:
            return True
        return (a1 * pow(b2, m - 1, p) * (A * pow(a1, t - 1, p) + pow(-b2, t - 1, p))) % p != 0
    if case == 4:
        g1, g2 = jks_condition4_polys(n, m, A, B, p)
        return poly_gcd(g1, g2).degree == 0
    return (t**t * pow(B, t - 1, p2) + (1 - t) ** (t - 1) * pow(A, t, p2)) % p2 != 0


def _disc_primes(tri: Trinomial, effort: Effort):
    # disc = +-m^(tm) B^(m-1) (gcd^(t-1) D)^m when m | n; factor the small
    # pieces separately instead of the whole discriminant (B drops out for m = 1)
    t = tri.t
    g = math.gcd(tri.A, tri.B)
    core = (t**t * tri.B ** (t - 1) + (1 - t) ** (t - 1) * tri.A**t) // g ** (t - 1)
    primes: set[int] = set()
    complete = True
    for part in (tri.m, g, tri.B, core):
        if abs(part) > 1:
            f = factorize(part, effort)
            primes.update(f.primes)
            complete &= f.complete
    disc = discriminant_swan(tri)
    return sorted(q for q in primes if disc % q == 0), complete


def is_monogenic(
    tri: Trinomial,
    effort: Effort = DEFAULT_EFFORT,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> MonogenicVerdict:
    """Decide whether Z[theta] is the full ring of integers.

    Raises :class:`ReducibleError` when f factors over Q.
    """
    tri.require_divisor()
    cert = irreducibility_certificate(tri, budget)
    if cert.status is Status.PROVEN_REDUCIBLE:
        raise ReducibleError(tri, cert.factor)
    if cert.status is Status.UNKNOWN:
        return MonogenicVerdict(Outcome.UNKNOWN, reason="irreducibility not settled")
    disc = discriminant_swan(tri)
    primes, complete = _disc_primes(tri, effort)
    for p in primes:
        if not jks_prime_test(tri, p, disc):
            return MonogenicVerdict(Outcome.NOT_MONOGENIC, witness=p)
    if not complete:
        return MonogenicVerdict(Outcome.UNKNOWN, reason="discriminant not fully factored")
    return MonogenicVerdict(Outcome.MONOGENIC)


# -- family criteria ----------------------------------------------------------

class Kind(enum.Enum):
    FIRST = "first"
    SECOND = "second"
    KAPPA2 = "kappa2"
    GENERAL_LEMMA = "lemma"

    @classmethod
    def parse(cls, s: Union[str, "Kind"]) -> "Kind":
        if isinstance(s, cls):
            return s
        aliases = {
            "first": cls.FIRST, "firsttype": cls.FIRST,
            "second": cls.SECOND, "secondtype": cls.SECOND,
            "kappa2": cls.KAPPA2, "kappa2type": cls.KAPPA2,
            "lemma": cls.GENERAL_LEMMA, "generallemma": cls.GENERAL_LEMMA,
        }
        try:
            return aliases[s.lower().replace("_", "").replace("-", "")]
        except KeyError:
            raise ValueError(f"unknown family kind {s!r}") from None


class _NotApplicable:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __bool__(self):
        raise TypeError("NOT_APPLICABLE has no truth value")

    def __repr__(self):
        return "NOT_APPLICABLE"


NOT_APPLICABLE = _NotApplicable()


def is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def hypotheses_hold(kind: Kind, n: int, m: int, A: int, B: int) -> bool:
    """The stated preconditions of each criterion (positive A, B form)."""
    if n < 2 or not 1 <= m < n or n % m:
        return False
    kappa = squarefree_kernel(m)
    if kind is Kind.FIRST:
        return A == B and A >= 2 and A % kappa == 0
    if kind is Kind.SECOND:
        return A == B and A >= 2 and 210 % kappa == 0 and (A + 1) % (kappa * kappa) == 0
    if kind is Kind.KAPPA2:
        return n >= 4 and m >= 2 and is_power_of_two(m) and A == B and A >= 5 and A % 4 == 1
    g = math.gcd(A, B)
    return A > 0 and B > 0 and g > 1 and g % kappa == 0


def family_criterion(kind, n: int, m: int, A: int, B: int, negated: bool = False, effort: Effort = DEFAULT_EFFORT):
    """Evaluate a family criterion.

    Returns True/False for the if-and-only-if criteria, ``NOT_APPLICABLE``
    when the hypotheses fail, and for the general lemma True or None (None:
    the lemma draws no conclusion).  ``negated`` tests x^n - A x^m - A, the
    sign variant for which the first-family criterion also holds.
    """
    kind = Kind.parse(kind)
    if not hypotheses_hold(kind, n, m, A, B):
        return NOT_APPLICABLE
    if negated and kind is not Kind.FIRST:
        # the sign variant is only established for the first family
        # (x^4 - 3x^2 - 3 passes the second-family test yet is not monogenic)
        return NOT_APPLICABLE
    t = n // m
    a, b = (-A, -B) if negated else (A, B)
    tri = Trinomial(n, m, a, b)
    D = d_value(tri)

    def sqf(x):
        if x == 0:
            return False
        v = is_squarefree(x, effort)
        if v is None:
            raise RuntimeError(f"squarefreeness of {x} undecided within budget")
        return v

    if kind is Kind.GENERAL_LEMMA:
        return True if sqf(B) and sqf(D) else None
    ok = sqf(A) and sqf(D)
    if kind is Kind.KAPPA2:
        ok = ok and t % 3 != 2
    return ok
