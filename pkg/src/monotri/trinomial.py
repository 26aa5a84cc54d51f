"""Trinomials x^n + A x^m + B: discriminants, D, irreducibility, Galois bound."""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

import mpmath

from .arith import factorize, is_prime, small_primes, squarefree_kernel, totient
from .polymod import PolyModP, factor_degrees


@dataclass(frozen=True)
class Trinomial:
    n: int
    m: int
    A: int
    B: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"degree n={self.n} must be >= 2")
        if not 1 <= self.m < self.n:
            raise ValueError(f"need 1 <= m < n, got m={self.m}, n={self.n}")
        if self.A == 0 or self.B == 0:
            raise ValueError("A and B must be nonzero")

    @property
    def d(self) -> int:
        return math.gcd(self.n, self.m)

    @property
    def divisible(self) -> bool:
        return self.n % self.m == 0

    @property
    def t(self) -> int:
        self.require_divisor()
        return self.n // self.m

    @cached_property
    def kappa(self) -> int:
        return squarefree_kernel(self.m)

    def require_divisor(self) -> None:
        if self.n % self.m:
            raise ValueError(f"m={self.m} does not divide n={self.n}")

    def coefficients(self) -> list[int]:
        """Integer coefficients, lowest degree first."""
        c = [0] * (self.n + 1)
        c[0] = self.B
        c[self.m] = self.A
        c[self.n] = 1
        return c

    def mod(self, p: int) -> PolyModP:
        return PolyModP(p, self.coefficients())

    def __str__(self) -> str:
        def term(c, e):
            sign = "-" if c < 0 else "+"
            mono = "x" if e == 1 else f"x^{e}"
            coef = "" if abs(c) == 1 else str(abs(c))
            return f" {sign} {coef}{mono}"
        b = f" {'-' if self.B < 0 else '+'} {abs(self.B)}"
        return f"x^{self.n}{term(self.A, self.m)}{b}"


# -- discriminants ----------------------------------------------------------

def discriminant_swan(tri: Trinomial) -> int:
    """Closed-form discriminant of x^n + A x^m + B (any 0 < m < n)."""
    n, m, A, B = tri.n, tri.m, tri.A, tri.B
    d = tri.d
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    inner = n ** (n // d) * B ** ((n - m) // d) - (-1) ** (n // d) * (n - m) ** ((n - m) // d) * m ** (m // d) * A ** (n // d)
    return sign * B ** (m - 1) * inner**d


def bareiss_det(mat: list[list[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    a = [row[:] for row in mat]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for i in range(k + 1, size):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def sylvester_matrix(f: list[int], g: list[int]) -> list[list[int]]:
    """Sylvester matrix of f, g given lowest-degree-first coefficient lists."""
    df, dg = len(f) - 1, len(g) - 1
    size = df + dg
    fr, gr = f[::-1], g[::-1]
    rows = []
    for i in range(dg):
        rows.append([0] * i + fr + [0] * (size - df - 1 - i))
    for i in range(df):
        rows.append([0] * i + gr + [0] * (size - dg - 1 - i))
    return rows


def discriminant_resultant_oracle(tri: Trinomial) -> int:
    """(-1)^(n(n-1)/2) Res(f, f') from the Sylvester determinant."""
    f = tri.coefficients()
    df = [i * c for i, c in enumerate(f)][1:]
    res = bareiss_det(sylvester_matrix(f, df))
    n = tri.n
    return -res if (n * (n - 1) // 2) % 2 else res


def d_value(tri: Trinomial) -> int:
    """D = (t^t B^(t-1) + (1-t)^(t-1) A^t) / gcd(A,B)^(t-1).

    Returns 0 for the degenerate case (the discriminant then vanishes).
    """
    t = tri.t
    num = t**t * tri.B ** (t - 1) + (1 - t) ** (t - 1) * tri.A**t
    g = math.gcd(tri.A, tri.B) ** (t - 1)
    q, r = divmod(num, g)
    if r:
        raise ArithmeticError(f"gcd(A,B)^(t-1)={g} does not divide {num}")
    return q


def galois_order_bound(tri: Trinomial) -> int:
    """phi(m) * m^t * t! bound on the Galois group order."""
    t = tri.t
    return totient(tri.m) * tri.m**t * math.factorial(t)


# -- irreducibility ---------------------------------------------------------

class Status(enum.Enum):
    PROVEN_IRREDUCIBLE = "irreducible"
    PROVEN_REDUCIBLE = "reducible"
    UNKNOWN = "unknown"


class Reason(enum.Enum):
    EISENSTEIN = "eisenstein"
    MOD_P_WITNESS = "mod-p-witness"
    FACTOR_SEARCH_EXHAUSTED = "factor-search-exhausted"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class IrreducibilityCertificate:
    status: Status
    reason: Optional[Reason] = None
    prime: Optional[int] = None
    factor: Optional[tuple[int, ...]] = None  # monic, lowest degree first

    @property
    def irreducible(self) -> bool:
        return self.status is Status.PROVEN_IRREDUCIBLE


@dataclass(frozen=True)
class SearchBudget:
    mod_primes: int = 25
    max_subsets: int = 500_000
    dps: int = 50


DEFAULT_BUDGET = SearchBudget()


def _poly_divmod_int(f: list[int], g: list[int]) -> tuple[list[int], list[int]]:
    # g monic; lowest degree first
    rem = list(f)
    dg = len(g) - 1
    quot = [0] * max(len(f) - dg, 0)
    for i in range(len(rem) - 1, dg - 1, -1):
        c = rem[i]
        if c:
            quot[i - dg] = c
            for j in range(dg + 1):
                rem[i - dg + j] -= c * g[j]
    return quot, rem[:dg]


def divides(g: list[int] | tuple[int, ...], f: list[int]) -> bool:
    """Exact divisibility of f by the monic integer polynomial g."""
    _, r = _poly_divmod_int(f, list(g))
    return not any(r)


def rational_gcd(f: list[int], g: list[int]) -> list[Fraction]:
    """Monic gcd over Q of two integer polynomials (lowest degree first)."""

    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a = trim([Fraction(c) for c in f])
    b = trim([Fraction(c) for c in g])
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            c = r[-1] / b[-1]
            shift = len(r) - len(b)
            for j, bj in enumerate(b):
                r[shift + j] -= c * bj
            trim(r)
        a, b = b, r
    lead = a[-1]
    return [c / lead for c in a]


def _gcd_with_derivative(f: list[int]) -> list[int]:
    # monic gcd(f, f') over Q; integral for monic f by Gauss's lemma
    out = rational_gcd(f, [i * c for i, c in enumerate(f)][1:])
    if any(c.denominator != 1 for c in out):
        raise ArithmeticError("monic gcd is not integral")
    return [int(c) for c in out]


def _subset_sums(degs: list[int]) -> set[int]:
    sums = {0}
    for d in degs:
        sums |= {s + d for s in sums}
    return sums


def _divisors(n: int) -> list[int]:
    f = factorize(n)
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _search_factor(tri: Trinomial, degrees: list[int], budget: SearchBudget) -> tuple[Optional[tuple[int, ...]], bool]:
    """Look for a monic integer factor among products of complex roots.

    Returns (factor or None, exhausted).  A factor over Z is a product of
    x - r over some subset of roots, so trying every subset of an allowed
    size is exhaustive; floating filters only prune, and every hit is
    confirmed by exact division.
    """
    f = tri.coefficients()
    with mpmath.workdps(budget.dps):
        try:
            roots = mpmath.polyroots(f[::-1], maxsteps=400, extraprec=4 * budget.dps)
        except mpmath.libmp.NoConvergence:
            return None, False
        roots = [complex(r) for r in roots]
    logs = [math.log(abs(r)) if r != 0 else -math.inf for r in roots]
    targets = [math.log(d) for d in _divisors(abs(tri.B))]
    n = tri.n
    used = 0
    hits = []
    for d in degrees:
        for idx in itertools.combinations(range(n), d):
            used += 1
            if used > budget.max_subsets:
                return None, False
            s = sum(logs[i] for i in idx)
            if not any(abs(s - t) < 1e-6 for t in targets):
                continue
            if abs(sum(roots[i] for i in idx).imag) > 1e-6:
                continue
            poly = [1 + 0j]
            for i in idx:
                r = roots[i]
                poly = [0j] + poly
                for j in range(len(poly) - 1):
                    poly[j] -= r * poly[j + 1]
            cand = [round(c.real) for c in poly]
            if any(abs(c - k) > 1e-4 for c, k in zip(poly, cand)):
                continue
            if divides(cand, f):
                hits.append(tuple(cand))
        if hits:
            # deterministic choice among minimal-degree factors
            return max(hits, key=lambda c: c[::-1]), True
    return None, True


def irreducibility_certificate(tri: Trinomial, budget: SearchBudget = DEFAULT_BUDGET) -> IrreducibilityCertificate:
    """Certify irreducibility over Q, find a factor, or give up.

    Order: Eisenstein at primes of gcd(A, B); repeated-root and integer-root
    checks; mod-p irreducibility for primes not dividing the discriminant;
    then the exhaustive root-subset search over the factor degrees that the
    mod-p factorization patterns still allow.
    """
    A, B, n = tri.A, tri.B, tri.n
    g = math.gcd(A, B)
    if g > 1:
        for p in factorize(g).primes:
            if B % (p * p):
                return IrreducibilityCertificate(Status.PROVEN_IRREDUCIBLE, Reason.EISENSTEIN, prime=p)

    f = tri.coefficients()
    disc = discriminant_swan(tri)
    if disc == 0:
        h = _gcd_with_derivative(f)
        return IrreducibilityCertificate(Status.PROVEN_REDUCIBLE, factor=tuple(h))
    for r in _divisors(abs(B)):
        for root in (r, -r):
            if sum(c * root**i for i, c in enumerate(f)) == 0:
                return IrreducibilityCertificate(Status.PROVEN_REDUCIBLE, factor=(-root, 1))

    allowed = set(range(1, n // 2 + 1))
    tried = 0
    last = None
    for p in small_primes(10_000):
        if tried >= budget.mod_primes or not allowed:
            break
        if disc % p == 0:
            continue
        tried += 1
        degs = factor_degrees(tri.mod(p))
        if len(degs) == 1:
            return IrreducibilityCertificate(Status.PROVEN_IRREDUCIBLE, Reason.MOD_P_WITNESS, prime=p)
        allowed &= _subset_sums(degs)
        last = p
    if not allowed:
        return IrreducibilityCertificate(Status.PROVEN_IRREDUCIBLE, Reason.FACTOR_SEARCH_EXHAUSTED, prime=last)

    factor, exhausted = _search_factor(tri, sorted(allowed), budget)
    if factor is not None:
        return IrreducibilityCertificate(Status.PROVEN_REDUCIBLE, factor=factor)
    if exhausted:
        return IrreducibilityCertificate(Status.PROVEN_IRREDUCIBLE, Reason.FACTOR_SEARCH_EXHAUSTED)
    return IrreducibilityCertificate(Status.UNKNOWN, Reason.BUDGET_EXCEEDED)
