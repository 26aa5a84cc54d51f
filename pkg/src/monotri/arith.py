"""Integer utilities: primes, primality, factorization and squarefreeness.

Everything here works on plain Python ints.  Factorization runs trial division
up to a bound, then Miller-Rabin, perfect-power detection and Brent's variant
of Pollard rho.  Rho seeds are derived from the number being split, so results
never depend on call order or on which worker runs them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

# Deterministic Miller-Rabin: the first 13 primes are a witness set for all
# n < 3317044064679887385961981 (Sorenson & Webster).
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_BOUND = 3317044064679887385961981
_EXTRA_MR_ROUNDS = 12

_TRIAL_BLOCK = 256


@dataclass(frozen=True)
class Effort:
    """Budget for :func:`factorize`.

    ``rho_iterations`` caps the total number of rho steps spent on one input;
    ``None`` means no cap (rho then always terminates with a split, just not
    in bounded time).
    """

    trial_bound: int = 10**6
    rho_iterations: Optional[int] = None
    max_power: int = 64


DEFAULT_EFFORT = Effort()


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of ``|n|``.

    ``cofactor`` holds whatever could not be split within budget (1 when
    ``complete``).  Primes above the deterministic Miller-Rabin range are
    listed again in ``probable``.
    """

    n: int
    factors: tuple[tuple[int, int], ...]
    complete: bool = True
    cofactor: int = 1
    probable: tuple[int, ...] = ()
    rho_steps: int = 0

    def __post_init__(self):
        if self.complete and self.cofactor != 1:
            raise ValueError("complete factorization must have cofactor 1")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def value(self) -> int:
        out = self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


# -- primes -----------------------------------------------------------------

def prime_sieve(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (odd-only sieve)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    half = limit // 2 + 1
    is_odd_prime = np.ones(half, dtype=bool)  # index i <-> 2i+1
    is_odd_prime[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if is_odd_prime[i]:
            p = 2 * i + 1
            is_odd_prime[p * p // 2::p] = False
    odd = 2 * np.nonzero(is_odd_prime)[0].astype(np.int64) + 1
    odd = odd[odd <= limit]
    return np.concatenate((np.array([2], dtype=np.int64), odd))


@lru_cache(maxsize=8)
def small_primes(limit: int) -> tuple[int, ...]:
    return tuple(int(p) for p in prime_sieve(limit))


@lru_cache(maxsize=8)
def _trial_blocks(limit: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    # (product of block, block primes); a gcd against the product skips
    # whole blocks of non-divisors at once.
    ps = small_primes(limit)
    out = []
    for i in range(0, len(ps), _TRIAL_BLOCK):
        block = ps[i:i + _TRIAL_BLOCK]
        out.append((math.prod(block), block))
    return tuple(out)


@lru_cache(maxsize=4)
def primorial(limit: int) -> int:
    return math.prod(small_primes(limit))


def is_probable_prime(n: int, bases: Iterable[int] = MR_BASES) -> bool:
    """Strong probable-prime test to each of the given bases."""
    if n < 2:
        return False
    for p in MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _extra_bases(n: int) -> list[int]:
    # reproducible pseudo-random bases for inputs above the proven range
    out, x = [], n % 0xFFFFFFFB
    for _ in range(_EXTRA_MR_ROUNDS):
        x = (x * 6364136223846793005 + 1442695040888963407) % (1 << 64)
        out.append(2 + x % (n - 3))
    return out


def is_prime(n: int) -> bool:
    """Primality; deterministic below ``MR_DETERMINISTIC_BOUND``."""
    if n < 2:
        return False
    if not is_probable_prime(n):
        return False
    if n < MR_DETERMINISTIC_BOUND:
        return True
    return is_probable_prime(n, _extra_bases(n))


def next_prime(n: int) -> int:
    """Smallest prime > n."""
    if n < 2:
        return 2
    c = n + 1
    if c > 2 and c % 2 == 0:
        c += 1
    while not is_prime(c):
        c += 2
    return c


# -- roots and powers ---------------------------------------------------------

def iroot(n: int, k: int) -> tuple[int, bool]:
    """(floor(n**(1/k)), exact) for n >= 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k == 1 or n < 2:
        return n, True
    if k == 2:
        r = math.isqrt(n)
        return r, r * r == n
    r = 1 << ((n.bit_length() + k - 1) // k)  # r >= true root
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    return r, r**k == n


def perfect_power(n: int, max_power: int = 64) -> Optional[tuple[int, int]]:
    """Return (b, k) with b**k == n and k prime, k <= max_power, or None."""
    if n < 4:
        return None
    for k in small_primes(max(max_power, 2)):
        if k > max_power or (1 << k) > n:
            break
        r, exact = iroot(n, k)
        if exact:
            return r, k
    return None


# -- Pollard rho ------------------------------------------------------------------

def pollard_brent(n: int, c: int, budget: Optional[int] = None) -> tuple[Optional[int], int]:
    """Brent's rho on x -> x^2 + c mod n.

    Returns (nontrivial factor or None, steps used).  None means either the
    budget ran out or this c degenerated (factor == n).
    """
    if n % 2 == 0:
        return 2, 0
    y, r, q, g = (c * 7 + 3) % n, 1, 1, 1
    m = 128
    steps = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            steps += min(m, r - k)
            g = math.gcd(q, n)
            k += m
        r *= 2
        if budget is not None and steps >= budget and g == 1:
            return None, steps
    if g == n:
        # backtrack one step at a time from the saved position
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            steps += 1
            if g > 1:
                break
    if g == n:
        return None, steps
    return g, steps


def _rho_split(n: int, budget: Optional[int]) -> tuple[Optional[int], int]:
    used = 0
    c = 1 + n % 9973
    for _ in range(64):
        left = None if budget is None else budget - used
        if left is not None and left <= 0:
            break
        d, steps = pollard_brent(n, c, left)
        used += steps
        if d is not None:
            return d, used
        c += 1
    return None, used


# -- factorization ---------------------------------------------------------------

def _trial_divide(n: int, limit: int) -> tuple[dict[int, int], int]:
    found: dict[int, int] = {}
    for prod, block in _trial_blocks(limit):
        if block[0] * block[0] > n:
            break
        if math.gcd(prod, n) == 1:
            continue
        for p in block:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                found[p] = e
    return found, n


def _factor_pieces(n: int, effort: Effort):
    found, rest = _trial_divide(n, effort.trial_bound)
    budget = effort.rho_iterations
    used = 0
    unsplit: list[tuple[int, int]] = []
    stack = [(rest, 1)] if rest > 1 else []
    bound_sq = effort.trial_bound * effort.trial_bound
    while stack:
        m, mult = stack.pop()
        if m == 1:
            continue
        if m < bound_sq or is_prime(m):
            found[m] = found.get(m, 0) + mult
            continue
        pp = perfect_power(m, effort.max_power)
        if pp is not None:
            stack.append((pp[0], mult * pp[1]))
            continue
        left = None if budget is None else budget - used
        d, steps = _rho_split(m, left)
        used += steps
        if d is None:
            unsplit.append((m, mult))
        else:
            stack.extend([(d, mult), (m // d, mult)])
    return found, unsplit, used


def factorize(n: int, effort: Effort = DEFAULT_EFFORT) -> Factorization:
    """Factor |n| as far as the effort budget allows.

    >>> factorize(-2079).factors
    ((3, 3), (7, 1), (11, 1))
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    found, unsplit, used = _factor_pieces(abs(n), effort)
    cofactor = math.prod(m**e for m, e in unsplit)
    return Factorization(
        n=n,
        factors=tuple(sorted(found.items())),
        complete=not unsplit,
        cofactor=cofactor,
        probable=tuple(sorted(p for p in found if p >= MR_DETERMINISTIC_BOUND)),
        rho_steps=used,
    )


def is_squarefree(n: int, effort: Effort = DEFAULT_EFFORT) -> Optional[bool]:
    """True/False, or None when the budget could not settle it.

    Negative n are judged by |n|.
    """
    if n == 0:
        raise ValueError("0 is not squarefree-testable")
    found, unsplit, _ = _factor_pieces(abs(n), effort)
    if any(e > 1 for e in found.values()) or any(e > 1 for _, e in unsplit):
        return False
    if not unsplit:
        return True
    pieces = [m for m, _ in unsplit]
    for i, a in enumerate(pieces):
        for b in pieces[i + 1:]:
            if math.gcd(a, b) > 1:
                return False
    verdicts = [_cofactor_squarefree(m, effort.trial_bound, effort) for m in pieces]
    if False in verdicts:
        return False
    return None if None in verdicts else True


def _cofactor_squarefree(c: int, rough: int, effort: Effort) -> Optional[bool]:
    # c composite, not a perfect power, no prime factor <= rough
    if c < rough**3:
        return True  # two distinct primes
    return None


def rough_is_squarefree(r: int, rough: int, effort: Effort = DEFAULT_EFFORT) -> Optional[bool]:
    """Squarefreeness of r > 0 known to have no prime factor <= rough.

    Cheaper than :func:`is_squarefree`: a composite non-square below rough**3
    is a product of two distinct primes, so rho only runs above that size.
    """
    stack = [r]
    seen: list[int] = []
    budget = effort.rho_iterations
    used = 0
    while stack:
        m = stack.pop()
        if m == 1 or m <= rough * rough or is_prime(m):
            seen.append(m)
            continue
        if perfect_power(m, effort.max_power) is not None:
            return False
        if m < rough**3:
            seen.append(m)
            continue
        left = None if budget is None else budget - used
        d, steps = _rho_split(m, left)
        used += steps
        if d is None:
            return None
        e = m // d
        if math.gcd(d, e) > 1:
            return False
        stack.extend((d, e))
    # pieces are pairwise coprime by construction
    return True


def squarefree_kernel(m: int) -> int:
    """Product of the distinct primes dividing m (radical)."""
    if m < 1:
        raise ValueError("m must be positive")
    f = factorize(m)
    return math.prod(f.primes)


def valuation(n: int, p: int) -> int:
    """Exponent of p in n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def totient(m: int) -> int:
    if m < 1:
        raise ValueError("m must be positive")
    out = m
    for p in factorize(m).primes:
        out -= out // p
    return out


def prime_divisors(n: int) -> list[int]:
    return factorize(n).primes
