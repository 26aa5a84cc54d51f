"""Euler products and main terms for the monogenic-trinomial counts.

All arithmetic is done in mpmath at ``DPS`` decimal digits.  Euler factors
(p^2 - 2)/(p^2 - 1) are multiplied exactly in integer blocks before each
division, so 40 digits are carried end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from functools import lru_cache
from typing import Iterable, Optional

import mpmath

from .arith import factorize, is_squarefree, prime_sieve, squarefree_kernel, totient

DPS = 40
DEFAULT_CUTOFF = 10**7
_BLOCK = 64
# pi(x) < 1.25506 x / log x for x > 1 (Rosser-Schoenfeld)
_PI_UPPER = 1.25506


def zeta2() -> mpmath.mpf:
    with mpmath.workdps(DPS):
        return mpmath.pi**2 / 6


@lru_cache(maxsize=8)
def _full_product(cutoff: int) -> mpmath.mpf:
    primes = prime_sieve(cutoff).tolist()
    with mpmath.workdps(DPS + 10):
        acc = mpmath.mpf(1)
        for i in range(0, len(primes), _BLOCK):
            num = den = 1
            for p in primes[i:i + _BLOCK]:
                q = p * p - 1
                num *= q - 1
                den *= q
            acc = acc * num / den
        return +acc


@dataclass(frozen=True)
class EulerProduct:
    """Truncated product and a multiplicative lower bound on the tail.

    The infinite product lies in [value * tail_factor, value].
    """

    value: mpmath.mpf
    tail_factor: mpmath.mpf
    cutoff: int

    def __float__(self) -> float:
        return float(self.value)

    @property
    def lower(self) -> mpmath.mpf:
        with mpmath.workdps(DPS):
            return self.value * self.tail_factor


def tail_factor(cutoff: int) -> mpmath.mpf:
    """Lower bound for prod_{p > cutoff} (1 - 1/(p^2 - 1)).

    log(1 - x) >= -x/(1 - x) turns each factor into exp(-1/(p^2 - 2)).
    Partial summation with the exact pi(P) and pi(x) < 1.25506 x / log x
    gives sum_{p > P} 1/p^2 <= 2 * 1.25506 / (P log P) - pi(P) / P^2.
    """
    pi_P = _prime_count(cutoff)
    with mpmath.workdps(DPS):
        P = mpmath.mpf(cutoff)
        s = (2 * _PI_UPPER / (P * mpmath.log(P)) - pi_P / P**2) * (1 + 3 / P**2)
        return mpmath.exp(-s)


@lru_cache(maxsize=8)
def _prime_count(limit: int) -> int:
    return len(prime_sieve(limit))


def euler_product(exclude: Iterable[int] = (), cutoff: int = DEFAULT_CUTOFF) -> EulerProduct:
    """prod over primes p <= cutoff, p not in exclude, of (1 - 1/(p^2 - 1))."""
    if cutoff < 100:
        raise ValueError("cutoff must be at least 100")
    excl = sorted({int(p) for p in exclude if 2 <= p <= cutoff})
    with mpmath.workdps(DPS + 10):
        if len(excl) > 1000:
            keep = [p for p in prime_sieve(cutoff).tolist() if p not in set(excl)]
            acc = mpmath.mpf(1)
            for p in keep:
                acc *= mpmath.mpf(p * p - 2) / (p * p - 1)
        else:
            acc = _full_product(cutoff)
            for p in excl:
                acc = acc * (p * p - 1) / (p * p - 2)
        value = +acc
    with mpmath.workdps(DPS):
        return EulerProduct(+value, tail_factor(cutoff), cutoff)


def round_half_away(x) -> int:
    """Nearest integer, halves rounded away from zero."""
    d = Decimal(mpmath.nstr(x, DPS, strip_zeros=False))
    return int(d.quantize(Decimal(1), rounding=ROUND_HALF_UP))


def _primes_of(*xs: int) -> list[int]:
    out: set[int] = set()
    for x in xs:
        if abs(x) > 1:
            out.update(factorize(x).primes)
    return sorted(out)


def main_term_family(kind, n: int, m: int, X, cutoff: int = DEFAULT_CUTOFF) -> mpmath.mpf:
    """Main term of the count of A <= X in the first or second family.

    first:  X/(kappa zeta(2)) prod_{p|kappa} (1 - 1/(p+1)) E
    second: X/(kappa^2 zeta(2)) prod_{p|kappa} (1 - p^-2)^-1 E

    where E = prod_{p not dividing t(t-1)kappa} (1 - 1/(p^2 - 1)).
    """
    from .monogenic import Kind

    kind = Kind.parse(kind)
    if n < 2 or not 1 <= m < n or n % m:
        raise ValueError(f"m={m} must be a proper divisor of n={n}")
    t = n // m
    kappa = squarefree_kernel(m)
    kp = _primes_of(kappa)
    E = euler_product(_primes_of(t, t - 1, kappa), cutoff).value
    with mpmath.workdps(DPS):
        X = mpmath.mpf(X)
        if kind.name == "FIRST":
            local = mpmath.fprod(1 - mpmath.mpf(1) / (p + 1) for p in kp)
            return X / (kappa * zeta2()) * local * E
        if kind.name == "SECOND":
            if 210 % kappa:
                raise ValueError(f"kappa={kappa} must divide 210")
            local = mpmath.fprod(1 / (1 - mpmath.mpf(p) ** -2) for p in kp)
            return X / (kappa**2 * zeta2()) * local * E
    raise ValueError(f"no main term for family {kind.value}")


class RestrictionError(ValueError):
    def __init__(self, clause: int, detail: str):
        super().__init__(f"restriction {clause} violated: {detail}")
        self.clause = clause


@dataclass(frozen=True)
class MainTermParams:
    rho: int
    gamma: int
    alpha: int
    alpha0: int
    beta: int
    beta0: int

    def __post_init__(self):
        for name in ("rho", "gamma", "alpha", "alpha0", "beta0"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        self.validate()

    def validate(self) -> None:
        rho, gamma, alpha, alpha0, beta, beta0 = self.rho, self.gamma, self.alpha, self.alpha0, self.beta, self.beta0
        if math.gcd(alpha0 * beta0 * rho, gamma) != 1:
            raise RestrictionError(1, "gcd(alpha0 beta0 rho, gamma) != 1")
        if math.gcd(alpha, beta) != 1:
            raise RestrictionError(1, "gcd(alpha, beta) != 1")
        if beta != 0:
            for p, e in factorize(beta).factors:
                if e < 2:
                    raise RestrictionError(2, f"{p} divides beta but {p}^2 does not")
        if alpha % alpha0 or (alpha0 > 1 and not is_squarefree(alpha0)):
            raise RestrictionError(3, "alpha0 is not a squarefree divisor of alpha")
        if beta % beta0 or (beta0 > 1 and not is_squarefree(beta0)):
            raise RestrictionError(4, "beta0 is not a squarefree divisor of beta")
        for p in _primes_of(gamma):
            if (alpha * beta0 * rho + beta) % (p * p) == 0:
                raise RestrictionError(5, f"alpha beta0 rho + beta = 0 mod {p}^2")

    @classmethod
    def first_type(cls, n: int, m: int) -> "MainTermParams":
        """Substitution for the first family; use with X / kappa."""
        t, kappa = n // m, squarefree_kernel(m)
        beta0 = math.gcd(t, kappa)
        alpha0 = kappa // beta0
        return cls(rho=1, gamma=1, alpha=(t - 1) ** (t - 1) * alpha0, alpha0=alpha0,
                   beta=(-1) ** (t - 1) * t**t, beta0=beta0)

    @classmethod
    def second_type(cls, n: int, m: int) -> "MainTermParams":
        t, kappa = n // m, squarefree_kernel(m)
        # for kappa = 1 the class mod gamma^2 = 1 is everything; any rho works
        return cls(rho=max(kappa * kappa - 1, 1), gamma=kappa, alpha=(t - 1) ** (t - 1), alpha0=1,
                   beta=(-1) ** (t - 1) * t**t, beta0=1)


def main_term_U(params: MainTermParams, X, cutoff: int = DEFAULT_CUTOFF) -> mpmath.mpf:
    """Main term of #{y <= X: y = rho mod gamma^2, gcd(y, alpha0 beta0) = 1,
    y and alpha beta0 y + beta both squarefree}."""
    params.validate()
    ab = params.alpha0 * params.beta0
    local_primes = _primes_of(ab, params.gamma)
    E = euler_product(_primes_of(params.alpha, params.beta, params.gamma), cutoff).value
    with mpmath.workdps(DPS):
        local = mpmath.fprod(1 / (1 - mpmath.mpf(p) ** -2) for p in local_primes)
        return mpmath.mpf(X) * totient(ab) / (ab * params.gamma**2 * zeta2()) * local * E


def prachar_main_term(X, r: int, m: int, q: Optional[int] = None) -> mpmath.mpf:
    """Main term for squarefree n <= X, n = r mod m (and gcd(n, q) = 1)."""
    if math.gcd(r, m) != 1:
        raise ValueError("gcd(r, m) must be 1")
    if q is not None and math.gcd(q, m) != 1:
        raise ValueError("gcd(q, m) must be 1")
    qq = 1 if q is None else q
    with mpmath.workdps(DPS):
        local = mpmath.fprod(1 / (1 - mpmath.mpf(p) ** -2) for p in _primes_of(qq * m))
        return mpmath.mpf(X) * totient(qq) / (qq * m * zeta2()) * local


def c_t(t: int, kappa: int, modulus: int) -> int:
    """(t-1)^(t-1) (kappa^2 - 1) + (-1)^(t-1) t^t reduced mod ``modulus``."""
    sign = -1 if (t - 1) % 2 else 1
    return (pow(t - 1, t - 1, modulus) * (kappa * kappa - 1) + sign * pow(t, t, modulus)) % modulus


def c_t_period_check(p: int, kappa: int) -> bool:
    """True iff C(t) is nonzero mod p^2 over one full period t in [2, 2 + p^2(p-1))."""
    if kappa % p or 210 % kappa:
        raise ValueError("need p | kappa | 210")
    p2 = p * p
    return all(c_t(t, kappa, p2) for t in range(2, 2 + p2 * (p - 1)))
