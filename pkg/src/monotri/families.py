"""Counting sweeps for the A = B families, the B-search construction, and
local obstructions / squarefree-value densities of integer polynomials.

For f = x^n + A x^m + A the quantity D is linear in A:
D(A) = t^t + (1 - t)^(t-1) A.  Both A and D(A) are therefore linear forms
along the residue class being swept, so one sieve handles both: for every
prime p <= P0 it strikes indices with p^2 | form and records the product of
primes p | form.  Survivors have a P0-rough cofactor whose squarefreeness
is settled by :func:`arith.rough_is_squarefree`.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .arith import (
    DEFAULT_EFFORT,
    Effort,
    is_prime,
    is_squarefree,
    prime_sieve,
    rough_is_squarefree,
    squarefree_kernel,
)
from .monogenic import Kind

DEFAULT_SIEVE_BOUND = 10**5
SEARCH_B_LIMIT = 10**9


class BudgetExhausted(RuntimeError):
    """A squarefreeness question could not be settled within the effort limits."""


@dataclass(frozen=True)
class FamilySpec:
    kind: Kind
    n: int
    m: int
    X: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind.parse(self.kind))
        if self.kind is Kind.GENERAL_LEMMA:
            raise ValueError("the general lemma is not a countable family")
        if self.n < 2 or not 1 <= self.m < self.n or self.n % self.m:
            raise ValueError(f"m={self.m} must be a proper divisor of n={self.n}")
        if self.X < 0:
            raise ValueError("X must be nonnegative")
        if self.kind is Kind.SECOND and 210 % self.kappa:
            raise ValueError(f"kappa={self.kappa} must divide 210")
        if self.kind is Kind.KAPPA2 and (self.n < 4 or self.m < 2 or self.m & (self.m - 1)):
            raise ValueError("the kappa = 2 family needs n >= 4 and m a power of two >= 2")

    @property
    def t(self) -> int:
        return self.n // self.m

    @property
    def kappa(self) -> int:
        return squarefree_kernel(self.m)

    def progression(self) -> tuple[int, int]:
        """(first A, step) of the swept residue class."""
        k = self.kappa
        if self.kind is Kind.FIRST:
            return (k, k) if k > 1 else (1, 1)
        if self.kind is Kind.SECOND:
            step = k * k
            return ((step - 1) if step > 1 else 1), step
        return 5, 4

    def d_coefficients(self) -> tuple[int, int]:
        """(c, d) with D(A) = c A + d."""
        t = self.t
        return (1 - t) ** (t - 1), t**t


@dataclass(frozen=True)
class CountResult:
    actual: int
    main_term: Optional[float]
    X: int
    n: int
    m: int
    kind: Kind

    def __post_init__(self):
        if not 0 <= self.actual <= max(self.X, 0):
            raise ValueError("count out of range")


def _hits(a0: int, step: int, c: int, d: int, mod: int) -> list[int]:
    """Indices i mod ``mod`` with c (a0 + i step) + d = 0 (mod ``mod``)."""
    lin = c * step % mod
    const = (c * a0 + d) % mod
    if math.gcd(lin, mod) == 1:
        return [(-const) * pow(lin, -1, mod) % mod]
    return [i for i in range(mod) if (lin * i + const) % mod == 0]


def _sieve_forms(a0: int, step: int, lo: int, count: int, forms, primes) -> tuple[np.ndarray, list[list[int]]]:
    """Strike indices lo..lo+count-1 where p^2 divides a form; collect small parts."""
    alive = np.ones(count, dtype=bool)
    small = [np.ones(count, dtype=object) for _ in forms]
    for p in primes:
        p2 = p * p
        for (c, d), part in zip(forms, small):
            for r in _hits(a0, step, c, d, p2):
                start = (r - lo) % p2
                alive[start::p2] = False
            for r in _hits(a0, step, c, d, p):
                start = (r - lo) % p
                part[start::p] *= p
    return alive, [list(s) for s in small]


def _chunk_count(args) -> int:
    spec, lo, count, sieve_bound, require_nonsquarefree_disc, effort = args
    a0, step = spec.progression()
    c, d = spec.d_coefficients()
    forms = [(1, 0), (c, d)]
    primes = prime_sieve(sieve_bound).tolist()
    alive, small = _sieve_forms(a0, step, lo, count, forms, primes)
    total = 0
    for j in np.nonzero(alive)[0].tolist():
        A = a0 + (lo + j) * step
        ok = True
        for k, (fc, fd) in enumerate(forms):
            v = abs(fc * A + fd)
            if v == 0:
                ok = False
                break
            verdict = rough_is_squarefree(v // small[k][j], sieve_bound, effort)
            if verdict is None:
                raise BudgetExhausted(f"squarefreeness of {v} undecided (A={A})")
            if not verdict:
                ok = False
                break
        if not ok:
            continue
        if require_nonsquarefree_disc and _disc_squarefree(spec, A, c * A + d):
            continue
        total += 1
    return total


def _disc_squarefree(spec: FamilySpec, A: int, D: int) -> bool:
    # disc = +-A^(n-1) m^(n) D^m for A = B; called only when A and D are
    # squarefree, so it is squarefree iff the powers collapse and gcd(A, D) = 1
    if spec.m > 1:
        return False
    if A > 1 and spec.n > 2:
        return False
    return math.gcd(A, D) == 1


def count_family(
    spec: FamilySpec,
    workers: int = 1,
    sieve_bound: int = DEFAULT_SIEVE_BOUND,
    require_nonsquarefree_disc: bool = False,
    effort: Effort = DEFAULT_EFFORT,
    cutoff: Optional[int] = None,
) -> CountResult:
    """Exact number of A in [1, X] of the family whose trinomial is monogenic.

    Counted as: A in the family's residue class (A >= 5 for the kappa = 2
    family), A and D(A) squarefree, and t != 2 (mod 3) for the kappa = 2
    family.  With ``require_nonsquarefree_disc`` only trinomials whose
    discriminant is not squarefree are kept.  ``cutoff`` (if given) attaches
    the main term for the first and second families.
    """
    if sieve_bound < 2:
        raise ValueError("sieve_bound must be at least 2")
    a0, step = spec.progression()
    size = 0 if spec.X < a0 else (spec.X - a0) // step + 1
    actual = 0
    if size and not (spec.kind is Kind.KAPPA2 and spec.t % 3 == 2):
        workers = max(1, min(workers, size))
        bounds = [size * i // workers for i in range(workers + 1)]
        jobs = [(spec, lo, hi - lo, sieve_bound, require_nonsquarefree_disc, effort)
                for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
        if workers == 1:
            actual = sum(map(_chunk_count, jobs))
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                actual = sum(pool.map(_chunk_count, jobs))
    main = None
    if cutoff is not None and spec.kind in (Kind.FIRST, Kind.SECOND):
        from .asymptotics import main_term_family

        main = main_term_family(spec.kind, spec.n, spec.m, spec.X, cutoff)
    return CountResult(actual, main, spec.X, spec.n, spec.m, spec.kind)


# -- polynomials in one variable for the B-search ----------------------------

@dataclass(frozen=True)
class LinearForm:
    """Integer polynomial, lowest degree first, no trailing zeros."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        if not c:
            raise ValueError("the zero polynomial is not allowed")
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def for_search(cls, n: int, m: int, A: int, r: int) -> "LinearForm":
        """F(x) = t^t x^(t-1) + (1-t)^(t-1) a^t r kappa with a = A/(r kappa)."""
        t, kappa, a = _check_search(n, m, A, r)
        coeffs = [0] * t
        coeffs[t - 1] = t**t
        coeffs[0] += (1 - t) ** (t - 1) * a**t * r * kappa
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def content(self) -> int:
        return math.gcd(*self.coeffs)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def values_mod(self, mod: int, xs: np.ndarray) -> np.ndarray:
        acc = np.zeros(len(xs), dtype=np.int64)
        for c in reversed(self.coeffs):
            acc = (acc * xs + c % mod) % mod
        return acc


def _as_form(F) -> LinearForm:
    return F if isinstance(F, LinearForm) else LinearForm(tuple(F))


def _check_search(n: int, m: int, A: int, r: int) -> tuple[int, int, int]:
    if n < 2 or not 1 <= m < n or n % m:
        raise ValueError(f"m={m} must be a proper divisor of n={n}")
    if not is_prime(r):
        raise ValueError(f"r={r} is not prime")
    kappa = squarefree_kernel(m)
    if kappa % r == 0:
        raise ValueError(f"r={r} divides kappa={kappa}")
    if A <= 0 or A % (r * kappa):
        raise ValueError(f"r kappa = {r * kappa} does not divide A={A}")
    t, a = n // m, A // (r * kappa)
    if math.gcd(a, t) != 1:
        raise ValueError(f"gcd(A/(r kappa), t) = gcd({a}, {t}) != 1")
    return t, kappa, a


def search_B(n: int, m: int, A: int, r: int, how_many: int,
             effort: Effort = DEFAULT_EFFORT, limit: int = SEARCH_B_LIMIT) -> list[tuple[int, int]]:
    """First ``how_many`` pairs (B, p), p > A prime with F(p) squarefree, B = p r kappa.

    For these, D = F(p) and B are squarefree and kappa | gcd(A, B), so the
    general lemma makes x^n + A x^m + B monogenic.
    """
    t, kappa, _ = _check_search(n, m, A, r)
    F = LinearForm.for_search(n, m, A, r)
    out: list[tuple[int, int]] = []
    lo = A + 1
    seg = 1 << 16
    while len(out) < how_many:
        if lo > limit:
            raise BudgetExhausted(f"no more hits below the safety bound {limit}")
        hi = min(lo + seg, limit + 1)
        for p in _primes_in(lo, hi):
            v = is_squarefree(abs(F(p)), effort)
            if v is None:
                raise BudgetExhausted(f"squarefreeness of F({p}) undecided")
            if v:
                out.append((p * r * kappa, p))
                if len(out) == how_many:
                    break
        lo = hi
    return out


def _primes_in(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi) by a segmented sieve."""
    if hi <= 2:
        return []
    lo = max(lo, 2)
    mark = np.ones(hi - lo, dtype=bool)
    for p in prime_sieve(math.isqrt(hi - 1)).tolist():
        start = max(p * p, -(-lo // p) * p)
        mark[start - lo::p] = False
    return (np.nonzero(mark)[0] + lo).tolist()


# -- local obstructions and the density constant ------------------------------

def unit_root_count(F, q: int) -> int:
    """rho_F(q^2): number of units z mod q^2 with F(z) = 0 (mod q^2)."""
    F = _as_form(F)
    q2 = q * q
    xs = np.arange(q2, dtype=np.int64)
    xs = xs[xs % q != 0]
    return int(np.count_nonzero(F.values_mod(q2, xs) == 0))


def local_obstruction_scan(F, q_max: int) -> list[int]:
    """Primes q <= q_max at which F vanishes mod q^2 on every unit."""
    F = _as_form(F)
    out = []
    for q in prime_sieve(q_max).tolist():
        if unit_root_count(F, q) == q * (q - 1):
            out.append(q)
    return out


@dataclass(frozen=True)
class DensityConstant:
    value: float
    tail_bound: float  # heuristic: deg F / q_max
    q_max: int


def density_constant_cF(F, q_max: int) -> DensityConstant:
    """Partial product of (1 - rho_F(q^2)/(q(q-1))) over primes q <= q_max."""
    from .trinomial import rational_gcd

    F = _as_form(F)
    if F.degree >= 1:
        deriv = [i * c for i, c in enumerate(F.coeffs)][1:]
        if len(rational_gcd(list(F.coeffs), deriv)) > 1:
            raise ValueError("F has a repeated factor")
    value = 1.0
    for q in prime_sieve(q_max).tolist():
        rho = unit_root_count(F, q)
        value *= 1.0 - rho / (q * (q - 1))
        if value == 0.0:
            break
    tail = max(F.degree, 0) / q_max if q_max > 0 else math.inf
    return DensityConstant(value, tail, q_max)


def naive_count(spec: FamilySpec, effort: Effort = DEFAULT_EFFORT) -> int:
    """Direct loop over the residue class, for cross-checking :func:`count_family`."""
    from .monogenic import family_criterion

    a0, step = spec.progression()
    c, d = spec.d_coefficients()
    total = 0
    for A in range(a0, spec.X + 1, step):
        verdict = family_criterion(spec.kind, spec.n, spec.m, A, A, effort=effort)
        if verdict is True:
            total += 1
        elif verdict is False or verdict is None:
            continue
        elif A == 1:
            # outside the criterion's A >= 2 range: the table convention
            # counts A = 1 by the same squarefree test
            D = c + d
            total += D != 0 and bool(is_squarefree(abs(D), effort))
    return total

