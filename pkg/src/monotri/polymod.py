"""Dense univariate polynomials over Z/pZ.

Coefficients are stored lowest degree first with no trailing zeros, so the
zero polynomial is the empty tuple.  Besides ring arithmetic this module
holds the Euclidean gcd, distinct-degree factorization, and the pair of
polynomials whose coprimality decides the p | m, p does not divide AB case of
the trinomial index test.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence


def _trim(coeffs: Sequence[int], p: int) -> tuple[int, ...]:
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class PolyModP:
    p: int
    coeffs: tuple[int, ...]

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", _trim(list(coeffs), p))

    @classmethod
    def monomial(cls, p: int, deg: int, c: int = 1) -> "PolyModP":
        return cls(p, [0] * deg + [c])

    @classmethod
    def constant(cls, p: int, c: int) -> "PolyModP":
        return cls(p, [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _check(self, other: "PolyModP") -> None:
        if not isinstance(other, PolyModP):
            raise TypeError(f"expected PolyModP, got {type(other).__name__}")
        if other.p != self.p:
            raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "PolyModP") -> "PolyModP":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyModP(self.p, out)

    def __neg__(self) -> "PolyModP":
        return PolyModP(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: "PolyModP") -> "PolyModP":
        return self + (-other)

    def __mul__(self, other: "PolyModP | int") -> "PolyModP":
        if isinstance(other, int):
            return PolyModP(self.p, [c * other for c in self.coeffs])
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return PolyModP(self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyModP(self.p, out)

    __rmul__ = __mul__

    def __divmod__(self, other: "PolyModP") -> tuple["PolyModP", "PolyModP"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        db = other.degree
        inv = pow(other.lead, -1, p)
        quot = [0] * max(len(rem) - db, 0)
        b = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] * inv % p
            if c:
                quot[i - db] = c
                for j in range(db + 1):
                    rem[i - db + j] = (rem[i - db + j] - c * b[j]) % p
        return PolyModP(p, quot), PolyModP(p, rem[:db] if db > 0 else [])

    def __floordiv__(self, other: "PolyModP") -> "PolyModP":
        return divmod(self, other)[0]

    def __mod__(self, other: "PolyModP") -> "PolyModP":
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> "PolyModP":
        if e < 0:
            raise ValueError("negative exponent")
        result = PolyModP(self.p, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def powmod(self, e: int, modulus: "PolyModP") -> "PolyModP":
        """self**e reduced modulo ``modulus`` by repeated squaring."""
        result = PolyModP(self.p, [1]) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = result * base % modulus
            base = base * base % modulus
            e >>= 1
        return result

    def monic(self) -> "PolyModP":
        if self.is_zero():
            return self
        return self * pow(self.lead, -1, self.p)

    def derivative(self) -> "PolyModP":
        return PolyModP(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"PolyModP({self.p}, 0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return f"PolyModP({self.p}, {' + '.join(terms)})"


def poly_gcd(f: PolyModP, g: PolyModP) -> PolyModP:
    """Monic gcd of f and g by the Euclidean algorithm."""
    f._check(g)
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def distinct_degree_factorization(f: PolyModP) -> list[tuple[int, PolyModP]]:
    """Split a squarefree monic f into (i, product of its degree-i factors)."""
    p = f.p
    x = PolyModP(p, [0, 1])
    rest = f.monic()
    h = x
    out = []
    i = 0
    while rest.degree >= 2 * (i + 1):
        i += 1
        h = h.powmod(p, rest)
        g = poly_gcd(rest, h - x)
        if g.degree > 0:
            out.append((i, g))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest.degree, rest))
    return out


def factor_degrees(f: PolyModP) -> list[int]:
    """Degrees of the irreducible factors of a squarefree f, with repetition."""
    degs = []
    for i, g in distinct_degree_factorization(f):
        degs.extend([i] * (g.degree // i))
    return sorted(degs)


def is_irreducible(f: PolyModP) -> bool:
    """Ben-Or's test: no gcd with x^(p^i) - x for i <= deg/2."""
    if f.degree < 1:
        return False
    p = f.p
    f = f.monic()
    x = PolyModP(p, [0, 1])
    h = x
    for _ in range(f.degree // 2):
        h = h.powmod(p, f)
        if poly_gcd(f, h - x).degree > 0:
            return False
    return True


def jks_condition4_polys(n: int, m: int, A: int, B: int, p: int) -> tuple[PolyModP, PolyModP]:
    """The pair (G1, G2) that must be coprime mod p when p | m and p does not divide AB.

    With p^k || m, s = m/p^k and s' = n/p^k:

        G1 = x^s' + A x^s + B
        G2 = (A x^(s p^k) + B + (-A x^s - B)^(p^k)) / p

    G2 is integral; only residues mod p^2 of the numerator are needed.
    """
    if m <= 0 or n % m:
        raise ValueError("m must divide n")
    if m % p:
        raise ValueError(f"{p} does not divide m={m}")
    if A % p == 0 or B % p == 0:
        raise ValueError(f"{p} divides AB")
    k = 0
    mm = m
    while mm % p == 0:
        mm //= p
        k += 1
    pk = p**k
    s, s_prime = m // pk, n // pk
    if s_prime % p == 0 and s % p == 0:
        raise ValueError("p divides gcd(s', s)")
    p2 = p * p
    num = [0] * (s * pk + 1)
    num[s * pk] += A
    num[0] += B
    # (-A x^s - B)^(p^k) = sum_j C(p^k, j) (-A)^j (-B)^(p^k - j) x^(s j)
    for j in range(pk + 1):
        c = comb(pk, j) % p2
        if c:
            num[s * j] += c * pow(-A, j, p2) * pow(-B, pk - j, p2)
    num = [c % p2 for c in num]
    if any(c % p for c in num):
        raise ArithmeticError("numerator of G2 is not divisible by p")
    g1 = PolyModP(p, [B] + [0] * (s - 1) + [A] + [0] * (s_prime - s - 1) + [1])
    g2 = PolyModP(p, [c // p for c in num])
    return g1, g2
