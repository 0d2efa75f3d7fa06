"""Factored integers and the divisor-sum arithmetic built on them.

Numbers are carried as sorted prime factorizations and never expanded unless
a caller asks for the value.  All comparisons the hot paths need reduce to
integer cross-multiplication; Fraction appears only at API boundaries.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from . import primes as _primes
from .errors import NotADivisor, NotCoprime, NotDeficient, ParseError

_FACTOR_LIMIT = 1 << 64


def sigma_prime_power(p: int, e: int) -> int:
    """sigma(p^e) = 1 + p + ... + p^e; sigma(p^0) = 1."""
    if e < 0:
        raise ValueError("negative exponent")
    return (p ** (e + 1) - 1) // (p - 1)


class Factorization:
    """A positive integer as a tuple of (prime, exponent) pairs.

    Primes are strictly increasing and exponents positive; the empty tuple
    is 1.  Instances are immutable by convention and usable as dict keys.
    """

    __slots__ = ("factors",)

    def __init__(self, factors=()):
        pairs = tuple((int(p), int(e)) for p, e in factors)
        last = 1
        for p, e in pairs:
            if p <= last:
                raise ValueError("primes must be strictly increasing: %r" % (pairs,))
            if e < 1:
                raise ValueError("exponents must be positive: %r" % (pairs,))
            last = p
        self.factors = pairs

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "Factorization":
        """Factor a plain integer; supported up to 2^64 as a convenience."""
        if n < 1:
            raise ValueError("need a positive integer")
        if n >= _FACTOR_LIMIT:
            raise ValueError("values this large must be supplied factored")
        return cls(sorted(_factorize(n).items()))

    @classmethod
    def parse(cls, text: str, policy=None) -> "Factorization":
        """Parse 'p1^e1*p2*...' (or '1'); primes must increase and be prime."""
        text = text.strip()
        if text == "1":
            return cls()
        if not text:
            raise ParseError("empty factorization")
        pairs = []
        for token in text.split("*"):
            base, caret, exp = token.partition("^")
            try:
                p = int(base)
                e = int(exp) if caret else 1
            except ValueError:
                raise ParseError("bad factor %r" % token) from None
            pairs.append((p, e))
        last = 1
        for p, e in pairs:
            if p <= last:
                raise ParseError("primes must be strictly increasing: %r" % text)
            if e < 1:
                raise ParseError("exponents must be positive: %r" % text)
            if not _primes.is_prime(p, policy):
                raise ParseError("%d is not prime" % p)
            last = p
        return cls(pairs)

    @classmethod
    def coerce(cls, obj, policy=None) -> "Factorization":
        """Accept a Factorization, an integer, or factorization text."""
        if isinstance(obj, cls):
            return obj
        if isinstance(obj, int):
            return cls.from_int(obj)
        if isinstance(obj, str):
            return cls.parse(obj, policy)
        raise TypeError("cannot interpret %r as a factorization" % (obj,))

    # -- views --------------------------------------------------------------

    @property
    def value(self) -> int:
        v = 1
        for p, e in self.factors:
            v *= p**e
        return v

    @property
    def omega(self) -> int:
        """Number of distinct primes."""
        return len(self.factors)

    @property
    def big_omega(self) -> int:
        """Number of prime factors with multiplicity."""
        return sum(e for _, e in self.factors)

    @property
    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def exponent_of(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    # -- derived factorizations --------------------------------------------

    def times_prime(self, p: int, e: int = 1) -> "Factorization":
        """This number multiplied by p^e, keeping factors sorted."""
        if e < 1:
            raise ValueError("exponents must be positive")
        out = []
        placed = False
        for q, f in self.factors:
            if q == p:
                out.append((q, f + e))
                placed = True
            elif q > p and not placed:
                out.append((p, e))
                placed = True
                out.append((q, f))
            else:
                out.append((q, f))
        if not placed:
            out.append((p, e))
        return Factorization(out)

    def divide_prime(self, p: int) -> "Factorization":
        """This number divided by one copy of p; NotADivisor if p absent."""
        out = []
        found = False
        for q, e in self.factors:
            if q == p:
                found = True
                if e > 1:
                    out.append((q, e - 1))
            else:
                out.append((q, e))
        if not found:
            raise NotADivisor("%d does not divide %s" % (p, self))
        return Factorization(out)

    # -- protocol -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(
            "%d^%d" % (p, e) if e > 1 else "%d" % p for p, e in self.factors
        )

    def __repr__(self) -> str:
        return "Factorization(%r)" % (self.factors,)

    def __eq__(self, other) -> bool:
        return isinstance(other, Factorization) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)


ONE = Factorization()


# ---------------------------------------------------------------------------
# Divisor-sum arithmetic.

def sigma(f: Factorization) -> int:
    """Sum of all divisors; multiplicative, sigma(1) = 1."""
    s = 1
    for p, e in f.factors:
        s *= sigma_prime_power(p, e)
    return s


def abundance(f: Factorization) -> int:
    """sigma(n) - 2n; positive for abundant, zero for perfect."""
    return sigma(f) - 2 * f.value


def deficiency(f: Factorization) -> int:
    """2n - sigma(n); positive for deficient numbers."""
    return 2 * f.value - sigma(f)


def center(f: Factorization) -> Fraction:
    """sigma(m)/deficiency(m) for deficient m.

    This is the threshold the extension machinery revolves around: a coprime
    prime p extends m to an abundant number exactly when p < center(m), and
    to a perfect one when p equals it.
    """
    d = deficiency(f)
    if d <= 0:
        raise NotDeficient("center is defined for deficient numbers only")
    return Fraction(sigma(f), d)


def deficiency_after_coprime_extension(m: Factorization, p: int, e: int = 1) -> int:
    """deficiency(m * p^e) for p coprime to m, without building the product."""
    if e < 1:
        raise ValueError("exponents must be positive")
    if m.exponent_of(p):
        raise NotCoprime("%d already divides %s" % (p, m))
    return deficiency(m) * p**e - sigma(m) * sigma_prime_power(p, e - 1)


def deficiency_after_same_prime_extension(m: Factorization, p: int) -> int:
    """deficiency(m * p) when p already divides m exactly alpha times."""
    alpha = m.exponent_of(p)
    if alpha == 0:
        raise NotADivisor("%d does not divide %s" % (p, m))
    return deficiency(m) * p - sigma(m) // sigma_prime_power(p, alpha)


def digits10(n: int) -> int:
    """Number of decimal digits of n >= 1, safe for very large n."""
    if n < 10:
        return 1
    d = int(n.bit_length() * 0.3010299956639812)
    while 10**d <= n:
        d += 1
    return d


# ---------------------------------------------------------------------------
# Small-integer factoring (trial division plus Pollard rho), a convenience
# for building Factorizations out of plain ints in tests and at the CLI.

def _pollard_rho(n: int, rng: random.Random) -> int:
    while True:
        c = rng.randrange(1, n)
        f = lambda x: (x * x + c) % n
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    rng = random.Random(n)
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _primes.is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        d = _pollard_rho(m, rng)
        stack.extend((d, m // d))
    return out
