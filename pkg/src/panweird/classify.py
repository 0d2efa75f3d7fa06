"""Deficient / perfect / abundant classification and primitivity tests.

A number is primitive non-deficient when it is non-deficient and every proper
divisor is deficient; equivalently, dividing out any one distinct prime leaves
a deficient number.  The fast predicates below decide this for one-prime
extensions of a deficient base without touching the divisors themselves, and
the oracle decides it from the definition.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    Factorization,
    abundance,
    deficiency,
    sigma,
    sigma_prime_power,
)
from .errors import (
    NotAbundantOrPerfect,
    NotADivisor,
    NotCoprime,
    NotDeficient,
)


class NumberClass(enum.Enum):
    DEFICIENT = "deficient"
    PERFECT = "perfect"
    ABUNDANT = "abundant"

    @staticmethod
    def from_abundance(delta: int) -> "NumberClass":
        if delta > 0:
            return NumberClass.ABUNDANT
        if delta == 0:
            return NumberClass.PERFECT
        return NumberClass.DEFICIENT


@dataclass(frozen=True)
class ExtensionVerdict:
    """Outcome of extending a deficient number by one more prime factor."""

    number_class: NumberClass
    primitive: bool


def classify(f: Factorization) -> NumberClass:
    return NumberClass.from_abundance(abundance(f))


def classify_coprime_extension(m: Factorization, p: int, e: int = 1) -> NumberClass:
    """Class of m*p^e for coprime p, decided by cross-multiplication."""
    if e < 1:
        raise ValueError("exponents must be positive")
    if m.exponent_of(p):
        raise NotCoprime("%d already divides %s" % (p, m))
    d = deficiency(m)
    if d <= 0:
        raise NotDeficient("extensions start from a deficient number")
    # delta(m p^e) has the sign of sigma(m) sigma(p^(e-1)) - d(m) p^e
    lhs = sigma(m) * sigma_prime_power(p, e - 1)
    rhs = d * p**e
    return NumberClass.from_abundance(lhs - rhs)


def classify_same_prime_extension(m: Factorization, p: int) -> NumberClass:
    """Class of m*p when p^alpha already divides m exactly."""
    alpha = m.exponent_of(p)
    if alpha == 0:
        raise NotADivisor("%d does not divide %s" % (p, m))
    d = deficiency(m)
    if d <= 0:
        raise NotDeficient("extensions start from a deficient number")
    s = sigma(m)
    # delta(m p) has the sign of sigma(m)/sigma(p^alpha) - d(m) p
    return NumberClass.from_abundance(s // sigma_prime_power(p, alpha) - d * p)


def primitivity_lower_bound(m: Factorization) -> Fraction:
    """max over prime divisors q of center(m/q), as an exact ratio; 0 for 1.

    A one-prime extension of deficient m is primitive exactly when the new
    factor clears this bound (and the extension is non-deficient).  Each
    center(m/q) comes out of sigma(m) and deficiency(m) alone:
    with t = sigma(m)/sigma(q^alpha), center(m/q) = (sigma(m)-t)/(d(m)+t).
    """
    d = deficiency(m)
    if d <= 0:
        raise NotDeficient("lower bound is defined for deficient numbers only")
    s = sigma(m)
    best = Fraction(0)
    for q, alpha in m.factors:
        t = s // sigma_prime_power(q, alpha)
        cand = Fraction(s - t, d + t)
        if cand > best:
            best = cand
    return best


def _clears_lower_bound(m: Factorization, num: int, den: int, skip: int | None) -> bool:
    """Whether num/den > center(m/q) for every prime divisor q != skip."""
    s = sigma(m)
    d = deficiency(m)
    for q, alpha in m.factors:
        if q == skip:
            continue
        t = s // sigma_prime_power(q, alpha)
        if num * (d + t) <= den * (s - t):
            return False
    return True


def extend_primitive_coprime(m: Factorization, p: int, e: int = 1) -> ExtensionVerdict:
    """Class and primitivity of m*p^e for coprime prime p, deficient m.

    Primitivity needs three strict conditions: p^e/sigma(p^(e-1)) below
    center(m), above every center(m/q), and for e >= 2 the previous power
    p^(e-1)/sigma(p^(e-2)) still above center(m).  Perfect extensions are
    always primitive: a non-deficient proper divisor would force abundance.
    """
    cls = classify_coprime_extension(m, p, e)
    if cls is NumberClass.DEFICIENT:
        return ExtensionVerdict(cls, False)
    if cls is NumberClass.PERFECT:
        return ExtensionVerdict(cls, True)
    num = p**e
    den = sigma_prime_power(p, e - 1)
    if not _clears_lower_bound(m, num, den, None):
        return ExtensionVerdict(cls, False)
    if e > 1:
        # the e-1 prefix must still be deficient
        d = deficiency(m)
        if p ** (e - 1) * d <= sigma(m) * sigma_prime_power(p, e - 2):
            return ExtensionVerdict(cls, False)
    return ExtensionVerdict(cls, True)


def extend_primitive_same(m: Factorization, p: int) -> ExtensionVerdict:
    """Class and primitivity of m*p when p already divides m."""
    cls = classify_same_prime_extension(m, p)
    if cls is NumberClass.DEFICIENT:
        return ExtensionVerdict(cls, False)
    if cls is NumberClass.PERFECT:
        return ExtensionVerdict(cls, True)
    alpha = m.exponent_of(p)
    lhs = p * sigma_prime_power(p, alpha)
    if not _clears_lower_bound(m, lhs, 1, p):
        return ExtensionVerdict(cls, False)
    return ExtensionVerdict(cls, True)


def is_primitive_nondeficient_oracle(f: Factorization) -> bool:
    """Definition-level check: non-deficient, all one-prime reductions deficient.

    Independent of the extension predicates; the fast paths are tested
    against this.
    """
    if abundance(f) < 0:
        raise NotAbundantOrPerfect("%s is deficient" % f)
    for p, _ in f.factors:
        if deficiency(f.divide_prime(p)) <= 0:
            return False
    return True
