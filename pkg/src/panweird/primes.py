"""Primality testing, prime stepping and prime counting.

Everything here works on plain integers; rational bounds are accepted where an
open interval endpoint may be non-integral (centers usually are).  Strictness
is resolved once, by integer conversion: the smallest integer > a is
floor(a)+1, the largest integer < b is ceil(b)-1.
"""

from __future__ import annotations

import bisect
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .errors import CeilingExceeded, NoSuchPrime

# Largest bound for which a known fixed Miller-Rabin base set is proven
# deterministic (first 13 primes).
_DETERMINISTIC_BASE_CEILING = 3_317_044_064_679_887_385_961_981

# (bound, bases): n below bound is correctly decided by these witnesses.
_MR_BASE_SETS = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (9_080_191, (31, 73)),
    (3_215_031_751, (2, 3, 5, 7)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (3_825_123_056_546_413_051, (2, 3, 5, 7, 11, 13, 17, 19, 23)),
    (318_665_857_834_031_151_167_461, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)),
    (_DETERMINISTIC_BASE_CEILING, (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)),
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
_DEFAULT_CEILING = 10**10


@dataclass(frozen=True)
class PrimalityPolicy:
    """How primality is decided.

    Below deterministic_limit a fixed proven witness set is used; above it,
    a base-2 strong test plus probabilistic_rounds random-base rounds.  The
    random bases are derived from the candidate itself so runs are
    reproducible.  certify requests a deterministic re-check pass on final
    outputs where possible.
    """

    deterministic_limit: int = 1 << 64
    probabilistic_rounds: int = 24
    certify: bool = False

    def __post_init__(self):
        if self.deterministic_limit < 1 << 32:
            raise ValueError("deterministic_limit must be at least 2^32")
        if self.deterministic_limit > _DETERMINISTIC_BASE_CEILING:
            raise ValueError(
                "no proven witness set beyond %d" % _DETERMINISTIC_BASE_CEILING
            )
        if self.probabilistic_rounds < 1:
            raise ValueError("probabilistic_rounds must be at least 1")


DEFAULT_POLICY = PrimalityPolicy()


def _is_strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    a %= n
    if a == 0:
        return True
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, policy: PrimalityPolicy | None = None) -> bool:
    """Primality per the active policy (deterministic below its limit)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    policy = policy or DEFAULT_POLICY
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < policy.deterministic_limit:
        bases = _MR_BASE_SETS[-1][1]
        for bound, cand in _MR_BASE_SETS:
            if n < bound:
                bases = cand
                break
        return all(_is_strong_probable_prime(n, a, d, s) for a in bases)
    if not _is_strong_probable_prime(n, 2, d, s):
        return False
    rng = random.Random(n ^ 0x5EED0F9E11E5)
    for _ in range(policy.probabilistic_rounds):
        a = rng.randrange(3, n - 1)
        if not _is_strong_probable_prime(n, a, d, s):
            return False
    return True


def certifiable(n: int) -> bool:
    """Whether a deterministic verdict for n is available here."""
    return n < _DETERMINISTIC_BASE_CEILING


def certified_prime(n: int, policy: PrimalityPolicy | None = None) -> bool:
    """Deterministic verdict; False when n is too large to certify here.

    This is the re-check pass behind the certify flag: it ignores the
    probabilistic path entirely.
    """
    if not certifiable(n):
        return False
    return is_prime(n, PrimalityPolicy(deterministic_limit=_DETERMINISTIC_BASE_CEILING))


# ---------------------------------------------------------------------------
# Sieve-backed prime cache.

def _sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, via a numpy odd-only sieve."""
    if limit < 2:
        return []
    if limit < 3:
        return [2]
    n_odd = (limit - 1) // 2  # index i holds 2i+3
    mask = np.ones(n_odd, dtype=bool)
    for p in range(3, isqrt(limit) + 1, 2):
        if mask[(p - 3) >> 1]:
            mask[(p * p - 3) >> 1 :: p] = False
    return [2] + (2 * np.flatnonzero(mask) + 3).tolist()


class _PrimeCache:
    """A single growing sorted list of primes shared by all callers."""

    __slots__ = ("limit", "primes", "lock")

    def __init__(self):
        self.limit = 0
        self.primes: list[int] = []
        self.lock = threading.Lock()

    def ensure(self, n: int) -> None:
        if n <= self.limit:
            return
        with self.lock:
            if n <= self.limit:
                return
            target = max(n, 2 * self.limit, 1 << 16)
            self.primes = _sieve_primes(target)
            self.limit = target


_cache = _PrimeCache()
_CACHE_CAP = 1 << 26  # beyond this, counting goes segmented and stepping goes MR


def _segment_count(lo: int, hi: int) -> int:
    """Count primes in [lo, hi] without materializing them."""
    if hi < 2 or hi < lo:
        return 0
    lo = max(lo, 2)
    count = 1 if lo <= 2 else 0
    root = isqrt(hi)
    _cache.ensure(root)
    odd_base = _cache.primes[1 : bisect.bisect_right(_cache.primes, root)]
    start = max(lo | 1, 3)
    span = 1 << 23
    while start <= hi:
        end = min(start + span - 2, hi)
        if end % 2 == 0:
            end -= 1
        mask = np.ones((end - start) // 2 + 1, dtype=bool)
        for p in odd_base:
            if p * p > end:
                break
            first = max(p * p, ((start + p - 1) // p) * p)
            if first % 2 == 0:
                first += p
            if first <= end:
                mask[(first - start) >> 1 :: p] = False
        count += int(np.count_nonzero(mask))
        start = end + 2
    return count


def count_in_closed(lo: int, hi: int) -> int:
    """Count primes in [lo, hi], via cached bisect or a segmented sieve."""
    if hi < lo or hi < 2:
        return 0
    if hi <= _CACHE_CAP:
        _cache.ensure(hi)
        ps = _cache.primes
        return bisect.bisect_right(ps, hi) - bisect.bisect_left(ps, lo)
    return _segment_count(lo, hi)


def _next_prime_step(n: int, policy: PrimalityPolicy | None) -> int:
    """Smallest prime > n by direct testing (for ranges past the cache)."""
    if n < 2:
        return 2
    if n == 2:
        return 3
    c = n + 2 if n % 2 else n + 1
    while not is_prime(c, policy):
        c += 2
    return c


def _prev_prime_step(n: int, policy: PrimalityPolicy | None) -> int:
    """Largest prime < n; NoSuchPrime when there is none."""
    if n <= 2:
        raise NoSuchPrime("no prime below %d" % n)
    if n == 3:
        return 2
    c = n - 2 if n % 2 else n - 1
    while c >= 3:
        if is_prime(c, policy):
            return c
        c -= 2
    return 2


# ---------------------------------------------------------------------------
# Rational bound helpers.

def int_gt(x) -> int:
    """Smallest integer strictly greater than x."""
    if isinstance(x, int):
        return x + 1
    x = Fraction(x)
    return x.numerator // x.denominator + 1


def int_lt(x) -> int:
    """Largest integer strictly less than x."""
    if isinstance(x, int):
        return x - 1
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator - 1
    return x.numerator // x.denominator


def next_prime(n: int, policy: PrimalityPolicy | None = None) -> int:
    """Smallest prime strictly greater than n."""
    if n < _CACHE_CAP:
        _cache.ensure(min(max(n + 2, 1 << 16), _CACHE_CAP))
        if n < _cache.limit:
            ps = _cache.primes
            idx = bisect.bisect_right(ps, n)
            if idx < len(ps):
                return ps[idx]
    return _next_prime_step(n, policy)


def kth_prime_above(x, k: int, policy: PrimalityPolicy | None = None) -> int:
    """The k-th prime strictly greater than x (k >= 1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    p = int_gt(x) - 1
    for _ in range(k):
        p = next_prime(p, policy)
    return p


def kth_prime_below(x, k: int, policy: PrimalityPolicy | None = None) -> int:
    """The k-th prime strictly less than x (k >= 1); NoSuchPrime if none."""
    if k < 1:
        raise ValueError("k must be >= 1")
    hi = int_lt(x)
    if hi < 2:
        raise NoSuchPrime("no prime below %s" % (x,))
    if hi <= _CACHE_CAP:
        _cache.ensure(hi)
        ps = _cache.primes
        idx = bisect.bisect_right(ps, hi)
        if idx < k:
            raise NoSuchPrime("fewer than %d primes below %s" % (k, x))
        return ps[idx - k]
    p = hi + 1
    for _ in range(k):
        p = _prev_prime_step(p, policy)
    return p


def prime_at_or_zero(x, policy: PrimalityPolicy | None = None):
    """x itself when x is an integral prime, else None."""
    if isinstance(x, Fraction):
        if x.denominator != 1:
            return None
        x = x.numerator
    if not isinstance(x, int):
        return None
    return x if is_prime(x, policy) else None


def count_primes_in_open_interval(
    a,
    b,
    policy: PrimalityPolicy | None = None,
    *,
    ceiling: int = _DEFAULT_CEILING,
) -> int:
    """Number of primes p with a < p < b; both endpoints excluded."""
    if b > ceiling:
        raise CeilingExceeded("upper endpoint %s above ceiling %d" % (b, ceiling))
    return count_in_closed(int_gt(a), int_lt(b))


def iter_primes_above(x, policy: PrimalityPolicy | None = None):
    """Yield primes strictly greater than x in increasing order, forever."""
    p = int_gt(x) - 1
    while p < _CACHE_CAP:
        _cache.ensure(min(max(2 * (p + 1), 1 << 16), _CACHE_CAP))
        ps = _cache.primes
        limit = _cache.limit
        for i in range(bisect.bisect_right(ps, p), len(ps)):
            p = ps[i]
            yield p
        if limit >= _CACHE_CAP:
            break
    while True:
        p = _next_prime_step(p, policy)
        yield p


def primes_in_closed(lo: int, hi: int) -> list[int]:
    """All primes in [lo, hi] as a list; hi must stay within the cache cap."""
    if hi < lo or hi < 2:
        return []
    if hi > _CACHE_CAP:
        raise CeilingExceeded("range end %d above cache cap %d" % (hi, _CACHE_CAP))
    _cache.ensure(hi)
    ps = _cache.primes
    return ps[bisect.bisect_left(ps, lo) : bisect.bisect_right(ps, hi)]
