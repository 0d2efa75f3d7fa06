"""Weird numbers: the semiperfection test, the index-sequence codec, and
amplitude-bounded searches for primitive weird numbers.

A weird number is abundant but not a sum of distinct proper divisors.  Only
divisors up to the abundance delta matter: a subset of proper divisors sums
to n exactly when its complement sums to delta, and every summand of a
partition of delta is at most delta.  So the test enumerates the (few, tiny)
divisors below delta of a possibly enormous number and runs an exact subset
sum: a bitset sweep for small deltas, a descending branch and bound with
suffix-sum pruning for large ones.

Search trees follow the enumeration recursions but replace the open-ended
prime scans with windows around the center: an interior level tries the
first `amplitude` primes above center(m), the final level the last
`amplitude` primes below it.  Window slots shadowed by earlier factors are
skipped but still spent, so every emitted number has all index magnitudes
within the amplitude, and widening the amplitude only adds emissions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    ONE,
    Factorization,
    abundance,
    deficiency,
    digits10,
    sigma,
    sigma_prime_power,
)
from .errors import (
    InvalidSequence,
    NotAbundant,
    NotDeficient,
    ParseError,
    PrefixNotDeficient,
)
from .primes import (
    DEFAULT_POLICY,
    PrimalityPolicy,
    certifiable,
    certified_prime,
    kth_prime_above,
    kth_prime_below,
    prime_at_or_zero,
)
from .errors import NoSuchPrime

_BITSET_LIMIT = 1 << 24


def divisors_up_to(f: Factorization, bound: int) -> list[int]:
    """All divisors of f that are <= bound, unordered, 1 included."""
    if bound < 1:
        return []
    out = [1]
    for p, e in f.factors:
        powers = []
        q = 1
        for _ in range(e):
            q *= p
            if q > bound:
                break
            powers.append(q)
        if powers:
            # the comprehension must see the pre-extension list only
            out += [d * q for q in powers for d in out if d * q <= bound]
    return out


def subset_sums_to(values: list[int], target: int) -> bool:
    """Whether some subset of the (distinct) values sums exactly to target."""
    if target == 0:
        return True
    vals = [v for v in values if v <= target]
    if sum(vals) < target:
        return False
    if target <= _BITSET_LIMIT:
        mask = (1 << (target + 1)) - 1
        bits = 1
        probe = 1 << target
        for v in vals:
            bits |= (bits << v) & mask
            if bits & probe:
                return True
        return False
    vals.sort(reverse=True)
    n = len(vals)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + vals[i]
    stack = [(0, target)]  # pending (index, remaining), remaining > 0
    while stack:
        i, t = stack.pop()
        while i < n and vals[i] > t:
            i += 1
        if i >= n or suffix[i] < t:
            continue
        if suffix[i] == t:
            return True
        if vals[i] == t:
            return True
        stack.append((i + 1, t))  # skip vals[i]
        stack.append((i + 1, t - vals[i]))  # take it; explored first
    return False


def is_weird(f: Factorization) -> bool:
    """Abundant and not semiperfect; raises NotAbundant otherwise."""
    delta = abundance(f)
    if delta <= 0:
        raise NotAbundant("%s is not abundant" % f)
    divisors = divisors_up_to(f, delta)
    value = f.value
    if value <= delta:  # can happen for very abundant inputs; n is not proper
        divisors = [d for d in divisors if d != value]
    return not subset_sums_to(divisors, delta)


def weird_numbers_below(limit: int) -> list[int]:
    """All weird numbers strictly below limit, by direct census."""
    out = []
    for n in range(2, limit):
        f = Factorization.from_int(n)
        if abundance(f) > 0 and is_weird(f):
            out.append(n)
    return out


# ---------------------------------------------------------------------------
# Index sequences: positional encoding of a factorization against the
# centers of its own prefixes.

_ENTRY_RE = re.compile(r"^(-?\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class IndexSequence:
    """Entries (index, exponent); index i > 0 means the i-th prime above the
    running center, i < 0 the |i|-th below, 0 the center itself."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.entries:
            raise InvalidSequence("empty index sequence")
        for _, e in self.entries:
            if e < 1:
                raise InvalidSequence("exponents must be positive")

    @classmethod
    def parse(cls, text: str) -> "IndexSequence":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ParseError("index sequence must be bracketed: %r" % text)
        body = body[1:-1].strip()
        if not body:
            raise ParseError("empty index sequence")
        entries = []
        for token in body.split(","):
            m = _ENTRY_RE.match(token.strip())
            if not m:
                raise ParseError("bad index entry %r" % token)
            idx = int(m.group(1))
            exp = int(m.group(2)) if m.group(2) else 1
            entries.append((idx, exp))
        return cls(tuple(entries))

    def __str__(self) -> str:
        return "[%s]" % ", ".join(
            "%d^%d" % (i, e) if e > 1 else "%d" % i for i, e in self.entries
        )


def encode_index_sequence(
    f: Factorization, policy: PrimalityPolicy | None = None
) -> IndexSequence:
    """Index sequence of f; every proper prefix must be deficient."""
    if not f.factors:
        raise InvalidSequence("1 has no index sequence")
    v = s = 1
    entries = []
    for p, e in f.factors:
        d = 2 * v - s
        if d <= 0:
            raise PrefixNotDeficient(
                "prefix before %d is not deficient in %s" % (p, f)
            )
        if p * d == s:
            idx = 0
        elif p * d > s:  # p above the center, count upward
            idx = 1
            q = kth_prime_above(Fraction(s, d), 1, policy)
            while q < p:
                q = kth_prime_above(q, 1, policy)
                idx += 1
        else:  # below the center, count downward
            idx = -1
            q = kth_prime_below(Fraction(s, d), 1, policy)
            while q > p:
                q = kth_prime_below(q, 1, policy)
                idx -= 1
        entries.append((idx, e))
        v *= p**e
        s *= sigma_prime_power(p, e)
    return IndexSequence(tuple(entries))


def decode_index_sequence(
    seq, policy: PrimalityPolicy | None = None
) -> Factorization:
    """Rebuild the factorization an index sequence denotes."""
    if isinstance(seq, str):
        seq = IndexSequence.parse(seq)
    v = s = 1
    prev = 1
    pairs = []
    for idx, e in seq.entries:
        d = 2 * v - s
        if d <= 0:
            raise InvalidSequence("interior prefix is not deficient")
        c = Fraction(s, d)
        if idx == 0:
            p = prime_at_or_zero(c, policy)
            if p is None:
                raise InvalidSequence("no prime sits at center %s" % c)
        elif idx > 0:
            p = kth_prime_above(c, idx, policy)
        else:
            try:
                p = kth_prime_below(c, -idx, policy)
            except NoSuchPrime:
                raise InvalidSequence("not enough primes below center %s" % c) from None
        if p <= prev:
            raise InvalidSequence("index %d repeats or reorders primes" % idx)
        pairs.append((p, e))
        prev = p
        v *= p**e
        s *= sigma_prime_power(p, e)
    return Factorization(pairs)


# ---------------------------------------------------------------------------
# Primitive weird number searches.

@dataclass(frozen=True)
class SearchConfig:
    """Shape of one search run.

    k is the total factor count of emitted numbers, the seed's factors
    included: distinct primes for the square-free search, prime factors with
    multiplicity for the general one.  amplitude caps how far a chosen prime
    may sit from the running center, in primes.  allow_square_extensions
    selects the general search at the command line.
    """

    seed: Factorization = ONE
    k: int = 3
    amplitude: int = 1
    allow_square_extensions: bool = False
    strict_sigma_bound: bool = False
    policy: PrimalityPolicy | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.amplitude < 1:
            raise ValueError("amplitude must be positive")
        if deficiency(self.seed) <= 0:
            raise NotDeficient("seed %s is not deficient" % self.seed)


@dataclass(frozen=True)
class PwnRecord:
    """One primitive weird number, as found."""

    factorization: Factorization
    index_sequence: IndexSequence
    abundance: int
    digits: int
    certified: bool


def _weird_pairs(pairs, delta) -> bool:
    f = Factorization(pairs)
    divisors = divisors_up_to(f, delta)
    return not subset_sums_to(divisors, delta)


def _certify_pairs(pairs, policy) -> bool:
    return all(certifiable(p) and certified_prime(p, policy) for p, _ in pairs)


def _seed_entries(seed: Factorization, policy) -> list[tuple[int, int]]:
    if not seed.factors:
        return []
    return list(encode_index_sequence(seed, policy).entries)


def pwn_search_squarefree(config: SearchConfig, sink=None) -> int:
    """Search for primitive weird numbers that extend the seed square-freely.

    Emitted numbers have config.k distinct primes in total.  Leaf primes are
    kept at or above max(sigma(q^alpha)) - 1 over the factors carried so far,
    which is enough for primitivity; with strict_sigma_bound the threshold
    tightens to strictly above max(sigma(q^alpha)), trading a sufficient
    bound for a narrower sweep.  Returns the number of emissions.
    """
    policy = config.policy or DEFAULT_POLICY
    seed = config.seed
    levels = config.k - seed.omega
    if levels < 1:
        raise ValueError("k must exceed the seed's distinct prime count")
    a = config.amplitude
    strict = config.strict_sigma_bound
    want_cert = bool(config.policy and config.policy.certify)
    count = 0

    def rec(left, v, s, pairs, pr, max_spp, entries):
        nonlocal count
        d = 2 * v - s
        c = Fraction(s, d)
        if left == 1:
            floor = max_spp + 1 if strict else max_spp - 1
            p = None
            for j in range(1, a + 1):
                try:
                    p = kth_prime_below(c if j == 1 else p, 1, policy)
                except NoSuchPrime:
                    break
                if p <= pr or p < floor:
                    break  # deeper slots only get smaller
                delta = s - p * d
                new_pairs = pairs + ((p, 1),)
                if _weird_pairs(new_pairs, delta):
                    count += 1
                    if sink is not None:
                        seq = IndexSequence(tuple(entries + [(-j, 1)]))
                        sink(PwnRecord(
                            Factorization(new_pairs), seq, delta,
                            digits10(v * p),
                            want_cert and _certify_pairs(new_pairs, policy),
                        ))
        else:
            p = None
            for j in range(1, a + 1):
                p = kth_prime_above(c if j == 1 else p, 1, policy)
                if p <= pr:
                    continue  # slot spent on a prime already behind us
                entries.append((j, 1))
                rec(left - 1, v * p, s * (p + 1), pairs + ((p, 1),), p,
                    max(max_spp, p + 1), entries)
                entries.pop()

    pairs = seed.factors
    max_spp = max(
        (sigma_prime_power(p, e) for p, e in pairs), default=0
    )
    rec(
        levels, seed.value, sigma(seed), pairs,
        pairs[-1][0] if pairs else 1, max_spp,
        _seed_entries(seed, policy),
    )
    return count


def pwn_search_general(config: SearchConfig, sink=None) -> int:
    """Search for primitive weird numbers with square parts allowed.

    Emitted numbers have config.k prime factors counted with multiplicity.
    Interior levels may deepen the last prime's exponent while the result
    stays deficient; the amplitude constrains only the choice of new primes.
    Leaves apply the exact primitivity bounds, so everything emitted is
    primitive abundant before the weirdness test runs.  Returns the number
    of emissions.
    """
    policy = config.policy or DEFAULT_POLICY
    seed = config.seed
    levels = config.k - seed.big_omega
    if levels < 1:
        raise ValueError("k must exceed the seed's factor count")
    a = config.amplitude
    want_cert = bool(config.policy and config.policy.certify)
    count = 0

    def emit(pairs, delta, entries):
        nonlocal count
        if not _weird_pairs(pairs, delta):
            return
        count += 1
        if sink is not None:
            v = 1
            for p, e in pairs:
                v *= p**e
            sink(PwnRecord(
                Factorization(pairs), IndexSequence(tuple(entries)), delta,
                digits10(v),
                want_cert and _certify_pairs(pairs, policy),
            ))

    def clears_bound(num, den, s, d, sigpps, skip_last):
        spps = sigpps[:-1] if skip_last else sigpps
        if not spps:
            return True
        t = s // max(spps)
        return num * (d + t) > den * (s - t)

    def rec(left, v, s, pairs, sigpps, entries):
        d = 2 * v - s
        c = Fraction(s, d)
        pr = pairs[-1][0] if pairs else 1
        if left == 1:
            if pairs:
                p, e = pairs[-1]
                spp = sigpps[-1]
                q = s // spp
                delta = q - p * d
                if delta > 0 and clears_bound(p * spp, 1, s, d, sigpps, True):
                    last = entries[-1]
                    emit(
                        pairs[:-1] + ((p, e + 1),), delta,
                        entries[:-1] + [(last[0], last[1] + 1)],
                    )
            p = None
            for j in range(1, a + 1):
                try:
                    p = kth_prime_below(c if j == 1 else p, 1, policy)
                except NoSuchPrime:
                    break
                if p <= pr:
                    break
                if not clears_bound(p, 1, s, d, sigpps, False):
                    break  # bound only gets harder as p shrinks
                emit(pairs + ((p, 1),), s - p * d, entries + [(-j, 1)])
        else:
            if pairs:
                p, e = pairs[-1]
                spp = sigpps[-1]
                q = s // spp
                if p * d > q:  # still deficient with one more p
                    nspp = spp * p + 1
                    last = entries[-1]
                    rec(
                        left - 1, v * p, q * nspp,
                        pairs[:-1] + ((p, e + 1),), sigpps[:-1] + [nspp],
                        entries[:-1] + [(last[0], last[1] + 1)],
                    )
            p = None
            for j in range(1, a + 1):
                p = kth_prime_above(c if j == 1 else p, 1, policy)
                if p <= pr:
                    continue
                rec(
                    left - 1, v * p, s * (p + 1),
                    pairs + ((p, 1),), sigpps + [p + 1],
                    entries + [(j, 1)],
                )

    rec(
        levels, seed.value, sigma(seed), seed.factors,
        [sigma_prime_power(p, e) for p, e in seed.factors],
        _seed_entries(seed, policy),
    )
    return count
