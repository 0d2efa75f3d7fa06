"""Acceptance gate: one test per shipped claim, named so the pytest -v
report reads as a pass/fail line per criterion.

Criterion 8 is the explicit out-of-scale list: totals with seven or more
factors, the eight-factor odd rows, catalog entries past ten factors and
the record-size weird numbers are published results this package supports
only through seeded shard runs, never as a single desk-scale computation.
"""

import random
import warnings
from fractions import Fraction

from panweird import (
    Factorization,
    NumberClass,
    SearchConfig,
    abundance,
    center,
    decode_index_sequence,
    deficiency,
    encode_index_sequence,
    is_primitive_nondeficient_oracle,
    is_weird,
    iter_primes_above,
    kth_prime_above,
    pndn,
    pndn_count,
    pwn_search_squarefree,
    sfpan,
    sfpan_count,
    weird_numbers_below,
)
from panweird.enumerate import _subtree_task

from known_values import (
    CODEC_WORKED_EXAMPLE,
    OUT_OF_SCALE,
    PERFECT_COUNTS,
    PNDN_COUNTS,
    PNDN_ODD_COUNTS,
    PWN_DEEP_ROWS,
    SFPAN_COUNTS,
    SFPAN_ODD_COUNTS,
    SQUAREFREE_PWN_BLOCKS,
    WEIRD_BELOW_10K,
)
from oracles import naive_is_weird, primitive_census

F = Factorization.parse

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def test_criterion_1_squarefree_count_table():
    got = [sfpan_count(k).count_abundant for k in range(1, 7)]
    assert got == SFPAN_COUNTS
    for k, want in SFPAN_ODD_COUNTS.items():
        assert sfpan_count(k, odd_only=True).count_abundant == want


def test_criterion_2_general_count_table():
    for k in range(1, 7):
        outcome = pndn_count(k)
        assert outcome.count_abundant == PNDN_COUNTS[k - 1]
        assert outcome.count_perfect == PERFECT_COUNTS[k]
    for k, want in PNDN_ODD_COUNTS.items():
        assert pndn_count(k, odd_only=True).count_abundant == want


def test_criterion_3_squarefree_search_blocks():
    surplus = []
    for (seed, amplitude), block in SQUAREFREE_PWN_BLOCKS.items():
        for k, rows in block.items():
            records = []
            pwn_search_squarefree(
                SearchConfig(seed=F(seed), k=k, amplitude=amplitude),
                records.append,
            )
            got = {(str(r.factorization), r.abundance, str(r.index_sequence))
                   for r in records}
            assert set(rows) <= got
            for row in got - set(rows):
                # anything beyond the catalog must hold up on its own
                f = F(row[0])
                assert is_weird(f) and is_primitive_nondeficient_oracle(f)
                surplus.append((seed, amplitude, k, row))
    if surplus:
        warnings.warn("search surplus needs review: %r" % surplus)


def test_criterion_4_index_sequence_codec():
    fact, seq = CODEC_WORKED_EXAMPLE
    assert str(encode_index_sequence(F(fact))) == seq
    assert decode_index_sequence(seq) == F(fact)
    rows = list(PWN_DEEP_ROWS)
    for block in SQUAREFREE_PWN_BLOCKS.values():
        for krows in block.values():
            rows.extend(krows)
    assert len(rows) == 42
    for fact, delta, seq in rows:
        f = F(fact)
        assert abundance(f) == delta
        assert str(encode_index_sequence(f)) == seq
        assert decode_index_sequence(seq) == f


def test_criterion_5_weird_numbers_below_ten_thousand():
    assert weird_numbers_below(10**4) == WEIRD_BELOW_10K


def test_criterion_6_no_odd_square_weird_candidates():
    hits = 0
    for k in range(3, 7):
        records = []
        pndn(k, sink=records.append)
        for r in records:
            if any(p > 2 and e >= 2 for p, e in r.factorization.factors):
                assert r.number_class is NumberClass.ABUNDANT
                assert not is_weird(r.factorization)
                hits += 1
    assert hits > 1000


def test_criterion_7a_primitivity_fast_paths_match_sieve_census():
    limit = 10**7
    census = primitive_census(limit)
    buckets = {}
    for n, fac in census.items():
        buckets.setdefault(sum(e for _, e in fac), set()).add(n)
    rng = random.Random(0xACCE)
    for k in range(1, 7):
        records = []
        pndn(k, sink=records.append, include_perfect=True)
        emitted = {r.factorization.value: r for r in records}
        if k <= 5:
            assert max(emitted, default=0) < limit
            assert set(emitted) == buckets.get(k, set())
        else:
            assert {n for n in emitted if n < limit} == buckets.get(k, set())
            big = [r for r in records if r.factorization.value >= limit]
            for r in rng.sample(big, 500):
                assert is_primitive_nondeficient_oracle(r.factorization)
        for n, r in emitted.items():
            if n < limit:
                assert list(r.factorization.factors) == census[n]
    sf_buckets = {}
    for n, fac in census.items():
        f = Factorization(fac)
        if f.is_squarefree and abundance(f) > 0:
            sf_buckets.setdefault(len(fac), set()).add(n)
    for k in range(1, 7):
        records = []
        sfpan(k, sink=records.append)
        got = {r.factorization.value for r in records}
        if k <= 5:
            assert got == sf_buckets.get(k, set())
        else:
            assert {n for n in got if n < limit} == sf_buckets.get(k, set())


def test_criterion_7b_weirdness_test_matches_naive_oracle():
    for n in range(2, 10**5):
        f = Factorization.from_int(n)
        if abundance(f) > 0:
            assert is_weird(f) == naive_is_weird(n)


def _random_deficient(rng, max_primes=4, max_exp=3):
    while True:
        k = rng.randrange(1, max_primes + 1)
        primes = sorted(rng.sample(SMALL_PRIMES, k))
        f = Factorization([(p, rng.randrange(1, max_exp + 1)) for p in primes])
        if deficiency(f) > 0:
            return f


def test_criterion_7c_center_identities_and_monotonicity():
    rng = random.Random(0xCE17E5)
    for _ in range(10**4):
        m = _random_deficient(rng)
        c = center(m)
        assert c == Fraction(2 * m.value, deficiency(m)) - 1
    # multiplying a deficient number, deficiently, pushes the center up
    done = 0
    while done < 2000:
        m = _random_deficient(rng)
        ext = m
        for _ in range(rng.randrange(1, 3)):
            ext = ext.times_prime(rng.choice(SMALL_PRIMES))
        if deficiency(ext) <= 0:
            continue
        assert center(ext) > center(m)
        done += 1
    # prime power centers climb toward p/(p - 2)
    for p in (3, 5, 7, 11, 101):
        last = center(Factorization([(p, 1)]))
        for e in range(2, 14):
            cur = center(Factorization([(p, e)]))
            assert cur > last
            assert cur < Fraction(p, p - 2)
            last = cur
    for e in range(1, 10):
        assert center(Factorization([(2, e)])) == 2 ** (e + 1) - 1
    # beyond the center, farther primes give smaller centers
    done = 0
    while done < 2000:
        m = _random_deficient(rng)
        p = kth_prime_above(center(m), rng.randrange(1, 4))
        q = kth_prime_above(p, rng.randrange(1, 4))
        if m.exponent_of(p) or m.exponent_of(q):
            continue
        assert center(m.times_prime(q)) < center(m.times_prime(p))
        done += 1


def test_criterion_7d_interior_stop_rule_is_safe():
    for general in (True, False):
        events = []
        run = pndn if general else sfpan
        for k in (3, 4, 5):
            run(k, on_stop=lambda prefix, p, kk: events.append((prefix, p, kk)))
        assert events
        for prefix, p, kk in events:
            probes = 0
            for q in iter_primes_above(p):
                ca, cp, found = _subtree_task(
                    (general, kk - 1, prefix + ((q, 1),), True, False, 10**10)
                )[:3]
                if general:
                    assert not found and ca == 0 and cp == 0
                else:
                    assert ca == 0
                probes += 1
                if probes == 5:
                    break


def test_criterion_8_out_of_scale_totals_are_shardable():
    # the published seven-factor totals stay out of reach of one process
    assert OUT_OF_SCALE["squarefree_omega_7"] == 12_566_567_699
    assert OUT_OF_SCALE["general_big_omega_7"] == 13_232_731_828
    # but a seed pins the walk to one subtree of that run, and finishes
    shard = pndn_count(7, seed="3^2*5*7")
    assert shard.found and shard.count_abundant > 0
    assert pndn_count(7, seed="3^2*5*7") == shard
    assert pndn_count(7, seed="3^2*5*7", jobs=2) == shard
