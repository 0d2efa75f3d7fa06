import random

import pytest

from panweird import (
    Factorization,
    IndexSequence,
    InvalidSequence,
    NotAbundant,
    NotDeficient,
    ParseError,
    PrefixNotDeficient,
    PwnRecord,
    SearchConfig,
    abundance,
    decode_index_sequence,
    digits10,
    divisors_up_to,
    encode_index_sequence,
    is_primitive_nondeficient_oracle,
    is_weird,
    pwn_search_general,
    pwn_search_squarefree,
    subset_sums_to,
    weird_numbers_below,
)

from known_values import (
    CODEC_WORKED_EXAMPLE,
    GENERAL_PWN_OMEGA7,
    GENERAL_PWN_SPOT,
    PWN_DEEP_ROWS,
    PWN_OMEGA7_SEQUENCES,
    SQUAREFREE_PWN_BLOCKS,
    WEIRD_BELOW_10K,
)
from oracles import naive_divisors, naive_is_weird

F = Factorization.parse


def run_squarefree(seed, k, amplitude, **kw):
    records = []
    config = SearchConfig(seed=F(seed), k=k, amplitude=amplitude, **kw)
    count = pwn_search_squarefree(config, records.append)
    assert count == len(records)
    return records


def run_general(seed, k, amplitude, **kw):
    records = []
    config = SearchConfig(
        seed=F(seed), k=k, amplitude=amplitude,
        allow_square_extensions=True, **kw
    )
    count = pwn_search_general(config, records.append)
    assert count == len(records)
    return records


def as_rows(records):
    return {(str(r.factorization), r.abundance, str(r.index_sequence))
            for r in records}


# -- semiperfection ---------------------------------------------------------

def test_divisors_up_to_examples():
    assert divisors_up_to(F("2*5*7"), 4) == [1, 2]
    assert divisors_up_to(F("2*5*7"), 0) == []
    assert sorted(divisors_up_to(F("2^2*3"), 12)) == [1, 2, 3, 4, 6, 12]


def test_divisors_up_to_matches_naive():
    rng = random.Random(0xD1F0)
    for _ in range(200):
        n = rng.randrange(2, 10**4)
        bound = rng.randrange(1, 2 * n)
        want = [d for d in naive_divisors(n) if d <= bound]
        got = divisors_up_to(Factorization.from_int(n), bound)
        assert sorted(got) == want


def test_subset_sums_small_against_naive():
    rng = random.Random(0x5B5E)
    for _ in range(200):
        vals = sorted(rng.sample(range(1, 60), rng.randrange(1, 10)))
        target = rng.randrange(0, 120)
        attainable = {0}
        for v in vals:
            attainable |= {a + v for a in attainable}
        assert subset_sums_to(vals, target) == (target in attainable)


def test_subset_sums_large_targets_use_branch_and_bound():
    # targets beyond the bitset limit, answers checked by set sweep
    rng = random.Random(0xB1B0)
    for _ in range(60):
        vals = sorted(rng.sample(range(10**6, 10**9), 12))
        attainable = {0}
        for v in vals:
            attainable |= {a + v for a in attainable}
        hit = rng.choice(sorted(attainable))
        assert subset_sums_to(vals, hit)
        miss = rng.randrange(2 * 10**7, 10**10)
        assert subset_sums_to(vals, miss) == (miss in attainable)
    assert subset_sums_to([], 0)
    assert not subset_sums_to([], 5)
    assert subset_sums_to([1 << 25, 1], (1 << 25) + 1)
    assert not subset_sums_to([1 << 25, 2], (1 << 25) + 1)


def test_is_weird_known_cases():
    for n in WEIRD_BELOW_10K:
        assert is_weird(Factorization.from_int(n))
    for n in (12, 18, 20, 24, 30, 96, 120, 836 * 2):
        assert not is_weird(Factorization.from_int(n))
    with pytest.raises(NotAbundant):
        is_weird(F("2^3"))
    with pytest.raises(NotAbundant):
        is_weird(F("2*3"))


def test_weird_census_below_10k():
    assert weird_numbers_below(100) == [70]
    assert weird_numbers_below(10**4) == WEIRD_BELOW_10K


def test_is_weird_matches_naive_oracle():
    for n in range(2, 3000):
        f = Factorization.from_int(n)
        if abundance(f) > 0:
            assert is_weird(f) == naive_is_weird(n)


# -- the index-sequence codec ----------------------------------------------

def test_sequence_parse_and_format():
    seq = IndexSequence.parse("[ 1 , 2^3 , -4 ]")
    assert seq.entries == ((1, 1), (2, 3), (-4, 1))
    assert str(seq) == "[1, 2^3, -4]"
    assert IndexSequence.parse(str(seq)) == seq


def test_sequence_parse_rejects_malformed():
    for text in ("1, 2", "[]", "[1,, 2]", "[1 2]", "[a]", "[1.5]", "[^2]"):
        with pytest.raises(ParseError):
            IndexSequence.parse(text)
    with pytest.raises(InvalidSequence):
        IndexSequence.parse("[1^0]")
    with pytest.raises(InvalidSequence):
        IndexSequence(())


def test_codec_worked_example():
    fact, seq = CODEC_WORKED_EXAMPLE
    assert str(encode_index_sequence(F(fact))) == seq
    assert decode_index_sequence(seq) == F(fact)


def test_codec_center_hit_uses_index_zero():
    assert str(encode_index_sequence(F("2*3"))) == "[1, 0]"
    assert decode_index_sequence("[1, 0]") == F("2*3")
    with pytest.raises(InvalidSequence):
        decode_index_sequence("[0]")  # no prime sits at 1


def test_codec_round_trips_catalog_rows():
    rows = list(PWN_DEEP_ROWS)
    for block in SQUAREFREE_PWN_BLOCKS.values():
        for krows in block.values():
            rows.extend(krows)
    rows.extend((fact, delta, seq) for fact, delta, seq, _, _ in GENERAL_PWN_OMEGA7)
    for fact, delta, seq in rows:
        f = F(fact)
        assert abundance(f) == delta
        assert str(encode_index_sequence(f)) == seq
        assert decode_index_sequence(seq) == f


def test_codec_round_trips_deep_sequences():
    for seq in PWN_OMEGA7_SEQUENCES:
        f = decode_index_sequence(seq)
        assert str(encode_index_sequence(f)) == seq
        assert abundance(f) > 0


def test_encode_requires_deficient_prefixes():
    with pytest.raises(PrefixNotDeficient):
        encode_index_sequence(F("2^2*5*7*11"))
    # abundant at the last step only is fine
    assert str(encode_index_sequence(F("2*5*7"))) == "[1, 1, -1]"
    with pytest.raises(InvalidSequence):
        encode_index_sequence(F("1"))


def test_decode_rejects_impossible_sequences():
    with pytest.raises(InvalidSequence):
        decode_index_sequence("[1^2, -1, -1]")  # prefix goes abundant
    with pytest.raises(InvalidSequence):
        decode_index_sequence("[-1]")  # nothing below the first center
    with pytest.raises(InvalidSequence):
        decode_index_sequence("[1, -2]")  # would reuse the prime 2


# -- searches ---------------------------------------------------------------

def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(k=0)
    with pytest.raises(ValueError):
        SearchConfig(amplitude=0)
    with pytest.raises(NotDeficient):
        SearchConfig(seed=F("2*3"))
    with pytest.raises(ValueError):
        pwn_search_squarefree(SearchConfig(seed=F("2^2"), k=1, amplitude=2))
    with pytest.raises(ValueError):
        pwn_search_general(SearchConfig(seed=F("2^2"), k=2, amplitude=2))


def test_squarefree_blocks_match_catalog():
    for (seed, amplitude), block in SQUAREFREE_PWN_BLOCKS.items():
        for k, rows in block.items():
            records = run_squarefree(seed, k, amplitude)
            assert as_rows(records) == set(rows)


def test_search_records_are_weird_and_primitive():
    records = run_squarefree("2^3", 4, 6) + run_general("2^6", 9, 2)
    assert records
    for r in records:
        f = r.factorization
        assert decode_index_sequence(str(r.index_sequence)) == f
        assert r.abundance == abundance(f) > 0
        assert r.digits == digits10(f.value)
        assert is_weird(f)
        assert is_primitive_nondeficient_oracle(f)
        assert r.certified is False


def test_widening_the_amplitude_only_adds_emissions():
    small = {str(r.factorization) for r in run_squarefree("2^3", 4, 3)}
    mid = {str(r.factorization) for r in run_squarefree("2^3", 4, 6)}
    wide = {str(r.factorization) for r in run_squarefree("2^3", 4, 8)}
    assert small <= mid <= wide


def test_strict_sigma_bound_narrows_the_sweep():
    loose = as_rows(run_squarefree("2^3", 4, 6))
    strict = as_rows(run_squarefree("2^3", 4, 6, strict_sigma_bound=True))
    assert strict <= loose


def test_general_search_extends_the_squarefree_one():
    sf = as_rows(run_squarefree("2", 3, 8))
    general = as_rows(run_general("2", 3, 8))
    assert sf <= general


def test_general_search_finds_catalog_square_rows():
    for fact, delta, seq, seed, amplitude in GENERAL_PWN_OMEGA7:
        records = run_general(seed, 7, amplitude)
        assert (fact, delta, seq) in as_rows(records)
    fact, delta, seq, seed, k, amplitude = GENERAL_PWN_SPOT
    records = run_general(seed, k, amplitude)
    assert (fact, delta, seq) in as_rows(records)
