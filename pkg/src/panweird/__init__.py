"""Exact-arithmetic enumeration of primitive abundant numbers and search
for primitive weird numbers, organized by prime factor count."""

from .arith import (
    ONE,
    Factorization,
    abundance,
    center,
    deficiency,
    deficiency_after_coprime_extension,
    deficiency_after_same_prime_extension,
    digits10,
    sigma,
    sigma_prime_power,
)
from .classify import (
    ExtensionVerdict,
    NumberClass,
    classify,
    classify_coprime_extension,
    classify_same_prime_extension,
    extend_primitive_coprime,
    extend_primitive_same,
    is_primitive_nondeficient_oracle,
    primitivity_lower_bound,
)
from .enumerate import EnumOutcome, EnumRecord, pndn, pndn_count, sfpan, sfpan_count
from .errors import (
    CeilingExceeded,
    InvalidSequence,
    NoSuchPrime,
    NotAbundant,
    NotAbundantOrPerfect,
    NotADivisor,
    NotCoprime,
    NotDeficient,
    PanweirdError,
    ParseError,
    PrefixNotDeficient,
)
from .primes import (
    DEFAULT_POLICY,
    PrimalityPolicy,
    certifiable,
    certified_prime,
    count_primes_in_open_interval,
    is_prime,
    iter_primes_above,
    kth_prime_above,
    kth_prime_below,
    next_prime,
    prime_at_or_zero,
    primes_in_closed,
)
from .weird import (
    IndexSequence,
    PwnRecord,
    SearchConfig,
    decode_index_sequence,
    divisors_up_to,
    encode_index_sequence,
    is_weird,
    pwn_search_general,
    pwn_search_squarefree,
    subset_sums_to,
    weird_numbers_below,
)

__version__ = "0.1.0"

__all__ = [
    "ONE",
    "Factorization",
    "abundance",
    "center",
    "deficiency",
    "deficiency_after_coprime_extension",
    "deficiency_after_same_prime_extension",
    "digits10",
    "sigma",
    "sigma_prime_power",
    "ExtensionVerdict",
    "NumberClass",
    "classify",
    "classify_coprime_extension",
    "classify_same_prime_extension",
    "extend_primitive_coprime",
    "extend_primitive_same",
    "is_primitive_nondeficient_oracle",
    "primitivity_lower_bound",
    "EnumOutcome",
    "EnumRecord",
    "pndn",
    "pndn_count",
    "sfpan",
    "sfpan_count",
    "CeilingExceeded",
    "InvalidSequence",
    "NoSuchPrime",
    "NotAbundant",
    "NotAbundantOrPerfect",
    "NotADivisor",
    "NotCoprime",
    "NotDeficient",
    "PanweirdError",
    "ParseError",
    "PrefixNotDeficient",
    "DEFAULT_POLICY",
    "PrimalityPolicy",
    "certifiable",
    "certified_prime",
    "count_primes_in_open_interval",
    "is_prime",
    "iter_primes_above",
    "kth_prime_above",
    "kth_prime_below",
    "next_prime",
    "prime_at_or_zero",
    "primes_in_closed",
    "IndexSequence",
    "PwnRecord",
    "SearchConfig",
    "decode_index_sequence",
    "divisors_up_to",
    "encode_index_sequence",
    "is_weird",
    "pwn_search_general",
    "pwn_search_squarefree",
    "subset_sums_to",
    "weird_numbers_below",
    "__version__",
]
