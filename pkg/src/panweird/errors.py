"""Exception types shared across the package."""


class PanweirdError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PanweirdError, ValueError):
    """Malformed factorization or index-sequence text."""


class NotDeficient(PanweirdError, ValueError):
    """An operation that requires a deficient number got a non-deficient one."""


class NotCoprime(PanweirdError, ValueError):
    """A coprime extension was requested with a prime already present."""


class NotADivisor(PanweirdError, ValueError):
    """A same-prime extension was requested with a prime that does not divide."""


class NotAbundant(PanweirdError, ValueError):
    """An operation that requires an abundant number got something else."""


class NotAbundantOrPerfect(PanweirdError, ValueError):
    """A primitivity query on a deficient number."""


class NoSuchPrime(PanweirdError, ValueError):
    """Ran out of primes while stepping below a bound."""


class CeilingExceeded(PanweirdError, RuntimeError):
    """A prime-counting request went past the configured sieve ceiling."""


class InvalidSequence(PanweirdError, ValueError):
    """An index sequence that does not decode to a valid factorization."""


class PrefixNotDeficient(PanweirdError, ValueError):
    """Encoding hit an interior prefix that is not deficient."""
