"""Exception types shared across the package."""


class FFPermError(Exception):
    """Base class for all ffperm errors."""


class NotPrime(FFPermError):
    """The requested characteristic is not a prime number."""


class NoIrreducibleFound(FFPermError):
    """No irreducible modulus of the requested degree exists (internal error)."""


class DivisionByZero(FFPermError):
    """Multiplicative inverse of zero requested."""


class FieldMismatch(FFPermError):
    """Operands belong to different fields."""


class VariableCountMismatch(FFPermError):
    """Operands have different numbers of variables."""


class IndexOutOfRange(FFPermError):
    """Variable index outside [0, n)."""


class EqualPoints(FFPermError):
    """A transposition needs two distinct points."""


class UnsupportedField(FFPermError):
    """The construction is not applicable to this field."""


class NoNonResidue(FFPermError):
    """No non-residue exists for the requested power (internal error)."""


class BadDegree(FFPermError):
    """A supplied factor violates its degree precondition."""


class NoValidB(FFPermError):
    """The block size b fails 1 < b < p-1 or gcd(b, q-1) = 1."""


class NotMaxLpp(FFPermError):
    """Input is not a local permutation polynomial of maximum degree."""


class CapExceeded(FFPermError):
    """The workload exceeds the configured size cap."""
