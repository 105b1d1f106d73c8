"""Exception hierarchy shared by every charnum module."""


class CharnumError(Exception):
    """Base class for all errors raised by charnum."""


class UsageError(CharnumError, ValueError):
    """An operation was called with arguments outside its contract."""


class NotSymmetricError(CharnumError):
    """A root polynomial is not invariant under the hyperoctahedral group."""


class NotRealizableError(CharnumError):
    """A Wall pair fails the parity or signature congruence condition."""


class NotStringError(CharnumError):
    """A Pontryagin number vector has a nonzero p1-monomial."""


class ConsistencyError(CharnumError):
    """An internal cross-check failed; indicates a bug or corrupt input."""


class ManifestError(CharnumError):
    """A JSON manifest could not be read or is malformed."""
