"""Exception types shared across the package."""


class EulerianLabError(Exception):
    """Base class for all errors raised by this package."""


class PermutationError(EulerianLabError, ValueError):
    """Input is not a permutation of 1..n."""


class BoundError(EulerianLabError, ValueError):
    """A requested size exceeds the configured enumeration bound."""


class PreconditionError(EulerianLabError, ValueError):
    """A map or operation was applied outside its domain."""


class UnknownIdentityError(EulerianLabError, KeyError):
    pass


class BFileError(EulerianLabError, ValueError):
    """Malformed OEIS b-file content."""


class CacheError(EulerianLabError):
    """Cache file missing, corrupted, or of the wrong version."""
