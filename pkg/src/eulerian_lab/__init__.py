"""Exact enumeration and cross-verification of generalized Eulerian numbers A_r(n,m,k)."""

from .exceptions import (BFileError, BoundError, CacheError, EulerianLabError, PermutationError,
                         PreconditionError, UnknownIdentityError)
from .perm_core import Permutation, StatFamily, StatKind, new_permutation

__version__ = "0.1.0"
