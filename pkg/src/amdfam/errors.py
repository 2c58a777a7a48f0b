"""Exception hierarchy.

Every error raised on bad input derives from :class:`AmdFamError`, which is
itself a ``ValueError`` so callers that only care about "bad input" can catch
that.  The CLI maps all of them to exit code 2.
"""


class AmdFamError(ValueError):
    pass


# group / field
class InvalidOrderError(AmdFamError):
    pass


class ElementDomainError(AmdFamError):
    pass


class NotPrimeError(AmdFamError):
    pass


class ReduciblePolynomialError(AmdFamError):
    pass


# differences / families
class DisjointnessError(AmdFamError):
    pass


class TrivialFamilyError(AmdFamError):
    pass


class IndexRangeError(AmdFamError):
    pass


class ClassDefinitionError(AmdFamError):
    pass


class WrongTypeError(AmdFamError):
    pass


class LatticeError(AmdFamError):
    pass


# constructions
class ParameterError(AmdFamError):
    pass


class ParityError(ParameterError):
    pass


class IdentityError(ParameterError):
    """Parameters violate a necessary counting identity."""


# amd
class CodeError(AmdFamError):
    pass


class ZeroDeltaError(AmdFamError):
    pass


class PreconditionError(AmdFamError):
    pass


class InternalConsistencyError(AssertionError):
    """Two independent routes to the same fact disagreed.

    This is a bug in the toolkit (or a counterexample to a theorem), never a
    user error.
    """
