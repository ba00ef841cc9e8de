"""Exception hierarchy.

Everything raised on purpose by the engine derives from
:class:`SparseRootsError`.  Subclasses of :class:`Diagnostic` signal that a
computation gave up (a violated precondition, a ceiling was hit); the CLI maps
them to exit code 3 and reports :attr:`Diagnostic.kind`.
"""


class SparseRootsError(Exception):
    """Base class for all errors raised by this package."""


class ContractViolation(SparseRootsError, ValueError):
    """An operation was called outside its documented preconditions."""


class ZeroCoefficientError(ContractViolation):
    """A coefficient oracle failed to certify a non-zero value."""


class Diagnostic(SparseRootsError):
    kind = "diagnostic"


class GridDegenerateError(Diagnostic):
    kind = "grid degenerate"


class RefinementStalled(Diagnostic):
    kind = "refinement stalled"


class WrapperFailed(Diagnostic):
    kind = "wrapper failed"


class SeparationBelowThreshold(Diagnostic):
    kind = "separation below threshold"


class SoftPredicateFailure(Diagnostic):
    kind = "soft predicate failure"
