"""Exception hierarchy.

Validation problems derive from :class:`ValueError` so callers can catch them
generically; solver failures derive from :class:`SolverError`.  The CLI maps
the two families to exit codes 2 and 3.
"""


class HvApproxError(Exception):
    """Base class for all package errors."""


class ValidationError(HvApproxError, ValueError):
    """Invalid input: bad parameters, points or reference point."""


class ConstructionError(ValidationError):
    """Front or distribution parameters violate their constraints."""


class DomainError(ValidationError):
    """A coordinate lies outside the front's domain or range."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class InvalidCertificateError(ValidationError):
    """Certificate points do not interleave the distribution."""


class DegenerateReferenceError(ValidationError):
    """The reference point lies beyond the part of the front it should anchor."""


class RegimeClassificationError(ValidationError):
    """No reference-point regime matches; carries the evaluated inequalities."""

    def __init__(self, message, inequalities=None):
        super().__init__(message)
        self.inequalities = dict(inequalities or {})


class BudgetError(ValidationError):
    """Exhaustive search would exceed its combinatorial budget."""


class SolverError(HvApproxError, RuntimeError):
    """A numerical solver failed."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])


class ConvergenceError(SolverError):
    """Iteration limit reached; carries the best iterate and its residual."""

    def __init__(self, message, best=None, residual=None):
        super().__init__(message)
        self.best = best
        self.residual = residual


class BracketError(SolverError):
    """A root bracket did not change sign (internal invariant broken)."""
