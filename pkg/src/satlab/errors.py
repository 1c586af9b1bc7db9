"""Exception types shared across the library."""


class SatlabError(Exception):
    """Base class for all library errors."""


class ParameterError(SatlabError, ValueError):
    """An argument is outside its documented domain."""


class PatternGuardError(ParameterError):
    """A pattern exceeds the small-pattern size guard."""


class ContainmentError(SatlabError, ValueError):
    """A subgraph argument is not contained in its host."""


class CouplingViolation(SatlabError, RuntimeError):
    """A deferred pair was exposed in a way that would redefine its value."""


class ApplicabilityError(SatlabError, ValueError):
    """A construction does not apply to the given pattern or family."""


class SizeError(SatlabError, ValueError):
    """An instance is too small (or too large) for the requested operation."""


class ConstructionFailure(SatlabError, RuntimeError):
    """A construction phase could not complete (reported, never silent)."""
