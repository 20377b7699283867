"""Exception hierarchy shared by every module."""


class PatexError(Exception):
    """Base class for all library errors."""


class FormatError(PatexError):
    """Malformed pattern text or serialized document."""


class InputError(PatexError):
    """Structurally invalid argument (bad index, unknown edge, ...)."""


class DomainError(PatexError):
    """Argument outside the mathematical domain of an operation."""


class DivisibilityError(DomainError):
    """A block count that does not divide the relevant dimension."""


class PreconditionError(PatexError):
    """A documented operation precondition does not hold."""


class UnsupportedError(PatexError):
    """Operation undefined for this input (e.g. orientation of a non-cycle)."""


class BudgetError(PatexError):
    """A configured search budget or hard cap was exceeded."""


class CacheError(PatexError):
    """Corrupted or inconsistent result cache."""
