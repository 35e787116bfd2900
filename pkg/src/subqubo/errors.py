"""Exception types raised across the package."""


class SubquboError(Exception):
    """Base class for all package errors."""


class DimensionError(SubquboError, ValueError):
    """Array shapes or lengths do not agree."""


class DomainError(SubquboError, ValueError):
    """A value lies outside the domain an operation accepts."""


class ConfigurationError(SubquboError, ValueError):
    """Invalid parameters (schedules, ranges, encodings)."""


class CapacityError(SubquboError, RuntimeError):
    """The requested work exceeds a configured or platform limit."""


class ProblemFileError(SubquboError, ValueError):
    """A problem or QUBO file is malformed."""
