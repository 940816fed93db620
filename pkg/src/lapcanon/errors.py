"""Exception hierarchy shared by every lapcanon module."""


class LapCanonError(Exception):
    """Base class for all lapcanon errors."""


class ParseError(LapCanonError):
    """Raised when a graph file is syntactically malformed."""

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class ValidationError(LapCanonError, ValueError):
    """Raised when a parsed graph violates the data-model invariants."""


class ConvergenceError(LapCanonError):
    """Raised when the symmetric eigensolver fails to converge."""


class DomainError(LapCanonError, ValueError):
    """Raised when an input vector or basis is not (ortho)normal."""


class SizeError(LapCanonError, ValueError):
    """Raised when a brute-force oracle is asked to enumerate too many permutations."""


class GeneratorError(LapCanonError):
    """Raised when a random graph generator exhausts its retry budget."""
