"""Exception hierarchy.

Everything raised deliberately by this package derives from
:class:`DesignTestabilityError`.  The CLI maps :class:`InputError`
subclasses to exit status 2.
"""


class DesignTestabilityError(Exception):
    """Base class for all package errors."""


class InputError(DesignTestabilityError):
    """Bad user input: unreadable files, malformed documents, bad flags."""


class MalformedDocument(InputError):
    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = ""
        if path is not None:
            where = f"{path}"
        if line is not None:
            where += f":{line}:{column}"
        super().__init__(f"{where}: {message}" if where else message)


class SchemaViolation(InputError):
    pass


class CycleDetected(DesignTestabilityError):
    pass


class EmptyModel(DesignTestabilityError):
    pass


class MissingTerm(DesignTestabilityError):
    pass


class UnknownBuiltin(InputError):
    pass


class EmptyInput(DesignTestabilityError, ValueError):
    pass


class LengthMismatch(DesignTestabilityError, ValueError):
    pass


class ZeroVariance(DesignTestabilityError, ValueError):
    pass


class DomainError(DesignTestabilityError, ValueError):
    pass


class TooFewRows(DesignTestabilityError, ValueError):
    pass


class TooFewPoints(DesignTestabilityError, ValueError):
    pass


class RankDeficient(DesignTestabilityError, ValueError):
    pass


class OutOfTableRange(DesignTestabilityError, ValueError):
    pass


class FixtureCorruption(DesignTestabilityError):
    pass


class DegenerateCorrelationWarning(UserWarning):
    """|r| = 1 makes the correlation t statistic infinite."""
