"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ProblemFormatError -> 2,
ValidationError -> 3, PreconditionError -> 4.  EngineError signals an
internal invariant violation (a bug), never bad user input.
"""


class NCDefError(Exception):
    """Base class for all library errors."""


class ConfigurationError(NCDefError):
    """Values from different fields were mixed."""


class UsageError(NCDefError):
    """Caller violated an operation contract (e.g. shape mismatch)."""


class ProblemFormatError(NCDefError):
    """A problem file does not conform to the input schema."""

    def __init__(self, message, location=None):
        super().__init__(message if location is None else f"{location}: {message}")
        self.location = location


class ValidationError(NCDefError):
    """A module in a problem file violates its quiver relations."""


class PreconditionError(NCDefError):
    """An operation's mathematical precondition does not hold."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class EngineError(NCDefError):
    """Internal consistency failure; indicates a bug, aborts the run."""
