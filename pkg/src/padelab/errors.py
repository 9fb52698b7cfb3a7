"""Exception hierarchy shared across the package."""


class PadeLabError(Exception):
    """Base class for all padelab errors."""


class TruncationError(PadeLabError):
    """A coefficient beyond the known truncation length was requested."""


class EscalationError(PadeLabError):
    """Degree escalation hit its cap before the requested tolerance was met."""

    def __init__(self, message, *, cap=None, achieved=None):
        super().__init__(message)
        self.cap = cap
        self.achieved = achieved


class VerificationError(PadeLabError):
    """An exact identity that the construction guarantees failed to hold."""


class RetryableParameterError(PadeLabError):
    """A parameter choice led to a degenerate value; retry with another one."""


class ConfigError(PadeLabError):
    """An experiment configuration document is malformed."""


class NonConvergenceError(PadeLabError):
    """Numeric root iteration failed to converge at the requested precision."""
