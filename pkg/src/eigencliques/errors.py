"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class InputError(ToolkitError, ValueError):
    """Invalid argument: out-of-range vertex, malformed set, bad parameter combination."""


class SizeError(ToolkitError, ValueError):
    """Instance too large for an exhaustive routine; the message names the alternative."""


class NumericalError(ToolkitError, RuntimeError):
    """A numerical check failed beyond tolerance; carries the offending residual."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class DegenerateInputError(InputError):
    """Operation undefined on this degenerate input (e.g. an edgeless graph)."""
