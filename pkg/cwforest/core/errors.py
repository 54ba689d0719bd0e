"""Exception hierarchy shared by the core modules and the CLI."""


class CWForestError(Exception):
    """Base class for every error raised by cwforest."""


class InvalidRationalError(CWForestError, ValueError):
    """A value is not a positive rational, or its text form is malformed."""


class InvalidMatrixError(CWForestError, ValueError):
    """A matrix has a negative entry or a zero determinant."""


class InvalidAddressError(CWForestError, ValueError):
    """A tree address or path word is out of range or malformed."""


class ResourceLimitError(CWForestError):
    """A request exceeds a configured resource cap."""

    def __init__(self, name: str, requested: int, limit: int):
        self.name = name
        self.requested = requested
        self.limit = limit
        super().__init__(f"{name}={requested} exceeds the configured cap {limit}")
