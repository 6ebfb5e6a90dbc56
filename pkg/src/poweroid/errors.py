"""Exception hierarchy shared across the package."""


class PoweroidError(ValueError):
    """Base class for every domain error raised by this package."""


class SeriesError(PoweroidError):
    pass


class OrderError(SeriesError):
    """Raised when a series is not truncated deeply enough for a request."""


class OperatorError(PoweroidError):
    pass


class SpecError(OperatorError):
    """Malformed operator spec text; ``position`` is a 0-based offset."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} (at position {position} in {text!r})")
