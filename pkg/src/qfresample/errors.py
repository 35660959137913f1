"""Exception types shared across the package."""


class CapacityError(ValueError):
    """Raised when a register would exceed the configured qubit budget."""


class EncodingError(ValueError):
    """Raised when a signal cannot be amplitude-encoded (e.g. zero intensity)."""


class SignalFileError(OSError):
    """Raised when a signal file cannot be read or parsed.

    Carries the offending path so front ends can report it.
    """

    def __init__(self, path, message: str):
        super().__init__(f"{path}: {message}")
        self.path = str(path)
