"""Exception hierarchy shared by every subpackage."""


class ReduktError(Exception):
    """Base class for all errors raised by redukt."""


class InvalidWord(ReduktError, ValueError):
    pass


class AlphabetMismatch(ReduktError, ValueError):
    pass


class LtlSyntaxError(ReduktError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnknownAtomicProposition(ReduktError, ValueError):
    pass


class ModelSyntaxError(ReduktError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ResourceLimitExceeded(ReduktError):
    """A state, product or saturation cap was hit."""


class Cancelled(ReduktError):
    """Cooperative cancellation or a per-arm timeout interrupted a computation."""


class InternalError(ReduktError, AssertionError):
    """An internal cross-check failed; always a bug."""
