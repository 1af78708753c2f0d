class TadlogError(ValueError):
    """Base class for contract violations raised by this package."""


class PreconditionError(TadlogError):
    pass


class ParseError(TadlogError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class Exhausted(Exception):
    """Coset enumeration hit its cap without completing; no conclusion."""

    def __init__(self, max_cosets: int, live: int | None = None):
        self.max_cosets = max_cosets
        self.live = live
        super().__init__(f"coset enumeration exhausted (cap {max_cosets})")
