"""Exception types shared across the package."""


class MagnonlabError(Exception):
    """Base class for errors raised by this package."""


class SpecError(MagnonlabError, ValueError):
    """Invalid state specification: bad syntax or out-of-range parameters."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class VanishingStateError(MagnonlabError, ArithmeticError):
    """An operator application annihilated the state (norm below threshold)."""


class CapExceededError(MagnonlabError, RuntimeError):
    """A requested computation exceeds the desk-scale size caps."""


class NumericalError(MagnonlabError, RuntimeError):
    """A numerical routine failed (no convergence, trace drift, ...)."""
