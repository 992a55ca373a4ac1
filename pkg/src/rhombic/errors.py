"""Exception hierarchy shared by all modules."""


class RhombicError(Exception):
    """Base class for every error raised by this package."""


class ParseError(RhombicError, ValueError):
    """Malformed textual or JSON input."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class DomainError(RhombicError, ArithmeticError):
    """Substituting zero into a negative power, or a similar domain violation."""


class CapacityError(RhombicError):
    """An exhaustive enumeration would exceed its size guard."""


class ValidityError(RhombicError, ValueError):
    """An object violates the invariants of its type."""


class ShapeError(ValidityError):
    """Two objects that must share a diagram shape do not."""


class InvalidFlipError(RhombicError, ValueError):
    """No flippable hexagon at the requested location."""


class ParameterError(RhombicError, ValueError):
    """Out-of-range model parameter."""


class StructureError(RhombicError):
    """A linear system has no unique solution (e.g. a reducible chain)."""
