"""Exception types shared across the package."""


class PrismTriError(Exception):
    """Base class for all package errors."""


class DomainError(PrismTriError, ValueError):
    """An argument lies outside the domain of an operation."""


class CapacityError(PrismTriError):
    """A size guard was exceeded (enumeration would explode)."""


class StructuralError(PrismTriError):
    """A triangulation violated a structural invariant that validation should have caught."""


class ConstructionError(PrismTriError):
    """No tried placing order reached the target size."""

    def __init__(self, message, best_size=None):
        super().__init__(message)
        self.best_size = best_size
