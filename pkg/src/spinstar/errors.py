"""Exception hierarchy shared by every spinstar module."""


class SpinStarError(Exception):
    """Base class for all library errors."""


class DomainError(SpinStarError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceError(SpinStarError, MemoryError):
    """A dense construction would exceed the configured size cap."""


class StructureError(SpinStarError):
    """A matrix does not have the structure an operation relies on."""


class MeasurementError(SpinStarError):
    """A projective measurement outcome has zero probability."""
