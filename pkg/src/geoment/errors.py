"""Exception types raised across the package."""


class GmeError(Exception):
    """Base class for all errors raised by geoment."""


class ZeroTensor(GmeError, ValueError):
    pass


class DimensionMismatch(GmeError, ValueError):
    pass


class InvalidPartition(GmeError, ValueError):
    pass


class NotNormalized(GmeError, ValueError):
    pass


class NotMatrix(GmeError, ValueError):
    pass


class InvalidParams(GmeError, ValueError):
    pass


class UnknownCatalogIndex(GmeError, KeyError):
    pass


class CapacityExceeded(GmeError, MemoryError):
    """Requested tensor would exceed the configured amplitude cap."""


class TooManyParties(GmeError, ValueError):
    pass


class CapExceeded(GmeError, ValueError):
    """Exhaustive enumeration would exceed the caller's budget."""
