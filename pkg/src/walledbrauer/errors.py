"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """Requested object exceeds the desk-scale guard rails."""


class ZeroMultiplicityError(ValueError):
    """A matrix unit was requested for an irrep that does not appear at this d."""


class SemisimplicityError(RuntimeError):
    """A discarded zero-mode generator turned out to be numerically nonzero."""
