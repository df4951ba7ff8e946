"""Exception hierarchy shared across the package.

DomainError and its subclasses signal mathematically invalid requests
(exit status 2 in the CLI); ConfigError signals bad configuration input
(exit status 1).
"""


class TailgapError(Exception):
    """Base class for all tailgap errors."""


class ConfigError(TailgapError):
    """Invalid or incomplete run configuration."""


class DomainError(TailgapError):
    """Request outside the mathematical domain of an operation."""


class InfiniteMomentError(DomainError):
    """A required moment does not exist for the given parameters."""


class UnboundedBandError(DomainError):
    """Error band touches exceedance probability 0, so the upper edge is unbounded."""


class DegenerateGridError(DomainError):
    """Parameter grid too small for the requested sweep verdict."""
