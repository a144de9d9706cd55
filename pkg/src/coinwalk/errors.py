"""Exception types shared across the package.

The split mirrors how failures are reported at the service and CLI
boundaries: bad input (config or parameter) versus a numerical-domain
violation detected during computation. I/O problems stay plain OSError.
"""


class WalkError(Exception):
    """Base class for errors raised by this package."""


class ParameterDomainError(WalkError, ValueError):
    """A numeric parameter lies outside its documented domain."""


class ConfigError(WalkError, ValueError):
    """An experiment configuration is malformed or inconsistent."""


class NumericalDomainError(WalkError, ArithmeticError):
    """A computed quantity violated a mathematical constraint (for
    example an eigenvalue outside [0, 1] beyond tolerance)."""
