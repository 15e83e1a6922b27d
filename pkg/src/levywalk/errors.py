"""Exception types shared across the package.

The split matters for the command line front end: parameter problems map to
exit code 2, while quantities that are mathematically undefined/divergent at
the requested point, or numerically unresolvable at the requested grid, map
to exit code 3.
"""


class LevyWalkError(Exception):
    """Base class for all package errors."""


class ParameterError(LevyWalkError, ValueError):
    """Invalid construction parameters (violated type invariants)."""


class DomainError(LevyWalkError, ValueError):
    """Quantity is undefined at the requested arguments."""


class DivergenceError(DomainError):
    """Quantity is infinite at the requested parameters (e.g. b > A sums)."""


class ResolutionError(LevyWalkError, RuntimeError):
    """Quadrature result failed its internal consistency checks."""


class WindowOverflowError(LevyWalkError, RuntimeError):
    """Lattice window too small: unaccounted tail mass exceeds threshold."""
