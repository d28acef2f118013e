"""Exception hierarchy shared across the toolkit."""


class StabkitError(Exception):
    """Base class for all toolkit-specific errors."""


class DomainError(StabkitError, ValueError):
    """An input lies outside the mathematical domain of the operation."""


class ConfigError(StabkitError, ValueError):
    """A run configuration is malformed (unknown key, bad tolerance...)."""


class NoBracket(StabkitError):
    """Bisection bracket endpoints give the same verdict."""


class NoCollision(StabkitError):
    """No eigenvalue coalescence found in the scanned interval."""


class DegenerateChain(StabkitError):
    """The double eigenvalue does not carry a genuine 2x2 Jordan block."""


class DegenerateSurface(StabkitError):
    """The critical-surface expansion has a vanishing denominator."""


class NoBoundary(StabkitError):
    """The instability tongue has lifted off; no boundary to bisect."""


class NoFlutter(StabkitError):
    """No flutter onset below the load-search ceiling."""


class IntegrationError(StabkitError):
    """Step-halving check failed; integrator output not trustworthy."""


class QuadratureError(StabkitError):
    """Quadrature refinement changed a projected matrix entry beyond tolerance."""


class DegenerateQuadratic(StabkitError):
    """The dispersion quadratic has a vanishing leading coefficient."""
