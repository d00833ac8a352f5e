"""Exception hierarchy shared by all modules."""


class IrsNetGeoError(Exception):
    """Base class for errors raised by irs_netgeo."""

    #: machine-readable category, also used by the CLI to pick an exit code
    category = "error"


class NonConvergence(IrsNetGeoError):
    """A quadrature, series or continued fraction missed its tolerance."""

    category = "non-convergence"


class DomainError(IrsNetGeoError, ValueError):
    category = "domain"


class GeometryInfeasible(IrsNetGeoError, ValueError):
    """The BS-IRS-UE triangle cannot be closed for the requested geometry."""

    category = "geometry-infeasible"


class SingularMatrix(IrsNetGeoError, ArithmeticError):
    category = "singular-matrix"


class WindowTooSmall(IrsNetGeoError):
    """Simulation window truncates more interference than the tolerance allows."""

    category = "window-too-small"


class RejectionBudgetExceeded(IrsNetGeoError):
    category = "rejection-budget"


class InsufficientTailMass(IrsNetGeoError):
    """Not enough samples below the requested CDF depth.

    Attributes
    ----------
    achieved_depth : float
        Smallest CDF level that the sample set resolves with the required
        number of hits.
    """

    category = "insufficient-tail-mass"

    def __init__(self, message, achieved_depth=None):
        super().__init__(message)
        self.achieved_depth = achieved_depth


class ConfigError(IrsNetGeoError, ValueError):
    category = "config"


class InvalidParameterWarning(UserWarning):
    """A parameter was clamped into its valid range."""
