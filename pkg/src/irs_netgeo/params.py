"""Scene-wide network parameters."""

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = ["NetworkParams", "TYPICAL_CELL_Q"]

#: correction of the serving-distance law for a UE uniform in the typical cell
TYPICAL_CELL_Q = 9.0 / 7.0


@dataclass(frozen=True)
class NetworkParams:
    """Base-station density, path loss and the typical-cell correction.

    Parameters
    ----------
    lam : float
        BS density in BS per square meter.
    eta : float
        Path-loss exponent, must exceed 2.
    l0 : float
        Reference distance of the path-loss law in meters.
    q : float
        Typical-cell correction of the serving-distance density.
    """

    lam: float = 1e-5
    eta: float = 4.0
    l0: float = 1.0
    q: float = TYPICAL_CELL_Q

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise DomainError("lam must be positive and finite")
        if not self.eta > 2:
            raise DomainError("eta must exceed 2")
        if not self.l0 > 0:
            raise DomainError("l0 must be positive")
        if not self.q > 0:
            raise DomainError("q must be positive")

    @property
    def delta_pl(self):
        """``2 / eta``."""
        return 2.0 / self.eta

    @property
    def mean_R0(self):
        """Mean serving distance ``1 / (2 sqrt(q lam))``."""
        return 0.5 / math.sqrt(self.q * self.lam)

    @property
    def default_r2(self):
        """IRS-UE distance used by default in the random-direction model."""
        return 1.0 / (60.0 * math.sqrt(self.lam))
