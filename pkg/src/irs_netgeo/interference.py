"""Laplace transforms of the intercell interference.

Interferers form a PPP outside a disk around the UE, each with unit-mean
exponential fading and path gain ``l0**eta * r**-eta``.  Conditioned on
the dominant interferer distance ``R_d`` the interference is the PPP
beyond ``R_d`` plus one interferer at ``R_d``; conditioned on the serving
distance ``R0`` it is a PPP (usually of density ``q lam``) beyond ``R0``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .params import NetworkParams
from .specfun import hyp2f1_negarg, hyp2f1_negarg_vec

__all__ = ["InterferenceLT", "ppp_exponent"]


def ppp_exponent(x, eta, method="auto"):
    """``2 x / (eta - 2) * 2F1(1, 1 - delta; 2 - delta; -x)`` with ``delta = 2/eta``.

    This is ``-log`` of the PPP part of the Laplace transform in units of
    ``pi lam r^2``, as a function of ``x = s l0^eta / r^eta``.

    ``method`` selects the evaluation: ``"closed"`` (``eta = 4`` only,
    ``sqrt(x) atan(sqrt(x))``), ``"quad"`` (adaptive quadrature per point),
    ``"beta"`` (vectorised incomplete beta) or ``"auto"``.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(np.isnan(x)):
        raise DomainError("argument must be nonnegative")
    d = 2.0 / eta
    if method == "auto":
        method = "closed" if eta == 4.0 else "beta"
    if method == "closed":
        if eta != 4.0:
            raise DomainError("closed form only exists for eta = 4")
        r = np.sqrt(x)
        out = r * np.arctan(r)
    elif method == "quad":
        f = np.vectorize(lambda v: hyp2f1_negarg(1.0, 1.0 - d, 2.0 - d, v), otypes=[float])
        out = 2.0 * x / (eta - 2.0) * f(x)
    elif method == "beta":
        out = 2.0 * x / (eta - 2.0) * hyp2f1_negarg_vec(1.0, 1.0 - d, x)
    else:
        raise DomainError(f"unknown method {method!r}")
    return out if np.ndim(out) else float(out)


@dataclass(frozen=True)
class InterferenceLT:
    """Conditional Laplace transforms ``E[exp(-s I)]``.

    Parameters
    ----------
    lam : float
        Interferer density.
    eta : float
        Path-loss exponent, ``eta > 2``.
    l0 : float
        Reference distance.
    method : str
        Passed to :func:`ppp_exponent`.
    """

    lam: float = 1e-5
    eta: float = 4.0
    l0: float = 1.0
    method: str = "auto"

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError("lam must be positive")
        if not self.eta > 2:
            raise DomainError("eta must exceed 2")

    @classmethod
    def from_params(cls, params: NetworkParams, method="auto"):
        return cls(params.lam, params.eta, params.l0, method)

    @property
    def delta_pl(self):
        return 2.0 / self.eta

    def _x(self, s, r):
        s = np.asarray(s, dtype=float)
        r = np.asarray(r, dtype=float)
        if np.any(s < 0):
            raise DomainError("s must be nonnegative")
        if np.any(r <= 0):
            raise DomainError("distance must be positive")
        # s l0^eta r^-eta, written to avoid overflow of l0^eta
        return s * (self.l0 / r) ** self.eta, r

    def lt_given_R0(self, s, R0, lam_eff=None):
        """PPP of density ``lam_eff`` (default ``lam``) outside ``b(0, R0)``."""
        lam_eff = self.lam if lam_eff is None else lam_eff
        x, r = self._x(s, R0)
        out = np.exp(-math.pi * lam_eff * r * r * ppp_exponent(x, self.eta, self.method))
        return out if np.ndim(out) else float(out)

    def lt_given_Rd(self, s, Rd):
        """PPP of density ``lam`` outside ``b(0, Rd)`` plus one interferer at ``Rd``."""
        x, r = self._x(s, Rd)
        out = np.exp(-math.pi * self.lam * r * r * ppp_exponent(x, self.eta, self.method)) / (1.0 + x)
        return out if np.ndim(out) else float(out)

    def mean_given_Rd(self, Rd):
        """``E[I | R_d]``; finite because ``eta > 2``."""
        Rd = np.asarray(Rd, dtype=float)
        g = (self.l0 / Rd) ** self.eta
        return g * (2.0 * math.pi * self.lam * Rd * Rd / (self.eta - 2.0) + 1.0)
