"""Effective channel power of the direct plus IRS-reflected link.

With optimal phase alignment the received power coefficient is

    G~ = (g0 + sqrt(Delta) * sum_i g_i1 g_i2)**2,

with all amplitudes i.i.d. Nakagami.  ``G = G~ / E[G~ | Delta]`` is its
unit-mean normalisation, and ``ApproxSpec`` describes the unit-mean
exponential, gamma or Erlang law used in place of ``G`` by the analytic
SIR routes.
"""

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import special

from .errors import DomainError, InvalidParameterWarning
from .sampling import sample_fading_power, sample_nakagami
from .specfun import reg_lower_inc_gamma

__all__ = [
    "FadingSpec",
    "ApproxSpec",
    "mu_fad",
    "mean_tilde_g",
    "sample_tilde_g",
    "sample_g",
    "classify_regime",
    "round_half_away",
    "approx_spec",
    "approx_cdf",
    "S_REGIME_MAX",
    "L_REGIME_MIN",
]

S_REGIME_MAX = 1e-4
L_REGIME_MIN = 1.0


@dataclass(frozen=True)
class FadingSpec:
    """Nakagami fading with unit spread.

    ``zeta`` is ``"Rayl"`` for ``mu == 1`` and ``"Nak"`` otherwise.
    """

    mu: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        if not self.mu >= 0.5:
            raise DomainError("Nakagami shape must be >= 0.5")
        if self.omega != 1.0:
            raise DomainError("only unit spread is supported")

    @property
    def zeta(self):
        return "Rayl" if self.mu == 1.0 else "Nak"


def mu_fad(mu):
    """Mean of a unit-spread Nakagami amplitude, ``Gamma(mu+1/2) / Gamma(mu) / sqrt(mu)``."""
    if not mu >= 0.5:
        raise DomainError("mu must be >= 0.5")
    return math.exp(math.lgamma(mu + 0.5) - math.lgamma(mu)) / math.sqrt(mu)


def mean_tilde_g(N, delta, mu=1.0):
    """Signal amplification ``E[G~ | Delta]``.

    ``1 + N (2 sqrt(Delta) m^3 + Delta (1 - m^4)) + N^2 Delta m^4`` with
    ``m = mu_fad(mu)``.  Broadcasts over ``N`` and ``delta``.
    """
    m = mu_fad(mu)
    N = np.asarray(N, dtype=float)
    delta = np.asarray(delta, dtype=float)
    if np.any(N < 0) or np.any(delta < 0):
        raise DomainError("N and delta must be nonnegative")
    out = 1.0 + N * (2.0 * np.sqrt(delta) * m**3 + delta * (1.0 - m**4)) + N * N * delta * m**4
    return out if out.ndim else float(out)


# keep chunks around this many gamma draws to bound memory
_DRAW_BUDGET = 4_000_000


def sample_tilde_g(N, delta, fading=FadingSpec(), rng=None, size=None):
    """Draw ``G~`` for an IRS with ``N`` elements.

    Parameters
    ----------
    N : int
        Number of IRS elements.
    delta : float or ndarray
        Triangle parameter, scalar or one value per draw.
    fading : FadingSpec
    rng : numpy.random.Generator
    size : int, optional
        Number of draws; defaults to ``len(delta)`` for array ``delta``.

    Returns
    -------
    ndarray
    """
    if N < 0 or int(N) != N:
        raise DomainError("N must be a nonnegative integer")
    N = int(N)
    rng = np.random.default_rng() if rng is None else rng
    delta = np.asarray(delta, dtype=float)
    if np.any(delta < 0):
        raise DomainError("delta must be nonnegative")
    if size is None:
        size = delta.size if delta.ndim else 1
        scalar_out = delta.ndim == 0
    else:
        scalar_out = False
    sq = np.broadcast_to(np.sqrt(delta), (size,))
    mu = fading.mu
    out = np.empty(size)
    step = max(1, _DRAW_BUDGET // (2 * N + 1))
    for lo in range(0, size, step):
        hi = min(size, lo + step)
        amp = sample_nakagami(mu, (hi - lo, 2 * N + 1), rng)
        direct = amp[:, 0]
        if N:
            cascade = np.einsum("ij,ij->i", amp[:, 1:N + 1], amp[:, N + 1:])
            out[lo:hi] = (direct + sq[lo:hi] * cascade) ** 2
        else:
            out[lo:hi] = direct * direct
    return float(out[0]) if scalar_out else out


def sample_g(N, delta, fading=FadingSpec(), rng=None, size=None):
    """Unit-mean channel power ``G = G~ / E[G~ | Delta]``."""
    g = sample_tilde_g(N, delta, fading, rng, size)
    return g / mean_tilde_g(N, delta, fading.mu)


def classify_regime(N, delta):
    """Label ``N * Delta`` as ``"s"`` (<= 1e-4), ``"l"`` (>= 1) or ``"m"``."""
    if N < 1:
        raise DomainError("regimes are defined for N >= 1")
    if delta < 0:
        raise DomainError("delta must be nonnegative")
    nd = N * delta
    if nd <= S_REGIME_MAX:
        return "s"
    if nd >= L_REGIME_MIN:
        return "l"
    return "m"


def round_half_away(x):
    """Round to nearest integer, ties away from zero."""
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


@dataclass(frozen=True)
class ApproxSpec:
    """Unit-mean law standing in for ``G``.

    Attributes
    ----------
    kind : {"exponential", "gamma", "erlang"}
    chi : {"s", "m", "l"}
        Regime the law was chosen for.
    M : int, optional
        Erlang shape (and rate), set for ``kind == "erlang"``.
    Mbar : float, optional
        Gamma shape (and rate); for Erlang it records the unrounded value.
    """

    kind: str
    chi: str
    M: Optional[int] = None
    Mbar: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("exponential", "gamma", "erlang"):
            raise DomainError(f"unknown approximation kind {self.kind!r}")
        if self.chi not in ("s", "m", "l"):
            raise DomainError(f"unknown regime {self.chi!r}")
        if self.kind == "erlang" and (self.M is None or self.M < 1 or int(self.M) != self.M):
            raise DomainError("Erlang shape must be a positive integer")
        if self.kind == "gamma" and not (self.Mbar and self.Mbar > 0):
            raise DomainError("gamma shape must be positive")

    @property
    def shape(self):
        """Shape parameter; equals the rate because the mean is one."""
        if self.kind == "exponential":
            return 1.0
        return float(self.M if self.kind == "erlang" else self.Mbar)

    @property
    def variance(self):
        return 1.0 / self.shape

    def sample(self, size=None, rng=None):
        rng = np.random.default_rng() if rng is None else rng
        return rng.gamma(self.shape, 1.0 / self.shape, size=size)


def approx_spec(chi, N, fading=FadingSpec(), refined=False, n_delta=None, kind="erlang"):
    """Select the unit-mean approximation of ``G`` for a regime.

    Rayleigh fading uses the exponential law in regime ``s`` and Erlang
    shapes ``round(N**0.25)`` and ``round(N**0.75)`` in ``m`` and ``l``.
    Nakagami fading multiplies the shapes by ``mu`` and uses
    ``round(mu)`` in ``s``.  With ``refined`` in regime ``m`` the shape
    exponent tracks ``N Delta``: ``Mbar = N**(3/4 + log10(N Delta)/4) mu``.

    Parameters
    ----------
    chi : {"s", "m", "l"}
    N : int
    fading : FadingSpec
    refined : bool
        Use the ``N Delta`` dependent shape in regime ``m``.
    n_delta : float, optional
        ``N * Delta``; required when ``refined`` is set.
    kind : {"erlang", "gamma"}
        ``"gamma"`` keeps the unrounded shape ``Mbar``.

    Returns
    -------
    ApproxSpec
    """
    if chi not in ("s", "m", "l"):
        raise DomainError(f"unknown regime {chi!r}")
    if kind not in ("erlang", "gamma"):
        raise DomainError("kind must be 'erlang' or 'gamma'")
    mu = fading.mu
    if chi == "s":
        if fading.zeta == "Rayl" and kind == "erlang":
            return ApproxSpec("exponential", "s")
        mbar = mu
    elif chi == "m":
        if refined:
            if n_delta is None or not n_delta > 0:
                raise DomainError("refined shape needs a positive N*Delta")
            mbar = N ** (0.75 + math.log10(n_delta) / 4.0) * mu
        else:
            mbar = N ** 0.25 * mu
    else:
        mbar = N ** 0.75 * mu
    if kind == "gamma":
        if not mbar > 0:
            raise DomainError("gamma shape must be positive")
        return ApproxSpec("gamma", chi, Mbar=float(mbar))
    M = round_half_away(mbar)
    if M < 1:
        warnings.warn(f"Erlang shape {mbar:.3g} rounds below 1; clamped to 1",
                      InvalidParameterWarning, stacklevel=2)
        M = 1
    return ApproxSpec("erlang", chi, M=M, Mbar=float(mbar))


def _erlang_cdf(M, y):
    # 1 - sum_{k<M} e^{-My} (My)^k / k!, summed in log space
    z = M * y
    k = np.arange(M).reshape((-1,) + (1,) * z.ndim)
    with np.errstate(divide="ignore", invalid="ignore"):
        logz = np.log(z)
        logterms = np.where(k == 0, -z, k * logz - z - special.gammaln(k + 1.0))
    return 1.0 - np.exp(logterms).sum(axis=0)


def approx_cdf(spec, y):
    """CDF of an :class:`ApproxSpec` law at ``y >= 0``."""
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise DomainError("y must be nonnegative")
    if spec.kind == "exponential":
        out = -np.expm1(-y)
    elif spec.kind == "gamma":
        out = np.asarray(reg_lower_inc_gamma(spec.Mbar, spec.Mbar * y))
    else:
        out = _erlang_cdf(spec.M, y)
    out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)
