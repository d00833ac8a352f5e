"""IRS placement models and the triangle parameter.

The triangle parameter ``Delta = (R0 l0 / (R1 R2))**eta`` compares the
path gain of the direct BS-UE link with that of the reflected BS-IRS-UE
link.  Two placements are modelled:

* ``ModelI``: the IRS sits at a fixed distance ``r2`` from the UE in a
  uniformly random direction.
* ``ModelII``: the IRS is equidistant from BS and UE, at a distance that
  scales with ``sqrt(R0)``; this makes ``Delta`` deterministic.
"""

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate, optimize

from .errors import DomainError, GeometryInfeasible, NonConvergence
from .params import NetworkParams

__all__ = [
    "ModelI",
    "ModelII",
    "FixedDelta",
    "NoIrs",
    "PlacementModel",
    "IrsConfig",
    "TriangleGeometry",
    "triangle_delta",
    "model1_R1",
    "model1_cdf_R1_given_R0",
    "model1_cdf_delta",
    "model1_pdf_delta",
    "model1_delta_quantile",
    "model2_c",
    "model2_delta",
    "model2_geometry",
    "r0_tail_limit",
]


@dataclass(frozen=True)
class ModelI:
    """IRS at distance ``r2`` from the UE, direction uniform on the circle."""

    r2: float

    def __post_init__(self):
        if not self.r2 > 0:
            raise DomainError("r2 must be positive")


@dataclass(frozen=True)
class ModelII:
    """IRS equidistant from BS and UE, ``R1 = R2 = sqrt(R0) / c``."""


@dataclass(frozen=True)
class FixedDelta:
    """Deterministic triangle parameter, bypassing any geometry."""

    delta: float

    def __post_init__(self):
        if not (self.delta >= 0 and math.isfinite(self.delta)):
            raise DomainError("delta must be finite and nonnegative")


@dataclass(frozen=True)
class NoIrs:
    """No IRS deployed; equivalent to ``R1 = R2 = inf``."""


PlacementModel = Union[ModelI, ModelII, FixedDelta, NoIrs]


@dataclass(frozen=True)
class IrsConfig:
    """Element count together with a placement model."""

    n_elements: int = 0
    placement: PlacementModel = NoIrs()

    def __post_init__(self):
        if int(self.n_elements) != self.n_elements or self.n_elements < 0:
            raise DomainError("n_elements must be a nonnegative integer")
        object.__setattr__(self, "n_elements", int(self.n_elements))

    @property
    def active(self):
        """False when the configuration is equivalent to having no IRS."""
        p = self.placement
        if self.n_elements == 0 or isinstance(p, NoIrs):
            return False
        return not (isinstance(p, FixedDelta) and p.delta == 0)


@dataclass(frozen=True)
class TriangleGeometry:
    R0: float
    R1: float
    R2: float
    delta: float

    def __post_init__(self):
        if math.isinf(self.R1) and math.isinf(self.R2):
            return
        tol = 1e-9 * max(self.R0, self.R2, 1.0)
        if not (abs(self.R0 - self.R2) - tol <= self.R1 <= self.R0 + self.R2 + tol):
            raise GeometryInfeasible(
                f"R1={self.R1} violates the triangle inequality for R0={self.R0}, R2={self.R2}")


def triangle_delta(R0, R1, R2, eta=4.0, l0=1.0):
    """Triangle parameter ``(R0 l0 / (R1 R2))**eta``; zero without IRS.

    Vectorised over the distances.  ``R1 = R2 = inf`` encodes the absence
    of an IRS; exactly one infinite distance is rejected.
    """
    R0, R1, R2 = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (R0, R1, R2)))
    inf1, inf2 = np.isinf(R1), np.isinf(R2)
    if np.any(inf1 != inf2):
        raise DomainError("R1 and R2 must be both finite or both infinite")
    if np.any(R0 <= 0):
        raise DomainError("R0 must be positive")
    with np.errstate(divide="ignore"):
        out = np.where(inf1, 0.0, (R0 * l0 / (R1 * R2)) ** eta)
    return out if out.ndim else float(out)


def model1_R1(R0, r2, phi):
    """BS-IRS distance by the law of cosines; ``phi`` is the angle at the UE."""
    R0 = np.asarray(R0, dtype=float)
    sq = R0 * R0 + r2 * r2 - 2.0 * r2 * R0 * np.cos(phi)
    out = np.sqrt(np.maximum(sq, 0.0))
    return out if out.ndim else float(out)


def model1_cdf_R1_given_R0(x, R0, r2):
    """CDF of the BS-IRS distance for a uniformly oriented IRS.

    ``1/2 - asin((R0^2 + r2^2 - x^2) / (2 R0 r2)) / pi``, saturating at 0
    and 1 outside ``[|R0 - r2|, R0 + r2]``.  Symmetric in ``R0`` and ``r2``.
    """
    x = np.asarray(x, dtype=float)
    # written so that swapping R0 and r2 is bitwise exact
    arg = (R0 * R0 + r2 * r2 - x * x) / (2.0 * (R0 * r2))
    out = 0.5 - np.arcsin(np.clip(arg, -1.0, 1.0)) / math.pi
    return out if out.ndim else float(out)


def r0_tail_limit(lam, q, digits=14):
    """Radius beyond which the serving-distance survival is below ``10**-digits``."""
    return math.sqrt(digits * math.log(10.0) / (math.pi * lam * q))


def _delta_breakpoints(x, r2, l0, eta):
    # asin argument A(y) = ((1-k) y^2 + r2^2) / (2 y r2) with k = l0^2 / (r2^2 x^(2/eta));
    # |A| < 1 exactly on (r2/(1+sqrt k), r2/|1-sqrt k|).
    k = l0 * l0 / (r2 * r2 * x ** (2.0 / eta))
    sk = math.sqrt(k)
    lo = r2 / (1.0 + sk)
    hi = math.inf if sk == 1.0 else r2 / abs(1.0 - sk)
    return k, lo, hi


def model1_cdf_delta(x, lam=1e-5, q=9 / 7, r2=None, l0=1.0, eta=4.0, rel_tol=1e-10):
    """CDF of the triangle parameter under random-direction placement.

    Integrates the conditional CDF of ``R1`` against the serving-distance
    density, with the arcsine argument clamped to ``[-1, 1]``.  Outside
    the interval where the clamp is inactive the conditional probability
    is exactly 0 or 1, so only that interval needs quadrature; the rest
    is a closed-form Rayleigh mass.  The outer integral stops at
    :func:`r0_tail_limit`.

    Parameters
    ----------
    x : float or array_like
        Evaluation points, ``x >= 0``.
    lam, q : float
        BS density and typical-cell correction.
    r2 : float
        IRS-UE distance; defaults to ``1 / (60 sqrt(lam))``.
    l0, eta : float
        Reference distance and path-loss exponent.

    Returns
    -------
    float or ndarray
    """
    if r2 is None:
        r2 = 1.0 / (60.0 * math.sqrt(lam))
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0) or np.any(np.isnan(xs)):
        raise DomainError("x must be nonnegative")
    a = math.pi * lam * q
    y_max = r0_tail_limit(lam, q)

    def mass(y0, y1):
        # Rayleigh probability of y0 < R0 < y1
        return math.exp(-a * y0 * y0) - (math.exp(-a * y1 * y1) if math.isfinite(y1) else 0.0)

    def one(xv):
        if xv == 0.0:
            return 0.0
        if math.isinf(xv):
            return 1.0
        k, lo, hi = _delta_breakpoints(xv, r2, l0, eta)
        total = mass(0.0, lo)  # asin = +pi/2 below the interval
        beyond = mass(hi, math.inf) if math.isfinite(hi) else 0.0
        total += beyond if k < 1.0 else -beyond  # asin = +-pi/2 past the interval

        def f(y):
            arg = ((1.0 - k) * y * y + r2 * r2) / (2.0 * y * r2)
            # asin / (pi/2) in [-1, 1], the same scale as the saturated masses
            return 2.0 * a * y * math.exp(-a * y * y) * math.asin(min(1.0, max(-1.0, arg))) / (0.5 * math.pi)

        top = min(hi, y_max)
        if top > lo:
            val, err = integrate.quad(f, lo, top, epsabs=1e-15, epsrel=rel_tol, limit=200)
            if err > max(1e-12, 10 * rel_tol * abs(val)):
                raise NonConvergence(f"Delta CDF quadrature error {err:.2e} at x={xv}")
            total += val
        return min(1.0, max(0.0, 0.5 + 0.5 * total))

    out = np.vectorize(one, otypes=[float])(xs)
    return out if out.ndim else float(out)


def model1_pdf_delta(x, lam=1e-5, q=9 / 7, r2=None, l0=1.0, eta=4.0, rel_tol=1e-8):
    """Density of the triangle parameter, by differentiating under the integral.

    Only the unclamped interval contributes; the integrand has inverse
    square-root endpoint singularities which QUADPACK handles directly.
    """
    if r2 is None:
        r2 = 1.0 / (60.0 * math.sqrt(lam))
    xs = np.asarray(x, dtype=float)
    a = math.pi * lam * q
    y_max = r0_tail_limit(lam, q)

    def one(xv):
        if not xv > 0 or math.isinf(xv):
            return 0.0
        k, lo, hi = _delta_breakpoints(xv, r2, l0, eta)

        def f(y):
            arg = ((1.0 - k) * y * y + r2 * r2) / (2.0 * y * r2)
            if abs(arg) >= 1.0:
                return 0.0
            d_arg = y * k / (eta * xv * r2)
            return 2.0 * a * y * math.exp(-a * y * y) * d_arg / (math.pi * math.sqrt(1.0 - arg * arg))

        top = min(hi, y_max)
        if top <= lo:
            return 0.0
        val, _ = integrate.quad(f, lo, top, epsabs=0.0, epsrel=rel_tol, limit=400)
        return val

    out = np.vectorize(one, otypes=[float])(xs)
    return out if out.ndim else float(out)


def model1_delta_quantile(p, lam=1e-5, q=9 / 7, r2=None, l0=1.0, eta=4.0):
    """Inverse of :func:`model1_cdf_delta` by root bracketing in ``log10(x)``."""
    if not 0 < p < 1:
        raise DomainError("p must lie in (0, 1)")

    def g(t):
        return model1_cdf_delta(10.0 ** t, lam, q, r2, l0, eta) - p

    lo, hi = -30.0, 10.0
    while g(lo) > 0:
        lo -= 20.0
    while g(hi) < 0:
        hi += 20.0
    return 10.0 ** optimize.brentq(g, lo, hi, xtol=1e-10)


def model2_c(lam, q):
    """Scale ``c = 2 / sqrt(3 E[R0])`` of the equidistant placement."""
    mean_r0 = 0.5 / math.sqrt(q * lam)
    return 2.0 / math.sqrt(3.0 * mean_r0)


def model2_delta(lam=1e-5, q=9 / 7, l0=1.0, eta=4.0):
    """Triangle parameter of the equidistant placement, ``(8 sqrt(q lam) l0 / 3)**eta``."""
    return (8.0 * math.sqrt(q * lam) * l0 / 3.0) ** eta


def model2_geometry(R0, lam=1e-5, q=9 / 7, l0=1.0, eta=4.0):
    """Triangle for an IRS equidistant from BS and UE.

    Raises
    ------
    GeometryInfeasible
        If ``R0 >= 4 / c^2``, where the two IRS legs cannot reach the BS.
    """
    if not R0 > 0:
        raise DomainError("R0 must be positive")
    c = model2_c(lam, q)
    if R0 >= 4.0 / (c * c):
        raise GeometryInfeasible(f"R0={R0:.4g} m exceeds 4/c^2={4 / c**2:.4g} m")
    leg = math.sqrt(R0) / c
    return TriangleGeometry(R0=float(R0), R1=leg, R2=leg, delta=model2_delta(lam, q, l0, eta))


def placement_delta(placement, R0, params: NetworkParams, phi=None):
    """Per-sample triangle parameter for a placement model.

    ``phi`` is required for :class:`ModelI`.  Infeasible equidistant
    geometries are not filtered here.
    """
    R0 = np.asarray(R0, dtype=float)
    if isinstance(placement, NoIrs):
        return np.zeros_like(R0)
    if isinstance(placement, FixedDelta):
        return np.full_like(R0, placement.delta)
    if isinstance(placement, ModelII):
        return np.full_like(R0, model2_delta(params.lam, params.q, params.l0, params.eta))
    if isinstance(placement, ModelI):
        if phi is None:
            raise DomainError("ModelI needs the IRS angle phi")
        R1 = model1_R1(R0, placement.r2, phi)
        with np.errstate(divide="ignore"):
            return (R0 * params.l0 / (R1 * placement.r2)) ** params.eta
    raise DomainError(f"unknown placement {placement!r}")
