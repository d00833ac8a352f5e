"""Seeded variate generation and point-process sampling.

Every random quantity in the package is drawn from a
:class:`numpy.random.Generator` built from an :class:`RngStreamSpec`, so a
(seed, stream) pair always reproduces the same numbers.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "RngStreamSpec",
    "make_rng",
    "PointSet2D",
    "sample_nakagami",
    "sample_fading_power",
    "sample_ppp_disk",
    "sample_R0",
    "sample_Rd_given_R0",
    "cdf_R0",
    "cdf_Rd_given_R0",
]


@dataclass(frozen=True)
class RngStreamSpec:
    """Address of an independent random stream.

    Streams are derived with :class:`numpy.random.SeedSequence` using
    ``stream_id`` as spawn key, so distinct ids give independent PCG64
    generators and the mapping does not depend on creation order.
    """

    master_seed: int
    stream_id: tuple = ()

    def __post_init__(self):
        sid = self.stream_id
        if isinstance(sid, (int, np.integer)):
            sid = (int(sid),)
        sid = tuple(int(s) for s in sid)
        if any(s < 0 for s in sid):
            raise DomainError("stream ids must be nonnegative")
        if self.master_seed < 0:
            raise DomainError("master_seed must be nonnegative")
        object.__setattr__(self, "stream_id", sid)

    def child(self, *ids):
        return RngStreamSpec(self.master_seed, self.stream_id + tuple(ids))

    def generator(self):
        ss = np.random.SeedSequence(self.master_seed, spawn_key=self.stream_id)
        return np.random.Generator(np.random.PCG64(ss))


def make_rng(seed=0, *stream_id):
    """Shorthand for ``RngStreamSpec(seed, stream_id).generator()``."""
    return RngStreamSpec(seed, stream_id).generator()


@dataclass
class PointSet2D:
    """Points generated inside a disk window.

    Attributes
    ----------
    points : ndarray, shape (n, 2)
    center : ndarray, shape (2,)
    radius : float
        Radius of the generation window.
    """

    points: np.ndarray
    center: np.ndarray = field(default_factory=lambda: np.zeros(2))
    radius: float = np.inf

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 2)
        self.center = np.asarray(self.center, dtype=float)

    def __len__(self):
        return self.points.shape[0]

    def inside_window(self, slack=1e-9):
        d = np.hypot(*(self.points - self.center).T)
        return bool(np.all(d <= self.radius * (1 + slack)))


def _check_mu(mu):
    if not mu >= 0.5:
        raise DomainError(f"Nakagami shape must be >= 0.5, got {mu}")


def sample_fading_power(mu, size=None, rng=None, omega=1.0):
    """Power of Nakagami-``mu`` fading, i.e. gamma(``mu``, ``omega/mu``)."""
    _check_mu(mu)
    rng = np.random.default_rng() if rng is None else rng
    return rng.gamma(mu, omega / mu, size=size)


def sample_nakagami(mu, size=None, rng=None, omega=1.0):
    """Nakagami-``mu`` amplitude with ``E[g^2] = omega``.

    Drawn as the square root of a gamma variate; numpy's gamma sampler is
    the Marsaglia-Tsang method.

    Examples
    --------
    >>> g = sample_nakagami(1.0, size=5, rng=make_rng(1))
    >>> g.shape
    (5,)
    """
    return np.sqrt(sample_fading_power(mu, size, rng, omega))


def sample_ppp_disk(lam, radius, center=(0.0, 0.0), rng=None):
    """Homogeneous PPP of intensity ``lam`` on a disk."""
    if not lam > 0:
        raise DomainError("lam must be positive")
    if radius < 0:
        raise DomainError("radius must be nonnegative")
    rng = np.random.default_rng() if rng is None else rng
    center = np.asarray(center, dtype=float)
    if radius == 0:
        return PointSet2D(np.empty((0, 2)), center, 0.0)
    n = rng.poisson(lam * np.pi * radius * radius)
    r = radius * np.sqrt(rng.random(n))
    a = 2.0 * np.pi * rng.random(n)
    pts = np.column_stack((r * np.cos(a), r * np.sin(a))) + center
    return PointSet2D(pts, center, float(radius))


def _open_uniform(rng, size):
    # uniform on (0, 1]; keeps -log(u) finite
    return 1.0 - rng.random(size)


def sample_R0(lam, q, size=None, rng=None):
    """Serving distance with density ``2 pi q lam x exp(-pi q lam x^2)``."""
    if not (lam > 0 and q > 0):
        raise DomainError("lam and q must be positive")
    rng = np.random.default_rng() if rng is None else rng
    u = _open_uniform(rng, size)
    return np.sqrt(-np.log(u) / (np.pi * q * lam))


def sample_Rd_given_R0(R0, lam, q, rng=None):
    """Distance of the dominant interferer given the serving distance.

    ``R_d = sqrt(R0^2 - log(U) / (pi lam q))``, one draw per entry of ``R0``.
    """
    R0 = np.asarray(R0, dtype=float)
    if np.any(R0 < 0):
        raise DomainError("R0 must be nonnegative")
    rng = np.random.default_rng() if rng is None else rng
    u = _open_uniform(rng, R0.shape)
    out = np.sqrt(R0 * R0 - np.log(u) / (np.pi * lam * q))
    return out if out.ndim else float(out)


def cdf_R0(x, lam, q):
    x = np.maximum(np.asarray(x, dtype=float), 0.0)
    return -np.expm1(-np.pi * q * lam * x * x)


def cdf_Rd_given_R0(r, R0, lam, q):
    r = np.asarray(r, dtype=float)
    gap = np.maximum(r * r - R0 * R0, 0.0)
    return -np.expm1(-np.pi * q * lam * gap)
