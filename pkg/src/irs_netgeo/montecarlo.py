"""Monte Carlo ground truth for the SIR of an IRS-assisted downlink.

Two network simulators are provided.

``VoronoiExact``
    Draws a PPP of base stations in a large disk, adds the serving BS at
    the origin and places the UE uniformly in the origin's Voronoi cell.
    Every other BS interferes.

``DistanceModel``
    Draws the serving distance from its typical-cell law, the dominant
    interferer distance given it, and a PPP of further interferers
    beyond the dominant one.  Much cheaper, used for deep-tail runs.

Both add the mean interference of the region they do not simulate, so
truncation only leaves a zero-mean residual whose standard deviation is
kept below ``tol`` times the mean interference.
"""

import enum
import functools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import stats

from .channel import FadingSpec, mean_tilde_g, sample_g, sample_tilde_g
from .errors import (DomainError, InsufficientTailMass, RejectionBudgetExceeded,
                     WindowTooSmall)
from .geometry import IrsConfig, ModelI, ModelII, placement_delta
from .params import NetworkParams
from .sampling import (PointSet2D, RngStreamSpec, sample_ppp_disk, sample_R0,
                       sample_Rd_given_R0)
from .sir import SirCurve

__all__ = [
    "SimMode",
    "SimResult",
    "simulate_sir",
    "voronoi_typical_ue",
    "empirical_ccdf",
    "EmpiricalDistribution",
    "diversity_slope",
    "DiversityEstimate",
    "estimate_diversity",
    "g_variance",
    "batch_standard_error",
    "sample_interference_given_Rd",
]


class SimMode(str, enum.Enum):
    VORONOI_EXACT = "voronoi"
    DISTANCE_MODEL = "distance"


@dataclass
class SimResult:
    """Simulated SIR samples.

    Attributes
    ----------
    sir : ndarray
        Linear SIR, one entry per network realization.
    g : ndarray, optional
        Matching unit-mean channel power ``G``, if requested.
    meta : dict
        Seed, sample count, mode, truncation diagnostics and the number
        of rejected (infeasible) geometries.
    """

    sir: np.ndarray
    g: Optional[np.ndarray] = None
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.sir)

    def ccdf(self, theta):
        return empirical_ccdf(self.sir, theta, provenance=self.meta)


# ---------------------------------------------------------------------------
# typical-cell UE

_N_SECTORS = 16


def _cell_bounding_radius(others, cap):
    # Split the plane into 16 sectors of width pi/8 and take the nearest BS
    # x_s of each.  A point z in sector s makes an angle of at most pi/8
    # with x_s, so z can only be in the origin's cell if
    # |z| cos(pi/8) <= |x_s| / 2.
    d = np.hypot(others[:, 0], others[:, 1])
    ang = np.arctan2(others[:, 1], others[:, 0])
    sec = ((ang + math.pi) / (2 * math.pi) * _N_SECTORS).astype(int) % _N_SECTORS
    nearest = np.full(_N_SECTORS, np.inf)
    np.minimum.at(nearest, sec, d)
    rb = nearest.max() / (2.0 * math.cos(2.0 * math.pi / _N_SECTORS))
    return min(rb, cap)


def voronoi_typical_ue(bs_points: PointSet2D, rng, max_candidates=100_000, batch=32):
    """Uniform point in the Voronoi cell of the BS at the origin.

    Candidates are drawn uniformly in a disk that provably contains the
    cell and accepted if no other BS is closer than the origin.

    Parameters
    ----------
    bs_points : PointSet2D
        Base stations, one of which sits at the origin.  The window radius
        caps the bounding disk when some direction has no other BS.
    rng : numpy.random.Generator
    max_candidates : int
        Rejection budget.

    Returns
    -------
    ndarray, shape (2,)

    Raises
    ------
    RejectionBudgetExceeded
    """
    pts = bs_points.points
    at_origin = np.hypot(pts[:, 0], pts[:, 1]) == 0.0
    if not at_origin.any():
        raise DomainError("no BS at the origin")
    others = pts[~at_origin]
    cap = bs_points.radius
    if len(others) == 0:
        rb = cap
    else:
        rb = _cell_bounding_radius(others, cap)
    if not math.isfinite(rb):
        raise DomainError("cell is unbounded; give the point set a finite window radius")
    near = others[np.hypot(others[:, 0], others[:, 1]) <= 2.0 * rb]
    half_sq = 0.5 * np.einsum("ij,ij->i", near, near)
    tried = 0
    while tried < max_candidates:
        r = rb * np.sqrt(rng.random(batch))
        a = 2.0 * math.pi * rng.random(batch)
        z = np.column_stack((r * np.cos(a), r * np.sin(a)))
        # z is nearer the origin than x iff z.x <= |x|^2 / 2
        ok = np.all(z @ near.T <= half_sq, axis=1)
        if ok.any():
            return z[np.argmax(ok)]
        tried += batch
    raise RejectionBudgetExceeded(f"no point accepted after {tried} candidates")


# ---------------------------------------------------------------------------
# geometry chunks (serving distance and interference)


def _tail_mean(lam, eta, r):
    # mean interference of a unit-fading PPP beyond radius r
    return 2.0 * math.pi * lam * r ** (2.0 - eta) / (eta - 2.0)


def _tail_std(lam, eta, r):
    # standard deviation of the same, with exponential fading (E[h^2] = 2)
    return np.sqrt(4.0 * math.pi * lam * r ** (2.0 - 2.0 * eta) / (2.0 * eta - 2.0))


def _voronoi_chunk(params, size, rng, r0_cap, window_factor, tol):
    lam, eta = params.lam, params.eta
    W = window_factor / math.sqrt(lam)
    tail = _tail_mean(lam, eta, W)
    R0 = np.empty(size)
    I = np.empty(size)
    rejected = 0
    i = 0
    while i < size:
        bs = sample_ppp_disk(lam, W, rng=rng)
        cell = PointSet2D(np.vstack(([0.0, 0.0], bs.points)), radius=W)
        u = voronoi_typical_ue(cell, rng)
        r0 = math.hypot(u[0], u[1])
        d2 = np.einsum("ij,ij->i", bs.points - u, bs.points - u)
        h = rng.exponential(size=len(d2))
        if r0 >= r0_cap or r0 == 0.0:
            rejected += 1
            continue
        R0[i] = r0
        I[i] = np.dot(d2 ** (-0.5 * eta), h) + tail
        i += 1
    resid = float(_tail_std(lam, eta, W - R0.max()) / I.mean())
    if resid > tol:
        raise WindowTooSmall(f"window residual {resid:.2e} of the mean interference exceeds {tol}")
    return R0, I, rejected, {"window_radius": W, "tail_mean": tail, "residual_rel": resid}


def _distance_chunk(params, size, rng, r0_cap, tol):
    lam, eta, q = params.lam, params.eta, params.q
    R0 = sample_R0(lam, q, size, rng)
    rejected = 0
    bad = R0 >= r0_cap
    while bad.any():
        rejected += int(bad.sum())
        R0[bad] = sample_R0(lam, q, int(bad.sum()), rng)
        bad = R0 >= r0_cap
    Rd = sample_Rd_given_R0(R0, lam, q, rng)
    I, diag = sample_interference_given_Rd(Rd, params, rng, tol)
    return R0, I, rejected, diag


def sample_interference_given_Rd(Rd, params=NetworkParams(), rng=None, tol=1e-4):
    """Interference of a PPP beyond ``R_d`` plus one interferer at ``R_d``.

    Unit-mean exponential fading, path gain ``r**-eta`` (the common
    ``l0**eta`` factor is left out).  Interferers are simulated out to a
    per-sample radius at which the standard deviation of the remainder
    is ``tol`` times ``E[I | R_d]``; the mean of the remainder is added.

    Returns
    -------
    I : ndarray
    diag : dict
        Median truncation radius and the largest relative residual.
    """
    lam, eta = params.lam, params.eta
    rng = np.random.default_rng() if rng is None else rng
    Rd = np.atleast_1d(np.asarray(Rd, dtype=float))
    size = Rd.size
    mean_I = _tail_mean(lam, eta, Rd) + Rd ** (-eta)
    # smallest radius whose residual std is tol * E[I | R_d]
    c = math.sqrt(4.0 * math.pi * lam / (2.0 * eta - 2.0))
    rmax = np.maximum((c / (tol * mean_I)) ** (1.0 / (eta - 1.0)), 2.0 * Rd)
    cnt = rng.poisson(lam * math.pi * (rmax * rmax - Rd * Rd))
    owner = np.repeat(np.arange(size), cnt)
    rsq = Rd[owner] ** 2 + rng.random(owner.size) * (rmax[owner] ** 2 - Rd[owner] ** 2)
    far = np.bincount(owner, weights=rsq ** (-0.5 * eta) * rng.exponential(size=owner.size),
                      minlength=size)
    I = far + Rd ** (-eta) * rng.exponential(size=size) + _tail_mean(lam, eta, rmax)
    diag = {"rmax_median": float(np.median(rmax)),
            "residual_rel": float(np.max(_tail_std(lam, eta, rmax) / mean_I))}
    return I, diag


@functools.lru_cache(maxsize=256)
def _geometry_chunk(mode, params, seed, chunk, size, r0_cap, window_factor, tol):
    rng = RngStreamSpec(seed, (chunk, 0)).generator()
    if mode == SimMode.VORONOI_EXACT:
        out = _voronoi_chunk(params, size, rng, r0_cap, window_factor, tol)
    else:
        out = _distance_chunk(params, size, rng, r0_cap, tol)
    for arr in out[:2]:
        arr.setflags(write=False)
    return out


def _r0_cap(params, irs):
    # equidistant placement cannot close the triangle beyond 3 E[R0]
    if irs.active and isinstance(irs.placement, ModelII):
        return 3.0 * params.mean_R0
    return math.inf


def _run_chunk(args):
    (mode, params, irs, fading, seed, chunk, size, keep_g, window_factor, tol) = args
    R0, I, rejected, diag = _geometry_chunk(mode, params, seed, chunk, size,
                                            _r0_cap(params, irs), window_factor, tol)
    rng = RngStreamSpec(seed, (chunk, 1)).generator()
    phi = 2.0 * math.pi * rng.random(size)
    n_el = irs.n_elements if irs.active else 0
    delta = placement_delta(irs.placement, R0, params, phi) if n_el else np.zeros(size)
    gt = sample_tilde_g(n_el, delta, fading, rng)
    # l0^eta multiplies signal and interference alike and cancels
    sir = gt * R0 ** (-params.eta) / I
    g = gt / mean_tilde_g(n_el, delta, fading.mu) if keep_g else None
    return sir, g, rejected, diag


def simulate_sir(params=NetworkParams(), irs=IrsConfig(), fading=FadingSpec(), n=100_000,
                 mode=SimMode.VORONOI_EXACT, seed=0, workers=1, chunk_size=10_000,
                 keep_g=False, window_factor=15.0, tol=1e-4):
    """Simulate ``n`` independent network snapshots and return their SIR.

    Realizations are generated in chunks of ``chunk_size``; chunk ``c``
    draws its geometry from stream ``(seed, c, 0)`` and its fading from
    ``(seed, c, 1)``.  Results therefore depend on ``seed`` and
    ``chunk_size`` but not on ``workers``, and configurations that differ
    only in the IRS share their network geometry.

    Parameters
    ----------
    params : NetworkParams
    irs : IrsConfig
    fading : FadingSpec
        Fading of the direct and cascaded links.  Interferers always see
        Rayleigh fading.
    n : int
    mode : SimMode or str
    seed : int
    workers : int
        Processes used for the chunks.
    chunk_size : int
    keep_g : bool
        Also return the unit-mean channel power of each sample.
    window_factor : float
        Voronoi window radius in units of ``1/sqrt(lam)``.
    tol : float
        Bound on the truncation residual relative to the mean interference.

    Returns
    -------
    SimResult

    Raises
    ------
    WindowTooSmall
        If the Voronoi window leaves too large a residual.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    mode = SimMode(mode)
    n_chunks = -(-int(n) // chunk_size)
    jobs = [(mode, params, irs, fading, seed, c, min(chunk_size, n - c * chunk_size), keep_g,
             window_factor, tol) for c in range(n_chunks)]
    if workers > 1 and n_chunks > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(j) for j in jobs]
    sir = np.concatenate([p[0] for p in parts])
    g = np.concatenate([p[1] for p in parts]) if keep_g else None
    meta = {
        "seed": seed,
        "n": int(n),
        "mode": mode.value,
        "chunk_size": chunk_size,
        "rejected_geometries": int(sum(p[2] for p in parts)),
        "truncation": {k: max(p[3][k] for p in parts) for k in parts[0][3]},
    }
    return SimResult(sir, g, meta)


# ---------------------------------------------------------------------------
# estimators


def empirical_ccdf(samples, theta, source="mc", provenance=None):
    """Fraction of samples strictly above each threshold."""
    s = np.sort(np.asarray(samples, dtype=float))
    if s.size == 0:
        raise DomainError("need at least one sample")
    theta = np.asarray(theta, dtype=float)
    above = s.size - np.searchsorted(s, theta, side="right")
    return SirCurve(theta, above / s.size, source, dict(provenance or {}, n=int(s.size)))


def batch_standard_error(samples, theta, n_batches=20):
    """Batch-means standard error of the empirical CCDF at each threshold."""
    s = np.asarray(samples, dtype=float)
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    m = len(s) // n_batches
    if m < 1:
        raise DomainError("fewer samples than batches")
    est = (s[: m * n_batches].reshape(n_batches, m)[:, :, None] > theta).mean(axis=1)
    return est.std(axis=0, ddof=1) / math.sqrt(n_batches)


class EmpiricalDistribution:
    """Sorted sample set with CDF evaluation and distance to a reference law."""

    def __init__(self, samples):
        s = np.sort(np.asarray(samples, dtype=float).ravel())
        if s.size == 0:
            raise DomainError("need at least one sample")
        self.samples = s

    def __len__(self):
        return self.samples.size

    def cdf(self, x):
        out = np.searchsorted(self.samples, x, side="right") / self.samples.size
        return out if np.ndim(out) else float(out)

    def quantile(self, p):
        return np.quantile(self.samples, p)

    @property
    def mean(self):
        return float(self.samples.mean())

    @property
    def var(self):
        return float(self.samples.var(ddof=1))

    def ks_distance(self, cdf):
        """Kolmogorov-Smirnov distance to a callable CDF or another sample set."""
        if isinstance(cdf, EmpiricalDistribution):
            return float(stats.ks_2samp(self.samples, cdf.samples).statistic)
        return float(stats.kstest(self.samples, cdf).statistic)

    def ks_bound_on_grid(self, cdf, n_grid=2000):
        """Upper bound on the KS distance to an expensive continuous CDF.

        ``cdf`` is evaluated only at ``n_grid`` empirical quantiles.  Both
        the empirical and the reference CDF are monotone, so between two
        grid points the gap can exceed its endpoint values by at most the
        larger of the two CDF increments.

        Returns
        -------
        bound : float
        at_grid : float
            Largest gap observed at the grid points themselves.
        """
        s = self.samples
        idx = np.unique(np.linspace(0, s.size - 1, n_grid).round().astype(int))
        x = s[idx]
        F = np.asarray(cdf(x), dtype=float)
        Fn_hi = np.searchsorted(s, x, side="right") / s.size
        Fn_lo = np.searchsorted(s, x, side="left") / s.size
        at_grid = float(np.max(np.maximum(np.abs(F - Fn_hi), np.abs(F - Fn_lo))))
        inc = max(float(np.max(np.diff(F), initial=0.0)),
                  float(np.max(np.diff(Fn_hi), initial=0.0)),
                  float(F[0]), float(1.0 - F[-1]))
        return at_grid + inc, at_grid


def diversity_slope(data, lo=10**-2.5, hi=10**-2.0, min_hits=100):
    """Slope of ``log10 P(SIR < theta)`` against ``log10 theta`` between two CDF levels.

    Parameters
    ----------
    data : array_like or SirCurve
        SIR samples, or a coverage curve (interpolated in log-log scale).
    lo, hi : float
        CDF levels delimiting the fit window.
    min_hits : int
        Samples required below ``lo``.

    Raises
    ------
    InsufficientTailMass
        If the samples or the curve do not reach ``lo``.
    """
    if not 0 < lo < hi < 1:
        raise DomainError("need 0 < lo < hi < 1")
    if isinstance(data, SirCurve):
        F = 1.0 - data.ccdf
        order = np.argsort(data.theta)
        lt, lf = np.log10(data.theta[order]), F[order]
        if lf.min() > lo or lf.max() < hi:
            raise InsufficientTailMass("curve does not span the fit window",
                                       achieved_depth=float(lf.min()))
        with np.errstate(divide="ignore"):
            lF = np.log10(lf)
        keep = np.isfinite(lF)
        t_lo, t_hi = np.interp(np.log10([lo, hi]), lF[keep], lt[keep])
    else:
        s = np.asarray(data, dtype=float)
        depth = min_hits / s.size
        if depth > lo:
            raise InsufficientTailMass(
                f"{s.size} samples resolve the CDF only down to {depth:.3g}", achieved_depth=depth)
        t_lo, t_hi = np.log10(np.quantile(s, [lo, hi]))
    return float(math.log10(hi / lo) / (t_hi - t_lo))


@dataclass(frozen=True)
class DiversityEstimate:
    slope: float
    n: int
    achieved_depth: float


def estimate_diversity(params=NetworkParams(), irs=IrsConfig(), fading=FadingSpec(), seed=0,
                       schedule=(100_000, 1_000_000, 10_000_000), min_hits=1000,
                       lo=10**-2.5, hi=10**-2.0, workers=1, mode=SimMode.DISTANCE_MODEL):
    """Diversity slope with sample escalation.

    Runs the cheapest sample size in ``schedule`` that places at least
    ``min_hits`` samples below the CDF level ``lo``.
    """
    for n in schedule:
        if n * lo >= min_hits:
            res = simulate_sir(params, irs, fading, int(n), mode, seed, workers)
            slope = diversity_slope(res.sir, lo, hi, min_hits)
            return DiversityEstimate(slope, int(n), min_hits / n)
    raise InsufficientTailMass(f"largest run ({schedule[-1]:.0e}) misses {min_hits} hits",
                               achieved_depth=min_hits / schedule[-1])


def g_variance(N, delta, fading=FadingSpec(), n=100_000, seed=0):
    """Sample variance of the unit-mean channel power ``G``."""
    g = sample_g(N, delta, fading, RngStreamSpec(seed, (0,)).generator(), size=n)
    return float(g.var(ddof=1))
