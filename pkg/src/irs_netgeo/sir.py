"""Analytic SIR coverage, throughput and diversity.

Two routes give ``P(SIR > theta)``:

* the exponential route approximates ``G`` by a unit-mean exponential
  and averages the interference Laplace transform conditioned on the
  dominant interferer over ``(R0, phi, R_d)`` by quasi-Monte Carlo;
* the Erlang route approximates ``G`` by a unit-mean Erlang(``M``) law,
  which turns the coverage into the l1 norm of the inverse of a lower
  triangular Toeplitz matrix built from the Laplace transform
  conditioned on ``R0``.
"""

import functools
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from scipy import integrate, special
from scipy.stats import qmc

from .channel import (FadingSpec, approx_spec, classify_regime, mean_tilde_g, mu_fad,
                      round_half_away)
from .errors import DomainError, NonConvergence, SingularMatrix
from .geometry import (FixedDelta, IrsConfig, ModelI, ModelII, model1_delta_quantile,
                       model1_R1, model2_delta, r0_tail_limit)
from .interference import InterferenceLT
from .params import NetworkParams
from .specfun import hyp2f1_negarg

__all__ = [
    "ROUTES",
    "SirQuery",
    "ToeplitzSystem",
    "SirCurve",
    "DiversityBound",
    "mu_tilde_g_bar",
    "model1_delta_moments",
    "representative_delta",
    "query_approx_spec",
    "ck_coeff",
    "toeplitz_ccdf",
    "ccdf_erlang_toeplitz",
    "ccdf_exp_route",
    "ccdf_no_irs",
    "ccdf",
    "throughput",
    "diversity_bound",
    "db_to_linear",
    "linear_to_db",
]

ROUTES = ("exp", "erlang", "noirs")


def db_to_linear(theta_db):
    return 10.0 ** (np.asarray(theta_db, dtype=float) / 10.0)


def linear_to_db(theta):
    return 10.0 * np.log10(np.asarray(theta, dtype=float))


@dataclass(frozen=True)
class SirQuery:
    """Everything an analytic route needs besides the threshold grid.

    Attributes
    ----------
    theta : float or ndarray
        Linear SIR threshold(s), all positive.
    params : NetworkParams
    irs : IrsConfig
    fading : FadingSpec
    route : {"exp", "erlang", "noirs"}
    chi : {"s", "m", "l"}, optional
        Force the regime of the Erlang approximation.  By default it is
        classified from ``N`` and :func:`representative_delta`.
    refined : bool
        Use the ``N Delta`` dependent Erlang shape in regime ``m``.
    """

    theta: object
    params: NetworkParams = NetworkParams()
    irs: IrsConfig = IrsConfig()
    fading: FadingSpec = FadingSpec()
    route: str = "erlang"
    chi: Optional[str] = None
    refined: bool = False

    def __post_init__(self):
        th = np.asarray(self.theta, dtype=float)
        if th.size == 0 or np.any(~(th > 0)):
            raise DomainError("theta must be positive")
        if self.route not in ROUTES:
            raise DomainError(f"route must be one of {ROUTES}")


# ---------------------------------------------------------------------------
# signal amplification averaged over the geometry


@functools.lru_cache(maxsize=64)
def model1_delta_moments(lam, q, eta, l0, r2, r1_min, rel_tol=1e-9):
    """``(E[sqrt(Delta)], E[Delta])`` for random-direction placement.

    ``R1`` is floored at ``r1_min`` inside the expectation.  Without the
    floor ``E[Delta]`` diverges for ``eta >= 2`` through the IRS sitting
    on top of the BS, where the path-loss law is invalid anyway.
    """
    a = math.pi * lam * q
    y_max = r0_tail_limit(lam, q)

    def inner(R0, p):
        # (1/pi) int_0^pi (R0 l0 / (r2 max(R1, r1_min)))^p dphi
        def f(phi):
            R1 = max(model1_R1(R0, r2, phi), r1_min)
            return (R0 * l0 / (R1 * r2)) ** p

        pts = []
        c = (R0 * R0 + r2 * r2 - r1_min * r1_min) / (2.0 * R0 * r2)
        if -1.0 < c < 1.0:
            pts.append(math.acos(c))
        val, _ = integrate.quad(f, 0.0, math.pi, points=pts or None,
                                epsabs=0.0, epsrel=rel_tol, limit=200)
        return val / math.pi

    out = []
    for p in (eta / 2.0, eta):
        def outer(R0):
            return 2.0 * a * R0 * math.exp(-a * R0 * R0) * inner(R0, p)

        pts = [v for v in (r2 - r1_min, r2, r2 + r1_min) if 0 < v < y_max]
        val, err = integrate.quad(outer, 0.0, y_max, points=pts, epsabs=0.0,
                                  epsrel=rel_tol, limit=400)
        if err > 1e3 * rel_tol * abs(val):
            raise NonConvergence(f"Delta moment quadrature error {err:.2e}")
        out.append(val)
    return tuple(out)


def mu_tilde_g_bar(params=NetworkParams(), irs=IrsConfig(), fading=FadingSpec(), r1_min=None):
    """Geometry average of the signal amplification, ``E_Delta[E[G~ | Delta]]``.

    Exact for deterministic ``Delta`` (equidistant or fixed placement);
    for random-direction placement it uses :func:`model1_delta_moments`,
    exploiting that ``E[G~ | Delta]`` is linear in ``sqrt(Delta)`` and
    ``Delta``.  ``r1_min`` defaults to ``l0``.
    """
    N = irs.n_elements
    p = irs.placement
    if not irs.active:
        return 1.0
    if isinstance(p, FixedDelta):
        return mean_tilde_g(N, p.delta, fading.mu)
    if isinstance(p, ModelII):
        return mean_tilde_g(N, model2_delta(params.lam, params.q, params.l0, params.eta), fading.mu)
    if isinstance(p, ModelI):
        r1_min = params.l0 if r1_min is None else r1_min
        e_sqrt, e_lin = model1_delta_moments(params.lam, params.q, params.eta, params.l0,
                                             p.r2, r1_min)
        m = mu_tilde_g_bar_coeffs(fading.mu)
        return 1.0 + N * (m[0] * e_sqrt + m[1] * e_lin) + N * N * m[2] * e_lin
    raise DomainError(f"unknown placement {p!r}")


def mu_tilde_g_bar_coeffs(mu):
    """Coefficients of ``N sqrt(Delta)``, ``N Delta`` and ``N^2 Delta`` in ``E[G~|Delta]``."""
    m = mu_fad(mu)
    return (2.0 * m**3, 1.0 - m**4, m**4)


@functools.lru_cache(maxsize=64)
def _model1_median_delta(lam, q, eta, l0, r2):
    return model1_delta_quantile(0.5, lam, q, r2, l0, eta)


def representative_delta(params, irs):
    """Triangle parameter used to classify the regime of a configuration.

    The deterministic value for fixed and equidistant placements, the
    median of the distribution for random-direction placement and 0
    without IRS.
    """
    p = irs.placement
    if not irs.active:
        return 0.0
    if isinstance(p, FixedDelta):
        return p.delta
    if isinstance(p, ModelII):
        return model2_delta(params.lam, params.q, params.l0, params.eta)
    if isinstance(p, ModelI):
        return _model1_median_delta(params.lam, params.q, params.eta, params.l0, p.r2)
    raise DomainError(f"unknown placement {p!r}")


def query_approx_spec(query):
    """Erlang approximation implied by a query (regime forced or classified)."""
    N = query.irs.n_elements
    if not query.irs.active:
        return approx_spec("s", max(N, 1), query.fading)
    d = representative_delta(query.params, query.irs)
    chi = query.chi or classify_regime(N, d)
    return approx_spec(chi, N, query.fading, refined=query.refined, n_delta=N * d)


# ---------------------------------------------------------------------------
# Erlang / Toeplitz route


def ck_coeff(k, theta, M, mu_gbar, delta_pl):
    """Entry ``c_k`` of the Toeplitz matrix.

    ``c_k = x^k (-delta)_k / (1-delta)_k * 2F1(k+1, k-delta; k-delta+1; -x)``
    with ``x = theta M / mu_gbar``.  For ``k >= 1`` the product collapses
    to ``-delta x^delta B(k-delta, 1+delta) I_w(k-delta, 1+delta)`` with
    ``w = x / (1 + x)``, which avoids the overflow of ``x^k`` and the
    underflow of the hypergeometric factor at large ``k``.
    """
    if k < 0 or int(k) != k:
        raise DomainError("k must be a nonnegative integer")
    if not theta >= 0:
        raise DomainError("theta must be nonnegative")
    if not 0 < delta_pl < 1:
        raise DomainError("delta_pl must lie in (0, 1)")
    d = delta_pl
    x = theta * M / mu_gbar
    if k == 0:
        return hyp2f1_negarg(1.0, -d, 1.0 - d, x)
    if x == 0:
        return 0.0
    b, c = k - d, 1.0 + d
    if x <= 1.0:
        ib = special.betainc(b, c, x / (1.0 + x))
    else:
        ib = special.betaincc(c, b, 1.0 / (1.0 + x))
    if ib == 0.0:
        return -0.0
    return -math.exp(math.log(d) + d * math.log(x) + special.betaln(b, c) + math.log(ib))


@dataclass(frozen=True)
class ToeplitzSystem:
    """Lower-triangular Toeplitz matrix defined by its first column ``c``."""

    c: tuple

    def __post_init__(self):
        c = tuple(float(v) for v in self.c)
        if not c:
            raise DomainError("need at least one coefficient")
        if c[0] == 0.0 or not math.isfinite(c[0]):
            raise SingularMatrix("leading coefficient is zero; matrix is singular")
        object.__setattr__(self, "c", c)

    @property
    def M(self):
        return len(self.c)

    def matrix(self):
        M = self.M
        i, j = np.indices((M, M))
        col = np.asarray(self.c)
        return np.where(i >= j, col[np.clip(i - j, 0, M - 1)], 0.0)

    def inverse_first_column(self):
        """First column of the inverse by forward substitution, O(M^2).

        The inverse of a lower-triangular Toeplitz matrix is again
        lower-triangular Toeplitz, so its first column defines it.
        """
        c = np.asarray(self.c)
        b = np.empty(self.M)
        b[0] = 1.0 / c[0]
        for n in range(1, self.M):
            b[n] = -np.dot(c[1:n + 1], b[n - 1::-1][:n]) / c[0]
        return b

    def inverse(self):
        return ToeplitzSystem(tuple(self.inverse_first_column())).matrix()

    def l1_norm_inverse(self):
        """Induced l1 norm (largest absolute column sum) of the inverse.

        Column ``j`` of the inverse holds ``b_0 .. b_{M-1-j}``, so the
        first column has the largest absolute sum.
        """
        return float(np.abs(self.inverse_first_column()).sum())


def toeplitz_ccdf(theta, M, mu_gbar=1.0, delta_pl=0.5):
    """Coverage under an Erlang(``M``) channel approximation.

    Vectorised over ``theta``.  ``theta = 0`` gives exactly 1.
    """
    if M < 1 or int(M) != M:
        raise DomainError("M must be a positive integer")
    th = np.asarray(theta, dtype=float)
    if np.any(th < 0) or np.any(np.isnan(th)):
        raise DomainError("theta must be nonnegative")

    def one(t):
        if t == 0.0:
            return 1.0
        system = ToeplitzSystem(tuple(ck_coeff(k, t, M, mu_gbar, delta_pl) for k in range(int(M))))
        return min(1.0, max(0.0, system.l1_norm_inverse()))

    out = np.vectorize(one, otypes=[float])(th)
    return out if out.ndim else float(out)


def ccdf_erlang_toeplitz(query, r1_min=None):
    """Erlang-route coverage for a query (``M`` and ``mu_G`` from the configuration)."""
    spec = query_approx_spec(query)
    mug = mu_tilde_g_bar(query.params, query.irs, query.fading, r1_min)
    return toeplitz_ccdf(query.theta, spec.M if spec.kind == "erlang" else 1,
                         mug, query.params.delta_pl)


def ccdf_no_irs(theta, params=NetworkParams(), fading=FadingSpec()):
    """Coverage without IRS: Erlang(``round(mu)``) with unit amplification.

    For Rayleigh fading at ``eta = 4`` this equals
    ``1 / (1 + sqrt(theta) atan(sqrt(theta)))``.
    """
    M = max(1, round_half_away(fading.mu))
    return toeplitz_ccdf(theta, M, 1.0, params.delta_pl)


# ---------------------------------------------------------------------------
# exponential route


def _qmc_geometry(params, irs, n_points, seed):
    # scrambled Sobol points mapped to (R0, phi, R_d) by inverse CDFs
    u = qmc.Sobol(d=3, scramble=True, seed=seed).random(n_points)
    a = math.pi * params.q * params.lam
    R0 = np.sqrt(-np.log1p(-u[:, 0]) / a)
    phi = 2.0 * math.pi * u[:, 1]
    Rd = np.sqrt(R0 * R0 - np.log1p(-u[:, 2]) / a)
    p = irs.placement
    if not irs.active:
        delta = np.zeros_like(R0)
    elif isinstance(p, ModelI):
        R1 = model1_R1(R0, p.r2, phi)
        with np.errstate(divide="ignore"):
            delta = (R0 * params.l0 / (R1 * p.r2)) ** params.eta
    elif isinstance(p, FixedDelta):
        delta = np.full_like(R0, p.delta)
    else:
        delta = np.full_like(R0, model2_delta(params.lam, params.q, params.l0, params.eta))
    return R0, Rd, delta


def ccdf_exp_route(query, n_points=2**16, seed=12345):
    """Exponential-route coverage by scrambled Sobol integration.

    ``E[L_{I|R_d}(theta R0^eta l0^-eta / E[G~|Delta])]`` over the serving
    distance, the IRS angle and the dominant-interferer distance.  The
    geometry cloud is shared by all thresholds, so the curve is smooth
    in ``theta``.
    """
    if n_points < 1 or n_points & (n_points - 1):
        raise DomainError("n_points must be a power of two")
    params, irs = query.params, query.irs
    R0, Rd, delta = _qmc_geometry(params, irs, n_points, seed)
    n_el = irs.n_elements if irs.active else 0
    with np.errstate(over="ignore"):
        gain = mean_tilde_g(n_el, delta, query.fading.mu)
    lt = InterferenceLT.from_params(params)
    # s must carry l0^-eta so that s l0^eta = theta R0^eta / gain
    base = (R0 / params.l0) ** params.eta / gain
    th = np.atleast_1d(np.asarray(query.theta, dtype=float))
    out = np.array([lt.lt_given_Rd(t * base, Rd).mean() for t in th])
    if not np.all(np.isfinite(out)):
        raise NonConvergence("exponential-route average is not finite")
    return out if np.ndim(query.theta) else float(out[0])


def ccdf(query, **kwargs):
    """Dispatch on ``query.route``."""
    if query.route == "exp":
        return ccdf_exp_route(query, **kwargs)
    if query.route == "erlang":
        return ccdf_erlang_toeplitz(query, **kwargs)
    return ccdf_no_irs(query.theta, query.params, query.fading)


# ---------------------------------------------------------------------------
# throughput and diversity


def throughput(theta, ccdf_value, base=math.e):
    """Rate ``P(SIR > theta) * log(1 + theta)``; natural log by default."""
    theta = np.asarray(theta, dtype=float)
    c = np.asarray(ccdf_value, dtype=float)
    if np.any(theta < 0):
        raise DomainError("theta must be nonnegative")
    if np.any((c < 0) | (c > 1)):
        raise DomainError("ccdf values must lie in [0, 1]")
    out = c * np.log1p(theta) / math.log(base)
    return out if out.ndim else float(out)


class DiversityBound(NamedTuple):
    value: float
    orientation: str


def diversity_bound(spec, fading=FadingSpec()):
    """Diversity order implied by an approximation and whether it bounds from below or above.

    Exponential: 1, a lower bound.  Erlang(``M``) under Rayleigh fading
    bounds from below in regimes ``s`` and ``m`` and from above in
    ``l``; under Nakagami fading it bounds from above in every regime.
    """
    if spec.kind == "exponential":
        return DiversityBound(1.0, "lower")
    if spec.kind != "erlang":
        return DiversityBound(spec.shape, "heuristic")
    if fading.zeta == "Rayl":
        return DiversityBound(float(spec.M), "upper" if spec.chi == "l" else "lower")
    return DiversityBound(float(spec.M), "upper")


@dataclass
class SirCurve:
    """Coverage samples ``(theta, P(SIR > theta))`` with provenance."""

    theta: np.ndarray
    ccdf: np.ndarray
    source: str
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.theta = np.asarray(self.theta, dtype=float)
        self.ccdf = np.asarray(self.ccdf, dtype=float)
        if self.theta.shape != self.ccdf.shape:
            raise DomainError("theta and ccdf must have equal length")

    @property
    def theta_db(self):
        return linear_to_db(self.theta)

    def throughput(self, base=math.e):
        return throughput(self.theta, self.ccdf, base)

    def optimum(self, base=math.e):
        """Grid point with the largest throughput, as ``(theta, rate)``."""
        t = self.throughput(base)
        i = int(np.argmax(t))
        return float(self.theta[i]), float(t[i])
