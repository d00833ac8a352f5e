"""Special functions used by the analytic SIR formulas.

Only the parameter families that occur in the interference Laplace
transforms are supported for the Gauss hypergeometric function, namely
``2F1(a, b; b + 1; -x)`` with ``x >= 0`` and ``b > -1``.  For that family
the Euler integral reduces to a one-dimensional integral over ``[0, 1]``
that converges for every ``x >= 0``.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import DomainError, NonConvergence

__all__ = [
    "EvalTolerance",
    "pochhammer",
    "hyp2f1_negarg",
    "hyp2f1_negarg_vec",
    "reg_lower_inc_gamma",
    "log_gamma",
]


@dataclass(frozen=True)
class EvalTolerance:
    """Accuracy budget for iterative evaluations."""

    rel_tol: float = 1e-12
    max_terms: int = 10_000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


DEFAULT_TOL = EvalTolerance()


def pochhammer(a, n):
    """Rising factorial ``(a)_n = a (a+1) ... (a+n-1)``; ``(a)_0 = 1``."""
    n = int(n)
    if n < 0:
        raise DomainError("pochhammer needs n >= 0")
    out = 1.0
    for i in range(n):
        out *= a + i
    return out


def log_gamma(x):
    return math.lgamma(x)


def _beta_form(a, b, x, tol, limit=400):
    # With w = x t / (1 + x t) and t = v:
    #   2F1(a, b; b+1; -x) = b (1+x)^-b  int_0^1 v^(b-1) (1 - W v)^(a-b-1) dv,
    # W = x / (1 + x).  QAWS integrates the v^(b-1) endpoint singularity exactly.
    big_w = x / (1.0 + x)
    expo = a - b - 1.0
    if big_w == 1.0:
        # (1 - v)^expo endpoint handled by the weight as well
        val, abserr, info = integrate.quad(
            lambda v: 1.0, 0.0, 1.0, weight="alg", wvar=(b - 1.0, expo),
            epsabs=0.0, epsrel=tol.rel_tol, limit=limit, full_output=True)[:3]
    else:
        one_minus_w = 1.0 / (1.0 + x)

        def f(v):
            return ((1.0 - v) + one_minus_w * v) ** expo

        val, abserr, info = integrate.quad(
            f, 0.0, 1.0, weight="alg", wvar=(b - 1.0, 0.0),
            epsabs=0.0, epsrel=tol.rel_tol, limit=limit, full_output=True)[:3]
    scale = b * math.exp(-b * math.log1p(x))
    return scale * val, scale * abserr


def _tail_form(a, b, x, tol, limit=200):
    # For large x and a > b > 0:
    #   2F1(a, b; b+1; -x) = b x^-b [B(b, a-b) - int_0^(1/x) r^(a-b-1) (1+r)^-a dr].
    # Returns None when the subtraction would cancel badly.
    if not a > b:
        return None
    full = math.exp(special.betaln(b, a - b))
    tail, abserr = integrate.quad(
        lambda r: (1.0 + r) ** (-a), 0.0, 1.0 / x, weight="alg",
        wvar=(a - b - 1.0, 0.0), epsabs=0.0, epsrel=tol.rel_tol, limit=limit)
    if tail > 0.5 * full:
        return None
    scale = b * math.exp(-b * math.log(x))
    return scale * (full - tail), scale * (abserr + 4e-16 * full)


def _positive_b(a, b, x, tol):
    if x > 1e3:
        res = _tail_form(a, b, x, tol)
        if res is not None:
            return res
    return _beta_form(a, b, x, tol)


def hyp2f1_negarg(a, b, c, x, tol=DEFAULT_TOL):
    """Evaluate ``2F1(a, b; c; -x)`` for ``c = b + 1`` and ``x >= 0``.

    Starts from ``2F1(a, b; b+1; -x) = b * int_0^1 t**(b-1) (1 + x t)**(-a) dt``
    and maps ``t`` to the incomplete-beta variable so that the integrand
    stays smooth for large ``x``; the integral is done by adaptive
    quadrature.  For ``-1 < b < 0`` the shift identity
    ``2F1(a, b; b+1; -x) = (1+x)**-a + a x / (b+1) * 2F1(a+1, b+1; b+2; -x)``
    moves the evaluation to a positive second parameter.

    Parameters
    ----------
    a, b, c : float
        Parameters; ``c`` must equal ``b + 1`` and ``b > -1``, ``b != 0``.
    x : float
        Nonnegative magnitude of the (negative) argument.
    tol : EvalTolerance, optional

    Returns
    -------
    float

    Raises
    ------
    DomainError
        Outside the supported family.
    NonConvergence
        If the quadrature error estimate exceeds ``tol.rel_tol``.
    """
    a, b, c, x = float(a), float(b), float(c), float(x)
    if not math.isclose(c, b + 1.0, rel_tol=0.0, abs_tol=1e-12):
        raise DomainError("only the c = b + 1 family is supported")
    if x < 0 or not math.isfinite(x):
        raise DomainError("x must be finite and nonnegative")
    if b <= -1.0 or b == 0.0:
        raise DomainError("b must satisfy b > -1 and b != 0")
    if x == 0.0:
        return 1.0

    if b > 0:
        result, err = _positive_b(a, b, x, tol)
    else:
        inner, err = _positive_b(a + 1.0, b + 1.0, x, tol)
        lead = a * x / (b + 1.0)
        result = math.exp(-a * math.log1p(x)) + lead * inner
        err = lead * err

    if not math.isfinite(result) or err > 10.0 * tol.rel_tol * abs(result):
        raise NonConvergence(
            f"2F1({a}, {b}; {c}; -{x}) quadrature error {err:.3g} exceeds tolerance")
    return result


def hyp2f1_negarg_vec(a, b, x):
    """Vectorised ``2F1(a, b; b+1; -x)`` for ``b > 0`` and ``a > b``.

    Closed form through the regularised incomplete beta function:
    ``b * x**-b * B(b, a-b) * I_{x/(1+x)}(b, a-b)``.  Used on hot paths
    (quasi-Monte Carlo clouds) where one quadrature per point is too slow.
    """
    if not (b > 0 and a > b):
        raise DomainError("vectorised 2F1 requires b > 0 and a > b")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("x must be nonnegative")
    out = np.ones_like(x)
    # Taylor series near 0, where x**-b * I_w(...) loses everything to cancellation
    small = (x > 0) & (x < _SERIES_CUTOFF / (a + 1.0))
    if small.any():
        xs = -x[small]
        term = np.ones_like(xs)
        total = np.ones_like(xs)
        for n in range(60):
            term = term * (a + n) * (b + n) / ((b + 1.0 + n) * (n + 1.0)) * xs
            total += term
            if np.all(np.abs(term) < 1e-17 * np.abs(total)):
                break
        out[small] = total
    big = x >= _SERIES_CUTOFF / (a + 1.0)
    xp = x[big]
    w = xp / (1.0 + xp)
    one_minus_w = 1.0 / (1.0 + xp)
    # complementary form keeps relative accuracy as w -> 1
    ibeta = np.where(w <= 0.5,
                     special.betainc(b, a - b, w),
                     special.betaincc(a - b, b, one_minus_w))
    log_beta = special.betaln(b, a - b)
    out[big] = b * np.exp(log_beta - b * np.log(xp)) * ibeta
    return out if out.ndim else float(out)


_SERIES_CUTOFF = 0.05


def _inc_gamma_series(s, x, tol):
    # P(s, x) = x^s e^-x / Gamma(s+1) * sum_n x^n / ((s+1)...(s+n))
    term = np.ones_like(x)
    total = np.ones_like(x)
    ap = s.copy()
    active = np.ones(x.shape, dtype=bool)
    for _ in range(tol.max_terms):
        ap = ap + 1.0
        term = np.where(active, term * x / ap, 0.0)
        total = total + term
        active = np.abs(term) > tol.rel_tol * np.abs(total) * 0.1
        if not active.any():
            break
    else:
        raise NonConvergence("incomplete gamma series did not converge")
    logpre = s * np.log(x) - x - special.gammaln(s + 1.0)
    return np.exp(logpre) * total


def _inc_gamma_cf(s, x, tol):
    # modified Lentz evaluation of the continued fraction for Q(s, x)
    tiny = 1e-300
    b = x + 1.0 - s
    c = np.full_like(x, 1.0 / tiny)
    d = 1.0 / b
    h = d.copy()
    done = np.zeros(x.shape, dtype=bool)
    for i in range(1, tol.max_terms + 1):
        an = -i * (i - s)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < tiny, tiny, d)
        c = b + an / c
        c = np.where(np.abs(c) < tiny, tiny, c)
        d = 1.0 / d
        delta = d * c
        h = np.where(done, h, h * delta)
        done |= np.abs(delta - 1.0) < tol.rel_tol * 0.1
        if done.all():
            break
    else:
        raise NonConvergence("incomplete gamma continued fraction did not converge")
    logpre = s * np.log(x) - x - special.gammaln(s)
    return np.exp(logpre) * h


def reg_lower_inc_gamma(s, x, tol=DEFAULT_TOL):
    """Regularised lower incomplete gamma ``P(s, x) = gamma(s, x) / Gamma(s)``.

    Power series for ``x < s + 1`` and a continued fraction for the upper
    function otherwise.  Broadcasts over array inputs.
    """
    s_arr, x_arr = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(x, dtype=float))
    if np.any(s_arr <= 0):
        raise DomainError("shape s must be positive")
    if np.any(x_arr < 0) or np.any(np.isnan(x_arr)):
        raise DomainError("x must be nonnegative")
    out = np.zeros(x_arr.shape)
    s_flat, x_flat, o = s_arr.ravel(), x_arr.ravel(), out.ravel()
    inf = np.isinf(x_flat)
    o[inf] = 1.0
    lo = (x_flat > 0) & (x_flat < s_flat + 1.0) & ~inf
    hi = (x_flat >= s_flat + 1.0) & ~inf
    if lo.any():
        o[lo] = _inc_gamma_series(s_flat[lo], x_flat[lo], tol)
    if hi.any():
        o[hi] = 1.0 - _inc_gamma_cf(s_flat[hi], x_flat[hi], tol)
    np.clip(o, 0.0, 1.0, out=o)
    out = o.reshape(x_arr.shape)
    return out if out.ndim else float(out)
