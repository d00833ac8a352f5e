import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal
from scipy import spatial, stats

from irs_netgeo.channel import FadingSpec
from irs_netgeo.errors import DomainError, InsufficientTailMass, RejectionBudgetExceeded
from irs_netgeo.errors import WindowTooSmall
from irs_netgeo.geometry import FixedDelta, IrsConfig, ModelI, ModelII
from irs_netgeo.interference import InterferenceLT
from irs_netgeo.montecarlo import (EmpiricalDistribution, SimMode, batch_standard_error,
                                   diversity_slope, empirical_ccdf, estimate_diversity,
                                   g_variance, sample_interference_given_Rd, simulate_sir,
                                   voronoi_typical_ue)
from irs_netgeo.params import NetworkParams
from irs_netgeo.sampling import PointSet2D, cdf_R0, make_rng, sample_ppp_disk
from irs_netgeo.sir import (SirCurve, SirQuery, ccdf_erlang_toeplitz, ccdf_exp_route,
                            ccdf_no_irs, db_to_linear)

P = NetworkParams()
THETA = db_to_linear(np.arange(-10.0, 20.0 + 1e-9, 2.5))


@pytest.fixture(scope="module")
def no_irs_voronoi():
    return simulate_sir(P, IrsConfig(), FadingSpec(), 100_000, "voronoi", seed=41)


# typical-cell UE


def test_single_bs_gives_uniform_disk():
    cell = PointSet2D(np.zeros((1, 2)), radius=50.0)
    rng = make_rng(51)
    z = np.array([voronoi_typical_ue(cell, rng) for _ in range(3000)])
    r = np.hypot(*z.T)
    assert r.max() <= 50.0
    assert stats.kstest((r / 50.0) ** 2, "uniform").pvalue > 1e-3
    assert stats.kstest(np.arctan2(z[:, 1], z[:, 0]), "uniform", (-math.pi, 2 * math.pi)).pvalue > 1e-3


def test_lattice_cell_is_uniform_square():
    g = np.arange(-3, 4, dtype=float)
    pts = np.array([(x, y) for x in g for y in g])
    rng = make_rng(52)
    z = np.array([voronoi_typical_ue(PointSet2D(pts, radius=3.0), rng) for _ in range(3000)])
    assert np.all(np.abs(z) <= 0.5 + 1e-12)
    for col in z.T:
        assert stats.kstest(col, "uniform", (-0.5, 1.0)).pvalue > 1e-3


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_accepted_point_is_in_origin_cell(seed):
    rng = make_rng(53, seed)
    bs = sample_ppp_disk(1e-3, 300.0, rng=rng)
    pts = np.vstack(([0.0, 0.0], bs.points))
    z = voronoi_typical_ue(PointSet2D(pts, radius=300.0), rng)
    d = np.hypot(*(pts - z).T)
    assert d[0] <= d[1:].min()


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_bounding_disk_contains_cell(seed):
    # every vertex of the origin's Voronoi cell lies within the sampling disk,
    # which we probe through the candidates that get accepted at the rim
    rng = make_rng(54, seed)
    pts = np.vstack(([0.0, 0.0], sample_ppp_disk(1e-3, 400.0, rng=rng).points))
    vor = spatial.Voronoi(pts)
    region = vor.regions[vor.point_region[0]]
    if -1 in region or not region:
        return
    far = np.hypot(*vor.vertices[region].T).max()
    from irs_netgeo.montecarlo import _cell_bounding_radius
    assert far <= _cell_bounding_radius(pts[1:], math.inf) * (1 + 1e-12)


def test_rejection_budget():
    pts = np.array([[0.0, 0.0], [1e-3, 0.0], [-1e-3, 0.0], [0.0, 1e-3], [0.0, -1e-3]])
    with pytest.raises(RejectionBudgetExceeded):
        voronoi_typical_ue(PointSet2D(pts, radius=1e6), make_rng(55), max_candidates=64)


def test_missing_origin_rejected():
    with pytest.raises(DomainError):
        voronoi_typical_ue(PointSet2D(np.ones((2, 2)), radius=10.0), make_rng(56))


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="typical-cell R0 law with q = 9/7 is an approximation; "
                                       "the simulated KS distance is about 0.015")
def test_voronoi_R0_matches_corrected_rayleigh():
    cell_R0 = []
    rng = make_rng(57)
    lam, W = 1e-5, 15 / math.sqrt(1e-5)
    while len(cell_R0) < 1_000_000:
        bs = sample_ppp_disk(lam, W, rng=rng)
        z = voronoi_typical_ue(PointSet2D(np.vstack(([0.0, 0.0], bs.points)), radius=W), rng)
        cell_R0.append(math.hypot(*z))
    ks = stats.kstest(cell_R0, lambda x: cdf_R0(x, lam, 9 / 7)).statistic
    assert ks <= 0.005


def test_voronoi_R0_close_to_corrected_rayleigh():
    rng = make_rng(58)
    W = 15 / math.sqrt(1e-5)
    r0 = []
    for _ in range(20_000):
        bs = sample_ppp_disk(1e-5, W, rng=rng)
        z = voronoi_typical_ue(PointSet2D(np.vstack(([0.0, 0.0], bs.points)), radius=W), rng)
        r0.append(math.hypot(*z))
    assert stats.kstest(r0, lambda x: cdf_R0(x, 1e-5, 9 / 7)).statistic < 0.025
    # and clearly better than the uncorrected law
    assert (stats.kstest(r0, lambda x: cdf_R0(x, 1e-5, 9 / 7)).statistic
            < stats.kstest(r0, lambda x: cdf_R0(x, 1e-5, 1.0)).statistic)


# interference given the dominant distance


def test_interference_mean_and_lt():
    Rd = np.full(200_000, 120.0)
    I, diag = sample_interference_given_Rd(Rd, P, make_rng(59))
    lt = InterferenceLT.from_params(P)
    assert I.mean() == pytest.approx(lt.mean_given_Rd(120.0), rel=0.01)
    s = 120.0**4
    assert np.exp(-s * I).mean() == pytest.approx(lt.lt_given_Rd(s, 120.0), abs=0.005)
    assert diag["residual_rel"] <= 1e-4 * (1 + 1e-9)


# simulator


def test_no_irs_matches_analytic(no_irs_voronoi):
    mc = no_irs_voronoi.ccdf(THETA).ccdf
    assert np.max(np.abs(mc - ccdf_no_irs(THETA))) <= 0.015


@pytest.mark.xfail(strict=True, reason="the distance model ignores cell shape and overestimates "
                                       "coverage by about 0.03")
def test_distance_model_agrees_with_voronoi(no_irs_voronoi):
    d = simulate_sir(P, IrsConfig(), FadingSpec(), 100_000, "distance", seed=41).ccdf(THETA).ccdf
    assert np.max(np.abs(d - no_irs_voronoi.ccdf(THETA).ccdf)) <= 0.02


@pytest.mark.slow
def test_model1_nearest_to_erlang_m():
    irs = IrsConfig(10, ModelI(P.default_r2))
    mc = simulate_sir(P, irs, FadingSpec(), 100_000, "voronoi", seed=42).ccdf(THETA).ccdf
    gaps = {
        "exp": ccdf_exp_route(SirQuery(THETA, P, irs, route="exp")),
        "m": ccdf_erlang_toeplitz(SirQuery(THETA, P, irs, chi="m")),
        "l": ccdf_erlang_toeplitz(SirQuery(THETA, P, irs, chi="l")),
    }
    gaps = {k: float(np.mean(np.abs(v - mc))) for k, v in gaps.items()}
    assert min(gaps, key=gaps.get) == "m"


@pytest.mark.parametrize("mode", ["voronoi", "distance"])
def test_seed_stable_across_workers(mode):
    irs = IrsConfig(10, ModelI(P.default_r2))
    a = simulate_sir(P, irs, FadingSpec(), 3000, mode, seed=3, workers=1, chunk_size=1000)
    b = simulate_sir(P, irs, FadingSpec(), 3000, mode, seed=3, workers=2, chunk_size=1000)
    assert_array_equal(a.sir, b.sir)
    c = simulate_sir(P, irs, FadingSpec(), 3000, mode, seed=4, chunk_size=1000)
    assert not np.array_equal(a.sir, c.sir)


def test_inactive_irs_reduces_to_baseline():
    a = simulate_sir(P, IrsConfig(), FadingSpec(), 2000, "distance", seed=5)
    b = simulate_sir(P, IrsConfig(10, FixedDelta(0.0)), FadingSpec(), 2000, "distance", seed=5)
    assert_array_equal(a.sir, b.sir)


def test_irs_only_helps_with_common_geometry():
    a = simulate_sir(P, IrsConfig(), FadingSpec(), 20_000, "distance", seed=6)
    b = simulate_sir(P, IrsConfig(100, FixedDelta(1e-3)), FadingSpec(), 20_000, "distance", seed=6)
    assert np.all(b.ccdf(THETA).ccdf >= a.ccdf(THETA).ccdf - 0.01)


def test_model2_rejections_are_counted():
    res = simulate_sir(P, IrsConfig(10, ModelII()), FadingSpec(), 50_000, "distance", seed=7)
    assert 0 < res.meta["rejected_geometries"] < 0.002 * 50_000


def test_keep_g_is_unit_mean():
    res = simulate_sir(P, IrsConfig(20, FixedDelta(0.01)), FadingSpec(), 50_000, "distance",
                       seed=8, keep_g=True)
    assert res.g.mean() == pytest.approx(1.0, abs=0.01)
    assert len(res) == 50_000


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        simulate_sir(P, IrsConfig(), FadingSpec(), 200, "voronoi", seed=9, window_factor=2.0)


# estimators


def test_empirical_ccdf_against_recount():
    s = make_rng(60).lognormal(size=1000)
    th = np.concatenate((s[:50], [0.0, 1e-9, 1e9]))
    want = np.array([sum(v > t for v in s) for t in th]) / s.size
    assert_allclose(empirical_ccdf(s, th).ccdf, want)
    assert empirical_ccdf(s, s.min() / 2).ccdf == 1.0
    assert empirical_ccdf(s, s.max()).ccdf == 0.0


def test_batch_error_shrinks_with_n():
    s = make_rng(61).exponential(size=400_000)
    e1 = batch_standard_error(s[:200_000], 1.0)[0]
    e2 = batch_standard_error(s, 1.0)[0]
    assert 0.5 < e2 / e1 * math.sqrt(2) < 1.5


def test_empirical_distribution():
    s = make_rng(62).normal(size=50_000)
    d = EmpiricalDistribution(s)
    assert d.ks_distance(stats.norm.cdf) < 0.01
    assert d.ks_distance(EmpiricalDistribution(s)) == 0.0
    bound, at_grid = d.ks_bound_on_grid(stats.norm.cdf, n_grid=500)
    assert at_grid <= d.ks_distance(stats.norm.cdf) + 1e-12 <= bound + 1e-12
    assert d.cdf(0.0) == pytest.approx(0.5, abs=0.01)


def test_diversity_slope_on_power_law():
    # F(theta) = theta^k near zero
    u = make_rng(63).random(1_000_000)
    assert diversity_slope(u ** (1 / 3.0)) == pytest.approx(3.0, rel=0.02)
    th = np.logspace(-4, 0, 200)
    assert diversity_slope(SirCurve(th, 1 - th**2, "analytic")) == pytest.approx(2.0, rel=1e-3)


def test_diversity_slope_needs_tail_mass():
    with pytest.raises(InsufficientTailMass) as info:
        diversity_slope(np.arange(1000.0))
    assert info.value.achieved_depth == pytest.approx(0.1)


@pytest.mark.slow
def test_estimate_diversity_no_irs():
    est = estimate_diversity(P, IrsConfig(), FadingSpec(), seed=11)
    assert est.n == 1_000_000 and est.slope == pytest.approx(1.0, abs=0.15)


def test_g_variance_trends():
    assert g_variance(10, 0.0, FadingSpec(2.0)) == pytest.approx(0.5, rel=0.05)
    v = [g_variance(N, 0.1) for N in (10, 30, 100)]
    assert v[0] > v[1] > v[2]
    assert g_variance(100, 0.1) < g_variance(100, 0.01)
    for N in (10, 100):
        assert 1 / 1.5 <= g_variance(N, 0.1) * N**0.75 <= 1.5


def test_ccdf_ordering_in_N_and_delta():
    def curve(irs):
        return simulate_sir(P, irs, FadingSpec(), 20_000, "distance", seed=12).ccdf(THETA).ccdf
    by_n = [curve(IrsConfig(n, FixedDelta(1e-3))) for n in (10, 20, 100)]
    by_d = [curve(IrsConfig(20, FixedDelta(d))) for d in (1e-4, 1e-3, 1e-2)]
    for seq in (by_n, by_d):
        for lo, hi in zip(seq, seq[1:]):
            assert np.all(hi >= lo - 0.01)
