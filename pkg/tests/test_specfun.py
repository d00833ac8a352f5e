import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy import special

from irs_netgeo.errors import DomainError
from irs_netgeo.specfun import (hyp2f1_negarg, hyp2f1_negarg_vec, log_gamma, pochhammer,
                                reg_lower_inc_gamma)

# reference values computed once with mpmath at 30 digits
HYP_REFERENCE = [
    (1.0, 0.5, 1.0, 0.78539816339744831),
    (1.0, 0.5, 4.0, 0.55357435889704525),
    (1.0, 0.75, 10.0, 0.29823965445253438),
    (5.0, 4.5, 3.0, 0.0032321984225108868),
    (1.0, -0.5, 1.0, 1.7853981633974483),
    (3.0, 1.5, 0.2, 0.72147713439764773),
    (1.0, 0.25, 1e6, 0.035123740322013156),
]


@pytest.mark.parametrize("a,b,x,ref", HYP_REFERENCE)
def test_hyp2f1_against_reference(a, b, x, ref):
    assert_allclose(hyp2f1_negarg(a, b, b + 1, x), ref, rtol=1e-10)


@pytest.mark.parametrize("a,b,x,ref", [r for r in HYP_REFERENCE if r[1] > 0])
def test_vectorized_hyp2f1_agrees(a, b, x, ref):
    assert_allclose(hyp2f1_negarg_vec(a, b, np.array([x])), [ref], rtol=1e-10)


def test_hyp2f1_at_zero_is_one():
    assert hyp2f1_negarg(1.0, 0.5, 1.5, 0.0) == pytest.approx(1.0)


@given(st.floats(1e-6, 1e8))
@settings(max_examples=60, deadline=None)
def test_hyp2f1_eta4_identity(x):
    # 2F1(1, 1/2; 3/2; -x) = atan(sqrt x) / sqrt x
    r = math.sqrt(x)
    assert hyp2f1_negarg(1.0, 0.5, 1.5, x) == pytest.approx(math.atan(r) / r, rel=1e-9)


@given(st.floats(0.05, 0.95), st.floats(1e-3, 1e6))
@settings(max_examples=60, deadline=None)
def test_hyp2f1_decreasing_and_bounded(b, x):
    f1 = hyp2f1_negarg(1.0, b, b + 1, x)
    f2 = hyp2f1_negarg(1.0, b, b + 1, 2 * x)
    assert 0 < f2 <= f1 <= 1


def test_hyp2f1_rejects_negative_argument():
    with pytest.raises(DomainError):
        hyp2f1_negarg(1.0, 0.5, 1.5, -1.0)


def test_pochhammer_and_log_gamma():
    assert pochhammer(3.0, 4) == pytest.approx(3 * 4 * 5 * 6)
    for x in (0.5, 7.0, 150.3):
        assert log_gamma(x) == pytest.approx(special.gammaln(x), rel=1e-12)


def test_incomplete_gamma_reference():
    # quadrature of t^1.5 e^-t over [0, 2.5], normalized, with mpmath
    assert reg_lower_inc_gamma(2.5, 2.5) == pytest.approx(0.58411981300449208, rel=1e-12)


@given(st.floats(0.1, 300.0), st.floats(0.0, 600.0))
@settings(max_examples=100, deadline=None)
def test_incomplete_gamma_matches_scipy(s, x):
    assert float(reg_lower_inc_gamma(s, x)) == pytest.approx(special.gammainc(s, x),
                                                             rel=1e-9, abs=1e-13)


def test_incomplete_gamma_vectorized_and_limits():
    x = np.array([0.0, 1e-8, 3.0, 1e4])
    out = reg_lower_inc_gamma(3.0, x)
    assert out[0] == 0.0 and out[-1] == pytest.approx(1.0)
    assert np.all(np.diff(out) >= 0)


def test_pochhammer_examples():
    assert pochhammer(2.5, 0) == 1.0
    assert pochhammer(1.0, 5) == pytest.approx(120.0)
    assert pochhammer(-0.5, 3) == pytest.approx(-0.375)


@given(st.floats(-5.0, 5.0), st.integers(0, 8), st.integers(0, 8))
@settings(max_examples=100, deadline=None)
def test_pochhammer_splits(a, m, n):
    assert pochhammer(a, m + n) == pytest.approx(pochhammer(a, m) * pochhammer(a + m, n),
                                                 rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("z", [0.01, 0.1, 1.0, 10.0, 100.0])
def test_hyp2f1_atan_grid(z):
    assert hyp2f1_negarg(1.0, 0.5, 1.5, z * z) == pytest.approx(math.atan(z) / z, rel=1e-9)


@given(st.floats(-3.0, 6.0), st.floats(-0.95, 3.0).filter(lambda b: abs(b) > 1e-3))
@settings(max_examples=40, deadline=None)
def test_hyp2f1_at_origin(a, b):
    assert hyp2f1_negarg(a, b, b + 1.0, 0.0) == 1.0


def test_incomplete_gamma_examples():
    assert reg_lower_inc_gamma(3.0, 0.0) == 0.0
    assert reg_lower_inc_gamma(1.0, 1.0) == pytest.approx(1 - math.exp(-1), rel=1e-13)
    assert reg_lower_inc_gamma(4.0, 200.0) >= 1 - 1e-12
