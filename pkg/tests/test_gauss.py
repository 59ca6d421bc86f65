import math
import random

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from extendo.errors import DomainError
from extendo.gauss import bvn_cdf, interval_prob, norm_cdf, norm_pdf, rect_prob

INF = math.inf


def test_norm_pdf():
    assert norm_pdf(0.0) == pytest.approx(0.3989422804014327, abs=1e-16)
    assert norm_pdf(1.3) == norm_pdf(-1.3)
    assert norm_pdf(40.0) == 0.0


def test_norm_cdf_values():
    assert norm_cdf(0.0) == 0.5
    assert norm_cdf(-INF) == 0.0
    assert norm_cdf(INF) == 1.0
    # 30-digit mpmath value
    assert norm_cdf(1.96) == pytest.approx(0.9750021048517795, abs=1e-15)


def test_nan_rejected():
    with pytest.raises(DomainError):
        norm_cdf(math.nan)
    with pytest.raises(DomainError):
        bvn_cdf(0.0, math.nan, 0.1)
    with pytest.raises(DomainError):
        bvn_cdf(0.0, 0.0, math.nan)
    with pytest.raises(DomainError):
        bvn_cdf(0.0, 0.0, 1.0000001)


def test_bvn_closed_forms():
    assert bvn_cdf(0, 0, 0) == pytest.approx(0.25, abs=1e-16)
    assert bvn_cdf(0, 0, 0.5) == pytest.approx(1.0 / 3.0, abs=1e-15)
    for r in (-0.99, -0.5, 0.3, 0.8, 0.97):
        assert bvn_cdf(0, 0, r) == pytest.approx(0.25 + math.asin(r) / (2 * math.pi), abs=1e-15)


@pytest.mark.parametrize("rho", [-1.0, -0.95, -0.2, 0.0, 0.6, 0.99, 1.0])
@pytest.mark.parametrize("a", [-3.0, -0.4, 0.0, 1.7])
def test_bvn_marginal_and_limits(a, rho):
    assert bvn_cdf(a, INF, rho) == pytest.approx(norm_cdf(a), abs=1e-16)
    assert bvn_cdf(INF, a, rho) == pytest.approx(norm_cdf(a), abs=1e-16)
    assert bvn_cdf(a, -INF, rho) == 0.0
    assert bvn_cdf(INF, INF, rho) == 1.0


@pytest.mark.parametrize("a, b", [(-1.0, 0.5), (0.3, -0.2), (1.2, 1.2), (-2.0, -2.5), (2.0, -2.0)])
def test_degenerate_correlation(a, b):
    assert bvn_cdf(a, b, 1.0) == pytest.approx(norm_cdf(min(a, b)), abs=1e-15)
    assert bvn_cdf(a, b, -1.0) == pytest.approx(max(0.0, norm_cdf(a) + norm_cdf(b) - 1.0), abs=1e-15)


def _mp_bvn(a, b, r):
    mp.mp.dps = 30
    a, b, r = mp.mpf(a), mp.mpf(b), mp.mpf(r)
    s = mp.sqrt(1 - r * r)
    pts = [-mp.inf]
    if r != 0 and b / r < a:
        pts.append(b / r)
    pts.append(a)
    return float(mp.quad(lambda x: mp.npdf(x) * mp.ncdf((b - r * x) / s), pts))


def test_bvn_against_high_precision_quadrature():
    rng = random.Random(7)
    worst = 0.0
    for _ in range(60):
        a, b = rng.uniform(-6, 6), rng.uniform(-6, 6)
        r = rng.choice([rng.uniform(-0.999, 0.999), rng.uniform(0.92, 0.9999), -rng.uniform(0.92, 0.9999)])
        worst = max(worst, abs(bvn_cdf(a, b, r) - _mp_bvn(a, b, r)))
    assert worst <= 5e-15


def test_interval_prob():
    assert interval_prob(-INF, INF) == 1.0
    assert interval_prob(0.7, 0.7) == 0.0
    assert interval_prob(-1.96, 1.96) == pytest.approx(0.950004209703559, abs=1e-15)
    with pytest.raises(DomainError):
        interval_prob(1.0, 0.0)


def test_rect_prob_basics():
    assert rect_prob(0.3, 0.3, -1.0, 2.0, 0.4) == 0.0
    assert rect_prob(-INF, INF, -INF, INF, -0.7) == 1.0
    for a, b, c, d in [(-1.0, 0.5, -0.2, 2.0), (-INF, 0.3, 0.1, INF), (0.0, 1.0, -INF, 0.0)]:
        assert rect_prob(a, b, c, d, 0.0) == pytest.approx(
            interval_prob(a, b) * interval_prob(c, d), abs=1e-15
        )
    with pytest.raises(DomainError):
        rect_prob(1.0, 0.0, 0.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        rect_prob(0.0, 1.0, 1.0, 0.0, 0.0)


finite = st.floats(-6.0, 6.0)
corr = st.floats(-0.999, 0.999)


@given(finite, finite, corr)
def test_complement_identity(a, b, r):
    assert bvn_cdf(a, b, r) + bvn_cdf(a, -b, -r) == pytest.approx(norm_cdf(a), abs=1e-14)


@given(finite, finite, corr, st.floats(0.0, 1.0))
def test_monotone_in_arguments(a, b, r, step):
    base = bvn_cdf(a, b, r)
    assert bvn_cdf(a + step, b, r) >= base - 1e-16
    assert bvn_cdf(a, b + step, r) >= base - 1e-16


@given(finite, finite, st.floats(-0.99, 0.98), st.floats(0.0, 0.02))
def test_monotone_in_correlation(a, b, r, step):
    assert bvn_cdf(a, b, r + step) >= bvn_cdf(a, b, r) - 1e-15


def test_vectorized_norm_cdf():
    x = np.array([-INF, -1.0, 0.0, 2.0])
    np.testing.assert_allclose(norm_cdf(x), [0.0, norm_cdf(-1.0), 0.5, norm_cdf(2.0)])
