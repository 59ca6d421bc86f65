import math

import pytest
from hypothesis import given, strategies as st

from extendo.errors import ContractError, CurveError, CurveHorizonError
from extendo.termstructure import MarketData, TermStructure, average, integrate, period_params


def test_integrate_flat_rectangle():
    assert integrate(TermStructure.flat(0.08, 2.0), 0.0, 0.5) == pytest.approx(0.04, abs=1e-17)


def test_integrate_two_segments():
    curve = TermStructure((1.0, 2.0), (0.02, 0.04))
    assert integrate(curve, 0.0, 2.0) == pytest.approx(0.06, abs=1e-17)
    assert integrate(curve, 0.5, 1.5) == pytest.approx(0.03, abs=1e-17)


def test_integrate_empty_interval():
    curve = TermStructure((1.0, 2.0), (0.02, 0.04))
    assert integrate(curve, 1.3, 1.3) == 0.0


def test_integrate_squared():
    curve = TermStructure((1.0, 2.0), (0.2, 0.3))
    assert integrate(curve, 0.0, 2.0, squared=True) == pytest.approx(0.13, abs=1e-16)


def test_horizon_error():
    with pytest.raises(CurveHorizonError):
        integrate(TermStructure.flat(0.1, 1.0), 0.0, 1.5)


@pytest.mark.parametrize(
    "ends, values, positive",
    [
        ((1.0, 1.0), (0.1, 0.2), False),
        ((2.0, 1.0), (0.1, 0.2), False),
        ((0.0,), (0.1,), False),
        ((math.inf,), (0.1,), False),
        ((1.0,), (math.nan,), False),
        ((1.0, 2.0), (0.2, 0.0), True),
        ((1.0,), (-0.1,), True),
    ],
)
def test_invalid_curves(ends, values, positive):
    with pytest.raises(CurveError):
        TermStructure(ends, values, positive=positive)


def test_zero_vol_rejected_by_market():
    with pytest.raises(CurveError):
        MarketData(100.0, TermStructure.flat(0.05), TermStructure.flat(0.0), TermStructure.flat(0.0))


def test_flat_params_exact():
    p = period_params(MarketData.flat(100, 0.08, 0.0, 0.25), 0.5, 1.0)
    assert p.mu1 == p.mu2 == p.r1 == p.r2 == p.r12 == p.mu12 == 0.08
    assert p.sigma1 == p.sigma2 == p.sigma12 == 0.25
    assert p.rho == pytest.approx(0.7071067812, abs=1e-10)


def test_stepped_vol_params():
    vol = TermStructure((1.0, 2.0), (0.2, 0.3), positive=True)
    m = MarketData(100.0, TermStructure.flat(0.05), TermStructure.flat(0.0), vol)
    p = period_params(m, 1.0, 2.0)
    assert p.sigma1 == pytest.approx(0.2, abs=1e-16)
    assert p.sigma2 == pytest.approx(math.sqrt(0.065), abs=1e-16)
    assert p.rho == pytest.approx(0.5547002, abs=1e-7)
    assert p.sigma12**2 == pytest.approx(0.09, abs=1e-16)


def test_equal_dates_rejected():
    with pytest.raises(ContractError):
        period_params(MarketData.flat(100, 0.08, 0.0, 0.25), 1.0, 1.0)


def test_refinement_is_bit_identical():
    coarse = MarketData(
        100.0,
        TermStructure((1.0, 3.0), (0.03, 0.05)),
        TermStructure.flat(0.01, 3.0),
        TermStructure((0.7, 3.0), (0.2, 0.35), positive=True),
    )
    fine = MarketData(
        100.0,
        TermStructure((0.3, 1.0, 1.9, 3.0), (0.03, 0.03, 0.05, 0.05)),
        TermStructure((0.1, 2.2, 3.0), (0.01, 0.01, 0.01)),
        TermStructure((0.2, 0.7, 1.1, 3.0), (0.2, 0.2, 0.35, 0.35), positive=True),
    )
    assert fine.rate == coarse.rate
    assert period_params(fine, 0.8, 2.5) == period_params(coarse, 0.8, 2.5)


segments = st.lists(
    st.tuples(st.floats(0.05, 1.0), st.floats(0.05, 0.8)), min_size=1, max_size=6
)


def _curve(segs, positive=False):
    ends, t = [], 0.0
    for dt, _ in segs:
        t += dt
        ends.append(t)
    return TermStructure(tuple(ends), tuple(v for _, v in segs), positive=positive)


@given(segments, segments, st.floats(0.05, 0.95))
def test_period_param_invariants(rate_segs, vol_segs, frac):
    rate, vol = _curve(rate_segs), _curve(vol_segs, positive=True)
    horizon = min(rate.horizon, vol.horizon)
    T2 = horizon
    T1 = frac * T2
    m = MarketData(100.0, rate, TermStructure.flat(0.01, horizon), vol)
    p = period_params(m, T1, T2)
    assert 0.0 < p.rho < 1.0
    assert p.rho == pytest.approx(p.sigma1 * math.sqrt(T1) / (p.sigma2 * math.sqrt(T2)))
    assert p.sigma2**2 * T2 - p.sigma1**2 * T1 > 0.0
    assert p.r12 * (T2 - T1) == pytest.approx(p.r2 * T2 - p.r1 * T1, rel=1e-12, abs=1e-14)
    assert p.mu12 * (T2 - T1) == pytest.approx(p.mu2 * T2 - p.mu1 * T1, rel=1e-12, abs=1e-14)
    assert p.sigma12**2 * (T2 - T1) == pytest.approx(
        p.sigma2**2 * T2 - p.sigma1**2 * T1, rel=1e-12
    )
    assert p.sigma12**2 * (T2 - T1) == pytest.approx(integrate(vol, T1, T2, squared=True), rel=1e-12)


def test_average_of_single_covering_segment_is_exact():
    curve = TermStructure((0.3, 5.0), (0.1, 0.123456789))
    assert average(curve, 0.4, 4.9) == 0.123456789
